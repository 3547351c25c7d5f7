#pragma once

#include "ince/bessel.hpp"
#include "ince/eigensolver.hpp"
#include "ince/errors.hpp"
#include "ince/ince_matrix.hpp"
#include "ince/physics.hpp"
#include "ince/polynomials.hpp"
#include "ince/spinor.hpp"
#include "ince/verify.hpp"
#include "ince/wavefunction.hpp"

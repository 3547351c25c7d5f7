#pragma once

// Scalar coefficient functions
//   Psi = exp[i(p_hat x_hat + p_x x + p_z z)] exp[-(a/4) cos xi] f(xi)
// with f a Plus polynomial (spinor slots u1, u2) or its conjugate (u3, u4).

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ince/bessel.hpp"
#include "ince/errors.hpp"
#include "ince/physics.hpp"
#include "ince/polynomials.hpp"

namespace ince {

/// Coordinate conjugate to p_hat: (k0/kp)(y - n_m c t), in cm.
inline double x_hat(double t, double y, const WaveGeometry& g) {
    if (!(g.n_m >= 0.0 && g.n_m < 1.0))
        throw invalid_config("x_hat needs a refractive index below 1");
    return (g.k0 / g.kp) * (y - g.n_m * constants::speed_of_light * t);
}

/// Wave phase xi = omega_0 (t - n_m y / c).
inline double wave_phase(double t, double y, const WaveGeometry& g) {
    return g.k0 * (constants::speed_of_light * t - g.n_m * y);
}

/// exp(-(a/4) cos xi).
inline double prefactor(double a, double xi) { return std::exp(-0.25 * a * std::cos(xi)); }

/// Number of cosine terms kept in the prefactor series: ceil(a/2 + 15 sqrt(a/2 + 1)).
inline int prefactor_truncation(double a) {
    return static_cast<int>(std::ceil(0.5 * a + 15.0 * std::sqrt(0.5 * a + 1.0)));
}

/// Coefficients c_l (l = 0..l_max) of exp(-(a/4) cos xi) = sum_l c_l cos[l (xi - pi)]:
/// c_0 = I_0(a/4), c_l = 2 I_l(a/4).
inline std::vector<double> prefactor_series(double a, int l_max) {
    if (l_max < 0)
        throw invalid_argument("prefactor_series needs l_max >= 0");
    if (!(a >= 0.0))
        throw invalid_argument("prefactor_series needs a >= 0");
    std::vector<double> c(static_cast<std::size_t>(l_max) + 1);
    for (int l = 0; l <= l_max; ++l)
        c[l] = (l == 0 ? 1.0 : 2.0) * modified_bessel_i(l, 0.25 * a);
    return c;
}

inline double sum_prefactor_series(const std::vector<double>& coeffs, double xi) {
    double s = 0.0;
    for (std::size_t l = coeffs.size(); l-- > 0;)
        s += coeffs[l] * std::cos(static_cast<double>(l) * (xi - std::numbers::pi));
    return s;
}

enum class SpinorSlot { S12, S34 };

struct ScalarSolution {
    TrigPolynomial polynomial;
    SpinorSlot spinor_slot;
    std::complex<double> p_hat; // units of k_p: real, or pure imaginary when evanescent
    double p_x;                 // units of k_p: n (Even) or n + 1/2 (Odd)
    double p_z;                 // units of k_p
    WaveGeometry geometry;

    bool evanescent() const noexcept { return p_hat.imag() != 0.0; }
};

/// Quantized p_x and the spinor slot follow from the polynomial.
inline ScalarSolution make_scalar_solution(TrigPolynomial polynomial, const WaveGeometry& geometry,
                                           std::complex<double> p_hat, double p_z) {
    if (p_hat.real() != 0.0 && p_hat.imag() != 0.0)
        throw invalid_argument("p_hat must be real or purely imaginary");
    const double p_x = polynomial.parity() == Parity::Even ? polynomial.n() : polynomial.n() + 0.5;
    const SpinorSlot slot = polynomial.branch() == Branch::Plus ? SpinorSlot::S12 : SpinorSlot::S34;
    return {std::move(polynomial), slot, p_hat, p_x, p_z, geometry};
}

struct SpacetimePoint {
    double t = 0.0; // s
    double x = 0.0; // cm
    double y = 0.0; // cm, propagation axis
    double z = 0.0; // cm
};

inline std::complex<double> scalar_wavefunction(const ScalarSolution& sol, const SpacetimePoint& pt,
                                                bool allow_evanescent = false) {
    if (sol.evanescent() && !allow_evanescent)
        throw evanescent_solution_rejected(
            "imaginary p_hat grows exponentially along x_hat; acceptable only when the interaction is "
            "confined to a finite space-time region (pass allow_evanescent)");
    const auto& g = sol.geometry;
    const double xi = wave_phase(pt.t, pt.y, g);
    const double xh = x_hat(pt.t, pt.y, g);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> phase =
        std::exp(i * (sol.p_hat * g.kp * xh + sol.p_x * g.kp * pt.x + sol.p_z * g.kp * pt.z));
    return phase * prefactor(sol.polynomial.a(), xi) * sol.polynomial(xi);
}

} // namespace ince

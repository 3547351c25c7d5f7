#pragma once

// Spin coupling (1 + n_m beta) alpha_x in the Majorana representation and
// its eigenbasis.

#include <array>
#include <cmath>

#include "ince/errors.hpp"

namespace ince {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

namespace detail {

inline void check_index(double n_m) {
    if (!(n_m >= 0.0 && n_m < 1.0))
        throw invalid_argument("refractive index must lie in [0, 1) for the polynomial solutions");
}

} // namespace detail

inline double dot(const Vec4& u, const Vec4& v) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        s += u[i] * v[i];
    return s;
}

inline Vec4 apply(const Mat4& m, const Vec4& v) {
    Vec4 out{};
    for (int i = 0; i < 4; ++i)
        out[i] = dot(m[i], v);
    return out;
}

/// Antidiagonal (1+n_m, 1+n_m, 1-n_m, 1-n_m), top row to bottom row.
inline Mat4 build_coupling_matrix(double n_m) {
    detail::check_index(n_m);
    Mat4 b{};
    b[0][3] = 1.0 + n_m;
    b[1][2] = 1.0 + n_m;
    b[2][1] = 1.0 - n_m;
    b[3][0] = 1.0 - n_m;
    return b;
}

struct SpinBasis {
    double n_m = 0.0;
    std::array<Vec4, 4> vectors{};
    std::array<double, 4> lambdas{}; // +l, +l, -l, -l with l = sqrt(1 - n_m^2)
};

inline SpinBasis spin_basis(double n_m) {
    detail::check_index(n_m);
    const double plus = std::sqrt(1.0 + n_m) / std::sqrt(2.0);
    const double minus = std::sqrt(1.0 - n_m) / std::sqrt(2.0);
    const double lambda = std::sqrt(1.0 - n_m * n_m);
    SpinBasis b;
    b.n_m = n_m;
    b.vectors[0] = {plus, 0.0, 0.0, minus};
    b.vectors[1] = {0.0, plus, minus, 0.0};
    b.vectors[2] = {-plus, 0.0, 0.0, minus};
    b.vectors[3] = {0.0, -plus, minus, 0.0};
    b.lambdas = {lambda, lambda, -lambda, -lambda};
    return b;
}

/// Gram-Schmidt in the order u1, u2, u3, u4.
inline std::array<Vec4, 4> orthonormalize(const SpinBasis& b) {
    std::array<Vec4, 4> out{};
    for (int s = 0; s < 4; ++s) {
        Vec4 v = b.vectors[s];
        // two passes keep the result orthogonal to rounding level
        for (int pass = 0; pass < 2; ++pass) {
            for (int t = 0; t < s; ++t) {
                const double c = dot(out[t], v);
                for (int i = 0; i < 4; ++i)
                    v[i] -= c * out[t][i];
            }
        }
        const double len = std::sqrt(dot(v, v));
        for (int i = 0; i < 4; ++i)
            v[i] /= len;
        out[s] = v;
    }
    return out;
}

} // namespace ince

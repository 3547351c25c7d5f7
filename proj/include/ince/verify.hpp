#pragma once

// Independent checks: weighted inner products by two routes, Parseval
// normalization, and a characteristic-polynomial root oracle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ince/bessel.hpp"
#include "ince/eigensolver.hpp"
#include "ince/errors.hpp"
#include "ince/ince_matrix.hpp"
#include "ince/polynomials.hpp"
#include "ince/wavefunction.hpp"

namespace ince {

struct InnerProductReport {
    int k = 0;
    int l = 0;
    Complex quadrature_value;
    Complex bessel_value;
    double discrepancy = 0.0; // |quadrature - bessel|
};

namespace detail {

inline void check_pairing(const TrigPolynomial& pk, const TrigPolynomial& pl, double a) {
    if (pk.parity() != pl.parity())
        throw invalid_pairing("inner product of polynomials with different parity");
    if (pk.n() != pl.n())
        throw invalid_pairing("inner product across different n (" + std::to_string(pk.n()) + ", " +
                              std::to_string(pl.n()) + ") is not defined here");
    if (pk.a() != a || pl.a() != a)
        throw invalid_pairing("polynomials were built for a different coupling a");
}

// Signed frequencies (in xi) of the terms of p.
inline std::vector<double> frequencies(const TrigPolynomial& p) {
    const double sign = p.branch() == Branch::Plus ? -1.0 : 1.0;
    std::vector<double> w(p.coeffs().size());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = sign * p.harmonic(p.row_lo() + static_cast<int>(j));
    return w;
}

inline int quadrature_points(int n, double a) { return 8 * (n + prefactor_truncation(a)); }

// Values of p on the trapezoid grid xi_j = -pi + 2 pi j / N.
inline std::vector<Complex> sample(const TrigPolynomial& p, int points) {
    const auto f = p.as_fourier_sum();
    std::vector<Complex> out(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j)
        out[j] = f(-std::numbers::pi + 2.0 * std::numbers::pi * j / points);
    return out;
}

inline std::vector<double> weights(double a, int points) {
    std::vector<double> w(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j)
        w[j] = std::exp(-0.5 * a * std::cos(-std::numbers::pi + 2.0 * std::numbers::pi * j / points)) *
               (2.0 * std::numbers::pi / points);
    return w;
}

inline Complex quadrature(const std::vector<Complex>& fk, const std::vector<Complex>& fl,
                          const std::vector<double>& w) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        s += w[j] * std::conj(fk[j]) * fl[j];
    return s;
}

// 2 pi (-1)^nu I_nu(a/2) for nu = 0 .. max_nu.
inline std::vector<double> bessel_moments(double a, int max_nu) {
    std::vector<double> out(static_cast<std::size_t>(max_nu) + 1);
    for (int nu = 0; nu <= max_nu; ++nu)
        out[nu] = 2.0 * std::numbers::pi * (nu % 2 == 0 ? 1.0 : -1.0) * modified_bessel_i(nu, 0.5 * a);
    return out;
}

// int_{-pi}^{pi} e^{-(a/2) cos xi} e^{i nu xi} dxi = 2 pi (-1)^nu I_nu(a/2) for integer nu.
inline Complex bessel_route(const TrigPolynomial& pk, const TrigPolynomial& pl, const std::vector<double>& moments) {
    const auto wk = frequencies(pk);
    const auto wl = frequencies(pl);
    Complex s = 0.0;
    for (std::size_t r = 0; r < wk.size(); ++r) {
        for (std::size_t t = 0; t < wl.size(); ++t) {
            const double nu = wl[t] - wk[r];
            const long m = std::lround(std::abs(nu));
            if (std::abs(std::abs(nu) - static_cast<double>(m)) > 1e-9)
                throw std::logic_error("non-integer frequency difference in a weighted inner product");
            s += pk.coeffs()[r] * pl.coeffs()[t] * moments.at(static_cast<std::size_t>(m));
        }
    }
    return s;
}

inline int max_frequency_gap(const TrigPolynomial& p) { return 2 * (std::abs(p.row_lo()) + std::abs(p.row_hi())) + 2; }

} // namespace detail

/// int_{-pi}^{pi} e^{-(a/2) cos xi} conj(pk) pl dxi, by trapezoid quadrature and by the
/// Bessel closed form. With pk on the Minus branch and pl on Plus this is the bilinear
/// pairing of two Plus polynomials.
inline InnerProductReport weighted_inner_product(const TrigPolynomial& pk, const TrigPolynomial& pl, double a) {
    detail::check_pairing(pk, pl, a);
    const int points = detail::quadrature_points(pk.n(), a);
    const auto w = detail::weights(a, points);
    InnerProductReport rep;
    rep.k = pk.k();
    rep.l = pl.k();
    rep.quadrature_value = detail::quadrature(detail::sample(pk, points), detail::sample(pl, points), w);
    rep.bessel_value = detail::bessel_route(pk, pl, detail::bessel_moments(a, detail::max_frequency_gap(pk)));
    rep.discrepancy = std::abs(rep.quadrature_value - rep.bessel_value);
    return rep;
}

enum class GramKind {
    Hermitian,    // conj(g_k) g_l, both Plus
    Biorthogonal, // g_k g_l, both Plus
};

inline const char* to_string(GramKind g) { return g == GramKind::Hermitian ? "hermitian" : "biorthogonal"; }

struct GramReport {
    GramKind kind = GramKind::Hermitian;
    std::vector<std::vector<Complex>> matrix; // quadrature route, [k-1][l-1]
    double max_diagonal = 0.0;                // max |G_kk|
    double min_diagonal = 0.0;                // min |G_kk|
    double max_off_diagonal = 0.0;            // max |G_kl|, k != l
    double off_diagonal_relative = 0.0;       // max_off_diagonal / max_diagonal
    double route_discrepancy_relative = 0.0;  // max |quadrature - bessel| / max_diagonal
};

/// Weighted Gram matrix over all eigenvectors of one solution.
inline GramReport gram_matrix(const SpectralSolution& sol, GramKind kind) {
    const std::size_t dim = sol.dimension();
    const int points = detail::quadrature_points(sol.n, sol.a);
    const auto w = detail::weights(sol.a, points);
    std::vector<TrigPolynomial> left, right;
    std::vector<std::vector<Complex>> ls, rs;
    for (std::size_t k = 1; k <= dim; ++k) {
        right.push_back(make_polynomial(sol, static_cast<int>(k), Branch::Plus));
        left.push_back(make_polynomial(sol, static_cast<int>(k),
                                       kind == GramKind::Hermitian ? Branch::Plus : Branch::Minus));
        rs.push_back(detail::sample(right.back(), points));
        ls.push_back(detail::sample(left.back(), points));
    }
    const auto moments = detail::bessel_moments(sol.a, detail::max_frequency_gap(right.front()));
    GramReport g;
    g.kind = kind;
    g.matrix.assign(dim, std::vector<Complex>(dim));
    g.min_diagonal = std::numeric_limits<double>::infinity();
    double worst_route = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t l = 0; l < dim; ++l) {
            const Complex q = detail::quadrature(ls[k], rs[l], w);
            const Complex b = detail::bessel_route(left[k], right[l], moments);
            g.matrix[k][l] = q;
            worst_route = std::max(worst_route, std::abs(q - b));
            if (k == l) {
                g.max_diagonal = std::max(g.max_diagonal, std::abs(q));
                g.min_diagonal = std::min(g.min_diagonal, std::abs(q));
            } else {
                g.max_off_diagonal = std::max(g.max_off_diagonal, std::abs(q));
            }
        }
    }
    g.off_diagonal_relative = g.max_off_diagonal / g.max_diagonal;
    g.route_discrepancy_relative = worst_route / g.max_diagonal;
    return g;
}

/// (1/2pi) int_{-pi}^{pi} |p|^2 dxi.
inline double normalization_check(const TrigPolynomial& p) {
    // |p|^2 has integer frequencies up to row_hi - row_lo; the rule is exact beyond that.
    const int points = 2 * (p.row_hi() - p.row_lo()) + 8;
    const auto f = p.as_fourier_sum();
    double s = 0.0;
    for (int j = 0; j < points; ++j)
        s += std::norm(f(-std::numbers::pi + 2.0 * std::numbers::pi * j / points));
    return s / points;
}

/// Roots of det(M - eta I) by sign-change scanning plus bisection, descending.
inline std::vector<double> oracle_eigenvalues(const TridiagonalMatrix& m) {
    const std::size_t dim = m.dimension();
    if (dim > 8)
        throw invalid_argument("oracle_eigenvalues handles dimension <= 8, got " + std::to_string(dim));
    const auto d = m.diag();
    const double spread = 2.0 * m.a() * static_cast<double>(dim);
    const double lo = *std::min_element(d.begin(), d.end()) - spread - 1.0;
    const double hi = *std::max_element(d.begin(), d.end()) + spread + 1.0;
    auto sign_at = [&](double x) { return char_poly_scaled(m, x).sign(); };

    std::vector<double> roots;
    for (int cells = 1024; cells <= (1 << 22); cells *= 2) {
        roots.clear();
        const double h = (hi - lo) / cells;
        double x0 = lo;
        int s0 = sign_at(x0);
        for (int c = 1; c <= cells; ++c) {
            const double x1 = lo + h * c;
            const int s1 = sign_at(x1);
            if (s1 == 0) {
                roots.push_back(x1);
            } else if (s0 != 0 && s1 != s0) {
                double a = x0, b = x1;
                while (b - a > 1e-12) {
                    const double mid = 0.5 * (a + b);
                    if (mid <= a || mid >= b)
                        break;
                    const int sm = sign_at(mid);
                    if (sm == 0) {
                        a = b = mid;
                        break;
                    }
                    (sm == s0 ? a : b) = mid;
                }
                roots.push_back(0.5 * (a + b));
            }
            x0 = x1;
            s0 = s1;
        }
        if (roots.size() == dim)
            break;
    }
    if (roots.size() != dim)
        throw oracle_failure("characteristic-polynomial scan found " + std::to_string(roots.size()) +
                             " roots for a dimension-" + std::to_string(dim) + " matrix");
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

} // namespace ince

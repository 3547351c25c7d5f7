#pragma once

// Even and odd tridiagonal matrices whose eigenvectors are the Fourier
// coefficients of the terminating (polynomial) solutions of the complex
// Ince-type equation
//
//     f'' + a sin 2z (f' + i f) + (eta - q a cos 2z) f = 0.
//
// Rows are labelled by the harmonic index r exactly as in the recurrence:
//   Even:  r = -n+1 .. n,  q = 2n - 1,  harmonics exp(-2irz)
//   Odd:   r = -n   .. n,  q = 2n,      harmonics exp(-(2r+1)iz)
// Conversion to 0-based storage happens only at the linear-algebra boundary.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ince/errors.hpp"

namespace ince {

enum class Parity { Even, Odd };

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

class TridiagonalMatrix {
  public:
    Parity parity() const noexcept { return parity_; }
    int n() const noexcept { return n_; }
    double a() const noexcept { return a_; }

    int row_lo() const noexcept { return row_lo_; }
    int row_hi() const noexcept { return row_lo_ + static_cast<int>(diag_.size()) - 1; }
    std::size_t dimension() const noexcept { return diag_.size(); }

    // q of the governing equation: 2n-1 (Even) or 2n (Odd).
    int q() const noexcept { return parity_ == Parity::Even ? 2 * n_ - 1 : 2 * n_; }

    /// diag[j] belongs to row r = row_lo() + j.
    std::span<const double> diag() const noexcept { return diag_; }
    /// super[j] couples row r = row_lo() + j to r + 1.
    std::span<const double> super() const noexcept { return super_; }
    /// sub[j] couples row r = row_lo() + j + 1 to r - 1.
    std::span<const double> sub() const noexcept { return sub_; }

    std::size_t index_of(int r) const {
        if (r < row_lo() || r > row_hi())
            throw invalid_argument("row index " + std::to_string(r) + " outside the matrix");
        return static_cast<std::size_t>(r - row_lo_);
    }
    int row_of(std::size_t j) const noexcept { return row_lo_ + static_cast<int>(j); }

    double trace() const noexcept {
        double t = 0.0;
        for (double d : diag_)
            t += d;
        return t;
    }

    // Gershgorin interval containing the whole spectrum.
    double gershgorin_lo() const noexcept { return bound(-1.0); }
    double gershgorin_hi() const noexcept { return bound(+1.0); }

    friend TridiagonalMatrix build_even_matrix(int n, double a);
    friend TridiagonalMatrix build_odd_matrix(int n, double a);

  private:
    TridiagonalMatrix(Parity parity, int n, double a, int row_lo)
        : parity_(parity), n_(n), a_(a), row_lo_(row_lo) {}

    double bound(double side) const noexcept {
        double best = side > 0 ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
        const std::size_t dim = diag_.size();
        for (std::size_t j = 0; j < dim; ++j) {
            double radius = 0.0;
            if (j + 1 < dim)
                radius += std::abs(super_[j]);
            if (j > 0)
                radius += std::abs(sub_[j - 1]);
            const double edge = diag_[j] + side * radius;
            best = side > 0 ? std::max(best, edge) : std::min(best, edge);
        }
        return best;
    }

    Parity parity_;
    int n_;
    double a_;
    int row_lo_;
    std::vector<double> diag_;
    std::vector<double> super_;
    std::vector<double> sub_;
};

namespace detail {

inline void check_coupling(double a) {
    if (!std::isfinite(a))
        throw invalid_argument("coupling a must be finite");
    if (a < 0.0)
        throw invalid_argument("coupling a must be >= 0: the equation is invariant under "
                               "z -> z + pi/2, a -> -a, so negative a duplicates a positive one");
}

} // namespace detail

/// M_2n(a): rows r = -n+1..n, diag 4r^2, super (n+r)a, sub (n-r+1)a.
inline TridiagonalMatrix build_even_matrix(int n, double a) {
    if (n < 1)
        throw invalid_argument("even matrix needs n >= 1, got " + std::to_string(n));
    detail::check_coupling(a);
    TridiagonalMatrix m(Parity::Even, n, a, -n + 1);
    for (int r = -n + 1; r <= n; ++r) {
        m.diag_.push_back(4.0 * r * r);
        if (r < n)
            m.super_.push_back((n + r) * a);
        if (r > -n + 1)
            m.sub_.push_back((n - r + 1) * a);
    }
    return m;
}

/// N_2n+1(a): rows r = -n..n, diag (2r+1)^2, super (n+r+1)a, sub (n-r+1)a.
inline TridiagonalMatrix build_odd_matrix(int n, double a) {
    if (n < 0)
        throw invalid_argument("odd matrix needs n >= 0, got " + std::to_string(n));
    detail::check_coupling(a);
    TridiagonalMatrix m(Parity::Odd, n, a, -n);
    for (int r = -n; r <= n; ++r) {
        m.diag_.push_back(static_cast<double>((2 * r + 1) * (2 * r + 1)));
        if (r < n)
            m.super_.push_back((n + r + 1) * a);
        if (r > -n)
            m.sub_.push_back((n - r + 1) * a);
    }
    return m;
}

inline TridiagonalMatrix build_matrix(Parity parity, int n, double a) {
    return parity == Parity::Even ? build_even_matrix(n, a) : build_odd_matrix(n, a);
}

// det(M - eta I) as mantissa * 2^exponent, |mantissa| in [0.5, 1) or 0.
struct ScaledDeterminant {
    double mantissa = 0.0;
    long exponent = 0;

    int sign() const noexcept { return mantissa > 0 ? 1 : (mantissa < 0 ? -1 : 0); }

    double value() const {
        if (mantissa == 0.0)
            return 0.0;
        if (exponent > std::numeric_limits<double>::max_exponent)
            throw std::overflow_error("characteristic polynomial value overflows double");
        return std::ldexp(mantissa, static_cast<int>(exponent));
    }
};

/// Leading-principal-minor recurrence
///   p_j = (d_j - eta) p_{j-1} - super_{j-1} sub_{j-1} p_{j-2},
/// rescaled by powers of two whenever the running minors grow or shrink.
inline ScaledDeterminant char_poly_scaled(const TridiagonalMatrix& m, double eta) {
    const auto d = m.diag();
    const auto up = m.super();
    const auto lo = m.sub();

    double prev = 1.0; // p_{j-2}
    double cur = d[0] - eta;
    long exponent = 0;
    for (std::size_t j = 1; j < d.size(); ++j) {
        const double next = (d[j] - eta) * cur - up[j - 1] * lo[j - 1] * prev;
        prev = cur;
        cur = next;
        const double scale = std::max(std::abs(cur), std::abs(prev));
        if (scale > 0.0 && (scale > 0x1p+256 || scale < 0x1p-256)) {
            int e = 0;
            std::frexp(scale, &e);
            cur = std::ldexp(cur, -e);
            prev = std::ldexp(prev, -e);
            exponent += e;
        }
    }
    ScaledDeterminant out;
    if (cur != 0.0) {
        int e = 0;
        out.mantissa = std::frexp(cur, &e);
        out.exponent = exponent + e;
    }
    return out;
}

/// det(M - eta I); throws std::overflow_error if the value is not representable.
inline double char_poly_eval(const TridiagonalMatrix& m, double eta) {
    return char_poly_scaled(m, eta).value();
}

} // namespace ince

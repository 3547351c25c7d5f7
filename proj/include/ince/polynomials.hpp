#pragma once

// Complex trigonometric polynomial solutions g_n^k (Even) and h_n^k (Odd).
//
// Public evaluation is in the wave phase xi; the governing equation is
// written in z = xi / 2. With D_r real,
//   Plus  branch:  f(xi) = sum_r D_r exp(-i m_r xi)
//   Minus branch:  f(xi) = sum_r D_r exp(+i m_r xi) = conj(Plus)
// where m_r = r (Even) or r + 1/2 (Odd).

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ince/eigensolver.hpp"
#include "ince/errors.hpp"
#include "ince/ince_matrix.hpp"

namespace ince {

using Complex = std::complex<double>;

enum class Branch { Plus, Minus };

inline const char* to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

// sum_j c_j exp(i w_j xi): a finite Fourier sum with real frequencies.
class FourierSum {
  public:
    struct Term {
        double frequency;
        Complex coefficient;
    };

    FourierSum() = default;
    explicit FourierSum(std::vector<Term> terms) : terms_(std::move(terms)) {}

    const std::vector<Term>& terms() const noexcept { return terms_; }

    Complex operator()(double xi) const {
        Complex s = 0.0;
        for (const auto& t : terms_)
            s += t.coefficient * std::polar(1.0, t.frequency * xi);
        return s;
    }

    /// Exact term-wise derivative d^order/dxi^order.
    FourierSum derivative(int order = 1) const {
        std::vector<Term> out = terms_;
        for (auto& t : out)
            for (int i = 0; i < order; ++i)
                t.coefficient *= Complex(0.0, t.frequency);
        return FourierSum(std::move(out));
    }

  private:
    std::vector<Term> terms_;
};

class TrigPolynomial {
  public:
    TrigPolynomial(Parity parity, Branch branch, int n, int k, double a, double eta, int row_lo,
                   std::vector<double> coeffs)
        : parity_(parity), branch_(branch), n_(n), k_(k), a_(a), eta_(eta), row_lo_(row_lo),
          coeffs_(std::move(coeffs)) {}

    Parity parity() const noexcept { return parity_; }
    Branch branch() const noexcept { return branch_; }
    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    double a() const noexcept { return a_; }
    double eta() const noexcept { return eta_; }
    int q() const noexcept { return parity_ == Parity::Even ? 2 * n_ - 1 : 2 * n_; }
    int row_lo() const noexcept { return row_lo_; }
    int row_hi() const noexcept { return row_lo_ + static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    /// Harmonic m_r in units of the wave frequency: r (Even) or r + 1/2 (Odd).
    double harmonic(int r) const noexcept { return parity_ == Parity::Even ? r : r + 0.5; }

    /// Period in xi: 2 pi (Even), 4 pi (Odd).
    double period() const noexcept { return parity_ == Parity::Even ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi; }

    FourierSum as_fourier_sum() const {
        std::vector<FourierSum::Term> terms;
        terms.reserve(coeffs_.size());
        const double sign = branch_ == Branch::Plus ? -1.0 : 1.0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j)
            terms.push_back({sign * harmonic(row_lo_ + static_cast<int>(j)), Complex(coeffs_[j], 0.0)});
        return FourierSum(std::move(terms));
    }

    Complex operator()(double xi) const { return as_fourier_sum()(xi); }

    TrigPolynomial conjugate() const {
        TrigPolynomial p = *this;
        p.branch_ = branch_ == Branch::Plus ? Branch::Minus : Branch::Plus;
        return p;
    }

    /// Same coefficients attached to a different eigenvalue.
    TrigPolynomial with_eta(double eta) const {
        TrigPolynomial p = *this;
        p.eta_ = eta;
        return p;
    }

    TrigPolynomial scaled(double factor) const {
        TrigPolynomial p = *this;
        for (auto& c : p.coeffs_)
            c *= factor;
        return p;
    }

  private:
    Parity parity_;
    Branch branch_;
    int n_;
    int k_;
    double a_;
    double eta_;
    int row_lo_;
    std::vector<double> coeffs_;
};

inline TrigPolynomial make_polynomial(const SpectralSolution& sol, int k, Branch branch) {
    if (k < 1 || static_cast<std::size_t>(k) > sol.dimension())
        throw invalid_argument("eigenvalue label k=" + std::to_string(k) + " outside 1.." +
                               std::to_string(sol.dimension()));
    return TrigPolynomial(sol.parity, branch, sol.n, k, sol.a, sol.eigenvalue(k), sol.row_lo, sol.eigenvector(k));
}

inline Complex evaluate(const TrigPolynomial& p, double xi) { return p(xi); }

/// d^order/dxi^order of p as a Fourier sum.
inline FourierSum derivative(const TrigPolynomial& p, int order = 1) { return p.as_fourier_sum().derivative(order); }

struct ZDerivatives {
    Complex value;
    Complex first;  // d/dz
    Complex second; // d^2/dz^2
};

/// f, f', f'' with respect to z = xi / 2.
inline ZDerivatives derivatives_z(const TrigPolynomial& p, double z) {
    ZDerivatives out{0.0, 0.0, 0.0};
    const double xi = 2.0 * z;
    const double sign = p.branch() == Branch::Plus ? -1.0 : 1.0;
    const auto& c = p.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double w = sign * 2.0 * p.harmonic(p.row_lo() + static_cast<int>(j)); // frequency in z
        const Complex e = c[j] * std::polar(1.0, 0.5 * w * xi);
        out.value += e;
        out.first += Complex(0.0, w) * e;
        out.second -= w * w * e;
    }
    return out;
}

/// f'' + a sin 2z (f' + s i f) + (eta - q a cos 2z) f, s = +1 (Plus), -1 (Minus).
inline Complex ode_residual(const TrigPolynomial& p, double z) {
    const auto f = derivatives_z(p, z);
    const double s = p.branch() == Branch::Plus ? 1.0 : -1.0;
    const double a = p.a();
    return f.second + a * std::sin(2.0 * z) * (f.first + Complex(0.0, s) * f.value) +
           (p.eta() - p.q() * a * std::cos(2.0 * z)) * f.value;
}

struct HarmonicStrength {
    int r;
    double strength; // D_r^2
};

inline std::vector<HarmonicStrength> harmonic_strengths(const TrigPolynomial& p) {
    std::vector<HarmonicStrength> out;
    out.reserve(p.coeffs().size());
    for (std::size_t j = 0; j < p.coeffs().size(); ++j)
        out.push_back({p.row_lo() + static_cast<int>(j), p.coeffs()[j] * p.coeffs()[j]});
    return out;
}

} // namespace ince

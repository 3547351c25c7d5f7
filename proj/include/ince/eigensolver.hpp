#pragma once

// Spectrum of the Ince matrices.
//
// Every M_2n(a) / N_2n+1(a) with a > 0 has super[j] * sub[j] > 0, so a
// diagonal similarity S turns it into a real symmetric tridiagonal T with
// the same spectrum. Eigenvalues come from bisection on Sturm counts of T,
// eigenvectors from inverse iteration on T mapped back through S.
//
// Two precision tiers share one templated code path: Double (IEEE binary64)
// for scans, Extended (50 significant digits) when the splitting of the
// near-degenerate pairs has to be resolved.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ince/errors.hpp"
#include "ince/ince_matrix.hpp"

namespace ince {

using ExtendedReal = boost::multiprecision::cpp_bin_float_50;

enum class PrecisionTier { Double, Extended };

inline const char* to_string(PrecisionTier t) { return t == PrecisionTier::Double ? "double" : "extended"; }

template <class Real>
struct SymmetricForm {
    std::vector<Real> diag;
    std::vector<Real> off;     // c_j = sqrt(super_j * sub_j)
    std::vector<Real> off_sq;  // super_j * sub_j, exact for integer-valued products
    std::vector<Real> scaling; // M = S T S^{-1}, S = diag(scaling), scaling[0] = 1
    Real norm = 0;             // max absolute row sum of T
    Real pivmin = 0;           // smallest pivot magnitude admitted in Sturm counts
};

/// Diagonal similarity to symmetric form; off-diagonal c_j = sqrt(super_j sub_j).
template <class Real = double>
SymmetricForm<Real> symmetrize(const TridiagonalMatrix& m) {
    using std::abs;
    using std::sqrt;
    const std::size_t dim = m.dimension();
    SymmetricForm<Real> t;
    t.diag.reserve(dim);
    for (double d : m.diag())
        t.diag.emplace_back(d);
    t.scaling.assign(dim, Real(1));
    for (std::size_t j = 0; j + 1 < dim; ++j) {
        const Real up(m.super()[j]);
        const Real lo(m.sub()[j]);
        const Real product = up * lo;
        if (m.a() == 0.0) {
            t.off.emplace_back(0);
            t.off_sq.emplace_back(0);
            continue;
        }
        if (!(product > 0))
            throw std::logic_error("Ince matrix coupling product is not positive at j=" + std::to_string(j));
        t.off.push_back(sqrt(product));
        t.off_sq.push_back(product);
        t.scaling[j + 1] = t.scaling[j] * sqrt(lo / up);
    }
    Real max_sq = 1;
    for (std::size_t j = 0; j < dim; ++j) {
        Real row = abs(t.diag[j]);
        if (j + 1 < dim)
            row += t.off[j];
        if (j > 0)
            row += t.off[j - 1];
        if (row > t.norm)
            t.norm = row;
        if (j + 1 < dim && t.off_sq[j] > max_sq)
            max_sq = t.off_sq[j];
    }
    t.pivmin = std::numeric_limits<Real>::min() * max_sq;
    return t;
}

/// Number of eigenvalues of t strictly below x (LDL^T inertia).
template <class Real>
std::size_t sturm_count(const SymmetricForm<Real>& t, const Real& x) {
    using std::abs;
    std::size_t count = 0;
    Real q = t.diag[0] - x;
    if (abs(q) < t.pivmin)
        q = -t.pivmin;
    if (q < 0)
        ++count;
    for (std::size_t j = 1; j < t.diag.size(); ++j) {
        q = t.diag[j] - x - t.off_sq[j - 1] / q;
        if (abs(q) < t.pivmin)
            q = -t.pivmin;
        if (q < 0)
            ++count;
    }
    return count;
}

namespace detail {

template <class Real>
Real rel_tolerance(PrecisionTier tier) {
    if (tier == PrecisionTier::Extended)
        return Real(1e-46);
    return Real(2) * Real(std::numeric_limits<double>::epsilon());
}

template <class Real>
std::pair<Real, Real> gershgorin(const SymmetricForm<Real>& t) {
    using std::abs;
    Real lo = t.diag[0], hi = t.diag[0];
    for (std::size_t j = 0; j < t.diag.size(); ++j) {
        Real radius = 0;
        if (j + 1 < t.diag.size())
            radius += abs(t.off[j]);
        if (j > 0)
            radius += abs(t.off[j - 1]);
        lo = std::min<Real>(lo, t.diag[j] - radius);
        hi = std::max<Real>(hi, t.diag[j] + radius);
    }
    const Real pad = (hi - lo) * Real(4) * std::numeric_limits<Real>::epsilon() + Real(4) * t.pivmin + Real(1e-300);
    return {lo - pad, hi + pad};
}

// Shrinks [lo, hi] around the index-th smallest eigenvalue (0-based).
// Requires sturm_count(lo) <= index < sturm_count(hi).
template <class Real>
std::pair<Real, Real> bisect_index(const SymmetricForm<Real>& t, std::size_t index, Real lo, Real hi,
                                   const Real& rel_tol) {
    using std::abs;
    for (int iter = 0; iter < 4096; ++iter) {
        const Real mid = (lo + hi) / 2;
        const Real scale = std::max<Real>(Real(1), std::max<Real>(abs(lo), abs(hi)));
        if (hi - lo <= rel_tol * scale || !(mid > lo) || !(mid < hi))
            break;
        if (sturm_count(t, mid) > index)
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

template <class Real>
bool isolates(const SymmetricForm<Real>& t, std::size_t index, const Real& lo, const Real& hi) {
    return sturm_count(t, lo) <= index && sturm_count(t, hi) > index;
}

// Tridiagonal LU with partial pivoting of (T - shift I), reused across
// inverse-iteration sweeps.
template <class Real>
class ShiftedFactor {
  public:
    ShiftedFactor(const SymmetricForm<Real>& t, const Real& shift) {
        using std::abs;
        const std::size_t n = t.diag.size();
        d_.resize(n);
        du_.assign(n, Real(0));
        du2_.assign(n, Real(0));
        dl_.assign(n, Real(0));
        swap_.assign(n, false);
        for (std::size_t j = 0; j < n; ++j)
            d_[j] = t.diag[j] - shift;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            du_[j] = t.off[j];
            dl_[j] = t.off[j];
        }
        const Real tiny = std::max<Real>(t.norm, Real(1)) * std::numeric_limits<Real>::epsilon();
        for (std::size_t j = 0; j + 1 < n; ++j) {
            if (abs(d_[j]) >= abs(dl_[j])) {
                if (d_[j] == 0)
                    d_[j] = tiny;
                const Real fact = dl_[j] / d_[j];
                dl_[j] = fact;
                d_[j + 1] -= fact * du_[j];
            } else {
                const Real fact = d_[j] / dl_[j];
                d_[j] = dl_[j];
                dl_[j] = fact;
                const Real temp = du_[j];
                du_[j] = d_[j + 1];
                d_[j + 1] = temp - fact * d_[j + 1];
                if (j + 2 < n) {
                    du2_[j] = du_[j + 1];
                    du_[j + 1] = -fact * du_[j + 1];
                }
                swap_[j] = true;
            }
        }
        for (auto& pivot : d_)
            if (abs(pivot) < tiny)
                pivot = pivot < 0 ? -tiny : tiny;
    }

    void solve(std::vector<Real>& b) const {
        const std::size_t n = d_.size();
        for (std::size_t j = 0; j + 1 < n; ++j) {
            if (swap_[j])
                std::swap(b[j], b[j + 1]);
            b[j + 1] -= dl_[j] * b[j];
        }
        for (std::size_t jj = n; jj-- > 0;) {
            Real s = b[jj];
            if (jj + 1 < n)
                s -= du_[jj] * b[jj + 1];
            if (jj + 2 < n)
                s -= du2_[jj] * b[jj + 2];
            b[jj] = s / d_[jj];
        }
    }

  private:
    std::vector<Real> d_, du_, du2_, dl_;
    std::vector<bool> swap_;
};

template <class Real>
Real norm2(const std::vector<Real>& v) {
    using std::sqrt;
    Real s = 0;
    for (const auto& x : v)
        s += x * x;
    return sqrt(s);
}

template <class Real>
Real residual_inf(const SymmetricForm<Real>& t, const Real& eta, const std::vector<Real>& y) {
    using std::abs;
    Real worst = 0;
    const std::size_t n = y.size();
    for (std::size_t j = 0; j < n; ++j) {
        Real r = (t.diag[j] - eta) * y[j];
        if (j + 1 < n)
            r += t.off[j] * y[j + 1];
        if (j > 0)
            r += t.off[j - 1] * y[j - 1];
        worst = std::max<Real>(worst, abs(r));
    }
    return worst;
}

// Unit eigenvector of the symmetric form for eigenvalue eta; `cluster` holds
// already-computed vectors of nearby eigenvalues to orthogonalize against.
template <class Real>
std::vector<Real> inverse_iteration(const SymmetricForm<Real>& t, const Real& eta,
                                    const std::vector<std::vector<Real>>& cluster, const Real& tol, int label) {
    const std::size_t n = t.diag.size();
    const ShiftedFactor<Real> factor(t, eta);
    std::vector<Real> y(n);
    // Fixed, non-symmetric start vector.
    for (std::size_t j = 0; j < n; ++j)
        y[j] = Real(1) + Real(static_cast<double>((j * 7919) % 97) / 97.0);
    int converged_sweeps = 0;
    for (int sweep = 0; sweep < 12; ++sweep) {
        factor.solve(y);
        for (const auto& other : cluster) {
            Real dot = 0;
            for (std::size_t j = 0; j < n; ++j)
                dot += other[j] * y[j];
            for (std::size_t j = 0; j < n; ++j)
                y[j] -= dot * other[j];
        }
        const Real len = norm2(y);
        if (!(len > 0))
            throw numerical_failure("inverse iteration collapsed for k=" + std::to_string(label), label);
        for (auto& x : y)
            x /= len;
        if (residual_inf(t, eta, y) <= tol) {
            // one polishing sweep after the residual test first passes
            if (++converged_sweeps == 2)
                return y;
        }
    }
    if (converged_sweeps > 0)
        return y;
    throw numerical_failure("inverse iteration did not converge for k=" + std::to_string(label), label);
}

template <class Real>
std::vector<double> to_coefficients(const SymmetricForm<Real>& t, const std::vector<Real>& y) {
    using std::abs;
    const std::size_t n = y.size();
    std::vector<Real> d(n);
    for (std::size_t j = 0; j < n; ++j)
        d[j] = t.scaling[j] * y[j];
    const Real len = norm2(d);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = static_cast<double>(d[j] / len);
    // Largest-magnitude component positive; ties go to the lowest r.
    double peak = 0.0;
    for (double v : out)
        peak = std::max(peak, std::abs(v));
    for (double v : out) {
        if (std::abs(v) >= peak * (1.0 - 1e-12)) {
            if (v < 0)
                for (auto& x : out)
                    x = -x;
            break;
        }
    }
    return out;
}

} // namespace detail

struct SpectralSolution {
    Parity parity = Parity::Even;
    int n = 0;
    double a = 0.0;
    PrecisionTier tier = PrecisionTier::Double;
    int row_lo = 0;

    /// Sorted descending; label k = position + 1.
    std::vector<double> eigenvalues;
    /// eigenvectors[k-1][r - row_lo] = D_r^(k), normalized to sum D_r^2 = 1.
    std::vector<std::vector<double>> eigenvectors;
    /// Same order as eigenvalues; filled at the Extended tier only.
    std::vector<ExtendedReal> eigenvalues_extended;

    std::size_t dimension() const noexcept { return eigenvalues.size(); }
    int row_hi() const noexcept { return row_lo + static_cast<int>(eigenvalues.size()) - 1; }
    int q() const noexcept { return parity == Parity::Even ? 2 * n - 1 : 2 * n; }

    double eigenvalue(int k) const { return eigenvalues.at(check_label(k)); }
    const std::vector<double>& eigenvector(int k) const { return eigenvectors.at(check_label(k)); }
    double coefficient(int k, int r) const {
        if (r < row_lo || r > row_hi())
            throw invalid_argument("harmonic index " + std::to_string(r) + " outside the solution");
        return eigenvector(k)[static_cast<std::size_t>(r - row_lo)];
    }

    /// Label of the eigenvalue closest to eta.
    int nearest_label(double eta) const {
        std::size_t best = 0;
        for (std::size_t j = 1; j < eigenvalues.size(); ++j)
            if (std::abs(eigenvalues[j] - eta) < std::abs(eigenvalues[best] - eta))
                best = j;
        return static_cast<int>(best) + 1;
    }

  private:
    std::size_t check_label(int k) const {
        if (k < 1 || static_cast<std::size_t>(k) > eigenvalues.size())
            throw invalid_argument("eigenvalue label k=" + std::to_string(k) + " outside 1.." +
                                   std::to_string(eigenvalues.size()));
        return static_cast<std::size_t>(k - 1);
    }
};

namespace detail {

// Ascending eigenvalue brackets, one per index.
template <class Real>
std::vector<std::pair<Real, Real>> all_brackets(const SymmetricForm<Real>& t, const Real& rel_tol) {
    const auto [lo, hi] = gershgorin(t);
    std::vector<std::pair<Real, Real>> out;
    out.reserve(t.diag.size());
    for (std::size_t j = 0; j < t.diag.size(); ++j)
        out.push_back(bisect_index(t, j, lo, hi, rel_tol));
    return out;
}

// Extended brackets seeded from the double-precision ones.
inline std::vector<std::pair<ExtendedReal, ExtendedReal>>
extended_brackets(const SymmetricForm<ExtendedReal>& t, const std::vector<std::pair<double, double>>& seeds) {
    const ExtendedReal rel_tol = rel_tolerance<ExtendedReal>(PrecisionTier::Extended);
    const auto [glo, ghi] = gershgorin(t);
    std::vector<std::pair<ExtendedReal, ExtendedReal>> out;
    out.reserve(seeds.size());
    for (std::size_t j = 0; j < seeds.size(); ++j) {
        const double width = seeds[j].second - seeds[j].first;
        const double pad = 8.0 * width + 1e-13 * std::max(1.0, std::abs(seeds[j].first));
        ExtendedReal lo = ExtendedReal(seeds[j].first) - ExtendedReal(pad);
        ExtendedReal hi = ExtendedReal(seeds[j].second) + ExtendedReal(pad);
        if (!isolates(t, j, lo, hi)) {
            lo = glo;
            hi = ghi;
        }
        out.push_back(bisect_index(t, j, lo, hi, rel_tol));
    }
    return out;
}

// Eigenvectors for ascending eigenvalues; clusters are reorthogonalized.
template <class Real>
std::vector<std::vector<double>> eigenvectors_for(const SymmetricForm<Real>& t, const std::vector<Real>& ascending,
                                                  const Real& tol) {
    using std::abs;
    const std::size_t dim = ascending.size();
    const Real cluster_gap = Real(1e-3) * std::max<Real>(t.norm, Real(1));
    std::vector<std::vector<double>> out(dim);
    std::vector<std::vector<Real>> cluster;
    for (std::size_t j = 0; j < dim; ++j) {
        if (j > 0 && abs(ascending[j] - ascending[j - 1]) > cluster_gap)
            cluster.clear();
        const int label = static_cast<int>(dim - j);
        auto y = inverse_iteration(t, ascending[j], cluster, tol, label);
        out[j] = to_coefficients(t, y);
        cluster.push_back(std::move(y));
    }
    return out;
}

inline SpectralSolution diagonal_solution(const TridiagonalMatrix& m, PrecisionTier tier) {
    // a = 0: unit vectors; equal diagonals ordered by ascending r.
    const std::size_t dim = m.dimension();
    std::vector<std::size_t> order(dim);
    for (std::size_t j = 0; j < dim; ++j)
        order[j] = j;
    const auto d = m.diag();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] > d[y]; });
    SpectralSolution s;
    s.parity = m.parity();
    s.n = m.n();
    s.a = m.a();
    s.tier = tier;
    s.row_lo = m.row_lo();
    for (std::size_t j : order) {
        s.eigenvalues.push_back(d[j]);
        std::vector<double> v(dim, 0.0);
        v[j] = 1.0;
        s.eigenvectors.push_back(std::move(v));
        if (tier == PrecisionTier::Extended)
            s.eigenvalues_extended.emplace_back(d[j]);
    }
    return s;
}

} // namespace detail

/// Full spectrum, sorted descending, with normalized sign-fixed eigenvectors.
inline SpectralSolution eigen_decompose(const TridiagonalMatrix& m, PrecisionTier tier = PrecisionTier::Double) {
    if (m.a() == 0.0)
        return detail::diagonal_solution(m, tier);

    const auto t = symmetrize<double>(m);
    const double rel_tol = detail::rel_tolerance<double>(PrecisionTier::Double);
    const auto brackets = detail::all_brackets(t, rel_tol);
    const std::size_t dim = m.dimension();

    SpectralSolution s;
    s.parity = m.parity();
    s.n = m.n();
    s.a = m.a();
    s.tier = tier;
    s.row_lo = m.row_lo();

    std::vector<std::vector<double>> ascending_vectors;
    std::vector<double> ascending(dim);
    if (tier == PrecisionTier::Double) {
        for (std::size_t j = 0; j < dim; ++j)
            ascending[j] = 0.5 * (brackets[j].first + brackets[j].second);
        const double tol = 64.0 * static_cast<double>(dim) * std::numeric_limits<double>::epsilon() *
                           std::max(t.norm, 1.0);
        ascending_vectors = detail::eigenvectors_for(t, ascending, tol);
    } else {
        const auto te = symmetrize<ExtendedReal>(m);
        const auto ext = detail::extended_brackets(te, brackets);
        std::vector<ExtendedReal> asc_ext(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            asc_ext[j] = (ext[j].first + ext[j].second) / 2;
            ascending[j] = static_cast<double>(asc_ext[j]);
        }
        const ExtendedReal tol = ExtendedReal(1e-44) * std::max<ExtendedReal>(te.norm, ExtendedReal(1));
        ascending_vectors = detail::eigenvectors_for(te, asc_ext, tol);
        s.eigenvalues_extended.assign(asc_ext.rbegin(), asc_ext.rend());
    }
    s.eigenvalues.assign(ascending.rbegin(), ascending.rend());
    s.eigenvectors.assign(std::make_move_iterator(ascending_vectors.rbegin()),
                          std::make_move_iterator(ascending_vectors.rend()));
    return s;
}

/// Eigenvalue in [lo, hi] to extended precision; the bracket must hold exactly one.
inline ExtendedReal refine_in_bracket(const TridiagonalMatrix& m, double lo, double hi) {
    if (!(lo < hi))
        throw invalid_bracket("bracket must satisfy lo < hi");
    const auto t = symmetrize<ExtendedReal>(m);
    const ExtendedReal elo(lo), ehi(hi);
    const std::size_t below = sturm_count(t, elo);
    const std::size_t upto = sturm_count(t, ehi);
    if (upto - below != 1)
        throw invalid_bracket("bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "] holds " +
                              std::to_string(upto - below) + " eigenvalues, expected exactly 1");
    const auto [l, h] =
        detail::bisect_index(t, below, elo, ehi, detail::rel_tolerance<ExtendedReal>(PrecisionTier::Extended));
    return (l + h) / 2;
}

/// Eigenvalue nearest to eta0, refined in extended precision.
inline ExtendedReal refine_eigenvalue_extended(const TridiagonalMatrix& m, double eta0) {
    using boost::multiprecision::abs;
    const auto t = symmetrize<ExtendedReal>(m);
    const ExtendedReal rel_tol = detail::rel_tolerance<ExtendedReal>(PrecisionTier::Extended);
    const auto [glo, ghi] = detail::gershgorin(t);
    const ExtendedReal x(eta0);
    const std::size_t below = sturm_count(t, x);
    ExtendedReal best;
    bool found = false;
    for (std::size_t index : {below - 1, below}) {
        if (index >= m.dimension()) // also catches below == 0 wrap-around
            continue;
        const auto [l, h] = detail::bisect_index(t, index, glo, ghi, rel_tol);
        const ExtendedReal eta = (l + h) / 2;
        if (!found || abs(eta - x) < abs(best - x)) {
            best = eta;
            found = true;
        }
    }
    return best;
}

inline double refine_eigenvalue(const TridiagonalMatrix& m, double eta0) {
    return static_cast<double>(refine_eigenvalue_extended(m, eta0));
}

/// Normalized, sign-fixed coefficient vector D_r for the eigenvalue at eta.
inline std::vector<double> eigenvector_for(const TridiagonalMatrix& m, double eta) {
    const std::size_t dim = m.dimension();
    if (m.a() == 0.0) {
        const auto d = m.diag();
        for (std::size_t j = 0; j < dim; ++j) {
            if (std::abs(d[j] - eta) <= 1e-9 * std::max(1.0, std::abs(eta))) {
                std::vector<double> v(dim, 0.0);
                v[j] = 1.0;
                return v;
            }
        }
        throw invalid_argument("eta=" + std::to_string(eta) + " is not an eigenvalue");
    }
    const auto t = symmetrize<ExtendedReal>(m);
    const double slack = 1e-9 * std::max(1.0, std::abs(eta) + m.a() * static_cast<double>(dim));
    const std::size_t below = sturm_count(t, ExtendedReal(eta - slack));
    const std::size_t upto = sturm_count(t, ExtendedReal(eta + slack));
    if (upto == below)
        throw invalid_argument("eta=" + std::to_string(eta) + " is not an eigenvalue (no Sturm count change within " +
                               std::to_string(slack) + ")");
    const ExtendedReal refined = refine_eigenvalue_extended(m, eta);
    const ExtendedReal tol = ExtendedReal(1e-44) * std::max<ExtendedReal>(t.norm, ExtendedReal(1));
    const auto y = detail::inverse_iteration(t, refined, {}, tol, 0);
    return detail::to_coefficients(t, y);
}

} // namespace ince

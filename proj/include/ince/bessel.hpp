#pragma once

// Modified Bessel functions of the first kind, integer order.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ince/errors.hpp"

namespace ince {

namespace detail {

// Ascending series  sum_m (x/2)^(2m+l) / (m! (m+l)!).
inline double bessel_i_series(int l, double x) {
    const double half = 0.5 * x;
    double term = 1.0;
    for (int j = 1; j <= l; ++j)
        term *= half / j;
    double sum = term;
    const double q = half * half;
    for (int m = 1; m < 500; ++m) {
        term *= q / (static_cast<double>(m) * (m + l));
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum;
}

// e^{-x} I_l(x) by Miller's backward recurrence
//   I_{k-1} = I_{k+1} + (2k/x) I_k,
// normalized with I_0 + 2 sum_{k>=1} I_k = e^x.
inline double bessel_i_scaled_miller(int l, double x) {
    const int top = std::max(l, static_cast<int>(x));
    int start = top + 30 + 10 * static_cast<int>(std::ceil(std::sqrt(x)));
    start += start % 2;
    double above = 0.0;
    double cur = 1e-280;
    double wanted = 0.0;
    double sum = 0.0;
    for (int k = start; k >= 1; --k) {
        const double below = above + (2.0 * k / x) * cur;
        above = cur;
        cur = below; // now I_{k-1}
        if (k - 1 == l)
            wanted = cur;
        if (k - 1 >= 1)
            sum += 2.0 * cur;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            above *= 1e-250;
            wanted *= 1e-250;
            sum *= 1e-250;
        }
    }
    sum += cur; // I_0
    return wanted / sum;
}

} // namespace detail

/// e^{-x} I_l(x) for x >= 0; I_{-l} = I_l.
inline double modified_bessel_i_scaled(int l, double x) {
    if (!(x >= 0.0))
        throw invalid_argument("modified_bessel_i needs x >= 0, got " + std::to_string(x));
    l = std::abs(l);
    if (x == 0.0)
        return l == 0 ? 1.0 : 0.0;
    if (x <= 15.0)
        return detail::bessel_i_series(l, x) * std::exp(-x);
    return detail::bessel_i_scaled_miller(l, x);
}

/// I_l(x): power series for x <= 15, Miller backward recurrence above.
inline double modified_bessel_i(int l, double x) {
    if (!(x >= 0.0))
        throw invalid_argument("modified_bessel_i needs x >= 0, got " + std::to_string(x));
    l = std::abs(l);
    if (x <= 15.0)
        return x == 0.0 ? (l == 0 ? 1.0 : 0.0) : detail::bessel_i_series(l, x);
    return detail::bessel_i_scaled_miller(l, x) * std::exp(x);
}

} // namespace ince

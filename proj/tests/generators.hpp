#pragma once

// Deterministic generators for property tests.

#include <random>
#include <vector>

#include "ince/ince_matrix.hpp"

namespace ince::gen {

struct MatrixCase {
    Parity parity;
    int n;
    double a;
};

// Every (parity, n, a) with n <= n_max and a from the list; Even starts at n = 1.
inline std::vector<MatrixCase> matrix_grid(int n_max, const std::vector<double>& couplings) {
    std::vector<MatrixCase> out;
    for (Parity p : {Parity::Even, Parity::Odd})
        for (int n = (p == Parity::Even ? 1 : 0); n <= n_max; ++n)
            for (double a : couplings)
                out.push_back({p, n, a});
    return out;
}

// Random configurations from a fixed seed.
inline std::vector<MatrixCase> random_cases(std::size_t count, int n_max, double a_max, unsigned seed = 20240611u) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> par(0, 1);
    std::uniform_int_distribution<int> nn(0, n_max);
    std::uniform_real_distribution<double> aa(0.0, a_max);
    std::vector<MatrixCase> out;
    while (out.size() < count) {
        const Parity p = par(rng) ? Parity::Odd : Parity::Even;
        int n = nn(rng);
        if (p == Parity::Even && n == 0)
            n = 1;
        out.push_back({p, n, aa(rng)});
    }
    return out;
}

inline std::vector<double> uniform_samples(std::size_t count, double lo, double hi, unsigned seed = 7u) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> out(count);
    for (auto& x : out)
        x = d(rng);
    return out;
}

} // namespace ince::gen

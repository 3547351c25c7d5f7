#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "generators.hpp"
#include "ince/eigensolver.hpp"
#include "ince/errors.hpp"
#include "ince/ince_matrix.hpp"

using namespace ince;

namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

} // namespace

TEST(InceMatrix, EvenN1) {
    const auto m = build_even_matrix(1, 5.0);
    EXPECT_EQ(m.parity(), Parity::Even);
    EXPECT_EQ(m.row_lo(), 0);
    EXPECT_EQ(m.row_hi(), 1);
    EXPECT_EQ(vec(m.diag()), (std::vector<double>{0, 4}));
    EXPECT_EQ(vec(m.super()), (std::vector<double>{5}));
    EXPECT_EQ(vec(m.sub()), (std::vector<double>{5}));
}

TEST(InceMatrix, EvenN2) {
    const auto m = build_even_matrix(2, 1.0);
    EXPECT_EQ(m.row_lo(), -1);
    EXPECT_EQ(vec(m.diag()), (std::vector<double>{4, 0, 4, 16}));
    EXPECT_EQ(vec(m.super()), (std::vector<double>{1, 2, 3}));
    EXPECT_EQ(vec(m.sub()), (std::vector<double>{3, 2, 1}));
}

TEST(InceMatrix, EvenN15) {
    const auto m = build_even_matrix(15, 12.0);
    ASSERT_EQ(m.dimension(), 30u);
    EXPECT_EQ(m.row_lo(), -14);
    EXPECT_EQ(m.super().front(), 12.0);
    EXPECT_EQ(m.super().back(), 348.0);
    EXPECT_EQ(m.diag().front(), 4.0 * 14 * 14);
    EXPECT_EQ(m.diag()[m.index_of(0)], 0.0);
    EXPECT_EQ(m.diag().back(), 900.0);
    EXPECT_EQ(m.q(), 29);
}

TEST(InceMatrix, OddN0) {
    const auto m = build_odd_matrix(0, 7.0);
    EXPECT_EQ(vec(m.diag()), (std::vector<double>{1}));
    EXPECT_TRUE(m.super().empty());
    EXPECT_TRUE(m.sub().empty());
}

TEST(InceMatrix, OddN1) {
    const auto m = build_odd_matrix(1, 2.0);
    EXPECT_EQ(m.row_lo(), -1);
    EXPECT_EQ(vec(m.diag()), (std::vector<double>{1, 1, 9}));
    EXPECT_EQ(vec(m.super()), (std::vector<double>{2, 4}));
    EXPECT_EQ(vec(m.sub()), (std::vector<double>{4, 2}));
}

TEST(InceMatrix, OddFreeField) {
    const auto m = build_odd_matrix(2, 0.0);
    EXPECT_EQ(vec(m.diag()), (std::vector<double>{9, 1, 1, 9, 25}));
    for (double x : m.super())
        EXPECT_EQ(x, 0.0);
    for (double x : m.sub())
        EXPECT_EQ(x, 0.0);
}

TEST(InceMatrix, RejectsBadArguments) {
    EXPECT_THROW(build_even_matrix(0, 1.0), ince::invalid_argument);
    EXPECT_THROW(build_even_matrix(-2, 1.0), ince::invalid_argument);
    EXPECT_THROW(build_odd_matrix(-1, 1.0), ince::invalid_argument);
    EXPECT_THROW(build_even_matrix(2, -1.0), ince::invalid_argument);
    EXPECT_THROW(build_odd_matrix(2, std::nan("")), ince::invalid_argument);
    try {
        build_even_matrix(2, -1.0);
        FAIL();
    } catch (const ince::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("pi/2"), std::string::npos);
    }
}

TEST(InceMatrix, RowIndexOutOfRange) {
    const auto m = build_even_matrix(3, 1.0);
    EXPECT_THROW(m.index_of(-3), ince::invalid_argument);
    EXPECT_NO_THROW(m.index_of(-2));
    EXPECT_THROW(m.index_of(4), ince::invalid_argument);
}

TEST(CharPoly, SmallDeterminants) {
    EXPECT_EQ(char_poly_eval(build_odd_matrix(0, 3.0), 1.0), 0.0);
    EXPECT_EQ(char_poly_eval(build_even_matrix(1, 3.0), 0.0), -9.0);
    for (double a : {1.0, 12.0}) {
        const auto m = build_even_matrix(1, a);
        const double root = 2.0 + std::sqrt(4.0 + a * a);
        EXPECT_NEAR(char_poly_eval(m, root), 0.0, 1e-12 * root * root);
        EXPECT_NEAR(char_poly_eval(m, 4.0 - root), 0.0, 1e-12 * root * root);
    }
}

TEST(CharPoly, ScaledRecurrenceDoesNotOverflow) {
    const auto m = build_even_matrix(15, 12.0);
    const auto d = char_poly_scaled(m, 1e150);
    EXPECT_NE(d.sign(), 0);
    EXPECT_GT(d.exponent, 1000);
    EXPECT_THROW((void)d.value(), std::overflow_error);
    EXPECT_TRUE(std::isfinite(char_poly_eval(m, 700.0)));
}

// Properties over generated matrices.

TEST(InceMatrixProperty, Bookkeeping) {
    for (const auto& c : gen::random_cases(200, 20, 50.0)) {
        const auto m = build_matrix(c.parity, c.n, c.a);
        const std::size_t dim = c.parity == Parity::Even ? 2 * c.n : 2 * c.n + 1;
        ASSERT_EQ(m.dimension(), dim);
        ASSERT_EQ(m.super().size(), dim - 1);
        ASSERT_EQ(m.sub().size(), dim - 1);
        EXPECT_EQ(m.row_lo(), c.parity == Parity::Even ? -c.n + 1 : -c.n);
        EXPECT_EQ(m.row_hi(), c.n);
        if (dim > 1) {
            EXPECT_EQ(m.super().front(), c.a);
            EXPECT_EQ(m.sub().back(), c.a);
        }
    }
}

TEST(InceMatrixProperty, MirrorSymmetryAndPositiveProducts) {
    for (const auto& c : gen::random_cases(200, 20, 50.0)) {
        const auto m = build_matrix(c.parity, c.n, c.a);
        auto up = vec(m.super());
        std::reverse(up.begin(), up.end());
        EXPECT_EQ(up, vec(m.sub()));
        for (std::size_t j = 0; j < m.super().size(); ++j)
            EXPECT_GT(m.super()[j] * m.sub()[j], 0.0);
    }
}

TEST(InceMatrixProperty, CharPolyChangesSignBetweenEigenvalues) {
    for (const auto& c : gen::matrix_grid(5, {0.5, 1.0, 12.0})) {
        const auto m = build_matrix(c.parity, c.n, c.a);
        if (m.dimension() > 12 || m.dimension() < 2)
            continue;
        const auto s = eigen_decompose(m);
        for (std::size_t k = 0; k + 1 < s.dimension(); ++k) {
            const double hi = s.eigenvalues[k], lo = s.eigenvalues[k + 1];
            // double-precision determinant signs are unreliable inside tight pairs
            const double tight = 1e-6 * std::max(1.0, std::abs(hi));
            if (hi - lo < tight || (k > 0 && s.eigenvalues[k - 1] - hi < tight))
                continue;
            const double above_gap = k > 0 ? s.eigenvalues[k - 1] - hi : hi - lo;
            const double pad = 1e-3 * std::min(hi - lo, above_gap);
            const int above = char_poly_scaled(m, hi - pad).sign();
            const int below = char_poly_scaled(m, lo + pad).sign();
            EXPECT_EQ(above, below) << "no root strictly between consecutive eigenvalues";
            EXPECT_NE(char_poly_scaled(m, hi + pad).sign(), above);
        }
    }
}

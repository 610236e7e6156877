#include "navier4/kernels.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace navier4 {
namespace {

using testing::beam_unit_load;
using testing::kPi;
using testing::trapezium;

TEST(Green0, HandEvaluatedValues) {
    EXPECT_EQ(green0(0.0, 0.3), 0.0);
    // s <= x branch: 0.25 * (0.5 - 1) * (0.25 - 1 + 0.0625) / 6 = 11/768
    EXPECT_NEAR(green0(0.5, 0.25), 11.0 / 768.0, 1e-17);
    EXPECT_NEAR(green0(0.25, 0.5), 11.0 / 768.0, 1e-17);
    // Diagonal: x^2 (1-x)^2 / 3
    EXPECT_NEAR(green0(0.5, 0.5), 0.0625 / 3.0, 1e-17);
}

TEST(Green0, Symmetric) {
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j) {
            const double x = i / 200.0, s = j / 200.0;
            EXPECT_NEAR(green0(x, s), green0(s, x), 1e-15);
        }
}

TEST(Green0, VanishesOnBoundary) {
    for (int i = 0; i <= 100; ++i) {
        const double s = i / 100.0;
        EXPECT_EQ(green0(0.0, s), 0.0);
        EXPECT_EQ(green0(1.0, s), 0.0);
        EXPECT_EQ(green0(s, 0.0), 0.0);
        EXPECT_EQ(green0(s, 1.0), 0.0);
    }
}

TEST(Green0, IsGreenFunctionOfBeamOperator) {
    // Off the diagonal d^4/dx^4 G0 = 0, d^2/dx^2 G0 = 0 at x in {0,1}, and the third
    // x-derivative jumps by 1 across x = s. Checked by differencing green1.
    const double d = 1e-4;
    for (double s : {0.2, 0.5, 0.7}) {
        auto g1xx = [&](double x) { return (green1(x + d, s) - 2.0 * green1(x, s) + green1(x - d, s)) / (d * d); };
        const double right = g1xx(s + 10 * d);
        const double left = g1xx(s - 10 * d);
        EXPECT_NEAR(right - left, 1.0, 1e-3) << s;
        auto g0xx = [&](double x) { return (green0(x + d, s) - 2.0 * green0(x, s) + green0(x - d, s)) / (d * d); };
        EXPECT_NEAR(g0xx(2 * d), 0.0, 1e-3);
        EXPECT_NEAR(g0xx(1.0 - 2 * d), 0.0, 1e-3);
    }
}

TEST(Green1, HandEvaluatedValues) {
    EXPECT_NEAR(green1(0.0, 0.5), 0.0625, 1e-17);
    EXPECT_NEAR(green1(0.5, 0.5), 0.0, 1e-17);
    EXPECT_NEAR(green1(1.0, 0.5), -0.0625, 1e-17);
}

TEST(Green1, DiagonalContinuity) {
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double lower = x * (3.0 * x * x - 6.0 * x + x * x + 2.0) / 6.0;
        const double upper = (x - 1.0) * (3.0 * x * x - 2.0 * x + x * x) / 6.0;
        EXPECT_NEAR(lower, upper, 1e-15) << x;
        EXPECT_EQ(green1(x, x), lower);
    }
}

TEST(Green1, MatchesCentredDifferenceOfGreen0) {
    const double delta = 1e-5;
    for (int i = 1; i < 50; ++i)
        for (int j = 0; j <= 50; ++j) {
            const double x = i / 50.0, s = j / 50.0;
            if (std::abs(x - s) <= 2 * delta) continue;
            const double fd = (green0(x + delta, s) - green0(x - delta, s)) / (2 * delta);
            EXPECT_LE(std::abs(green1(x, s) - fd), 10.0 * delta * delta) << x << ' ' << s;
        }
}

TEST(GreenFunctions, RejectOutOfDomain) {
    EXPECT_THROW(green0(-0.1, 0.5), ArgumentError);
    EXPECT_THROW(green0(0.5, 1.5), ArgumentError);
    EXPECT_THROW(green1(1.0001, 0.5), ArgumentError);
    EXPECT_THROW(green1(0.5, std::nan("")), ArgumentError);
}

TEST(Constants, ExactValues) {
    constexpr auto c = constants();
    EXPECT_EQ(c.m0, 5.0 / 384.0);
    EXPECT_EQ(c.m1, 1.0 / 24.0);
    EXPECT_LT(c.m0, c.m1);
}

TEST(Constants, ReproducedByQuadrature) {
    const int n = 1000;
    double m0 = 0.0, m1 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        m0 = std::max(m0, trapezium([&](double s) { return std::abs(green0(x, s)); }, n));
        m1 = std::max(m1, trapezium([&](double s) { return std::abs(green1(x, s)); }, n));
    }
    EXPECT_NEAR(m0, 5.0 / 384.0, 1e-4);
    EXPECT_NEAR(m1, 1.0 / 24.0, 1e-4);
}

TEST(KernelBound, ExampleKernels) {
    const double m2_ex1 = kernel_bound_m2([](double x, double t) { return std::exp(x) * std::sin(kPi * t); }, 1000);
    EXPECT_NEAR(m2_ex1, 2.0 * std::numbers::e / kPi, 1e-3);
    const double m2_ex2 = kernel_bound_m2([](double x, double t) { return std::sin(kPi * x) * t; }, 1000);
    EXPECT_NEAR(m2_ex2, 0.5, 1e-6);
    EXPECT_EQ(kernel_bound_m2([](double, double) { return 0.0; }, 10), 0.0);
}

TEST(KernelBound, UsesAbsoluteValue) {
    // int |sin(2 pi t)| dt = 2/pi, while the signed integral is 0.
    const double m2 = kernel_bound_m2([](double, double t) { return std::sin(2.0 * kPi * t); }, 2000);
    EXPECT_NEAR(m2, 2.0 / kPi, 1e-5);
}

TEST(KernelBound, NonFiniteKernel) {
    EXPECT_THROW(kernel_bound_m2([](double x, double) { return 1.0 / x; }, 10), EvaluationError);
    EXPECT_THROW(kernel_bound_m2([](double, double) { return 1.0; }, 1), ArgumentError);
}

TEST(BuildTables, SmallGrid) {
    const GridSpec grid(2);
    const auto t = build_tables([](double, double) { return 1.0; }, grid);
    EXPECT_EQ(t.n, 2);
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(t.a0(0, j), 0.0);
        EXPECT_EQ(t.a0(2, j), 0.0);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(t.kmat(i, 0), 0.25);
        EXPECT_EQ(t.kmat(i, 1), 0.5);
        EXPECT_EQ(t.kmat(i, 2), 0.25);
    }
}

TEST(BuildTables, HalfWeightOnEndColumns) {
    const GridSpec grid(8);
    const auto t = build_tables([](double x, double s) { return 1.0 + x + s; }, grid);
    const double h = grid.h();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double s = grid.node(j);
            const double rho = (j == 0 || j == 8) ? 0.5 : 1.0;
            EXPECT_EQ(t.a0(i, j), h * rho * green0(x, s));
            EXPECT_EQ(t.a1(i, j), h * rho * green1(x, s));
            EXPECT_EQ(t.kmat(i, j), h * rho * (1.0 + x + s));
        }
    }
}

TEST(BuildTables, RowSumIsBeamUnderUnitLoad) {
    const GridSpec grid(100);
    const auto t = build_tables([](double, double) { return 0.0; }, grid);
    double sum = 0.0;
    for (double a : t.a0.row(50)) sum += a;
    EXPECT_NEAR(sum, 5.0 / 384.0, 1e-5);
}

TEST(BuildTables, RowSumSecondOrder) {
    auto err = [](int n) {
        const GridSpec grid(n);
        const auto t = build_tables([](double, double) { return 0.0; }, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double sum = 0.0;
            for (double a : t.a0.row(i)) sum += a;
            worst = std::max(worst, std::abs(sum - beam_unit_load(grid.node(i))));
        }
        return worst;
    };
    for (int n : {20, 40, 80}) {
        const double order = std::log2(err(n) / err(2 * n));
        EXPECT_GE(order, 1.8) << n;
    }
}

TEST(BuildTables, Deterministic) {
    const GridSpec grid(40);
    auto k = [](double x, double t) { return std::exp(x) * std::sin(kPi * t); };
    const auto a = build_tables(k, grid);
    const auto b = build_tables(k, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j) {
            EXPECT_EQ(a.a0(i, j), b.a0(i, j));
            EXPECT_EQ(a.a1(i, j), b.a1(i, j));
            EXPECT_EQ(a.kmat(i, j), b.kmat(i, j));
        }
}

TEST(BuildTables, NonFiniteKernel) {
    EXPECT_THROW(build_tables([](double, double t) { return std::log(t); }, GridSpec(4)), EvaluationError);
}

}  // namespace
}  // namespace navier4

#pragma once

/// Green functions of u'''' = phi with Navier conditions u(0)=u(1)=u''(0)=u''(1)=0,
/// their bound constants, and quadrature-weighted kernel matrices.

#include "navier4/errors.hpp"
#include "navier4/grid.hpp"
#include "navier4/matrix.hpp"
#include "navier4/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace navier4 {

namespace detail {

inline void check_unit_interval(double x, double s, const char* who) {
    if (!(x >= 0.0 && x <= 1.0 && s >= 0.0 && s <= 1.0)) {
        std::ostringstream msg;
        msg << who << ": arguments must lie in [0,1], got (" << x << ", " << s << ")";
        throw ArgumentError(msg.str());
    }
}

}  // namespace detail

/// u(x) = int_0^1 green0(x,s) phi(s) ds solves u'''' = phi under Navier conditions.
/// The s <= x branch is taken on the diagonal. Both branches are written with the
/// same operation order so that green0(x,s) and green0(s,x) agree bit for bit.
inline double green0(double x, double s) {
    detail::check_unit_interval(x, s, "green0");
    if (s <= x) return s * (x - 1.0) * (x * x - 2.0 * x + s * s) / 6.0;
    return x * (s - 1.0) * (s * s - 2.0 * s + x * x) / 6.0;
}

/// d/dx green0(x,s). Continuous across the diagonal.
inline double green1(double x, double s) {
    detail::check_unit_interval(x, s, "green1");
    if (s <= x) return s * (3.0 * x * x - 6.0 * x + s * s + 2.0) / 6.0;
    return (s - 1.0) * (3.0 * x * x - 2.0 * s + s * s) / 6.0;
}

struct GreenConstants {
    double m0;  ///< max_x int |green0(x,s)| ds
    double m1;  ///< max_x int |green1(x,s)| ds
};

constexpr GreenConstants constants() noexcept { return {5.0 / 384.0, 1.0 / 24.0}; }

inline constexpr double kM0 = 5.0 / 384.0;
inline constexpr double kM1 = 1.0 / 24.0;

/// max over grid nodes x_i of the trapezium value of int_0^1 |k(x_i,s)| ds.
template <class Kernel>
double kernel_bound_m2(const Kernel& k, int n) {
    const GridSpec grid(n);
    const auto x = grid.nodes();
    std::vector<double> row(grid.size());
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double value = k(x[i], x[j]);
            if (!std::isfinite(value)) {
                std::ostringstream msg;
                msg << "kernel is not finite at (" << x[i] << ", " << x[j] << ")";
                throw EvaluationError(msg.str());
            }
            row[j] = std::abs(value);
        }
        best = std::max(best, integrate(row, grid));
    }
    return best;
}

/// Trapezium-weighted matrices h*rho_j*G0(x_i,x_j), h*rho_j*G1(x_i,x_j), h*rho_j*k(x_i,x_j).
struct GreenTables {
    int n = 0;
    DenseMatrix a0;
    DenseMatrix a1;
    DenseMatrix kmat;
};

template <class Kernel>
GreenTables build_tables(const Kernel& k, const GridSpec& grid) {
    const std::size_t size = grid.size();
    const auto x = grid.nodes();
    const auto rho = trap_weights(grid.n());
    const double h = grid.h();

    GreenTables tables{grid.n(), DenseMatrix(size), DenseMatrix(size), DenseMatrix(size)};
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            const double w = h * rho[j];
            const double kv = k(x[i], x[j]);
            if (!std::isfinite(kv)) {
                std::ostringstream msg;
                msg << "kernel is not finite at (" << x[i] << ", " << x[j] << ")";
                throw EvaluationError(msg.str());
            }
            tables.a0(i, j) = w * green0(x[i], x[j]);
            tables.a1(i, j) = w * green1(x[i], x[j]);
            tables.kmat(i, j) = w * kv;
        }
    }
    return tables;
}

}  // namespace navier4

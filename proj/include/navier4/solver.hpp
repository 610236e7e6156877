#pragma once

/// Discrete successive-substitution scheme for u'''' = f(x, u, u', Ku):
///
///   Phi_0(x_i) = f(x_i, 0, 0, 0)
///   U = A0 Phi,  V = A1 Phi,  Z = K U          (trapezium-weighted Green/kernel matrices)
///   Phi_next(x_i) = f(x_i, U_i, V_i, Z_i)
///
/// One sweep is one application of the fixed-point operator. After sweep m the state holds
/// Phi_m together with the U, V, Z computed from Phi_{m-1}.

#include "navier4/errors.hpp"
#include "navier4/grid.hpp"
#include "navier4/kernels.hpp"
#include "navier4/problem.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace navier4 {

/// max_i |a_i - b_i|
inline double max_norm_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ArgumentError("max_norm_diff: length mismatch (" + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

inline double max_abs(std::span<const double> a) {
    double best = 0.0;
    for (double v : a) best = std::max(best, std::abs(v));
    return best;
}

struct IterationState {
    int m = 0;
    GridFunction phi;
    GridFunction u;
    GridFunction v;
    GridFunction z;
    std::optional<double> residual;  ///< ||Phi_m - Phi_{m-1}||, absent at m = 0
};

struct Successive {
    double eps = 1e-10;
};

/// Stop when ||U - u_exact|| <= h^2.
struct ExactError {};

struct StoppingRule {
    std::variant<Successive, ExactError> criterion = Successive{};
    int max_iter = 1000;

    static StoppingRule successive(double eps, int max_iter = 1000) {
        if (!(eps > 0.0)) throw ArgumentError("successive stopping needs eps > 0");
        return {Successive{eps}, max_iter};
    }
    static StoppingRule exact_error(int max_iter = 1000) { return {ExactError{}, max_iter}; }

    bool uses_exact() const noexcept { return std::holds_alternative<ExactError>(criterion); }
};

struct SolutionError {
    double u = 0.0;             ///< ||U - u_exact||
    std::optional<double> v;    ///< ||V - u'_exact|| when the derivative is known
};

struct Solution {
    GridSpec grid{2};
    GridFunction u;
    GridFunction v;
    int iterations = 0;
    std::vector<double> residual_history;
    std::optional<SolutionError> error;

    double final_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
};

namespace detail {

inline double checked_rhs(const Problem& problem, double x, double u, double v, double z, std::size_t node,
                          int iteration) {
    double value = 0.0;
    try {
        value = problem.f(x, u, v, z);
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "f failed at node " << node << " (x=" << x << ") in iteration " << iteration << ": " << e.what();
        throw EvaluationError(msg.str());
    }
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "f is not finite at node " << node << " (x=" << x << ") in iteration " << iteration;
        throw EvaluationError(msg.str());
    }
    return value;
}

inline void check_finite(std::span<const double> values, const char* what, int iteration) {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i])) {
            std::ostringstream msg;
            msg << what << " is not finite at node " << i << " in iteration " << iteration;
            throw EvaluationError(msg.str());
        }
}

}  // namespace detail

/// Phi_0(x_i) = f(x_i, 0, 0, 0); U, V, Z zero.
inline IterationState init(const Problem& problem, const GridSpec& grid) {
    IterationState state;
    const std::size_t size = grid.size();
    state.phi.resize(size);
    state.u.assign(size, 0.0);
    state.v.assign(size, 0.0);
    state.z.assign(size, 0.0);
    for (std::size_t i = 0; i < size; ++i)
        state.phi[i] = detail::checked_rhs(problem, grid.node(i), 0.0, 0.0, 0.0, i, 0);
    return state;
}

/// One application of the discrete operator.
inline IterationState sweep(const IterationState& state, const GreenTables& tables, const Problem& problem) {
    const GridSpec grid(tables.n);
    if (state.phi.size() != grid.size()) throw ArgumentError("sweep: state does not match the tables' grid");
    detail::check_finite(state.phi, "Phi", state.m);

    IterationState next;
    next.m = state.m + 1;
    next.u = tables.a0 * state.phi;
    next.v = tables.a1 * state.phi;
    next.z = tables.kmat * next.u;
    detail::check_finite(next.u, "U", next.m);
    detail::check_finite(next.v, "V", next.m);
    detail::check_finite(next.z, "Z", next.m);

    next.phi.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        next.phi[i] = detail::checked_rhs(problem, grid.node(i), next.u[i], next.v[i], next.z[i], i, next.m);
    next.residual = max_norm_diff(next.phi, state.phi);
    return next;
}

namespace detail {

inline GridFunction sample(const GridSpec& grid, const auto& fn, const char* what) {
    GridFunction out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = fn(grid.node(i));
        if (!std::isfinite(out[i]))
            throw EvaluationError(std::string(what) + " is not finite at node " + std::to_string(i));
    }
    return out;
}

}  // namespace detail

/// Iterates sweeps on precomputed tables until the stopping rule fires.
inline Solution solve(const Problem& problem, const GridSpec& grid, const StoppingRule& rule,
                      const GreenTables& tables) {
    if (tables.n != grid.n()) throw ArgumentError("solve: tables were built for a different grid");
    if (rule.max_iter < 1) throw ArgumentError("max_iter must be >= 1");
    if (rule.uses_exact() && !problem.has_exact())
        throw ArgumentError("exact-error stopping requires a problem with an exact solution");

    std::optional<GridFunction> exact_u;
    std::optional<GridFunction> exact_v;
    if (problem.has_exact()) exact_u = detail::sample(grid, [&](double x) { return problem.exact_u(x); }, "exact u");
    if (problem.has_exact_derivative())
        exact_v = detail::sample(grid, [&](double x) { return problem.exact_v(x); }, "exact u'");

    const double h2 = grid.h() * grid.h();
    Solution solution;
    solution.grid = grid;
    IterationState state = init(problem, grid);
    for (;;) {
        if (state.m >= rule.max_iter) {
            const double last = solution.residual_history.empty() ? 0.0 : solution.residual_history.back();
            std::ostringstream msg;
            msg << std::scientific;
            msg << "no convergence after " << state.m << " iterations (final residual " << last << ")";
            throw NonConvergenceError(msg.str(), state.m, last);
        }
        state = sweep(state, tables, problem);
        solution.residual_history.push_back(*state.residual);

        const bool done = std::visit(
            [&](const auto& c) {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, Successive>) return *state.residual <= c.eps;
                else return max_norm_diff(state.u, *exact_u) <= h2;
            },
            rule.criterion);
        if (done) break;
    }

    solution.iterations = state.m;
    solution.u = std::move(state.u);
    solution.v = std::move(state.v);
    if (exact_u) {
        SolutionError err;
        err.u = max_norm_diff(solution.u, *exact_u);
        if (exact_v) err.v = max_norm_diff(solution.v, *exact_v);
        solution.error = err;
    }
    return solution;
}

inline Solution solve(const Problem& problem, const GridSpec& grid, const StoppingRule& rule) {
    return solve(problem, grid, rule, build_tables(problem, grid));
}

/// Shortest decimal that round-trips to the same double.
inline std::string shortest(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

/// CSV with header "x,u,v", one node per line.
inline void write_csv(const Solution& s, std::ostream& os) {
    os << "x,u,v\n";
    for (std::size_t i = 0; i < s.u.size(); ++i)
        os << shortest(s.grid.node(i)) << ',' << shortest(s.u[i]) << ',' << shortest(s.v[i]) << '\n';
}

}  // namespace navier4

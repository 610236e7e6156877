#pragma once

/// Grid-refinement studies: one independent solve per grid size, plus observed orders.

#include "navier4/errors.hpp"
#include "navier4/problem.hpp"
#include "navier4/solver.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace navier4 {

enum class StudyMetric { error, residual };

struct StudyRow {
    int n = 0;
    double h2 = 0.0;
    int iterations = 0;
    double error = 0.0;  ///< ||U - u_exact|| or, for problems without one, the final residual
    StudyMetric metric = StudyMetric::error;

    friend bool operator==(const StudyRow&, const StudyRow&) = default;
};

namespace detail {

inline StudyRow study_row(const Problem& problem, int n, const StoppingRule& rule) {
    const std::string where = "N=" + std::to_string(n) + ": ";
    try {
        const GridSpec grid(n);
        const Solution s = solve(problem, grid, rule);
        StudyRow row;
        row.n = n;
        row.h2 = grid.h() * grid.h();
        row.iterations = s.iterations;
        if (s.error) {
            row.error = s.error->u;
        } else {
            row.error = s.final_residual();
            row.metric = StudyMetric::residual;
        }
        return row;
    } catch (const NonConvergenceError& e) {
        throw NonConvergenceError(where + e.what(), e.iterations(), e.final_residual());
    } catch (const EvaluationError& e) {
        throw EvaluationError(where + e.what());
    } catch (const ArgumentError& e) {
        throw ArgumentError(where + e.what());
    }
}

}  // namespace detail

/// One row per grid size, in input order. Rows are solved concurrently when `parallel`.
inline std::vector<StudyRow> convergence_table(const Problem& problem, std::span<const int> ns,
                                               const StoppingRule& rule, bool parallel = true) {
    if (ns.empty()) throw ArgumentError("convergence_table needs at least one grid size");
    for (int n : ns)
        if (n < 2) throw ArgumentError("grid sizes must be >= 2, got " + std::to_string(n));
    if (rule.uses_exact() && !problem.has_exact())
        throw ArgumentError("exact-error stopping requires a problem with an exact solution");

    std::vector<StudyRow> rows;
    rows.reserve(ns.size());
    if (!parallel) {
        for (int n : ns) rows.push_back(detail::study_row(problem, n, rule));
        return rows;
    }
    std::vector<std::future<StudyRow>> pending;
    pending.reserve(ns.size());
    for (int n : ns)
        pending.push_back(std::async(std::launch::async, [&problem, n, &rule] { return detail::study_row(problem, n, rule); }));
    // Drain every future before rethrowing so no task outlives the references it holds.
    std::exception_ptr first_error;
    for (auto& f : pending) {
        try {
            rows.push_back(f.get());
        } catch (...) {
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

/// log(e_i / e_{i+1}) / log(N_{i+1} / N_i) for each adjacent pair; nullopt where the
/// pair has a zero or non-finite error. Fewer than two rows gives an empty result.
inline std::vector<std::optional<double>> observed_order(std::span<const StudyRow> rows) {
    std::vector<std::optional<double>> orders;
    if (rows.size() < 2) return orders;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double e0 = rows[i].error;
        const double e1 = rows[i + 1].error;
        const double ratio = static_cast<double>(rows[i + 1].n) / static_cast<double>(rows[i].n);
        if (!(e0 > 0.0) || !(e1 > 0.0) || !std::isfinite(e0) || !std::isfinite(e1) || ratio == 1.0) {
            orders.emplace_back(std::nullopt);
            continue;
        }
        orders.emplace_back(std::log(e0 / e1) / std::log(ratio));
    }
    return orders;
}

/// 5 significant digits, scientific.
inline std::string sci5(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", value);
    return buf;
}

/// CSV with header "N,h2,m,error" (or "N,h2,m,residual").
inline void write_csv(std::span<const StudyRow> rows, std::ostream& os) {
    const bool residual = !rows.empty() && rows.front().metric == StudyMetric::residual;
    os << "N,h2,m," << (residual ? "residual" : "error") << '\n';
    for (const auto& r : rows) os << r.n << ',' << sci5(r.h2) << ',' << r.iterations << ',' << sci5(r.error) << '\n';
}

}  // namespace navier4

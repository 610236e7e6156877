#pragma once

/// JSON documents for certificates, solutions and studies (nlohmann/json).

#include "navier4/certificate.hpp"
#include "navier4/solver.hpp"
#include "navier4/study.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <span>

namespace navier4 {

namespace detail {

inline nlohmann::json optional_flag(const std::optional<bool>& f) {
    return f ? nlohmann::json(*f) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json to_json(const Certificate& c) {
    return {
        {"q", c.q},
        {"M", c.inputs.m},
        {"L0", c.inputs.l0},
        {"L1", c.inputs.l1},
        {"L2", c.inputs.l2},
        {"M0", c.m0},
        {"M1", c.m1},
        {"M2", c.inputs.m2},
        {"u_bound", c.u_bound},
        {"v_bound", c.v_bound},
        {"z_bound", c.z_bound},
        {"contraction_ok", c.contraction_ok},
        {"sup_ok", detail::optional_flag(c.sup_ok)},
        {"positivity_ok", detail::optional_flag(c.positivity_ok)},
    };
}

/// Summary of a solve: grid size, iterations, final residual, errors, extremes.
inline nlohmann::json to_json(const Solution& s) {
    nlohmann::json j{
        {"N", s.grid.n()},
        {"iterations", s.iterations},
        {"residual", s.final_residual()},
        {"residual_history", s.residual_history},
        {"max_abs_u", max_abs(s.u)},
        {"max_abs_v", max_abs(s.v)},
        {"error_u", nullptr},
        {"error_v", nullptr},
    };
    if (s.error) {
        j["error_u"] = s.error->u;
        if (s.error->v) j["error_v"] = *s.error->v;
    }
    return j;
}

inline nlohmann::json to_json(std::span<const StudyRow> rows) {
    nlohmann::json out = nlohmann::json::array();
    const auto orders = observed_order(rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        nlohmann::json row{{"N", r.n}, {"h2", r.h2}, {"m", r.iterations}};
        row[r.metric == StudyMetric::error ? "error" : "residual"] = r.error;
        if (i > 0 && orders[i - 1]) row["order"] = *orders[i - 1];
        else row["order"] = nullptr;
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace navier4

#pragma once

#include "navier4/errors.hpp"
#include "navier4/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <string>

namespace navier4 {

namespace detail {

inline std::string fixed(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-300 ? 0.0 : v);
    return buf;
}

}  // namespace detail

/// Standalone SVG of the polyline (x_i, u_i) in a 900x540 viewBox with labelled linear
/// axes. The y range is the data range padded by 5% on each side.
inline void write_svg(std::span<const double> x, std::span<const double> u, std::ostream& os,
                      const std::string& title = "approximate solution") {
    if (x.empty() || x.size() != u.size()) throw ArgumentError("write_svg: need matching, nonempty x and u");

    constexpr double width = 900.0, height = 540.0;
    constexpr double left = 90.0, right = 30.0, top = 40.0, bottom = 60.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
    const auto [umin_it, umax_it] = std::minmax_element(u.begin(), u.end());
    double xmin = *xmin_it, xmax = *xmax_it;
    double ymin = *umin_it, ymax = *umax_it;
    if (xmax == xmin) xmax = xmin + 1.0;
    double span = ymax - ymin;
    if (span == 0.0) span = std::max(std::abs(ymax), 1.0);
    ymin -= 0.05 * span;
    ymax += 0.05 * span;

    auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double v) { return top + (ymax - v) / (ymax - ymin) * plot_h; };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"540\" viewBox=\"0 0 900 540\">\n"
       << "  <rect x=\"0\" y=\"0\" width=\"900\" height=\"540\" fill=\"white\"/>\n"
       << "  <text x=\"450\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << title
       << "</text>\n";

    // axes
    os << "  <g stroke=\"black\" stroke-width=\"1\">\n"
       << "    <line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
       << top + plot_h << "\"/>\n"
       << "    <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n"
       << "  </g>\n";

    constexpr int ticks = 5;
    os << "  <g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int k = 0; k <= ticks; ++k) {
        const double xv = xmin + (xmax - xmin) * k / ticks;
        const double yv = ymin + (ymax - ymin) * k / ticks;
        const std::string tx = detail::fixed(px(xv), 2), ty = detail::fixed(py(yv), 2);
        os << "    <line x1=\"" << tx << "\" y1=\"" << top + plot_h << "\" x2=\"" << tx << "\" y2=\"" << top + plot_h + 5
           << "\" stroke=\"black\"/>\n"
           << "    <text x=\"" << tx << "\" y=\"" << top + plot_h + 20 << "\" text-anchor=\"middle\">"
           << detail::tick_label(xv) << "</text>\n"
           << "    <line x1=\"" << left - 5 << "\" y1=\"" << ty << "\" x2=\"" << left << "\" y2=\"" << ty
           << "\" stroke=\"black\"/>\n"
           << "    <text x=\"" << left - 8 << "\" y=\"" << ty << "\" text-anchor=\"end\" dominant-baseline=\"middle\">"
           << detail::tick_label(yv) << "</text>\n";
    }
    os << "    <text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">x</text>\n"
       << "  </g>\n";

    os << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ' ';
        os << detail::fixed(px(x[i]), 3) << ',' << detail::fixed(py(u[i]), 3);
    }
    os << "\"/>\n</svg>\n";
}

inline void emit_svg(const Solution& solution, const std::string& path) {
    if (solution.u.empty()) throw ArgumentError("emit_svg: empty solution");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    const auto x = solution.grid.nodes();
    write_svg(x, solution.u, out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace navier4

#pragma once

#include "navier4/errors.hpp"
#include "navier4/expr.hpp"
#include "navier4/grid.hpp"
#include "navier4/kernels.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace navier4 {

/// Right-hand side f(x, u, v, z): position, value, first derivative, kernel integral.
using RhsFunction = std::function<double(double x, double u, double v, double z)>;
/// Fredholm kernel k(x, t) on [0,1]^2.
using KernelFunction = std::function<double(double x, double t)>;
using ScalarFunction = std::function<double(double x)>;

/// One instance of u'''' = f(x, u, u', int_0^1 k(x,t) u(t) dt) with Navier conditions on [0,1].
/// Functions must be pure; problems are shared read-only across threads.
class Problem {
public:
    Problem(std::string name, RhsFunction f, KernelFunction kernel,
            std::optional<ScalarFunction> exact_u = std::nullopt,
            std::optional<ScalarFunction> exact_v = std::nullopt)
        : name_(std::move(name)), f_(std::move(f)), kernel_(std::move(kernel)),
          exact_u_(std::move(exact_u)), exact_v_(std::move(exact_v)) {
        if (!f_ || !kernel_) throw ArgumentError("problem '" + name_ + "' needs both f and a kernel");
        if (exact_u_) {
            for (double end : {0.0, 1.0}) {
                const double value = (*exact_u_)(end);
                if (!(std::abs(value) <= 1e-12)) {
                    std::ostringstream msg;
                    msg << "exact solution of '" << name_ << "' violates u(" << end << ") = 0 (got " << value << ")";
                    throw ArgumentError(msg.str());
                }
            }
        }
    }

    const std::string& name() const noexcept { return name_; }
    double f(double x, double u, double v, double z) const { return f_(x, u, v, z); }
    double kernel(double x, double t) const { return kernel_(x, t); }
    const RhsFunction& rhs() const noexcept { return f_; }
    const KernelFunction& kernel_function() const noexcept { return kernel_; }

    bool has_exact() const noexcept { return exact_u_.has_value(); }
    bool has_exact_derivative() const noexcept { return exact_v_.has_value(); }
    double exact_u(double x) const { return (*exact_u_)(x); }
    double exact_v(double x) const { return (*exact_v_)(x); }

private:
    std::string name_;
    RhsFunction f_;
    KernelFunction kernel_;
    std::optional<ScalarFunction> exact_u_;
    std::optional<ScalarFunction> exact_v_;
};

/// Box D_M (or D_M^+ when `positive`) on which the existence hypotheses are checked.
struct DomainBox {
    double m = 0.0;
    double m2 = 0.0;
    double u_bound = 0.0;  ///< M0*M
    double v_bound = 0.0;  ///< M1*M
    double z_bound = 0.0;  ///< M0*M2*M
    bool positive = false;

    static DomainBox make(double m, double m2, bool positive = false) {
        if (!(m > 0.0) || !std::isfinite(m)) throw ArgumentError("domain bound M must be positive and finite");
        if (!(m2 >= 0.0) || !std::isfinite(m2)) throw ArgumentError("kernel bound M2 must be nonnegative and finite");
        return {m, m2, kM0 * m, kM1 * m, kM0 * m2 * m, positive};
    }

    double u_min() const noexcept { return positive ? 0.0 : -u_bound; }
};

inline Problem example1() {
    using std::numbers::pi;
    auto f = [](double x, double u, double v, double z) {
        const double s = std::sin(pi * x);
        return u * u * z + u * v - 0.5 * std::exp(x) * s * s + pi * pi * pi * pi * s -
               0.5 * pi * std::sin(2.0 * pi * x);
    };
    auto k = [](double x, double t) { return std::exp(x) * std::sin(pi * t); };
    auto exact_u = [](double x) { return std::sin(pi * x); };
    auto exact_v = [](double x) { return pi * std::cos(pi * x); };
    return Problem("example1", f, k, ScalarFunction(exact_u), ScalarFunction(exact_v));
}

inline Problem example2() {
    using std::numbers::pi;
    auto f = [](double x, double u, double /*v*/, double z) { return (2.0 - u * u) * z + std::sin(pi * x); };
    auto k = [](double x, double t) { return std::sin(pi * x) * t; };
    return Problem("example2", f, k);
}

struct RegistryEntry {
    std::string_view name;
    std::string_view description;
    Problem (*make)();
};

inline const std::vector<RegistryEntry>& registry() {
    static const std::vector<RegistryEntry> entries{
        {"example1", "f = u^2 z + u v - e^x sin^2(pi x)/2 + pi^4 sin(pi x) - (pi/2) sin(2 pi x), k = e^x sin(pi t), exact u = sin(pi x)",
         &example1},
        {"example2", "f = (2 - u^2) z + sin(pi x), k = sin(pi x) t, no exact solution", &example2},
    };
    return entries;
}

inline Problem lookup_example(std::string_view name) {
    for (const auto& entry : registry())
        if (entry.name == name) return entry.make();
    throw ArgumentError("unknown example '" + std::string(name) + "'");
}

/// Builds a problem from expression text. f may use x,u,v,z; the kernel x,t; the exact solution x.
inline Problem from_expressions(std::string_view f_text, std::string_view k_text,
                                std::optional<std::string_view> exact_text = std::nullopt,
                                std::string name = "expression") {
    const Expr f_expr = parse(f_text, {Var::x, Var::u, Var::v, Var::z});
    const Expr k_expr = parse(k_text, {Var::x, Var::t});
    RhsFunction f = [f_expr](double x, double u, double v, double z) {
        return f_expr.evaluate(Bindings{x, 0.0, u, v, z});
    };
    KernelFunction k = [k_expr](double x, double t) { return k_expr.evaluate(Bindings{x, t, 0.0, 0.0, 0.0}); };
    std::optional<ScalarFunction> exact;
    if (exact_text) {
        const Expr u_expr = parse(*exact_text, {Var::x});
        exact = ScalarFunction([u_expr](double x) { return u_expr.evaluate(Bindings{x, 0.0, 0.0, 0.0, 0.0}); });
    }
    return Problem(std::move(name), std::move(f), std::move(k), std::move(exact));
}

/// Green tables for a problem's kernel on the given grid.
inline GreenTables build_tables(const Problem& problem, const GridSpec& grid) {
    return build_tables(problem.kernel_function(), grid);
}

}  // namespace navier4

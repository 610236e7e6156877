#pragma once

/// Existence/uniqueness hypotheses for the fixed-point operator: contraction factor,
/// sampled sup and positivity checks over D_M, Lipschitz estimates, and the a-priori
/// error envelope of the successive iteration.

#include "navier4/errors.hpp"
#include "navier4/kernels.hpp"
#include "navier4/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace navier4 {

/// Grid used when M2 has to be computed from the kernel.
inline constexpr int kDefaultM2Grid = 1000;
inline constexpr int kDefaultDensity = 20;
inline constexpr int kDefaultLipschitzSamples = 100000;

struct ContractionInputs {
    double m = 0.0;   ///< M > 0
    double l0 = 0.0;  ///< Lipschitz constant in u
    double l1 = 0.0;  ///< Lipschitz constant in v
    double l2 = 0.0;  ///< Lipschitz constant in z
    double m2 = 0.0;  ///< max_x int |k(x,s)| ds

    void validate() const {
        if (!(m > 0.0) || !std::isfinite(m)) throw ArgumentError("M must be positive and finite");
        for (double c : {l0, l1, l2, m2})
            if (!(c >= 0.0) || !std::isfinite(c)) throw ArgumentError("L0, L1, L2 and M2 must be nonnegative and finite");
    }
};

struct Certificate {
    ContractionInputs inputs;
    double m0 = kM0;
    double m1 = kM1;
    double q = 0.0;
    double u_bound = 0.0;  ///< bound on |u|: M0*M
    double v_bound = 0.0;  ///< bound on |u'|: M1*M
    double z_bound = 0.0;  ///< bound on |Ku|: M0*M2*M
    bool contraction_ok = false;
    std::optional<bool> sup_ok;
    std::optional<bool> positivity_ok;
};

/// q = L0*M0 + L1*M1 + L2*M0*M2 and the solution bounds implied by M.
inline Certificate contraction_check(const ContractionInputs& in) {
    in.validate();
    Certificate c;
    c.inputs = in;
    c.q = in.l0 * kM0 + in.l1 * kM1 + in.l2 * kM0 * in.m2;
    c.u_bound = kM0 * in.m;
    c.v_bound = kM1 * in.m;
    c.z_bound = kM0 * in.m2 * in.m;
    c.contraction_ok = c.q < 1.0;
    return c;
}

struct BoxPoint {
    double x, u, v, z;
};

inline std::string to_string(const BoxPoint& p) {
    std::ostringstream os;
    os << std::setprecision(17) << "(x=" << p.x << ", u=" << p.u << ", v=" << p.v << ", z=" << p.z << ")";
    return os.str();
}

namespace detail {

inline double checked_f(const Problem& problem, const BoxPoint& p) {
    double value = 0.0;
    try {
        value = problem.f(p.x, p.u, p.v, p.z);
    } catch (const std::exception& e) {
        throw EvaluationError("f failed at " + to_string(p) + ": " + e.what());
    }
    if (!std::isfinite(value)) throw EvaluationError("f is not finite at " + to_string(p));
    return value;
}

inline double sample_at(double lo, double hi, int k, int count) {
    if (k == count - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
}

/// Calls visit(point) for every node of a density^4 tensor grid over x in [0,1] and the box.
/// Endpoints of every axis, and therefore all corners, are included.
template <class Visit>
void for_each_box_sample(const DomainBox& box, double z_lo, int density, Visit&& visit) {
    for (int ix = 0; ix < density; ++ix) {
        const double x = sample_at(0.0, 1.0, ix, density);
        for (int iu = 0; iu < density; ++iu) {
            const double u = sample_at(box.u_min(), box.u_bound, iu, density);
            for (int iv = 0; iv < density; ++iv) {
                const double v = sample_at(-box.v_bound, box.v_bound, iv, density);
                for (int iz = 0; iz < density; ++iz) {
                    const double z = sample_at(z_lo, box.z_bound, iz, density);
                    visit(BoxPoint{x, u, v, z});
                }
            }
        }
    }
}

inline void check_density(int density) {
    if (density < 2) throw ArgumentError("sampling density must be >= 2 per axis, got " + std::to_string(density));
}

}  // namespace detail

struct SupCheck {
    double sup_estimate = 0.0;
    bool ok = false;
    BoxPoint argmax{};
};

/// Largest sampled |f| over D_M; ok when it does not exceed M.
inline SupCheck sup_f_check(const Problem& problem, const DomainBox& box, int density = kDefaultDensity) {
    detail::check_density(density);
    SupCheck result;
    detail::for_each_box_sample(box, -box.z_bound, density, [&](const BoxPoint& p) {
        const double a = std::abs(detail::checked_f(problem, p));
        if (a > result.sup_estimate) {
            result.sup_estimate = a;
            result.argmax = p;
        }
    });
    result.ok = result.sup_estimate <= box.m;
    return result;
}

inline SupCheck sup_f_check(const Problem& problem, double m, int density = kDefaultDensity,
                            std::optional<double> m2 = std::nullopt) {
    const double kernel_bound = m2 ? *m2 : kernel_bound_m2(problem.kernel_function(), kDefaultM2Grid);
    return sup_f_check(problem, DomainBox::make(m, kernel_bound), density);
}

struct LipschitzEstimate {
    double l0 = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
};

/// Lower estimates of the Lipschitz constants of f in u, v, z over D_M.
///
/// For each argument, `samples` random points of the box are paired with a second point
/// that differs only in that argument, and the largest |difference quotient| is kept.
/// x is shared by both points of a pair. The result is a lower bound for the true
/// constants; analytic constants, when known, should be preferred.
inline LipschitzEstimate lipschitz_estimate(const Problem& problem, const DomainBox& box,
                                            int samples = kDefaultLipschitzSamples, std::uint64_t seed = 20240601) {
    if (samples < 100) throw ArgumentError("lipschitz_estimate needs at least 100 samples");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::array<double, 3> lo{box.u_min(), -box.v_bound, -box.z_bound};
    const std::array<double, 3> hi{box.u_bound, box.v_bound, box.z_bound};
    auto draw = [&](std::size_t axis) { return lo[axis] + (hi[axis] - lo[axis]) * unit(rng); };

    std::array<double, 3> best{0.0, 0.0, 0.0};
    for (std::size_t axis = 0; axis < 3; ++axis) {
        if (!(hi[axis] > lo[axis])) continue;
        for (int s = 0; s < samples; ++s) {
            const double x = unit(rng);
            std::array<double, 3> a{draw(0), draw(1), draw(2)};
            std::array<double, 3> b = a;
            b[axis] = draw(axis);
            const double delta = b[axis] - a[axis];
            if (delta == 0.0) continue;
            const double fa = detail::checked_f(problem, {x, a[0], a[1], a[2]});
            const double fb = detail::checked_f(problem, {x, b[0], b[1], b[2]});
            best[axis] = std::max(best[axis], std::abs(fb - fa) / std::abs(delta));
        }
    }
    return {best[0], best[1], best[2]};
}

struct PositivityCheck {
    bool ok = false;
    double min_f = 0.0;         ///< smallest sampled f on D_M^+
    double sup_estimate = 0.0;  ///< largest sampled |f| on D_M^+
    double max_abs_f0 = 0.0;    ///< max_x |f(x,0,0,0)| over the x samples
    bool kernel_nonnegative = false;
};

/// Sampled form of the positive-solution hypotheses: 0 <= f <= M on D_M^+ and f(x,0,0,0) not
/// identically zero.
///
/// When the kernel is nonnegative on a sampled grid, u >= 0 implies Ku >= 0, so z is sampled
/// on [0, z_bound]; otherwise on [-z_bound, z_bound].
inline PositivityCheck positivity_check(const Problem& problem, double m, int density = kDefaultDensity,
                                        std::optional<double> m2 = std::nullopt) {
    detail::check_density(density);
    const double kernel_bound = m2 ? *m2 : kernel_bound_m2(problem.kernel_function(), kDefaultM2Grid);
    const DomainBox box = DomainBox::make(m, kernel_bound, true);

    PositivityCheck result;
    result.kernel_nonnegative = true;
    constexpr int kKernelSamples = 101;
    for (int i = 0; i < kKernelSamples && result.kernel_nonnegative; ++i)
        for (int j = 0; j < kKernelSamples; ++j) {
            const double kx = detail::sample_at(0.0, 1.0, i, kKernelSamples);
            const double kt = detail::sample_at(0.0, 1.0, j, kKernelSamples);
            if (problem.kernel(kx, kt) < 0.0) {
                result.kernel_nonnegative = false;
                break;
            }
        }

    result.min_f = std::numeric_limits<double>::infinity();
    const double z_lo = result.kernel_nonnegative ? 0.0 : -box.z_bound;
    detail::for_each_box_sample(box, z_lo, density, [&](const BoxPoint& p) {
        const double value = detail::checked_f(problem, p);
        result.min_f = std::min(result.min_f, value);
        result.sup_estimate = std::max(result.sup_estimate, std::abs(value));
    });
    for (int ix = 0; ix < density; ++ix) {
        const double x = detail::sample_at(0.0, 1.0, ix, density);
        result.max_abs_f0 = std::max(result.max_abs_f0, std::abs(detail::checked_f(problem, {x, 0.0, 0.0, 0.0})));
    }
    result.ok = result.min_f >= 0.0 && result.sup_estimate <= m && result.max_abs_f0 > 0.0;
    return result;
}

struct AprioriBound {
    double u_err = 0.0;  ///< M0 * q^m/(1-q) * d
    double v_err = 0.0;  ///< M1 * q^m/(1-q) * d
};

/// Error envelope after m successive substitutions with contraction factor q and first
/// displacement d = ||phi_1 - phi_0||.
inline AprioriBound apriori_bound(double q, double d, int m) {
    if (!(q >= 0.0 && q < 1.0)) throw ArgumentError("apriori_bound requires 0 <= q < 1");
    if (!(d >= 0.0) || !std::isfinite(d)) throw ArgumentError("apriori_bound requires d >= 0");
    if (m < 0) throw ArgumentError("apriori_bound requires m >= 0");
    const double p = std::pow(q, m) / (1.0 - q);
    return {kM0 * p * d, kM1 * p * d};
}

/// Human-readable rendering, numbers in 5 significant digits.
inline std::string to_text(const Certificate& c) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(4);
    os << "M        " << c.inputs.m << '\n'
       << "L0       " << c.inputs.l0 << '\n'
       << "L1       " << c.inputs.l1 << '\n'
       << "L2       " << c.inputs.l2 << '\n'
       << "M0       " << c.m0 << '\n'
       << "M1       " << c.m1 << '\n'
       << "M2       " << c.inputs.m2 << '\n'
       << "q        " << c.q << '\n'
       << "|u| <=   " << c.u_bound << '\n'
       << "|u'| <=  " << c.v_bound << '\n'
       << "|Ku| <=  " << c.z_bound << '\n'
       << "contraction " << (c.contraction_ok ? "yes" : "NO") << '\n';
    auto flag = [](const std::optional<bool>& f) { return f ? (*f ? "yes" : "NO") : "not checked"; };
    os << "sup|f| <= M " << flag(c.sup_ok) << '\n' << "positivity  " << flag(c.positivity_ok) << '\n';
    return os.str();
}

}  // namespace navier4

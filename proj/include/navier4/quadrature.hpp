#pragma once

#include "navier4/errors.hpp"
#include "navier4/grid.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace navier4 {

/// Composite trapezium weights rho_j: 1/2 at both ends, 1 in the interior.
inline std::vector<double> trap_weights(int n) {
    if (n < 2) throw ArgumentError("trapezium rule needs n >= 2, got " + std::to_string(n));
    std::vector<double> rho(static_cast<std::size_t>(n) + 1, 1.0);
    rho.front() = 0.5;
    rho.back() = 0.5;
    return rho;
}

/// h * sum_j rho_j * samples_j. Plain left-to-right accumulation.
inline double integrate(std::span<const double> samples, const GridSpec& grid) {
    if (samples.size() != grid.size())
        throw ArgumentError("integrate: expected " + std::to_string(grid.size()) + " samples, got " +
                            std::to_string(samples.size()));
    const std::size_t last = samples.size() - 1;
    double sum = 0.0;
    for (std::size_t j = 0; j <= last; ++j) {
        if (!std::isfinite(samples[j]))
            throw ArgumentError("integrate: non-finite sample at node " + std::to_string(j));
        const double rho = (j == 0 || j == last) ? 0.5 : 1.0;
        sum += rho * samples[j];
    }
    return grid.h() * sum;
}

}  // namespace navier4

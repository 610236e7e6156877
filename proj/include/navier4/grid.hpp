#pragma once

#include "navier4/errors.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace navier4 {

/// Real-valued function sampled at the N+1 grid nodes.
using GridFunction = std::vector<double>;

/// Uniform grid x_i = i*h on [0,1], h = 1/N.
class GridSpec {
public:
    explicit GridSpec(int n) : n_(n) {
        if (n < 2) throw ArgumentError("grid size N must be >= 2, got " + std::to_string(n));
        h_ = 1.0 / static_cast<double>(n);
    }

    int n() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n_) + 1; }

    /// Node i. The last node is pinned to 1 so that x_N == 1 exactly.
    double node(std::size_t i) const noexcept {
        if (i == static_cast<std::size_t>(n_)) return 1.0;
        return static_cast<double>(i) / static_cast<double>(n_);
    }

    GridFunction nodes() const {
        GridFunction x(size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = node(i);
        return x;
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int n_;
    double h_;
};

}  // namespace navier4

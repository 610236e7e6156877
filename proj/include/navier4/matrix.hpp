#pragma once

#include "navier4/errors.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace navier4 {

/// Square dense matrix, row-major.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t rows() const noexcept { return n_; }
    std::size_t cols() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * n_, n_};
    }

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const {
        if (x.size() != n_ || y.size() != n_) throw ArgumentError("matvec: dimension mismatch");
        for (std::size_t i = 0; i < n_; ++i) {
            const double* a = data_.data() + i * n_;
            double sum = 0.0;
            for (std::size_t j = 0; j < n_; ++j) sum += a[j] * x[j];
            y[i] = sum;
        }
    }

    std::vector<double> operator*(std::span<const double> x) const {
        std::vector<double> y(n_);
        multiply(x, y);
        return y;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace navier4

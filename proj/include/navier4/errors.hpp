#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace navier4 {

/// Invalid argument to a library operation (bad grid size, out-of-domain input, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A user function (f, k, exact solution, expression) failed to produce a finite value.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Expression text could not be parsed. `offset()` is the byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// The fixed-point iteration hit its iteration cap without meeting the stopping rule.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& message, int iterations, double final_residual)
        : std::runtime_error(message), iterations_(iterations), final_residual_(final_residual) {}

    int iterations() const noexcept { return iterations_; }
    double final_residual() const noexcept { return final_residual_; }

private:
    int iterations_;
    double final_residual_;
};

}  // namespace navier4

// errors.hpp — Exception types thrown by the core library

#pragma once

#include <stdexcept>
#include <string>

namespace phonocool {

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature or integration failed to meet its budget; carries the achieved estimate.
struct NumericalError : std::runtime_error {
    NumericalError(const std::string& what, double estimate = 0.0)
        : std::runtime_error(what), error_estimate(estimate) {}
    double error_estimate;
};

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& what, int line_number = 0)
        : std::runtime_error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + what
                                             : what),
          line(line_number) {}
    int line;
};

struct IoError : std::runtime_error {
    IoError(const std::string& what, std::string file)
        : std::runtime_error(what + ": " + file), path(std::move(file)) {}
    std::string path;
};

} // namespace phonocool

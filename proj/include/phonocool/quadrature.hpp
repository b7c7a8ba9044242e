// quadrature.hpp — Globally adaptive Gauss-Kronrod integration with an absolute tolerance

#pragma once

#include <functional>

namespace phonocool::quad {

struct Result {
    double value{0.0};
    double error{0.0};
    int intervals{0};
};

struct AdaptiveOptions {
    double abs_tol{1e-9};
    int max_intervals{2000};
};

// Bisects the interval with the largest Kronrod error estimate until the summed
// estimate drops below abs_tol. Throws NumericalError with the achieved
// estimate when the interval budget runs out.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const AdaptiveOptions& opts = {});

} // namespace phonocool::quad

// fit.hpp — Least-squares Lorentzian fit for spectral line shapes

#pragma once

#include <vector>

namespace phonocool {

// y(x) = amplitude · width² / ((x − center)² + width²)
struct LorentzianFit {
    double amplitude{0.0};
    double center{0.0};
    double width{0.0};
    double r_squared{0.0};
    int iterations{0};

    double operator()(double x) const;
};

// Seeds from the quadratic fit of 1/y, then runs damped Gauss-Newton.
// Throws InvalidArgument for fewer than three points or non-positive data.
LorentzianFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& y);

} // namespace phonocool

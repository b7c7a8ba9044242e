#include "phonocool/fit.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "phonocool/errors.hpp"

namespace phonocool {

double LorentzianFit::operator()(double x) const {
    const double d = x - center;
    return amplitude * width * width / (d * d + width * width);
}

namespace {

double sum_sq(const std::vector<double>& x, const std::vector<double>& y, const LorentzianFit& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f(x[i]);
        s += r * r;
    }
    return s;
}

} // namespace

LorentzianFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = x.size();
    if (n < 3 || y.size() != n) throw InvalidArgument("fit_lorentzian: need >= 3 matching points");
    for (double v : y)
        if (!(v > 0.0)) throw InvalidArgument("fit_lorentzian: data must be positive");

    // 1/y = (x² − 2x₀x + x₀² + w²) / (A w²) is quadratic in x.
    Eigen::MatrixXd v(n, 3);
    Eigen::VectorXd inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        v(i, 0) = x[i] * x[i];
        v(i, 1) = x[i];
        v(i, 2) = 1.0;
        inv(i) = 1.0 / y[i];
    }
    const Eigen::Vector3d p = v.colPivHouseholderQr().solve(inv);
    LorentzianFit f;
    if (p(0) > 0.0) {
        f.center = -p(1) / (2.0 * p(0));
        const double w2 = p(2) / p(0) - f.center * f.center;
        f.width = std::sqrt(std::max(w2, 1e-30));
        f.amplitude = 1.0 / (p(0) * f.width * f.width);
    } else {
        std::size_t k = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (y[i] > y[k]) k = i;
        f.center = x[k];
        f.amplitude = y[k];
        f.width = 0.5 * (x.back() - x.front());
    }

    double cost = sum_sq(x, y, f);
    double lambda = 1e-3;
    for (int it = 0; it < 200; ++it) {
        Eigen::MatrixXd jac(n, 3);
        Eigen::VectorXd res(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x[i] - f.center;
            const double w2 = f.width * f.width;
            const double den = d * d + w2;
            const double shape = w2 / den;
            res(i) = y[i] - f.amplitude * shape;
            jac(i, 0) = shape;
            jac(i, 1) = f.amplitude * 2.0 * d * w2 / (den * den);
            jac(i, 2) = f.amplitude * 2.0 * f.width * d * d / (den * den);
        }
        const Eigen::Matrix3d jtj = jac.transpose() * jac;
        const Eigen::Vector3d jtr = jac.transpose() * res;
        bool improved = false;
        for (int tries = 0; tries < 20 && !improved; ++tries) {
            Eigen::Matrix3d a = jtj;
            a.diagonal() *= 1.0 + lambda;
            const Eigen::Vector3d step = a.ldlt().solve(jtr);
            LorentzianFit g = f;
            g.amplitude += step(0);
            g.center += step(1);
            g.width = std::abs(f.width + step(2));
            const double c = sum_sq(x, y, g);
            if (c < cost) {
                const double gain = cost - c;
                f = g;
                cost = c;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                f.iterations = it + 1;
                if (gain <= 1e-15 * std::max(cost, 1e-300)) it = 200;
            } else {
                lambda *= 10.0;
            }
        }
        if (!improved) break;
    }

    double mean = 0.0;
    for (double v2 : y) mean += v2;
    mean /= static_cast<double>(n);
    double tot = 0.0;
    for (double v2 : y) tot += (v2 - mean) * (v2 - mean);
    f.r_squared = tot > 0.0 ? 1.0 - cost / tot : 1.0;
    return f;
}

} // namespace phonocool

// Reference computations used only by the tests. Nothing here calls into the
// library's quadrature, eigen-decomposition or rate code.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "phonocool/linalg.hpp"

namespace oracle {

struct Node {
    double x, w;
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
inline std::vector<Node> legendre(int n) {
    std::vector<Node> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        out[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return out;
}

inline double composite(const std::function<double(double)>& f, double a, double b, int panels,
                        int order = 16) {
    static thread_local std::vector<Node> nodes;
    if (static_cast<int>(nodes.size()) != order) nodes = legendre(order);
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (const auto& nd : nodes) s += nd.w * f(mid + 0.5 * h * nd.x);
    }
    return 0.5 * h * s;
}

inline double spectral_density(double w, double alpha, double wc) {
    return w > 0.0 ? 2.0 * alpha * w * w * w / (wc * wc) * std::exp(-w / wc) : 0.0;
}

inline double coth_half(double w, double beta) { return 1.0 / std::tanh(0.5 * beta * w); }

// P∫₀^W J(ω)[ω + coth(βω/2)ν]/(ω² − ν²) dω with the pole folded symmetrically:
// ∫₀^p [F(p+s) − F(p−s)]/s ds + ∫_{2p}^W F(ω)/(ω − p) dω, F = J·[…]/(ω + p).
inline double pv_shift(double nu, double alpha, double wc, double temperature, double upper,
                       int panels) {
    const double beta = 1.0 / temperature;
    const double p = std::abs(nu);
    auto F = [&](double w) {
        if (w <= 0.0) return 0.0;
        return spectral_density(w, alpha, wc) * (w + coth_half(w, beta) * nu) / (w + p);
    };
    auto folded = [&](double s) { return s > 0.0 ? (F(p + s) - F(p - s)) / s : 0.0; };
    auto tail = [&](double w) { return F(w) / (w - p); };
    return composite(folded, 0.0, p, panels) + composite(tail, 2.0 * p, upper, panels);
}

// Real roots of x³ + a x² + b x + c with three real roots (trigonometric form).
inline std::vector<double> cubic_roots(double a, double b, double c) {
    const double q = (a * a - 3.0 * b) / 9.0;
    const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    const double th = std::acos(std::clamp(r / std::sqrt(q * q * q), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(q);
    std::vector<double> x{m * std::cos(th / 3.0) - a / 3.0,
                          m * std::cos((th + 2.0 * std::numbers::pi) / 3.0) - a / 3.0,
                          m * std::cos((th - 2.0 * std::numbers::pi) / 3.0) - a / 3.0};
    std::sort(x.begin(), x.end());
    return x;
}

// Random density matrix ρ = G G†/Tr(G G†) with Gaussian G.
inline phonocool::Mat3 random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    phonocool::Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = {g(rng), g(rng)};
    phonocool::Mat3 rho = m * m.adjoint();
    return rho / rho.trace();
}

inline phonocool::Mat3 random_matrix(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    phonocool::Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace oracle

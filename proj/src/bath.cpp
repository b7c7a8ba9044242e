#include "phonocool/bath.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "phonocool/errors.hpp"
#include "phonocool/quadrature.hpp"

namespace phonocool {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this |ν| the shift integral is evaluated in its ν = 0 form.
constexpr double kZeroFrequency = 1e-12;

// 2n(ω) + 1 = coth(βω/2), finite-safe for small βω.
double two_n_plus_one(double omega, double beta) {
    const double x = beta * omega;
    if (x < 1e-8) return 2.0 / x + x / 6.0;
    return 1.0 / std::tanh(0.5 * x);
}

} // namespace

void BathSpec::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidArgument("alpha must be non-negative and finite");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c))
        throw InvalidArgument("omega_c must be positive and finite");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw InvalidArgument("temperature must be positive and finite");
}

double spectral_density(double omega, const BathSpec& bath) {
    if (!(omega > 0.0)) return 0.0;
    const double r = omega / bath.omega_c;
    return 2.0 * bath.alpha * omega * r * r * std::exp(-r);
}

double bose_occupation(double nu, const BathSpec& bath) {
    if (!(nu > 0.0)) {
        std::ostringstream os;
        os << "bose_occupation requires nu > 0, got " << nu;
        throw InvalidArgument(os.str());
    }
    const double x = nu * bath.beta();
    if (x < 1e-8) return 1.0 / x - 0.5 + x / 12.0;
    return 1.0 / std::expm1(x);
}

double rate_a(double nu, const BathSpec& bath) {
    if (nu > 0.0) return kPi * (bose_occupation(nu, bath) + 1.0) * spectral_density(nu, bath);
    if (nu < 0.0) return kPi * bose_occupation(-nu, bath) * spectral_density(-nu, bath);
    // J(ν)/ν → 0 as ν → 0 for the cubic low-frequency form.
    return 0.0;
}

ShiftValue shift_b(double nu, const BathSpec& bath, const ShiftOptions& opts) {
    if (!(opts.abs_tol > 0.0)) throw InvalidArgument("shift_b: tolerance must be positive");
    if (bath.alpha == 0.0) return {};

    const double beta = bath.beta();
    const double upper = opts.upper_factor * bath.omega_c;
    quad::AdaptiveOptions q{opts.abs_tol, opts.max_intervals};

    if (std::abs(nu) < kZeroFrequency) {
        auto g = [&](double w) { return w > 0.0 ? spectral_density(w, bath) / w : 0.0; };
        const auto r = quad::integrate(g, 0.0, upper, q);
        return {r.value, r.error};
    }

    const double pole = std::abs(nu);
    if (pole >= upper)
        throw InvalidArgument("shift_b: |nu| lies beyond the integration cut-off");

    // integrand = f(ω)/(ω − |ν|)
    auto f = [&](double w) {
        if (!(w > 0.0)) return 0.0;
        return spectral_density(w, bath) * (w + two_n_plus_one(w, beta) * nu) / (w + pole);
    };
    const double residue = f(pole);
    auto regular = [&](double w) {
        const double d = w - pole;
        if (d == 0.0) return 0.0;
        return (f(w) - residue) / d;
    };

    q.abs_tol = 0.5 * opts.abs_tol;
    const auto lo = quad::integrate(regular, 0.0, pole, q);
    const auto hi = quad::integrate(regular, pole, upper, q);
    const double log_term = residue * std::log((upper - pole) / pole);
    return {lo.value + hi.value + log_term, lo.error + hi.error};
}

RateTable rate_table(const EigenSystem& eig, const BathSpec& bath, const ShiftOptions& opts,
                     bool include_shifts) {
    bath.validate();
    RateTable t;
    t.nu = eig.nu;
    t.b.setZero();
    t.b_error.setZero();
    std::map<double, ShiftValue> memo;
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
            const double nu = eig.nu(i, j);
            t.a(i, j) = rate_a(nu, bath);
            if (!include_shifts) continue;
            const double key = std::abs(nu) < kZeroFrequency ? 0.0 : nu;
            auto it = memo.find(key);
            if (it == memo.end()) it = memo.emplace(key, shift_b(key, bath, opts)).first;
            t.b(i, j) = it->second.value;
            t.b_error(i, j) = it->second.error;
        }
    }
    return t;
}

} // namespace phonocool

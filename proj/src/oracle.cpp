#include "phonocool/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "phonocool/errors.hpp"
#include "phonocool/generators.hpp"
#include "phonocool/ode.hpp"

namespace phonocool {

namespace {

struct Node {
    double omega;
    double weight;
};

std::vector<Node> legendre_nodes(double upper, std::size_t panels) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    std::vector<Node> nodes;
    nodes.reserve(panels * 20);
    const double width = upper / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = (static_cast<double>(p) + 0.5) * width;
        const double half = 0.5 * width;
        for (std::size_t k = 0; k < x.size(); ++k) {
            nodes.push_back({mid - half * x[k], half * w[k]});
            nodes.push_back({mid + half * x[k], half * w[k]});
        }
    }
    return nodes;
}

// J(ω)coth(βω/2) and J(ω) at each node.
struct Weighted {
    double omega, sym, anti;
};

std::vector<Weighted> weighted_nodes(const BathSpec& bath, double upper, std::size_t panels) {
    std::vector<Weighted> out;
    for (const auto& n : legendre_nodes(upper, panels)) {
        const double j = spectral_density(n.omega, bath);
        const double coth = 1.0 / std::tanh(0.5 * bath.beta() * n.omega);
        out.push_back({n.omega, n.weight * j * coth, n.weight * j});
    }
    return out;
}

std::size_t panels_for(double upper, double tau) {
    // at most ~2 rad of phase per 20-point panel
    return std::max<std::size_t>(200, static_cast<std::size_t>(std::ceil(upper * std::abs(tau) / 2.0)));
}

cplx correlation_sum(const std::vector<Weighted>& nodes, double tau) {
    double re = 0.0, im = 0.0;
    for (const auto& n : nodes) {
        re += n.sym * std::cos(n.omega * tau);
        im -= n.anti * std::sin(n.omega * tau);
    }
    return {re, im};
}

Mat3 expm_hermitian(const Mat3& h, double s) {
    const Mat3 x = cplx(0.0, -s) * h;
    return x.exp();
}

} // namespace

void MemoryKernelConfig::validate() const {
    if (!(t_mem > 0.0)) throw InvalidArgument("t_mem must be positive");
    if (!(dt > 0.0)) throw InvalidArgument("oracle dt must be positive");
    if (quad_points < 2) throw InvalidArgument("quad_points must be at least 2");
}

CorrelationValue bath_correlation(double tau, const BathSpec& bath, double upper_factor,
                                  double tol) {
    bath.validate();
    if (bath.alpha == 0.0) return {};
    const double upper = upper_factor * bath.omega_c;
    const std::size_t p = panels_for(upper, tau);
    const cplx coarse = correlation_sum(weighted_nodes(bath, upper, p), tau);
    const cplx fine = correlation_sum(weighted_nodes(bath, upper, 2 * p), tau);
    const double err = std::abs(fine - coarse);
    if (err > tol * std::max(1.0, std::abs(fine))) {
        std::ostringstream os;
        os << "bath_correlation: quadrature did not converge at tau = " << tau << " (estimate "
           << err << ")";
        throw NumericalError(os.str(), err);
    }
    return {fine, err};
}

CorrelationTable::CorrelationTable(const BathSpec& bath, double step, std::size_t count,
                                   double upper_factor)
    : bath_(bath), step_(step), samples_(count, cplx(0.0)) {
    bath.validate();
    if (!(step > 0.0) || count == 0) throw InvalidArgument("correlation table needs step > 0");
    if (bath.alpha == 0.0) return;
    const double upper = upper_factor * bath.omega_c;
    const double s_max = step * static_cast<double>(count - 1);
    const auto nodes = weighted_nodes(bath, upper, panels_for(upper, s_max));
    constexpr std::size_t kResync = 256;
    for (const auto& n : nodes) {
        const cplx rot = std::polar(1.0, -n.omega * step);
        cplx z = 1.0;
        for (std::size_t k = 0; k < count; ++k) {
            if (k % kResync == 0) z = std::polar(1.0, -n.omega * step * static_cast<double>(k));
            // e^{−iωs}: Re = cos ωs, Im = −sin ωs
            samples_[k] += cplx(n.sym * z.real(), n.anti * z.imag());
            z *= rot;
        }
    }
}

std::shared_ptr<const CorrelationTable> make_correlation_table(const BathSpec& bath,
                                                               const MemoryKernelConfig& cfg) {
    cfg.validate();
    const double q = 0.5 * cfg.dt / cfg.quad_points;
    const auto half_steps = static_cast<std::size_t>(std::lround(cfg.t_mem / (0.5 * cfg.dt)));
    const std::size_t count = half_steps * static_cast<std::size_t>(cfg.quad_points) + 1;
    return std::make_shared<const CorrelationTable>(bath, q, count);
}

Tcl2Kernel::Tcl2Kernel(const SystemSpec& spec, std::shared_ptr<const CorrelationTable> correlations,
                       const MemoryKernelConfig& cfg)
    : spec_(spec), cfg_(cfg) {
    cfg_.validate();
    if (!correlations) throw InvalidArgument("Tcl2Kernel: missing correlation table");
    h_ = build_hamiltonian(spec_);
    o_ = coupling_operator();
    coherent_ = coherent_superop(h_);
    radiative_ = radiative_dissipator(spec_);
    half_step_ = 0.5 * cfg_.dt;

    const double q = half_step_ / cfg_.quad_points;
    if (std::abs(correlations->step() - q) > 1e-12 * q)
        throw InvalidArgument("Tcl2Kernel: correlation table spacing does not match the config");
    const auto half_steps = static_cast<std::size_t>(std::lround(cfg_.t_mem / half_step_));
    const auto& c = correlations->samples();
    const std::size_t needed = half_steps * static_cast<std::size_t>(cfg_.quad_points) + 1;
    if (c.size() < needed) throw InvalidArgument("Tcl2Kernel: correlation table too short");

    const Mat3 u_step = expm_hermitian(h_, q);
    Mat3 u = Mat3::Identity();
    Mat3 prev = c[0] * o_;
    Mat3 acc = Mat3::Zero();
    lambdas_.reserve(half_steps + 1);
    lambdas_.push_back(acc);
    for (std::size_t k = 1; k < needed; ++k) {
        u = u_step * u;
        const Mat3 cur = c[k] * (u * o_ * u.adjoint());
        acc += (0.5 * q) * (prev + cur);
        prev = cur;
        if (k % static_cast<std::size_t>(cfg_.quad_points) == 0) lambdas_.push_back(acc);
    }
}

const Mat3& Tcl2Kernel::lambda(double t) const {
    if (!(t > 0.0)) return lambdas_.front();
    const auto m = static_cast<std::size_t>(std::lround(t / half_step_));
    return lambdas_[std::min(m, lambdas_.size() - 1)];
}

Super Tcl2Kernel::generator(double t, double u) const {
    const Mat3& lam = lambda(t);
    Mat3 lam_plus = lam;
    Mat3 lam_minus = lam;
    if (u != 0.0) {
        const Mat3 up = expm_hermitian(h_, u);
        const Mat3 um = expm_hermitian(h_, -u);
        lam_plus = up * lam * up.adjoint();
        lam_minus = um * lam * um.adjoint();
    }
    return coherent_ + sandwich(lam_plus, o_) + sandwich(o_, lam_minus.adjoint()) -
           left_mul(o_ * lam) - right_mul(lam.adjoint() * o_) + radiative_;
}

double Tcl2Kernel::heat_current(double t, const Mat3& rho) const {
    const Mat3& lam = lambda(t);
    const Mat3 comm = h_ * lam - lam * h_;
    return -2.0 * (comm * rho * o_).trace().real();
}

TclResult tcl_propagate(const Tcl2Kernel& kernel, const Mat3& rho0, double t_end, double u,
                        int store_every) {
    const double dt = kernel.config().dt;
    if (!(t_end >= 0.0)) throw InvalidArgument("tcl_propagate: t_end must be non-negative");
    const long steps = std::lround(std::ceil(t_end / dt - 1e-9));
    const bool physical = u == 0.0;
    const int every = std::max(1, store_every);

    // generators on the half-step grid; constant past the memory time
    const double half = 0.5 * dt;
    const std::size_t grid =
        std::min<std::size_t>(static_cast<std::size_t>(2 * steps) + 1,
                              static_cast<std::size_t>(std::lround(kernel.memory_time() / half)) + 1);
    std::vector<Super> gens;
    gens.reserve(grid);
    for (std::size_t m = 0; m < grid; ++m) gens.push_back(kernel.generator(half * m, u));
    auto gen_at = [&](double t) -> const Super& {
        const auto m = static_cast<std::size_t>(std::lround(t / half));
        return gens[std::min(m, gens.size() - 1)];
    };
    auto rhs = [&](double t, const Vec9& y) -> Vec9 { return gen_at(t) * y; };

    TclResult out;
    auto& tr = out.trajectory;
    Vec9 y = vec(rho0);
    tr.times.push_back(0.0);
    tr.states.push_back(rho0);
    tr.min_eigenvalue = physical ? min_eigenvalue(rho0) : 0.0;
    auto record = [&](double t, const Mat3& rho) {
        if (!physical) return;
        HeatRecord h;
        h.time = t;
        h.current = kernel.heat_current(t, rho);
        h.method = Method::tcl_oracle;
        h.route = HeatRoute::trace_formula;
        out.heat.push_back(h);
    };
    record(0.0, rho0);
    for (long n = 1; n <= steps; ++n) {
        y = ode::rk4_step(rhs, (n - 1) * dt, y, dt);
        const Mat3 rho = unvec(y);
        if (physical) {
            const double drift = std::abs(rho.trace() - rho0.trace());
            tr.max_trace_drift = std::max(tr.max_trace_drift, drift);
            if (!(drift <= 1e-6)) {
                std::ostringstream os;
                os << "tcl_propagate: trace drift " << drift << " at t = " << n * dt
                   << "; reduce dt";
                throw NumericalError(os.str(), drift);
            }
            tr.min_eigenvalue = std::min(tr.min_eigenvalue, min_eigenvalue(rho));
        }
        if (n % every == 0 || n == steps) {
            tr.times.push_back(n * dt);
            tr.states.push_back(rho);
            record(n * dt, rho);
        }
    }
    // Integrate the current for ⟨Q⟩ with the trapezoid rule over stored samples.
    for (std::size_t k = 1; k < out.heat.size(); ++k) {
        const double h = out.heat[k].time - out.heat[k - 1].time;
        out.heat[k].mean_heat =
            out.heat[k - 1].mean_heat + 0.5 * h * (out.heat[k].current + out.heat[k - 1].current);
    }
    return out;
}

TclResult tcl_propagate(const SystemSpec& spec, const BathSpec& bath, const MemoryKernelConfig& cfg,
                        const Mat3& rho0, double t_end) {
    const Tcl2Kernel kernel(spec, make_correlation_table(bath, cfg), cfg);
    return tcl_propagate(kernel, rho0, t_end);
}

TclSteadyState tcl_steady_state(const Tcl2Kernel& kernel) {
    const double t = kernel.memory_time();
    Liouvillian l;
    l.matrix = kernel.generator(t);
    l.method = Method::tcl_oracle;
    l.include_shifts = true;
    TclSteadyState out;
    out.state = steady_state(l);
    out.current = kernel.heat_current(t, out.state.rho);
    return out;
}

} // namespace phonocool

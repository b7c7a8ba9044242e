#include "phonocool/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "phonocool/errors.hpp"
#include "phonocool/ode.hpp"

namespace phonocool {

std::string_view to_string(HeatRoute r) {
    return r == HeatRoute::trace_formula ? "trace_formula" : "counting_fd";
}

std::string_view to_string(FdScheme s) {
    return s == FdScheme::forward ? "forward" : "central";
}

HeatRoute route_from_string(std::string_view name) {
    if (name == "trace_formula") return HeatRoute::trace_formula;
    if (name == "counting_fd") return HeatRoute::counting_fd;
    throw InvalidArgument("unknown heat route '" + std::string(name) + "'");
}

FdScheme scheme_from_string(std::string_view name) {
    if (name == "forward") return FdScheme::forward;
    if (name == "central") return FdScheme::central;
    throw InvalidArgument("unknown finite-difference scheme '" + std::string(name) + "'");
}

Mat3 default_initial_state() {
    return projector(level::lower);
}

void check_density(const Mat3& rho, double tol) {
    if (hermiticity_defect(rho) > tol) throw InvalidArgument("density matrix is not hermitian");
    if (std::abs(rho.trace() - 1.0) > tol) throw InvalidArgument("density matrix trace is not 1");
}

Trajectory propagate(const Liouvillian& l, const Mat3& rho0, double t_end, double dt,
                     const PropagateOptions& opts) {
    if (!(dt > 0.0)) throw InvalidArgument("propagate: dt must be positive");
    if (!(t_end >= 0.0)) throw InvalidArgument("propagate: t_end must be non-negative");
    check_density(rho0);
    const long steps = std::lround(std::ceil(t_end / dt - 1e-9));
    const double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;
    const bool physical = l.u == 0.0;
    const int every = std::max(1, opts.store_every);

    auto rhs = [&](double, const Vec9& y) -> Vec9 { return l.matrix * y; };

    Trajectory tr;
    Vec9 y = vec(rho0);
    const cplx trace0 = rho0.trace();
    tr.times.push_back(0.0);
    tr.states.push_back(rho0);
    tr.min_eigenvalue = physical ? min_eigenvalue(rho0) : 0.0;
    for (long n = 1; n <= steps; ++n) {
        y = ode::rk4_step(rhs, (n - 1) * h, y, h);
        const Mat3 rho = unvec(y);
        if (physical) {
            const double drift = std::abs(rho.trace() - trace0);
            tr.max_trace_drift = std::max(tr.max_trace_drift, drift);
            if (!(drift <= opts.trace_drift_limit)) {
                std::ostringstream os;
                os << "propagate: trace drift " << drift << " at t = " << n * h
                   << " exceeds " << opts.trace_drift_limit << "; reduce dt (currently " << dt << ")";
                throw NumericalError(os.str(), drift);
            }
            tr.min_eigenvalue = std::min(tr.min_eigenvalue, min_eigenvalue(rho));
        }
        if (n % every == 0 || n == steps) {
            tr.times.push_back(n * h);
            tr.states.push_back(rho);
        }
    }
    return tr;
}

SteadyState steady_state(const Liouvillian& l) {
    if (l.u != 0.0) throw InvalidArgument("steady_state requires the u = 0 generator");
    Eigen::JacobiSVD<Super> svd(l.matrix, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smallest = sv(kSuperDim - 1);
    const double second = sv(kSuperDim - 2);
    if (second - smallest < 1e-8) {
        std::ostringstream os;
        os << "steady_state: non-unique steady state (singular values " << smallest << ", "
           << second << ")";
        throw NumericalError(os.str(), second);
    }
    Vec9 v = svd.matrixV().col(kSuperDim - 1);
    Mat3 rho = unvec(v);
    const cplx tr = rho.trace();
    if (std::abs(tr) < 1e-300) throw NumericalError("steady_state: null vector is traceless");
    rho /= tr;
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    SteadyState out;
    out.rho = rho;
    out.residual = (l.matrix * vec(rho)).norm();
    out.singular_gap = second;
    return out;
}

cplx characteristic_function(const Liouvillian& l_u, const Mat3& rho0, double t, double dt) {
    PropagateOptions opts;
    opts.store_every = std::numeric_limits<int>::max();
    const auto tr = propagate(l_u, rho0, t, dt, opts);
    return tr.states.back().trace();
}

HeatRecord heat_from_characteristic(cplx chi_u_prev, cplx chi_u, cplx chi_ref_prev, cplx chi_ref,
                                    double t, double dt, double u_step, FdScheme scheme) {
    const double denom = scheme == FdScheme::forward ? u_step : 2.0 * u_step;
    const cplx minus_i(0.0, -1.0);
    const cplx q = minus_i * (chi_u - chi_ref) / denom;
    const cplx q_prev = minus_i * (chi_u_prev - chi_ref_prev) / denom;
    const cplx current = (q - q_prev) / dt;
    HeatRecord rec;
    rec.time = t;
    rec.mean_heat = q.real();
    rec.mean_heat_imag = q.imag();
    rec.current = current.real();
    rec.current_imag = current.imag();
    rec.route = HeatRoute::counting_fd;
    return rec;
}

HeatRecord mean_heat_fd(const Model& model, Method m, double t, double dt, double u_step,
                        FdScheme scheme, const Mat3& rho0) {
    if (!(u_step > 0.0)) throw InvalidArgument("mean_heat_fd: u_step must be positive");
    if (!(t >= dt)) throw InvalidArgument("mean_heat_fd: t must be at least one timestep");
    const double u_ref = scheme == FdScheme::forward ? 0.0 : -u_step;
    auto last_two = [&](double u) {
        const auto tr = propagate(model.liouvillian(m, u), rho0, t, dt);
        const auto n = tr.states.size();
        return std::pair{tr.states[n - 2].trace(), tr.states[n - 1].trace()};
    };
    const auto [up, uc] = last_two(u_step);
    const auto [rp, rc] = last_two(u_ref);
    auto rec = heat_from_characteristic(up, uc, rp, rc, t, dt, u_step, scheme);
    rec.method = m;
    return rec;
}

cplx dressed_coherence(const Mat3& rho) {
    const double s = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix<cplx, kDim, 1> plus = Eigen::Matrix<cplx, kDim, 1>::Zero();
    Eigen::Matrix<cplx, kDim, 1> minus = Eigen::Matrix<cplx, kDim, 1>::Zero();
    plus(level::upper) = s;
    plus(level::excited) = s;
    minus(level::upper) = s;
    minus(level::excited) = -s;
    return (plus.adjoint() * rho * minus)(0, 0);
}

} // namespace phonocool

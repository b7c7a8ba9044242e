#include "phonocool/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <thread>

#include "phonocool/errors.hpp"

namespace phonocool {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointResult {
    double current{0.0}; // bath gain positive
    double min_eigenvalue{0.0};
    double residual{0.0};
};

double min_eig_of(const Mat3& rho) { return min_eigenvalue(rho); }

double residual_of(const Super& l, const Mat3& rho) { return (l * vec(rho)).norm(); }

class PointEvaluator {
public:
    PointEvaluator(const SweepConfig& cfg, double delta, double omega,
                   std::shared_ptr<const CorrelationTable> correlations)
        : cfg_(cfg), spec_(cfg.system(delta, omega)), correlations_(std::move(correlations)) {}

    PointResult run(Method m, const RouteConfig& r) {
        if (m == Method::tcl_oracle) return run_tcl(r);
        const Model& md = model();
        const bool shifts = cfg_.shifts_for(m);
        const auto l0 = md.liouvillian(m, 0.0, shifts);
        if (cfg_.mode.kind == ModeConfig::Kind::steady) {
            const auto ss = steady_state(l0);
            PointResult res{0.0, min_eig_of(ss.rho), ss.residual};
            if (r.route == HeatRoute::trace_formula) {
                res.current = md.heat_current(m, ss.rho, shifts);
            } else {
                res.current = fd_current(
                    [&](double u) { return md.liouvillian(m, u, shifts); }, ss.rho,
                    cfg_.mode.dt, cfg_.mode.dt, r);
            }
            return res;
        }
        const auto rho0 = default_initial_state();
        const auto tr = propagate(l0, rho0, cfg_.mode.t_end, cfg_.mode.dt);
        PointResult res{0.0, tr.min_eigenvalue, residual_of(l0.matrix, tr.states.back())};
        if (r.route == HeatRoute::trace_formula) {
            res.current = md.heat_current(m, tr.states.back(), shifts);
        } else {
            res.current = fd_current([&](double u) { return md.liouvillian(m, u, shifts); }, rho0,
                                     cfg_.mode.t_end, cfg_.mode.dt, r);
        }
        return res;
    }

private:
    const Model& model() {
        if (!model_) {
            ModelOptions opts;
            opts.shifts.abs_tol = cfg_.quad_tol;
            opts.shifts.upper_factor = cfg_.omega_max_factor;
            opts.pairing_tol_rel = cfg_.pairing_tol;
            bool need = false;
            for (Method m : cfg_.methods) need = need || (m != Method::tcl_oracle && cfg_.shifts_for(m));
            opts.compute_shifts = need;
            model_ = std::make_unique<Model>(spec_, cfg_.bath(), opts);
        }
        return *model_;
    }

    const Tcl2Kernel& kernel() {
        if (!kernel_) kernel_ = std::make_unique<Tcl2Kernel>(spec_, correlations_, cfg_.oracle);
        return *kernel_;
    }

    template <class MakeL>
    static double fd_current(MakeL&& make, const Mat3& rho0, double t, double dt, const RouteConfig& r) {
        const double u_ref = r.scheme == FdScheme::forward ? 0.0 : -r.u_step;
        auto last_two = [&](double u) {
            const auto tr = propagate(make(u), rho0, t, dt);
            const auto n = tr.states.size();
            return std::pair{tr.states[n - 2].trace(), tr.states[n - 1].trace()};
        };
        const auto [up, uc] = last_two(r.u_step);
        const auto [rp, rc] = last_two(u_ref);
        return heat_from_characteristic(up, uc, rp, rc, t, dt, r.u_step, r.scheme).current;
    }

    PointResult run_tcl(const RouteConfig& r) {
        const auto& k = kernel();
        if (cfg_.mode.kind == ModeConfig::Kind::steady) {
            const auto ss = tcl_steady_state(k);
            PointResult res{0.0, min_eig_of(ss.state.rho), ss.state.residual};
            if (r.route == HeatRoute::trace_formula) {
                res.current = ss.current;
            } else {
                const double t_late = k.memory_time();
                res.current = fd_current(
                    [&](double u) {
                        Liouvillian l;
                        l.matrix = k.generator(t_late, u);
                        l.u = u;
                        l.method = Method::tcl_oracle;
                        l.include_shifts = true;
                        return l;
                    },
                    ss.state.rho, cfg_.mode.dt, cfg_.mode.dt, r);
            }
            return res;
        }
        const auto rho0 = default_initial_state();
        const double t_end = cfg_.mode.t_end;
        const auto base = tcl_propagate(k, rho0, t_end);
        const auto& last = base.trajectory.states.back();
        PointResult res{0.0, base.trajectory.min_eigenvalue,
                        residual_of(k.generator(t_end), last)};
        if (r.route == HeatRoute::trace_formula) {
            res.current = base.heat.back().current;
            return res;
        }
        const double dt = cfg_.oracle.dt;
        const double u_ref = r.scheme == FdScheme::forward ? 0.0 : -r.u_step;
        auto last_two = [&](double u) {
            const auto tr = tcl_propagate(k, rho0, t_end, u).trajectory;
            const auto n = tr.states.size();
            return std::pair{tr.states[n - 2].trace(), tr.states[n - 1].trace()};
        };
        const auto [up, uc] = last_two(r.u_step);
        const auto [rp, rc] = last_two(u_ref);
        res.current = heat_from_characteristic(up, uc, rp, rc, t_end, dt, r.u_step, r.scheme).current;
        return res;
    }

    const SweepConfig& cfg_;
    SystemSpec spec_;
    std::shared_ptr<const CorrelationTable> correlations_;
    std::unique_ptr<Model> model_;
    std::unique_ptr<Tcl2Kernel> kernel_;
};

bool needs_oracle(const SweepConfig& cfg) {
    for (Method m : cfg.methods)
        if (m == Method::tcl_oracle) return true;
    return false;
}

std::vector<SpectrumRecord> evaluate(const SweepConfig& cfg, double delta, double omega,
                                     const std::shared_ptr<const CorrelationTable>& table,
                                     bool rethrow) {
    std::vector<SpectrumRecord> out;
    const double sign = cfg.sign == SignConvention::absorption_positive ? -1.0 : 1.0;
    std::string shared_error;
    std::unique_ptr<PointEvaluator> ev;
    try {
        ev = std::make_unique<PointEvaluator>(cfg, delta, omega, table);
    } catch (const std::exception& e) {
        if (rethrow) throw;
        shared_error = e.what();
    }
    for (Method m : cfg.methods) {
        for (const auto& r : cfg.routes) {
            SpectrumRecord rec;
            rec.delta = delta;
            rec.omega = omega;
            rec.method = m;
            rec.route = r.route;
            try {
                if (!shared_error.empty()) throw NumericalError(shared_error);
                const auto res = ev->run(m, r);
                if (!std::isfinite(res.current)) throw NumericalError("non-finite heat current");
                rec.heat_absorption_rate = sign * res.current;
                rec.min_eigenvalue_seen = res.min_eigenvalue;
                rec.steady_residual = res.residual;
            } catch (const std::exception& e) {
                if (rethrow) throw;
                rec.heat_absorption_rate = kNaN;
                rec.min_eigenvalue_seen = kNaN;
                rec.steady_residual = kNaN;
                rec.status = std::string("error: ") + e.what();
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::shared_ptr<const CorrelationTable> oracle_table(const SweepConfig& cfg) {
    if (!needs_oracle(cfg)) return nullptr;
    return make_correlation_table(cfg.bath(), cfg.oracle);
}

} // namespace

std::vector<SpectrumRecord> evaluate_point(const SweepConfig& cfg, double delta, double omega) {
    cfg.validate();
    return evaluate(cfg, delta, omega, oracle_table(cfg), true);
}

std::vector<SpectrumRecord> run_sweep(const SweepConfig& cfg, unsigned jobs) {
    cfg.validate();
    const auto deltas = cfg.deltas();
    struct Point {
        double omega, delta;
    };
    std::vector<Point> points;
    for (double w : cfg.omega_list)
        for (double d : deltas) points.push_back({w, d});

    std::shared_ptr<const CorrelationTable> table;
    std::string table_error;
    try {
        table = oracle_table(cfg);
    } catch (const std::exception& e) {
        table_error = e.what();
    }

    SweepConfig local = cfg;
    if (!table_error.empty()) {
        // Oracle rows fail individually; the remaining methods still run.
        std::vector<Method> rest;
        for (Method m : cfg.methods)
            if (m != Method::tcl_oracle) rest.push_back(m);
        local.methods = rest;
    }

    std::vector<std::vector<SpectrumRecord>> slots(points.size());
    auto work = [&](std::size_t i) {
        const auto& p = points[i];
        std::vector<SpectrumRecord> got;
        if (!local.methods.empty()) got = evaluate(local, p.delta, p.omega, table, false);
        if (local.methods.size() == cfg.methods.size()) {
            slots[i] = std::move(got);
            return;
        }
        // Re-interleave failed oracle rows at their configured positions.
        std::vector<SpectrumRecord> full;
        std::size_t k = 0;
        for (Method m : cfg.methods) {
            for (const auto& r : cfg.routes) {
                if (m == Method::tcl_oracle) {
                    SpectrumRecord rec;
                    rec.delta = p.delta;
                    rec.omega = p.omega;
                    rec.method = m;
                    rec.route = r.route;
                    rec.heat_absorption_rate = rec.min_eigenvalue_seen = rec.steady_residual = kNaN;
                    rec.status = "error: " + table_error;
                    full.push_back(std::move(rec));
                } else {
                    full.push_back(std::move(got[k++]));
                }
            }
        }
        slots[i] = std::move(full);
    };

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, points.size())));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < points.size(); i = next++) work(i);
            });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<SpectrumRecord> out;
    for (auto& s : slots)
        for (auto& r : s) out.push_back(std::move(r));
    return out;
}

} // namespace phonocool

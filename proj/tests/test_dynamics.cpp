#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "phonocool/dynamics.hpp"
#include "phonocool/errors.hpp"
#include "support/oracles.hpp"

using namespace phonocool;

namespace {

const BathSpec kBath{0.01, 1.0, 3.0};
const Method kMethods[] = {Method::bloch_redfield, Method::secular, Method::phenomenological};

Mat3 exact_state(const Super& l, const Mat3& rho0, double t) {
    const Eigen::MatrixXcd lt = l * t;
    const Eigen::MatrixXcd e = lt.exp();
    return unvec(e * vec(rho0));
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_CASE("an eigenstate of a purely coherent generator is stationary") {
    const SystemSpec s{2.0, 0.3, 0.6, 0.0};
    const auto eig = eigensystem(build_hamiltonian(s));
    Liouvillian l;
    l.matrix = coherent_superop(eig.hamiltonian);
    const Eigen::Vector3cd v = eig.basis.col(1);
    const Mat3 rho = v * v.adjoint();
    const auto tr = propagate(l, rho, 30.0, 0.05);
    for (const auto& r : tr.states) CHECK(oracle::max_abs(r - rho) < 1e-12);
}

TEST_CASE("excited-state population decays exponentially") {
    Liouvillian l;
    l.matrix = radiative_dissipator({2.0, 0.0, 0.0, 0.5});
    const auto tr = propagate(l, projector(level::excited), 30.0, 0.05);
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        CHECK(std::abs(tr.states[k](0, 0).real() - std::exp(-0.5 * tr.times[k])) < 1e-8);
}

TEST_CASE("RK4 error drops sixteenfold when the step is halved") {
    const Model m({2.0, 0.0, 1.0, 0.5}, kBath);
    const auto l = m.liouvillian(Method::bloch_redfield);
    const Mat3 rho0 = default_initial_state();
    const double t = 10.0;
    const Mat3 ref = exact_state(l.matrix, rho0, t);
    double prev = 0.0;
    for (double dt : {0.4, 0.2, 0.1}) {
        const double err = oracle::max_abs(propagate(l, rho0, t, dt).states.back() - ref);
        if (prev > 0.0) {
            MESSAGE("dt = " << dt << "  error ratio = " << prev / err);
            CHECK(prev / err == doctest::Approx(16.0).epsilon(0.1));
        }
        prev = err;
    }
}

TEST_CASE("propagation lands on t_end and stores requested steps") {
    const Model m({2.0, 0.0, 0.5, 0.5}, kBath);
    PropagateOptions o;
    o.store_every = 10;
    const auto tr = propagate(m.liouvillian(Method::secular), default_initial_state(), 1.0, 0.03, o);
    CHECK(tr.times.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tr.times.front() == 0.0);
    CHECK(tr.times.size() == 5);
    CHECK_THROWS_AS(propagate(m.liouvillian(Method::secular), default_initial_state(), 1.0, 0.0), InvalidArgument);
    Mat3 bad = default_initial_state() * 2.0;
    CHECK_THROWS_AS(propagate(m.liouvillian(Method::secular), bad, 1.0, 0.01), InvalidArgument);
}

TEST_CASE("trajectories stay unit-trace and hermitian") {
    std::mt19937_64 rng(31);
    for (double w : {0.01, 0.5, 1.0})
        for (double d : {-1.0, 0.0, 0.5}) {
            const Model m({2.0, d, w, 0.5}, kBath);
            for (Method k : kMethods) {
                const auto tr = propagate(m.liouvillian(k), oracle::random_density(rng), 30.0, 0.05);
                CHECK(tr.max_trace_drift < 1e-8);
                double herm = 0.0;
                for (const auto& r : tr.states) herm = std::max(herm, hermiticity_defect(r));
                CHECK(herm < 1e-8);
            }
        }
}

TEST_CASE("undriven steady states") {
    // γ = 0: the excited population is conserved, so the null space is two-dimensional.
    const Model closed({2.0, 0.0, 0.0, 0.0}, kBath);
    for (Method k : kMethods) {
        CHECK_THROWS_AS(steady_state(closed.liouvillian(k)), NumericalError);
        const auto tr = propagate(closed.liouvillian(k), default_initial_state(), 200.0, 0.05);
        const Mat3& r = tr.states.back();
        CHECK(r(level::upper, level::upper).real() / r(level::lower, level::lower).real() ==
              doctest::Approx(0.513417).epsilon(1e-6));
    }
    const Model open({2.0, 0.4, 0.0, 0.5}, kBath);
    for (Method k : kMethods) {
        const auto ss = steady_state(open.liouvillian(k));
        CHECK(std::abs(ss.rho(level::excited, level::excited)) < 1e-12);
        const double ratio = ss.rho(level::upper, level::upper).real() / ss.rho(level::lower, level::lower).real();
        CHECK(std::abs(ratio - std::exp(-2.0 / 3.0)) < 1e-8);
        CHECK(std::abs(open.heat_current(k, ss.rho)) < 1e-12);
    }
    CHECK_THROWS_AS(steady_state(open.liouvillian(Method::secular, 0.1)), InvalidArgument);
}

TEST_CASE("steady state agrees with long-time propagation from random states") {
    std::mt19937_64 rng(37);
    for (double w : {0.01, 0.1, 0.5, 1.0})
        for (double d : {-1.5, -0.75, -0.1, 0.0, 0.1, 0.75, 1.5}) {
            const Model m({2.0, d, w, 0.5}, kBath);
            for (Method k : kMethods) {
                const auto l = m.liouvillian(k);
                const auto ss = steady_state(l);
                CHECK(ss.residual < 1e-12);
                double worst = 0.0;
                for (int r = 0; r < 5; ++r) {
                    PropagateOptions o;
                    o.store_every = 1 << 30;
                    const auto tr = propagate(l, oracle::random_density(rng), 200.0, 0.05, o);
                    worst = std::max(worst, oracle::max_abs(tr.states.back() - ss.rho));
                }
                CHECK(worst < 1e-6);
            }
        }
}

TEST_CASE("heat current vanishes without coupling") {
    const Model m({2.0, 0.0, 0.5, 0.5}, {0.0, 1.0, 3.0});
    std::mt19937_64 rng(41);
    for (Method k : kMethods) CHECK(m.heat_current(k, oracle::random_density(rng)) == 0.0);
    const auto rec = mean_heat_fd(m, Method::bloch_redfield, 5.0, 0.05, 0.05, FdScheme::forward);
    CHECK(rec.mean_heat == 0.0);
    CHECK(rec.current == 0.0);
}

TEST_CASE("characteristic function bounds") {
    const Model m({2.0, 0.0, 0.5, 0.5}, kBath);
    const Model free({2.0, 0.0, 0.5, 0.5}, {0.0, 1.0, 3.0});
    for (Method k : kMethods) {
        CHECK(std::abs(characteristic_function(m.liouvillian(k, 0.0), default_initial_state(), 10.0, 0.05) - 1.0) < 1e-12);
        for (double u : {-1.0, 0.05, 0.3, 2.0}) {
            CHECK(std::abs(characteristic_function(free.liouvillian(k, u), default_initial_state(), 10.0, 0.05) - 1.0) < 1e-12);
            CHECK(std::abs(characteristic_function(m.liouvillian(k, u), default_initial_state(), 10.0, 0.05)) <= 1.0 + 1e-8);
        }
    }
}

TEST_CASE("counting-field and trace-formula currents agree at the steady state") {
    for (double w : {0.5, 1.0})
        for (Method k : kMethods) {
            const Model m({2.0, 0.0, w, 0.5}, kBath);
            const auto ss = steady_state(m.liouvillian(k));
            const double trace = m.heat_current(k, ss.rho);
            for (FdScheme sch : {FdScheme::forward, FdScheme::central}) {
                const auto rec = mean_heat_fd(m, k, 5.0, 0.01, 0.01, sch, ss.rho);
                INFO("omega = " << w << " method = " << to_string(k) << " scheme = " << to_string(sch));
                CHECK(rel(rec.current, trace) < 0.01);
            }
        }
}

TEST_CASE("central differencing removes the first-order counting-field bias") {
    const Model m({2.0, 0.0, 0.5, 0.5}, kBath);
    const auto ss = steady_state(m.liouvillian(Method::bloch_redfield));
    const double exact = m.heat_current(Method::bloch_redfield, ss.rho) * 5.0;
    auto err = [&](double u, FdScheme s) {
        const auto r = mean_heat_fd(m, Method::bloch_redfield, 5.0, 0.01, u, s, ss.rho);
        return std::abs(cplx(r.mean_heat, r.mean_heat_imag) - exact);
    };
    for (double u : {0.1, 0.05}) {
        CHECK(err(u, FdScheme::central) < err(u, FdScheme::forward));
    }
    const auto f1 = mean_heat_fd(m, Method::bloch_redfield, 5.0, 0.01, 0.1, FdScheme::forward, ss.rho);
    const auto f2 = mean_heat_fd(m, Method::bloch_redfield, 5.0, 0.01, 0.05, FdScheme::forward, ss.rho);
    const auto c1 = mean_heat_fd(m, Method::bloch_redfield, 5.0, 0.01, 0.1, FdScheme::central, ss.rho);
    const auto c2 = mean_heat_fd(m, Method::bloch_redfield, 5.0, 0.01, 0.05, FdScheme::central, ss.rho);
    // forward − central is linear in u at leading order
    const double d1 = std::abs(cplx(f1.mean_heat - c1.mean_heat, f1.mean_heat_imag - c1.mean_heat_imag));
    const double d2 = std::abs(cplx(f2.mean_heat - c2.mean_heat, f2.mean_heat_imag - c2.mean_heat_imag));
    CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("mean heat grows linearly once the steady state is reached") {
    const Model m({2.0, 0.0, 0.5, 0.5}, kBath);
    const auto a = mean_heat_fd(m, Method::bloch_redfield, 15.0, 0.05, 0.01, FdScheme::central);
    const auto b = mean_heat_fd(m, Method::bloch_redfield, 30.0, 0.05, 0.01, FdScheme::central);
    MESSAGE("current at t=15: " << a.current << ", at t=30: " << b.current);
    CHECK(rel(a.current, b.current) < 1e-3);
}

TEST_CASE("finite-difference arguments are checked") {
    const Model m({2.0, 0.0, 0.5, 0.5}, kBath);
    CHECK_THROWS_AS(mean_heat_fd(m, Method::secular, 1.0, 0.05, 0.0, FdScheme::forward), InvalidArgument);
    CHECK_THROWS_AS(mean_heat_fd(m, Method::secular, 0.01, 0.05, 0.05, FdScheme::forward), InvalidArgument);
    CHECK(route_from_string("counting_fd") == HeatRoute::counting_fd);
    CHECK(scheme_from_string("central") == FdScheme::central);
    CHECK_THROWS(route_from_string("trace"));
    CHECK_THROWS(scheme_from_string("backward"));
}

TEST_CASE("dressed coherence") {
    CHECK(std::abs(dressed_coherence(Mat3::Identity() / 3.0)) < 1e-16);
    std::mt19937_64 rng(43);
    for (int k = 0; k < 20; ++k) {
        const Mat3 r = oracle::random_density(rng);
        const cplx want = 0.5 * (r(1, 1) - r(1, 0) + r(0, 1) - r(0, 0));
        CHECK(std::abs(dressed_coherence(r) - want) < 1e-15);
    }
    // At δ = 0 the eigenbasis is the dressed basis. Without radiative decay the
    // secular steady state carries no dressed coherence; Bloch-Redfield's does.
    const Model m({2.0, 0.0, 0.01, 0.0}, kBath);
    const auto sec = steady_state(m.liouvillian(Method::secular));
    const auto br = steady_state(m.liouvillian(Method::bloch_redfield));
    MESSAGE("|<+|rho|->| secular = " << std::abs(dressed_coherence(sec.rho))
                                     << ", Bloch-Redfield = " << std::abs(dressed_coherence(br.rho)));
    CHECK(std::abs(dressed_coherence(sec.rho)) < 1e-12);
    CHECK(std::abs(dressed_coherence(br.rho)) > 1e-6);
    // With decay the two still differ.
    const Model lossy({2.0, 0.0, 0.01, 0.5}, kBath);
    const cplx cs = dressed_coherence(steady_state(lossy.liouvillian(Method::secular)).rho);
    const cplx cb = dressed_coherence(steady_state(lossy.liouvillian(Method::bloch_redfield)).rho);
    MESSAGE("with gamma = 0.5: secular = " << std::abs(cs) << ", Bloch-Redfield = " << std::abs(cb));
    CHECK(std::abs(cs - cb) > 1e-3);
}

TEST_CASE("Bloch-Redfield positivity is monitored along trajectories") {
    double worst_traj = 0.0, worst_steady = 0.0;
    for (double w : {0.01, 0.1, 0.5, 1.0})
        for (int i = 0; i <= 8; ++i) {
            const double d = -1.5 + 0.375 * i;
            const Model m({2.0, d, w, 0.5}, kBath);
            const auto l = m.liouvillian(Method::bloch_redfield);
            worst_traj = std::min(worst_traj, propagate(l, default_initial_state(), 30.0, 0.05).min_eigenvalue);
            worst_steady = std::min(worst_steady, min_eigenvalue(steady_state(l).rho));
        }
    MESSAGE("Bloch-Redfield min eigenvalue: trajectories " << worst_traj << ", steady states " << worst_steady);
    CHECK(worst_steady >= 0.0);
    CHECK(std::isfinite(worst_traj));
}

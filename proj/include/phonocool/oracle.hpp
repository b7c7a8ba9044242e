// oracle.hpp — Second-order time-convolutionless (TCL2) integrator used to cross-check Bloch-Redfield
//
// The bath enters through its correlation function
//   C(τ) = ∫₀^∞ J(ω)[coth(βω/2) cos ωτ − i sin ωτ] dω
// and the finite-time operator
//   Λ(t) = ∫₀^{min(t, t_mem)} C(s) e^{−iH s} O e^{iH s} ds,
// so that, with ρ(t′) → ρ(t) inside the memory integral,
//   dρ/dt = −i[H, ρ] + Λ ρ O + O ρ Λ† − O Λ ρ − ρ Λ† O + (radiative decay).
// Everything here is time-domain; nothing is taken from the frequency-domain
// rate tables or the eigenbasis blocks.

#pragma once

#include <memory>
#include <vector>

#include "phonocool/bath.hpp"
#include "phonocool/dynamics.hpp"
#include "phonocool/linalg.hpp"
#include "phonocool/system.hpp"

namespace phonocool {

struct MemoryKernelConfig {
    double t_mem{30.0};   // memory cut-off for the s integral
    double dt{0.05};      // propagation step
    int quad_points{8};   // trapezoid sub-intervals per half step

    void validate() const;
};

struct CorrelationValue {
    cplx value{0.0};
    double error{0.0};
};

// Direct Gauss-Legendre quadrature against J on (0, upper_factor·ω_c); the error
// is the change under doubling the panel count. Throws NumericalError when it
// exceeds tol·max(1, |C|).
CorrelationValue bath_correlation(double tau, const BathSpec& bath, double upper_factor = 40.0,
                                  double tol = 1e-10);

// C(s) sampled at s_k = k·step for k = 0..count-1.
class CorrelationTable {
public:
    CorrelationTable(const BathSpec& bath, double step, std::size_t count,
                     double upper_factor = 40.0);

    double step() const { return step_; }
    const std::vector<cplx>& samples() const { return samples_; }
    const BathSpec& bath() const { return bath_; }

private:
    BathSpec bath_;
    double step_;
    std::vector<cplx> samples_;
};

// Correlation samples at the spacing a kernel with this config needs.
std::shared_ptr<const CorrelationTable> make_correlation_table(const BathSpec& bath,
                                                               const MemoryKernelConfig& cfg);

class Tcl2Kernel {
public:
    Tcl2Kernel(const SystemSpec& spec, std::shared_ptr<const CorrelationTable> correlations,
               const MemoryKernelConfig& cfg);

    // Λ at the half-step grid point nearest t; constant beyond t_mem.
    const Mat3& lambda(double t) const;
    // Instantaneous generator including −i[H, ·] and radiative decay.
    Super generator(double t, double u = 0.0) const;
    // −2 Re Tr([H, Λ(t)] ρ O): positive when the bath gains energy.
    double heat_current(double t, const Mat3& rho) const;

    const Mat3& hamiltonian() const { return h_; }
    const MemoryKernelConfig& config() const { return cfg_; }
    double memory_time() const { return half_step_ * static_cast<double>(lambdas_.size() - 1); }

private:
    SystemSpec spec_;
    MemoryKernelConfig cfg_;
    Mat3 h_;
    Mat3 o_;
    Super coherent_;
    Super radiative_;
    double half_step_;
    std::vector<Mat3> lambdas_; // Λ at m·dt/2, m = 0..t_mem/(dt/2)
};

struct TclResult {
    Trajectory trajectory;
    std::vector<HeatRecord> heat; // trace-formula current at each stored time
};

// RK4 with the time-dependent generator, step cfg.dt. With u ≠ 0 the states are
// annotated (traces give χ(u, t)); heat records are only filled for u = 0.
TclResult tcl_propagate(const Tcl2Kernel& kernel, const Mat3& rho0, double t_end, double u = 0.0,
                        int store_every = 1);
TclResult tcl_propagate(const SystemSpec& spec, const BathSpec& bath, const MemoryKernelConfig& cfg,
                        const Mat3& rho0, double t_end);

struct TclSteadyState {
    SteadyState state;
    double current{0.0};
};

// Stationary state of the t ≥ t_mem generator and its heat current.
TclSteadyState tcl_steady_state(const Tcl2Kernel& kernel);

} // namespace phonocool

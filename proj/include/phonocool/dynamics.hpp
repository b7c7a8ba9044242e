// dynamics.hpp — Propagation, steady states, heat currents and coherence observables

#pragma once

#include <string_view>
#include <vector>

#include "phonocool/generators.hpp"
#include "phonocool/linalg.hpp"

namespace phonocool {

enum class HeatRoute { trace_formula, counting_fd };
enum class FdScheme { forward, central };

std::string_view to_string(HeatRoute r);
std::string_view to_string(FdScheme s);
HeatRoute route_from_string(std::string_view name);
FdScheme scheme_from_string(std::string_view name);

// |g_l⟩⟨g_l|, the cold product initial state.
Mat3 default_initial_state();

// Hermitian, unit trace to `tol`; throws InvalidArgument otherwise.
void check_density(const Mat3& rho, double tol = 1e-10);

struct Trajectory {
    std::vector<double> times;
    std::vector<Mat3> states;
    double min_eigenvalue{0.0}; // smallest eigenvalue seen over all steps
    double max_trace_drift{0.0};
};

struct PropagateOptions {
    int store_every{1};           // keep every n-th step (the final state is always kept)
    double trace_drift_limit{1e-6};
};

// Fixed-step RK4 for dρ/dt = L ρ. For L at u = 0 a trace drift beyond the
// limit raises NumericalError advising a smaller dt.
Trajectory propagate(const Liouvillian& l, const Mat3& rho0, double t_end, double dt,
                     const PropagateOptions& opts = {});

struct SteadyState {
    Mat3 rho;
    double residual{0.0};      // ‖L vec(ρ)‖
    double singular_gap{0.0};  // second-smallest singular value of L
};

// Null vector of L from its smallest singular vector, hermitized and
// trace-normalized. Throws NumericalError when the second singular value is
// within 1e-8 of the smallest (non-unique steady state) and InvalidArgument for u ≠ 0.
SteadyState steady_state(const Liouvillian& l);

// χ(u, t) = Tr ρ_u(t) for the annotated generator L_u.
cplx characteristic_function(const Liouvillian& l_u, const Mat3& rho0, double t, double dt);

struct HeatRecord {
    double time{0.0};
    double mean_heat{0.0};      // ⟨Q⟩ gained by the phonon bath since t = 0
    double current{0.0};        // d⟨Q⟩/dt
    double mean_heat_imag{0.0}; // imaginary residue of the finite-difference estimate
    double current_imag{0.0};
    Method method{Method::bloch_redfield};
    HeatRoute route{HeatRoute::trace_formula};
};

// ⟨Q⟩(t) from −i[χ(u) − χ(0)]/u (forward) or −i[χ(u) − χ(−u)]/(2u) (central);
// the current is the difference of ⟨Q⟩ at t and t − dt, divided by dt.
HeatRecord mean_heat_fd(const Model& model, Method m, double t, double dt, double u_step,
                        FdScheme scheme, const Mat3& rho0 = default_initial_state());

// Finite-difference heat from traces sampled at t − dt and t: `chi_u` at +u_step and
// `chi_ref` at 0 (forward) or −u_step (central).
HeatRecord heat_from_characteristic(cplx chi_u_prev, cplx chi_u, cplx chi_ref_prev, cplx chi_ref,
                                    double t, double dt, double u_step, FdScheme scheme);

// ⟨+|ρ|−⟩ with |±⟩ = (|g_u⟩ ± |e⟩)/√2.
cplx dressed_coherence(const Mat3& rho);

} // namespace phonocool

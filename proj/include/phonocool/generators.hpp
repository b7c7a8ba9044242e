// generators.hpp — Liouvillians for the Bloch-Redfield, secular and phenomenological master equations

#pragma once

#include <string_view>
#include <vector>

#include "phonocool/bath.hpp"
#include "phonocool/linalg.hpp"
#include "phonocool/system.hpp"

namespace phonocool {

enum class Method { bloch_redfield, secular, phenomenological, tcl_oracle };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name); // throws InvalidArgument

// B terms are on for full Bloch-Redfield and off for the secular equation.
bool default_include_shifts(Method m);

// One term of a phonon dissipator:
//   sandwich: ρ ↦ c·e^{iu·heat}·AρB,  left: ρ ↦ c·Aρ,  right: ρ ↦ c·ρA.
// `heat` is the energy handed to the bath by the transition a sandwich term
// describes; it sets the counting-field phase and the heat-current weight.
struct DissipatorTerm {
    enum class Kind { sandwich, left, right };
    Kind kind{Kind::sandwich};
    cplx coeff{0.0};
    Mat3 a{Mat3::Zero()};
    Mat3 b{Mat3::Zero()};
    double heat{0.0};
};

struct PhononDissipator {
    std::vector<DissipatorTerm> terms;

    Super assemble(double u = 0.0) const;
    // d⟨Q⟩/dt = Σ_sandwich heat·c·Tr(AρB); positive when the bath gains energy.
    double heat_current(const Mat3& rho) const;
};

// Full Redfield tensor: for each (i, j), with Γ_ij = A_ij − iB_ij,
//   Γ Ô_ji ρ O + Γ* O ρ Ô_ij − Γ* ρ Ô_ij O − Γ O Ô_ji ρ.
PhononDissipator bloch_redfield_terms(const EigenSystem& eig, const RateTable& rates,
                                      bool include_shifts);

// Same sum with O replaced by its blocks Ô_kl and only phase-free products kept,
// |ν_kl ∓ ν_ij| ≤ pairing_tol. Reduces to 2A_ij(Ô_ji ρ Ô_ij − ½{ρ, Ô_ij Ô_ji}) when
// the coupled transitions are non-degenerate.
PhononDissipator secular_terms(const EigenSystem& eig, const RateTable& rates, double pairing_tol,
                               bool include_shifts = false);

struct PhenomenologicalRates {
    double gamma_plus{0.0};  // 2π n(E_man) J(E_man), jump |g_u⟩⟨g_l|
    double gamma_minus{0.0}; // 2π (n(E_man)+1) J(E_man), jump |g_l⟩⟨g_u|
};

PhenomenologicalRates phenomenological_rates(const SystemSpec& spec, const BathSpec& bath);
PhononDissipator phenomenological_terms(const SystemSpec& spec, const BathSpec& bath);

struct Liouvillian {
    Super matrix{Super::Zero()};
    double u{0.0};
    Method method{Method::bloch_redfield};
    bool include_shifts{false};
};

// Coherent part plus phonon dissipator; radiative decay is separate.
Liouvillian bloch_redfield_generator(const EigenSystem& eig, const RateTable& rates,
                                     const SystemSpec& spec, double u, bool include_shifts);
Liouvillian secular_generator(const EigenSystem& eig, const RateTable& rates,
                              const SystemSpec& spec, double pairing_tol, double u = 0.0,
                              bool include_shifts = false);
Liouvillian phenomenological_generator(const SystemSpec& spec, const BathSpec& bath,
                                       double u = 0.0);

// γ·(|g_l⟩⟨e| ρ |e⟩⟨g_l| − ½{|e⟩⟨e|, ρ}); never counted.
Super radiative_dissipator(const SystemSpec& spec);

struct ModelOptions {
    ShiftOptions shifts{};
    double pairing_tol_rel{1e-10}; // secular pairing tolerance in units of E_man
    bool compute_shifts{true};     // skip the B quadrature when no generator needs it
};

// One parameter point: eigensystem and rate table are built once at
// construction and never mutated afterwards, so a Model can be shared freely.
class Model {
public:
    Model(const SystemSpec& spec, const BathSpec& bath, const ModelOptions& opts = {});

    const SystemSpec& system() const { return spec_; }
    const BathSpec& bath() const { return bath_; }
    const EigenSystem& eigen() const { return eig_; }
    const RateTable& rates() const { return rates_; }
    const ModelOptions& options() const { return opts_; }
    double pairing_tol() const { return opts_.pairing_tol_rel * spec_.e_man; }

    PhononDissipator phonon_terms(Method m, bool include_shifts) const;

    Liouvillian liouvillian(Method m, double u, bool include_shifts) const;
    Liouvillian liouvillian(Method m, double u = 0.0) const {
        return liouvillian(m, u, default_include_shifts(m));
    }

    double heat_current(Method m, const Mat3& rho, bool include_shifts) const;
    double heat_current(Method m, const Mat3& rho) const {
        return heat_current(m, rho, default_include_shifts(m));
    }

private:
    SystemSpec spec_;
    BathSpec bath_;
    ModelOptions opts_;
    EigenSystem eig_;
    RateTable rates_;
};

// Selected phonon generator plus radiative decay.
Liouvillian total_liouvillian(Method m, const SystemSpec& spec, const BathSpec& bath, double u,
                              bool include_shifts);

} // namespace phonocool

#include "phonocool/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "phonocool/errors.hpp"

namespace phonocool {

namespace {

using Kind = DissipatorTerm::Kind;

cplx complex_rate(const RateTable& rates, int i, int j, bool include_shifts) {
    return {rates.a(i, j), include_shifts ? -rates.b(i, j) : 0.0};
}

void push(PhononDissipator& d, Kind kind, cplx coeff, const Mat3& a, const Mat3& b, double heat) {
    if (coeff == cplx(0.0)) return;
    d.terms.push_back({kind, coeff, a, b, heat});
}

} // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::bloch_redfield: return "bloch_redfield";
        case Method::secular: return "secular";
        case Method::phenomenological: return "phenomenological";
        case Method::tcl_oracle: return "tcl_oracle";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    for (Method m : {Method::bloch_redfield, Method::secular, Method::phenomenological,
                     Method::tcl_oracle}) {
        if (to_string(m) == name) return m;
    }
    throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

bool default_include_shifts(Method m) {
    return m == Method::bloch_redfield || m == Method::tcl_oracle;
}

Super PhononDissipator::assemble(double u) const {
    Super out = Super::Zero();
    for (const auto& t : terms) {
        switch (t.kind) {
            case Kind::sandwich: {
                const cplx phase = u == 0.0 ? cplx(1.0) : std::polar(1.0, u * t.heat);
                out += (t.coeff * phase) * sandwich(t.a, t.b);
                break;
            }
            case Kind::left: out += t.coeff * left_mul(t.a); break;
            case Kind::right: out += t.coeff * right_mul(t.a); break;
        }
    }
    return out;
}

double PhononDissipator::heat_current(const Mat3& rho) const {
    cplx acc = 0.0;
    for (const auto& t : terms) {
        if (t.kind != Kind::sandwich || t.heat == 0.0) continue;
        acc += t.heat * t.coeff * (t.a * rho * t.b).trace();
    }
    return acc.real();
}

PhononDissipator bloch_redfield_terms(const EigenSystem& eig, const RateTable& rates,
                                      bool include_shifts) {
    PhononDissipator d;
    const Mat3& o = eig.coupling;
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
            const cplx g = complex_rate(rates, i, j, include_shifts);
            const Mat3& o_ij = eig.block(i, j);
            const Mat3& o_ji = eig.block(j, i);
            const double nu = eig.nu(i, j);
            push(d, Kind::sandwich, g, o_ji, o, nu);
            push(d, Kind::sandwich, std::conj(g), o, o_ij, nu);
            push(d, Kind::right, -std::conj(g), o_ij * o, Mat3::Zero(), 0.0);
            push(d, Kind::left, -g, o * o_ji, Mat3::Zero(), 0.0);
        }
    }
    return d;
}

PhononDissipator secular_terms(const EigenSystem& eig, const RateTable& rates, double pairing_tol,
                               bool include_shifts) {
    if (!(pairing_tol >= 0.0)) throw InvalidArgument("secular pairing tolerance must be >= 0");
    PhononDissipator d;
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
            const cplx g = complex_rate(rates, i, j, include_shifts);
            const Mat3& o_ij = eig.block(i, j);
            const Mat3& o_ji = eig.block(j, i);
            const double nu = eig.nu(i, j);
            for (int k = 0; k < kDim; ++k) {
                for (int l = 0; l < kDim; ++l) {
                    const Mat3& o_kl = eig.block(k, l);
                    // Ô_ji(t)·Ô_kl(t) carries e^{i(ν_kl − ν_ij)t}; Ô_kl(t)·Ô_ij(t) carries e^{i(ν_kl + ν_ij)t}.
                    if (std::abs(eig.nu(k, l) - nu) <= pairing_tol) {
                        push(d, Kind::sandwich, g, o_ji, o_kl, nu);
                        push(d, Kind::left, -g, o_kl * o_ji, Mat3::Zero(), 0.0);
                    }
                    if (std::abs(eig.nu(k, l) + nu) <= pairing_tol) {
                        push(d, Kind::sandwich, std::conj(g), o_kl, o_ij, nu);
                        push(d, Kind::right, -std::conj(g), o_ij * o_kl, Mat3::Zero(), 0.0);
                    }
                }
            }
        }
    }
    return d;
}

PhenomenologicalRates phenomenological_rates(const SystemSpec& spec, const BathSpec& bath) {
    const double j = spectral_density(spec.e_man, bath);
    const double n = bose_occupation(spec.e_man, bath);
    return {2.0 * std::numbers::pi * n * j, 2.0 * std::numbers::pi * (n + 1.0) * j};
}

PhononDissipator phenomenological_terms(const SystemSpec& spec, const BathSpec& bath) {
    const auto r = phenomenological_rates(spec, bath);
    PhononDissipator d;
    auto add_jump = [&](const Mat3& jump, double rate, double heat) {
        const Mat3 ad = jump.adjoint();
        const Mat3 ada = ad * jump;
        push(d, Kind::sandwich, rate, jump, ad, heat);
        push(d, Kind::left, -0.5 * rate, ada, Mat3::Zero(), 0.0);
        push(d, Kind::right, -0.5 * rate, ada, Mat3::Zero(), 0.0);
    };
    add_jump(ket_bra(level::upper, level::lower), r.gamma_plus, -spec.e_man);
    add_jump(ket_bra(level::lower, level::upper), r.gamma_minus, spec.e_man);
    return d;
}

Liouvillian bloch_redfield_generator(const EigenSystem& eig, const RateTable& rates,
                                     const SystemSpec& spec, double u, bool include_shifts) {
    (void)spec;
    Liouvillian l;
    l.matrix = coherent_superop(eig.hamiltonian) +
               bloch_redfield_terms(eig, rates, include_shifts).assemble(u);
    l.u = u;
    l.method = Method::bloch_redfield;
    l.include_shifts = include_shifts;
    return l;
}

Liouvillian secular_generator(const EigenSystem& eig, const RateTable& rates,
                              const SystemSpec& spec, double pairing_tol, double u,
                              bool include_shifts) {
    (void)spec;
    Liouvillian l;
    l.matrix = coherent_superop(eig.hamiltonian) +
               secular_terms(eig, rates, pairing_tol, include_shifts).assemble(u);
    l.u = u;
    l.method = Method::secular;
    l.include_shifts = include_shifts;
    return l;
}

Liouvillian phenomenological_generator(const SystemSpec& spec, const BathSpec& bath, double u) {
    Liouvillian l;
    l.matrix = coherent_superop(build_hamiltonian(spec)) + phenomenological_terms(spec, bath).assemble(u);
    l.u = u;
    l.method = Method::phenomenological;
    return l;
}

Super radiative_dissipator(const SystemSpec& spec) {
    if (!(spec.gamma_rad >= 0.0)) throw InvalidArgument("gamma_rad must be >= 0");
    if (spec.gamma_rad == 0.0) return Super::Zero();
    return spec.gamma_rad * lindblad_superop(ket_bra(level::lower, level::excited));
}

Model::Model(const SystemSpec& spec, const BathSpec& bath, const ModelOptions& opts)
    : spec_(spec), bath_(bath), opts_(opts) {
    spec_.validate();
    bath_.validate();
    eig_ = eigensystem(build_hamiltonian(spec_));
    rates_ = rate_table(eig_, bath_, opts_.shifts, opts_.compute_shifts);
}

PhononDissipator Model::phonon_terms(Method m, bool include_shifts) const {
    if (include_shifts && !opts_.compute_shifts && m != Method::phenomenological)
        throw InvalidArgument("model was built without principal-value shifts");
    switch (m) {
        case Method::bloch_redfield: return bloch_redfield_terms(eig_, rates_, include_shifts);
        case Method::secular: return secular_terms(eig_, rates_, pairing_tol(), include_shifts);
        case Method::phenomenological: return phenomenological_terms(spec_, bath_);
        case Method::tcl_oracle: break;
    }
    throw InvalidArgument("tcl_oracle generators are built by the oracle module");
}

Liouvillian Model::liouvillian(Method m, double u, bool include_shifts) const {
    Liouvillian l;
    l.matrix = coherent_superop(eig_.hamiltonian) + phonon_terms(m, include_shifts).assemble(u) +
               radiative_dissipator(spec_);
    l.u = u;
    l.method = m;
    l.include_shifts = m == Method::phenomenological ? false : include_shifts;
    return l;
}

double Model::heat_current(Method m, const Mat3& rho, bool include_shifts) const {
    return phonon_terms(m, include_shifts).heat_current(rho);
}

Liouvillian total_liouvillian(Method m, const SystemSpec& spec, const BathSpec& bath, double u,
                              bool include_shifts) {
    ModelOptions opts;
    opts.compute_shifts = include_shifts && m != Method::phenomenological;
    return Model(spec, bath, opts).liouvillian(m, u, include_shifts);
}

} // namespace phonocool

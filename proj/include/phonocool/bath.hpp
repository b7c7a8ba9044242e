// bath.hpp — Super-Ohmic phonon bath: spectral density, occupation, rates, principal-value shifts

#pragma once

#include "phonocool/linalg.hpp"
#include "phonocool/system.hpp"

namespace phonocool {

struct BathSpec {
    double alpha{0.01};      // dimensionless coupling
    double omega_c{1.0};     // exponential cut-off
    double temperature{3.0}; // k_B T, ħ = k_B = 1

    double beta() const { return 1.0 / temperature; }
    void validate() const;
};

struct ShiftOptions {
    double abs_tol{1e-9};
    double upper_factor{40.0}; // integrate ω over (0, upper_factor·ω_c)
    int max_intervals{4000};
};

// J(ω) = 2α ω³/ω_c² e^{−ω/ω_c} for ω > 0, exactly 0 otherwise.
double spectral_density(double omega, const BathSpec& bath);

// n(ν) = 1/(e^{βν} − 1); throws InvalidArgument for ν ≤ 0.
double bose_occupation(double nu, const BathSpec& bath);

// A(ν) = π{[n(ν)+1]J(ν) + n(−ν)J(−ν)}, the ν > 0 branches only; A(0) is the
// two-sided limit 2πT·lim J(ν)/ν.
double rate_a(double nu, const BathSpec& bath);

struct ShiftValue {
    double value{0.0};
    double error{0.0};
};

// B(ν) = P∫₀^∞ J(ω)[ω + (2n(ω)+1)ν]/(ω² − ν²) dω.
//
// The pole at ω = |ν| is removed by subtraction: the integrand is written as
// f(ω)/(ω − |ν|) with f smooth, the remainder (f(ω) − f(|ν|))/(ω − |ν|) is
// integrated adaptively on either side of the pole, and f(|ν|)·ln((W − |ν|)/|ν|)
// is added back analytically. ν = 0 uses the regular limit ∫J(ω)/ω dω.
ShiftValue shift_b(double nu, const BathSpec& bath, const ShiftOptions& opts = {});

struct RateTable {
    RealMat3 a;
    RealMat3 b;
    RealMat3 b_error;
    RealMat3 nu;
};

// A_ij and B_ij at every ν_ij of the eigensystem. With include_shifts = false
// B is left at zero and no quadrature is done.
RateTable rate_table(const EigenSystem& eig, const BathSpec& bath, const ShiftOptions& opts = {},
                     bool include_shifts = true);

} // namespace phonocool

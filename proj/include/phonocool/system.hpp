// system.hpp — Driven three-level impurity: Hamiltonian, phonon coupling, eigenbasis blocks

#pragma once

#include <array>

#include "phonocool/linalg.hpp"

namespace phonocool {

// Working-basis ordering is (|e⟩, |g_u⟩, |g_l⟩).
namespace level {
inline constexpr int excited = 0;
inline constexpr int upper = 1;
inline constexpr int lower = 2;
} // namespace level

struct SystemSpec {
    double e_man{2.0};      // ground-manifold splitting
    double delta{0.0};      // laser detuning ω_l − E_0
    double omega_rabi{0.0}; // Rabi splitting, real and non-negative
    double gamma_rad{0.5};  // radiative decay rate of |e⟩

    void validate() const;
};

// Rotating-frame Hamiltonian, diag(−δ, 0, −E_man) with Ω/2 between |e⟩ and |g_u⟩.
Mat3 build_hamiltonian(const SystemSpec& spec);

// O = |g_l⟩⟨g_u| + |g_u⟩⟨g_l|
Mat3 coupling_operator();

struct EigenSystem {
    std::array<double, kDim> energies{};  // ascending
    std::array<int, kDim> dominant{};     // working-basis state with largest overlap, per eigenvector
    Mat3 basis;                           // columns are eigenvectors
    RealMat3 nu;                          // ν_ij = E_i − E_j
    std::array<std::array<Mat3, kDim>, kDim> o_blocks; // Ô_ij = ⟨i|O|j⟩ |i⟩⟨j|, working basis
    Mat3 hamiltonian;
    Mat3 coupling;

    const Mat3& block(int i, int j) const { return o_blocks[i][j]; }
};

// Eigendecomposition of a hermitian H with the coupling blocks of `coupling`.
// Degenerate energies are ordered by the index of the dominant working-basis state,
// and each eigenvector's largest component is made real and positive.
// Throws InvalidArgument if H is not hermitian to 1e-12.
EigenSystem eigensystem(const Mat3& h, const Mat3& coupling = coupling_operator());

} // namespace phonocool

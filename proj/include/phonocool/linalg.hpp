// linalg.hpp — Dense types and Liouville-space helpers for the three-level problem

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace phonocool {

using cplx = std::complex<double>;

inline constexpr int kDim = 3;
inline constexpr int kSuperDim = kDim * kDim;

using Mat3 = Eigen::Matrix<cplx, kDim, kDim>;
using RealMat3 = Eigen::Matrix<double, kDim, kDim>;
using Vec9 = Eigen::Matrix<cplx, kSuperDim, 1>;
using Super = Eigen::Matrix<cplx, kSuperDim, kSuperDim>;

// Vectorization is column stacking: vec(ρ)[i + 3j] = ρ(i, j).
// With that convention vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ).
inline Vec9 vec(const Mat3& m) {
    return Eigen::Map<const Vec9>(m.data());
}

inline Mat3 unvec(const Vec9& v) {
    return Eigen::Map<const Mat3>(v.data());
}

inline Super kron(const Mat3& a, const Mat3& b) {
    Super out;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            out.block<kDim, kDim>(i * kDim, j * kDim) = a(i, j) * b;
    return out;
}

// ρ ↦ A ρ B
inline Super sandwich(const Mat3& a, const Mat3& b) {
    return kron(b.transpose(), a);
}

// ρ ↦ A ρ
inline Super left_mul(const Mat3& a) {
    return sandwich(a, Mat3::Identity());
}

// ρ ↦ ρ B
inline Super right_mul(const Mat3& b) {
    return sandwich(Mat3::Identity(), b);
}

// ρ ↦ −i[H, ρ]
inline Super coherent_superop(const Mat3& h) {
    return cplx(0.0, -1.0) * (left_mul(h) - right_mul(h));
}

// ρ ↦ A ρ A† − ½{A†A, ρ}, with an optional phase on the jump term
inline Super lindblad_superop(const Mat3& jump, cplx jump_phase = 1.0) {
    const Mat3 ad = jump.adjoint();
    const Mat3 ada = ad * jump;
    return jump_phase * sandwich(jump, ad) - 0.5 * (left_mul(ada) + right_mul(ada));
}

// Row vector vec(I)ᵀ; (vec(I)ᵀ v) = Tr unvec(v).
inline Eigen::Matrix<cplx, 1, kSuperDim> trace_row() {
    return vec(Mat3::Identity()).transpose();
}

inline Mat3 apply(const Super& l, const Mat3& rho) {
    return unvec(l * vec(rho));
}

inline double hermiticity_defect(const Mat3& m) {
    return (m - m.adjoint()).norm();
}

// Smallest eigenvalue of the hermitian part.
inline double min_eigenvalue(const Mat3& rho) {
    const Mat3 h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat3> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

inline Mat3 projector(int state) {
    Mat3 p = Mat3::Zero();
    p(state, state) = 1.0;
    return p;
}

inline Mat3 ket_bra(int a, int b) {
    Mat3 p = Mat3::Zero();
    p(a, b) = 1.0;
    return p;
}

} // namespace phonocool

#include "phonocool/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "phonocool/errors.hpp"

namespace phonocool {

void SystemSpec::validate() const {
    if (!(e_man > 0.0) || !std::isfinite(e_man))
        throw InvalidArgument("e_man must be positive and finite");
    if (!(gamma_rad >= 0.0) || !std::isfinite(gamma_rad))
        throw InvalidArgument("gamma_rad must be non-negative and finite");
    if (!(omega_rabi >= 0.0) || !std::isfinite(omega_rabi))
        throw InvalidArgument("omega_rabi must be non-negative and finite");
    if (!std::isfinite(delta))
        throw InvalidArgument("delta must be finite");
}

Mat3 build_hamiltonian(const SystemSpec& spec) {
    spec.validate();
    Mat3 h = Mat3::Zero();
    h(level::excited, level::excited) = -spec.delta;
    h(level::lower, level::lower) = -spec.e_man;
    h(level::excited, level::upper) = 0.5 * spec.omega_rabi;
    h(level::upper, level::excited) = 0.5 * spec.omega_rabi;
    return h;
}

Mat3 coupling_operator() {
    return ket_bra(level::lower, level::upper) + ket_bra(level::upper, level::lower);
}

EigenSystem eigensystem(const Mat3& h, const Mat3& coupling) {
    const double defect = hermiticity_defect(h);
    if (defect > 1e-12) {
        std::ostringstream os;
        os << "eigensystem: input is not hermitian, ‖H − H†‖ = " << defect;
        throw InvalidArgument(os.str());
    }
    const Mat3 hh = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat3> es(hh);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigensystem: eigen-decomposition failed");

    std::array<int, kDim> dom{};
    Mat3 vecs = es.eigenvectors();
    for (int k = 0; k < kDim; ++k) {
        int arg = 0;
        vecs.col(k).cwiseAbs().maxCoeff(&arg);
        dom[k] = arg;
        const cplx c = vecs(arg, k);
        vecs.col(k) *= std::conj(c) / std::abs(c);
        vecs(arg, k) = std::abs(vecs(arg, k));
    }

    const double scale = std::max(1.0, hh.cwiseAbs().maxCoeff());
    const double tie = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    std::array<int, kDim> order{};
    std::iota(order.begin(), order.end(), 0);
    const auto& ev = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (std::abs(ev(a) - ev(b)) > tie) return ev(a) < ev(b);
        return dom[a] < dom[b];
    });

    EigenSystem out;
    out.hamiltonian = hh;
    out.coupling = coupling;
    for (int k = 0; k < kDim; ++k) {
        out.energies[k] = ev(order[k]);
        out.dominant[k] = dom[order[k]];
        out.basis.col(k) = vecs.col(order[k]);
    }
    const Mat3 o_eig = out.basis.adjoint() * coupling * out.basis;
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
            out.nu(i, j) = out.energies[i] - out.energies[j];
            out.o_blocks[i][j] = o_eig(i, j) * (out.basis.col(i) * out.basis.col(j).adjoint());
        }
    }
    return out;
}

} // namespace phonocool

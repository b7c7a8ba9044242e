#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "phonocool/system.hpp"
#include "support/oracles.hpp"

using namespace phonocool;

namespace {

std::array<double, 3> sorted_energies(const SystemSpec& s) { return eigensystem(build_hamiltonian(s)).energies; }

} // namespace

TEST_CASE("hamiltonian with couplings off is diagonal") {
    const Mat3 h = build_hamiltonian({2.0, 0.0, 0.0, 0.5});
    Mat3 want = Mat3::Zero();
    want(2, 2) = -2.0;
    CHECK(oracle::max_abs(h - want) == 0.0);
}

TEST_CASE("resonant drive splits the upper pair by the Rabi frequency") {
    const auto e = sorted_energies({2.0, 0.0, 1.0, 0.5});
    CHECK(e[0] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(e[1] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(e[2] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("eigenvalues match the characteristic polynomial roots") {
    const SystemSpec s{2.0, 0.3, 0.1, 0.5};
    const Mat3 h = build_hamiltonian(s);
    // det(x − H) for H = [[−δ, Ω/2, 0], [Ω/2, 0, 0], [0, 0, −E]], expanded by hand:
    // (x + E)·(x² + δx − Ω²/4)
    const double d = s.delta, w = s.omega_rabi, E = s.e_man;
    const double a = d + E, b = d * E - w * w / 4.0, c = -E * w * w / 4.0;
    const auto roots = oracle::cubic_roots(a, b, c);
    const auto e = eigensystem(h).energies;
    for (int i = 0; i < 3; ++i) CHECK(std::abs(e[i] - roots[i]) < 1e-12);
}

TEST_CASE("hamiltonian is bitwise hermitian") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 50; ++k) {
        const Mat3 h = build_hamiltonian({2.0, u(rng), std::abs(u(rng)), 0.5});
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("degenerate diagonal hamiltonian gives a permutation basis in a fixed order") {
    const auto eig = eigensystem(build_hamiltonian({2.0, 0.0, 0.0, 0.5}));
    CHECK(eig.energies[0] == -2.0);
    CHECK(eig.energies[1] == 0.0);
    CHECK(eig.energies[2] == 0.0);
    CHECK(eig.dominant[0] == level::lower);
    CHECK(eig.dominant[1] == level::excited);
    CHECK(eig.dominant[2] == level::upper);
    for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(std::abs(eig.basis(eig.dominant[j], j)) - 1.0) < 1e-15);
        CHECK(std::abs(eig.basis.col(j).norm() - 1.0) < 1e-15);
    }
    // Same answer on repeated calls.
    const auto again = eigensystem(build_hamiltonian({2.0, 0.0, 0.0, 0.5}));
    CHECK(oracle::max_abs(again.basis - eig.basis) == 0.0);
}

TEST_CASE("resonant drive dresses the upper pair into symmetric and antisymmetric states") {
    const auto eig = eigensystem(build_hamiltonian({2.0, 0.0, 0.4, 0.5}));
    const double r = 1.0 / std::sqrt(2.0);
    // E = −Ω/2 pairs with (|g_u⟩ − |e⟩)/√2, E = +Ω/2 with (|g_u⟩ + |e⟩)/√2.
    Eigen::Vector3cd minus(-r, r, 0.0), plus(r, r, 0.0);
    CHECK(std::abs(std::abs(eig.basis.col(1).dot(minus)) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(eig.basis.col(2).dot(plus)) - 1.0) < 1e-14);
}

TEST_CASE("coupling blocks sum to the coupling operator") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5), w(0.0, 2.0);
    for (int k = 0; k < 200; ++k) {
        const auto eig = eigensystem(build_hamiltonian({2.0, u(rng), k == 0 ? 0.0 : w(rng), 0.5}));
        Mat3 sum = Mat3::Zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) sum += eig.block(i, j);
        CHECK(oracle::max_abs(sum - coupling_operator()) < 1e-14);
    }
}

TEST_CASE("eigenpairs solve the eigenproblem") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.5, 1.5), w(0.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        const Mat3 h = build_hamiltonian({2.0, u(rng), w(rng), 0.5});
        const auto eig = eigensystem(h);
        for (int j = 0; j < 3; ++j) {
            const Eigen::Vector3cd v = eig.basis.col(j);
            CHECK((h * v - eig.energies[j] * v).norm() < 1e-12);
            for (int i = 0; i < 3; ++i) CHECK(eig.nu(i, j) == eig.energies[i] - eig.energies[j]);
        }
    }
}

TEST_CASE("undriven eigenbasis is the working basis up to permutation and phase") {
    for (double d : {-1.0, -0.2, 0.0, 0.7}) {
        const auto eig = eigensystem(build_hamiltonian({2.0, d, 0.0, 0.5}));
        for (int j = 0; j < 3; ++j) {
            const Eigen::Vector3cd v = eig.basis.col(j);
            CHECK(std::abs(std::abs(v(eig.dominant[j])) - 1.0) < 1e-15);
        }
    }
}

TEST_CASE("coupling operator acts only in the ground manifold") {
    const Mat3 o = coupling_operator();
    for (int x = 0; x < 3; ++x) {
        CHECK(o(level::excited, x) == cplx(0.0));
        CHECK(o(x, level::excited) == cplx(0.0));
    }
    const Mat3 o2 = o * o;
    CHECK(o2(level::upper, level::upper) == cplx(1.0));
    CHECK(o2(level::lower, level::lower) == cplx(1.0));
    CHECK(o2(level::upper, level::lower) == cplx(0.0));
}

TEST_CASE("in the dressed basis the coupling reaches only the symmetric dressed combination") {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Vector3cd plus(r, r, 0.0), minus(-r, r, 0.0), low(0.0, 0.0, 1.0);
    const Mat3 o = coupling_operator();
    const cplx to_plus = plus.dot(o * low), to_minus = minus.dot(o * low);
    // |+⟩ + |−⟩ ∝ |g_u⟩ is coupled; |+⟩ − |−⟩ ∝ |e⟩ is not.
    Eigen::Vector3cd sym = (plus + minus) / std::sqrt(2.0), anti = (plus - minus) / std::sqrt(2.0);
    CHECK(std::abs(std::abs(sym.dot(o * low)) - 1.0) < 1e-15);
    CHECK(std::abs(anti.dot(o * low)) < 1e-15);
    CHECK(std::abs(to_plus - to_minus) < 1e-15);
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS(build_hamiltonian({0.0, 0.0, 0.0, 0.5}));
    CHECK_THROWS(build_hamiltonian({2.0, 0.0, -0.1, 0.5}));
    CHECK_THROWS(build_hamiltonian({2.0, 0.0, 0.1, -0.5}));
    CHECK_THROWS(build_hamiltonian({2.0, std::nan(""), 0.1, 0.5}));
    Mat3 bad = Mat3::Zero();
    bad(0, 1) = 1.0;
    CHECK_THROWS(eigensystem(bad));
}

TEST_CASE("vectorization is column stacking") {
    std::mt19937_64 rng(3);
    const Mat3 a = oracle::random_matrix(rng), b = oracle::random_matrix(rng), r = oracle::random_matrix(rng);
    CHECK(oracle::max_abs(unvec(sandwich(a, b) * vec(r)) - a * r * b) < 1e-13);
    CHECK(oracle::max_abs(unvec(left_mul(a) * vec(r)) - a * r) < 1e-13);
    CHECK(oracle::max_abs(unvec(right_mul(b) * vec(r)) - r * b) < 1e-13);
    const Vec9 v = vec(r);
    CHECK(v(1) == r(1, 0));
    CHECK(v(3) == r(0, 1));
}

#include <doctest.h>

#include "trimode/entanglement.hpp"
#include "trimode/errors.hpp"

#include <cmath>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

using namespace trimode;

namespace {

Eigen::Matrix4d two_mode_squeezed(double r) {
    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
    const double ch = std::cosh(2 * r) / 2.0;
    const double sh = std::sinh(2 * r) / 2.0;
    v.topLeftCorner<2, 2>() = ch * Eigen::Matrix2d::Identity();
    v.bottomRightCorner<2, 2>() = ch * Eigen::Matrix2d::Identity();
    v(0, 2) = v(2, 0) = sh;
    v(1, 3) = v(3, 1) = -sh;
    return v;
}

// Random symplectic S = exp(Omega H), H symmetric.
Eigen::MatrixXd random_symplectic(int n_modes, std::mt19937& rng, double strength = 0.5) {
    std::normal_distribution<double> dist(0.0, strength);
    const int n = 2 * n_modes;
    Eigen::MatrixXd h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = dist(rng);
    return (symplectic_form(n_modes) * h).exp();
}

// Random physical CM with Williamson spectrum nu_k >= 1/2.
Eigen::MatrixXd random_physical_cm(int n_modes, std::mt19937& rng) {
    std::uniform_real_distribution<double> therm(0.0, 1.5);
    Eigen::MatrixXd core = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        const double nu = 0.5 + therm(rng);
        core(2 * k, 2 * k) = nu;
        core(2 * k + 1, 2 * k + 1) = nu;
    }
    const Eigen::MatrixXd s = random_symplectic(n_modes, rng);
    return ((s * core * s.transpose() + s * core * s.transpose()) / 2.0).eval();
}

// Block-determinant route, written out independently of the library path.
double log_negativity_oracle(const Eigen::Matrix4d& v) {
    const double det_a = v.topLeftCorner<2, 2>().determinant();
    const double det_b = v.bottomRightCorner<2, 2>().determinant();
    const double det_c = v.topRightCorner<2, 2>().determinant();
    const double sigma = det_a + det_b - 2 * det_c;
    const double disc = std::max(sigma * sigma - 4 * v.determinant(), 0.0);
    const double eta = std::sqrt(std::max(2.0 * v.determinant() / (sigma + std::sqrt(disc)), 0.0));
    return std::max(0.0, -std::log(2 * eta));
}

} // namespace

TEST_CASE("symplectic form") {
    const Eigen::MatrixXd omega = symplectic_form(3);
    CHECK((omega + omega.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((omega * omega + Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reduce") {
    std::mt19937 rng(5);
    const Eigen::MatrixXd v = random_physical_cm(3, rng);
    SUBCASE("all modes is the identity operation") {
        CHECK((reduce(v, {0, 1, 2}) - v).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("block-diagonal input reduces to its block") {
        Eigen::MatrixXd bd = Eigen::MatrixXd::Zero(6, 6);
        bd.block<2, 2>(0, 0) = 1.5 * Eigen::Matrix2d::Identity();
        bd.block<2, 2>(2, 2) = 0.5 * Eigen::Matrix2d::Identity();
        bd.block<2, 2>(4, 4) = 2.5 * Eigen::Matrix2d::Identity();
        CHECK((reduce(bd, {0}) - 1.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((reduce(bd, {2}) - 2.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("empty subset rejected") {
        CHECK_THROWS_AS(reduce(v, {}), InvalidParameter);
    }
    SUBCASE("order preserved regardless of request order") {
        CHECK((reduce(v, {2, 0}) - reduce(v, {0, 2})).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("symplectic eigenvalues: convention lock") {
    SUBCASE("three-mode vacuum") {
        const auto nus = symplectic_eigenvalues(0.5 * Eigen::MatrixXd::Identity(6, 6));
        REQUIRE(nus.size() == 3);
        for (double nu : nus) CHECK(nu == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("thermal modes") {
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(6, 6);
        const double n1 = 0.3, n2 = 2.0, n3 = 7.5;
        v.diagonal() << (2 * n1 + 1) / 2, (2 * n1 + 1) / 2, (2 * n2 + 1) / 2,
            (2 * n2 + 1) / 2, (2 * n3 + 1) / 2, (2 * n3 + 1) / 2;
        const auto nus = symplectic_eigenvalues(v);
        CHECK(nus[0] == doctest::Approx((2 * n1 + 1) / 2).epsilon(1e-12));
        CHECK(nus[1] == doctest::Approx((2 * n2 + 1) / 2).epsilon(1e-12));
        CHECK(nus[2] == doctest::Approx((2 * n3 + 1) / 2).epsilon(1e-12));
    }
    SUBCASE("two-mode squeezed state is pure: both nu = 1/2") {
        for (double r : {0.1, 0.5, 1.0, 2.0}) {
            const auto nus = symplectic_eigenvalues(two_mode_squeezed(r));
            CHECK(nus[0] == doctest::Approx(0.5).epsilon(1e-9));
            CHECK(nus[1] == doctest::Approx(0.5).epsilon(1e-9));
        }
    }
    SUBCASE("non-PD input rejected") {
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
        CHECK_THROWS_AS(symplectic_eigenvalues(v), InvalidParameter);
    }
}

TEST_CASE("partial transpose") {
    std::mt19937 rng(11);
    const Eigen::MatrixXd v = random_physical_cm(3, rng);
    SUBCASE("involution") {
        CHECK((partial_transpose(partial_transpose(v, 1), 1) - v).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("product state stays physical under PT of the product mode") {
        Eigen::MatrixXd bd = Eigen::MatrixXd::Zero(6, 6);
        bd.block<4, 4>(0, 0) = two_mode_squeezed(1.0);
        bd.block<2, 2>(4, 4) = 0.5 * Eigen::Matrix2d::Identity();
        const auto nus = symplectic_eigenvalues(partial_transpose(bd, 2));
        CHECK(nus.front() >= 0.5 - 1e-9);
    }
    SUBCASE("two-mode squeezed: min PT eigenvalue is exp(-2r)/2 on either mode") {
        for (double r : {0.1, 0.5, 1.0, 1.5, 2.0}) {
            for (int mode : {0, 1}) {
                const auto nus =
                    symplectic_eigenvalues(partial_transpose(two_mode_squeezed(r), mode));
                CHECK(nus.front() == doctest::Approx(std::exp(-2 * r) / 2).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("log negativity: closed forms and properties") {
    SUBCASE("vacuum x vacuum is zero") {
        CHECK(log_negativity_2mode(0.5 * Eigen::Matrix4d::Identity()) == 0.0);
    }
    SUBCASE("two-mode squeezed: E_N = 2r to 1e-10") {
        for (double r : {0.01, 0.1, 0.5, 1.0, 2.0, 3.0}) {
            CHECK(std::abs(log_negativity_2mode(two_mode_squeezed(r)) - 2 * r) < 1e-10);
        }
    }
    SUBCASE("monotonic in r") {
        double prev = -1;
        for (double r = 0.01; r <= 3.0; r += 0.05) {
            const double e = log_negativity_2mode(two_mode_squeezed(r));
            CHECK(e > prev);
            prev = e;
        }
    }
    SUBCASE("local phase-space rotations leave E_N invariant") {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> angle(0, 2 * M_PI);
        const Eigen::Matrix4d v = two_mode_squeezed(0.8);
        const double base = log_negativity_2mode(v);
        for (int k = 0; k < 20; ++k) {
            Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
            const double th = angle(rng);
            const int mode = k % 2;
            rot.block<2, 2>(2 * mode, 2 * mode) << std::cos(th), std::sin(th),
                -std::sin(th), std::cos(th);
            const Eigen::Matrix4d vr = rot * v * rot.transpose();
            CHECK(std::abs(log_negativity_2mode(vr) - base) < 1e-10);
        }
    }
    SUBCASE("cross-path agreement with the PT-spectrum route on random CMs") {
        std::mt19937 rng(23);
        for (int k = 0; k < 200; ++k) {
            const Eigen::Matrix4d v = random_physical_cm(2, rng);
            const double nu = symplectic_eigenvalues(partial_transpose(v, 0)).front();
            const double e_pt = std::max(0.0, -std::log(2 * nu));
            const double e_lib = log_negativity_2mode(v);
            CHECK(std::abs(e_lib - e_pt) < 1e-10 * std::max(1.0, e_pt));
            // PPT consistency: E_N > 0 iff nu < 1/2
            if (e_lib > 1e-9) CHECK(nu < 0.5);
            if (nu > 0.5 + 1e-9) CHECK(e_lib == 0.0);
        }
    }
    SUBCASE("unphysical input rejected") {
        CHECK_THROWS_AS(log_negativity_2mode(0.1 * Eigen::Matrix4d::Identity()),
                        InvalidParameter);
    }
}

TEST_CASE("one-versus-two negativity") {
    SUBCASE("three-mode vacuum: zero for every cut") {
        const Matrix6 v = 0.5 * Matrix6::Identity();
        for (int mode : {0, 1, 2}) CHECK(log_negativity_1v2(v, mode) == 0.0);
    }
    SUBCASE("squeezing on modes 1-2, vacuum on 3") {
        const double r = 1.0;
        Matrix6 v = Matrix6::Zero();
        v.block<4, 4>(0, 0) = two_mode_squeezed(r);
        v.block<2, 2>(4, 4) = 0.5 * Eigen::Matrix2d::Identity();
        CHECK(log_negativity_1v2(v, 2) == 0.0);
        CHECK(log_negativity_1v2(v, 0) == doctest::Approx(2 * r).epsilon(1e-9));
        CHECK(log_negativity_1v2(v, 1) == doctest::Approx(2 * r).epsilon(1e-9));
    }
}

TEST_CASE("tripartite classification") {
    SUBCASE("three-mode vacuum: not class 1-3") {
        const auto r = tripartite_class(0.5 * Matrix6::Identity());
        CHECK(r.cls == TripartiteClass::not_class_1_3);
        CHECK(to_string(r) == "not_class_1_3");
    }
    SUBCASE("squeezed pair + vacuum: one-mode biseparable naming mode 3") {
        Matrix6 v = Matrix6::Zero();
        v.block<4, 4>(0, 0) = two_mode_squeezed(1.0);
        v.block<2, 2>(4, 4) = 0.5 * Eigen::Matrix2d::Identity();
        const auto r = tripartite_class(v);
        CHECK(r.cls == TripartiteClass::one_mode_biseparable);
        CHECK(r.separable_mode == 2);
        CHECK(to_string(r) == "one_mode_biseparable(atoms)");
        CHECK(r.min_pt_eigenvalue[0] < 0.5);
        CHECK(r.min_pt_eigenvalue[1] < 0.5);
        CHECK(r.min_pt_eigenvalue[2] >= 0.5 - 1e-9);
    }
}

TEST_CASE("effective occupation") {
    SUBCASE("vacuum mirror block") {
        CHECK(effective_occupation(0.5 * Matrix6::Identity()) == 0.0);
    }
    SUBCASE("thermal mirror block gives n") {
        Matrix6 v = 0.5 * Matrix6::Identity();
        const double n = 3.25;
        v(0, 0) = v(1, 1) = (2 * n + 1) / 2;
        CHECK(effective_occupation(v) == doctest::Approx(n).epsilon(1e-12));
    }
    SUBCASE("tiny negative round-off clamps to zero") {
        Matrix6 v = 0.5 * Matrix6::Identity();
        v(0, 0) = 0.5 - 1e-10;
        CHECK(effective_occupation(v) == 0.0);
    }
}

TEST_CASE("decoupled atoms give exactly zero atomic negativities") {
    EffectiveParams e;
    e.omega_m = 2 * M_PI * 1e7;
    e.gamma_m = e.omega_m / 1e5;
    e.kappa = 3.14e7;
    e.detuning = e.omega_m;
    e.coupling_gm = 2 * M_PI * 6e6;
    e.atom_coupling = 0;
    e.atom_linewidth = 2 * M_PI * 5e6;
    e.detuning_a = -e.omega_m;
    e.nbar = 1250;
    const Matrix6 a = build_drift(e);
    const auto st = is_stable(a);
    REQUIRE(st.stable);
    const auto rep = report(solve_lyapunov(a, build_diffusion(e)).value, st);
    CHECK(rep.e_mirror_atoms < 1e-12);
    CHECK(rep.e_atoms_field < 1e-12);
    CHECK(rep.stable);
}

#include <doctest.h>

#include "trimode/dynamics.hpp"
#include "trimode/errors.hpp"

#include <cmath>
#include <random>

using namespace trimode;

namespace {

// eigen-shifted random matrix: Hurwitz by construction
Matrix6 random_stable_drift(std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix6 a;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) a(i, j) = dist(rng);
    Eigen::EigenSolver<Matrix6> es(a, false);
    double max_real = -1e300;
    for (int i = 0; i < 6; ++i) max_real = std::max(max_real, es.eigenvalues()(i).real());
    a -= (max_real + 0.5 + std::abs(dist(rng))) * Matrix6::Identity();
    return a;
}

Matrix6 random_diagonal_psd(std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(0.0, 2.0);
    Matrix6 d = Matrix6::Zero();
    for (int i = 0; i < 6; ++i) d(i, i) = dist(rng);
    return d;
}

} // namespace

TEST_CASE("is_stable basics") {
    CHECK(is_stable(-Matrix6::Identity()).stable);
    CHECK(is_stable(-Matrix6::Identity()).max_real_part == doctest::Approx(-1.0));

    Matrix6 a = -Matrix6::Identity();
    a(5, 5) = 1e-3;
    const auto st = is_stable(a);
    CHECK(!st.stable);
    CHECK(st.max_real_part == doctest::Approx(1e-3));

    SUBCASE("verdict survives unit rescaling") {
        std::mt19937 rng(7);
        for (int k = 0; k < 20; ++k) {
            const Matrix6 m = random_stable_drift(rng);
            CHECK(is_stable(m).stable == is_stable((1e9 * m).eval()).stable);
        }
    }
    SUBCASE("non-finite entries rejected") {
        a(0, 0) = std::nan("");
        CHECK_THROWS_AS(is_stable(a), InvalidParameter);
    }
}

TEST_CASE("solve_lyapunov closed forms") {
    SUBCASE("A = -I/2, D = I gives V = I") {
        const auto sol = solve_lyapunov(-0.5 * Matrix6::Identity(), Matrix6::Identity());
        CHECK((sol.value - Matrix6::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("A = -gamma I, diagonal D gives V = D / 2 gamma") {
        const double gamma = 3.7;
        Matrix6 d = Matrix6::Zero();
        for (int i = 0; i < 6; ++i) d(i, i) = i + 1.0;
        const auto sol = solve_lyapunov((-gamma * Matrix6::Identity()).eval(), d);
        CHECK((sol.value - d / (2 * gamma)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("unstable A is a precondition error, never a silent return") {
        Matrix6 a = -Matrix6::Identity();
        a(0, 0) = 1.0;
        CHECK_THROWS_AS(solve_lyapunov(a, Matrix6::Identity()), InvalidParameter);
    }
}

TEST_CASE("solve_lyapunov residual and symmetry on random instances") {
    std::mt19937 rng(42);
    for (int k = 0; k < 50; ++k) {
        const Matrix6 a = random_stable_drift(rng);
        const Matrix6 d = random_diagonal_psd(rng);
        const auto sol = solve_lyapunov(a, d);
        const double d_max = std::max(d.cwiseAbs().maxCoeff(), 1e-300);
        const double residual =
            (a * sol.value + sol.value * a.transpose() + d).cwiseAbs().maxCoeff();
        CHECK(residual < 1e-10 * d_max);
        CHECK((sol.value - sol.value.transpose()).cwiseAbs().maxCoeff()
              < 1e-12 * std::max(1.0, sol.value.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("solve_lyapunov scale covariance: (sA, sD) leaves V unchanged") {
    std::mt19937 rng(3);
    const Matrix6 a = random_stable_drift(rng);
    const Matrix6 d = random_diagonal_psd(rng);
    const Matrix6 v1 = solve_lyapunov(a, d).value;
    for (double s : {1e-7, 1e3, 1e9}) {
        const Matrix6 v2 = solve_lyapunov((s * a).eval(), (s * d).eval()).value;
        CHECK((v1 - v2).cwiseAbs().maxCoeff() < 1e-9 * v1.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("decoupled model: cavity and atoms at vacuum, mirror thermal") {
    EffectiveParams e;
    e.omega_m = 2 * M_PI * 1e7;
    e.gamma_m = e.omega_m / 1e5;
    e.kappa = 3.14e7;
    e.detuning = e.omega_m;
    e.coupling_gm = 0;
    e.atom_coupling = 0;
    e.atom_linewidth = 2 * M_PI * 5e6;
    e.detuning_a = -e.omega_m;
    e.nbar = 1250;
    const auto sol = solve_lyapunov(build_drift(e), build_diffusion(e));
    const Matrix6& v = sol.value;
    // off-diagonal blocks vanish
    CHECK(v.block<2, 2>(0, 2).cwiseAbs().maxCoeff() < 1e-9 * v.cwiseAbs().maxCoeff());
    CHECK(v.block<2, 2>(0, 4).cwiseAbs().maxCoeff() < 1e-9 * v.cwiseAbs().maxCoeff());
    CHECK(v.block<2, 2>(2, 4).cwiseAbs().maxCoeff() < 1e-9 * v.cwiseAbs().maxCoeff());
    // cavity and atom blocks are exact vacuum
    CHECK((v.block<2, 2>(2, 2) - 0.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((v.block<2, 2>(4, 4) - 0.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-9);
    // mirror block is the thermal state to 1% at Q = 1e5
    const double thermal = (2.0 * e.nbar + 1.0) / 2.0;
    CHECK(v(0, 0) == doctest::Approx(thermal).epsilon(0.01));
    CHECK(v(1, 1) == doctest::Approx(thermal).epsilon(0.01));
}

TEST_CASE("integrate_covariance closed forms") {
    SUBCASE("t = 0 returns V0 exactly") {
        std::mt19937 rng(9);
        const Matrix6 a = random_stable_drift(rng);
        Matrix6 v0 = Matrix6::Random();
        v0 = ((v0 + v0.transpose()) / 2).eval();
        const Matrix6 v = integrate_covariance(a, Matrix6::Zero(), v0, 0.0);
        CHECK((v - v0).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("pure decay: A = -gamma I, D = 0 gives V0 exp(-2 gamma t)") {
        const double gamma = 2.0;
        Matrix6 v0 = Matrix6::Random();
        v0 = ((v0 + v0.transpose()) / 2).eval();
        const double t = 1.3;
        const Matrix6 v =
            integrate_covariance((-gamma * Matrix6::Identity()).eval(), Matrix6::Zero(), v0, t);
        CHECK((v - v0 * std::exp(-2 * gamma * t)).cwiseAbs().maxCoeff()
              < 1e-8 * v0.cwiseAbs().maxCoeff());
    }
    SUBCASE("negative time rejected") {
        CHECK_THROWS_AS(
            integrate_covariance(-Matrix6::Identity(), Matrix6::Zero(), Matrix6::Zero(), -1.0),
            InvalidParameter);
    }
}

TEST_CASE("oracle equivalence: long-time integration reaches the algebraic solution") {
    std::mt19937 rng(123);
    for (int k = 0; k < 10; ++k) {
        const Matrix6 a = random_stable_drift(rng);
        const Matrix6 d = random_diagonal_psd(rng);
        const auto sol = solve_lyapunov(a, d);
        const double horizon = 40.0 / std::abs(is_stable(a).max_real_part);
        const Matrix6 v =
            integrate_covariance(a, d, (0.5 * Matrix6::Identity()).eval(), horizon);
        const double scale = std::max(1.0, sol.value.cwiseAbs().maxCoeff());
        CHECK((v - sol.value).cwiseAbs().maxCoeff() < 1e-6 * scale);
    }
}

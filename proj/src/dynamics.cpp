#include "trimode/dynamics.hpp"

#include "trimode/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>

namespace trimode {

namespace {

// Index map for the upper triangle of a symmetric 6x6 matrix.
constexpr int n_dim = 6;
constexpr int n_sym = n_dim * (n_dim + 1) / 2;

int tri_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n_dim - i * (i - 1) / 2 + (j - i);
}

} // namespace

StabilityResult is_stable(const Matrix6& drift) {
    if (!drift.allFinite()) throw InvalidParameter("drift matrix has non-finite entries");
    Eigen::EigenSolver<Matrix6> es(drift, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NumericalError("drift eigenvalue solve failed");
    double max_real = -std::numeric_limits<double>::infinity();
    double radius = 0;
    for (int i = 0; i < n_dim; ++i) {
        max_real = std::max(max_real, es.eigenvalues()(i).real());
        radius = std::max(radius, std::abs(es.eigenvalues()(i)));
    }
    return {max_real < -1e-9 * radius, max_real};
}

LyapunovSolution solve_lyapunov(const Matrix6& drift, const Matrix6& diffusion) {
    const StabilityResult st = is_stable(drift);
    if (!st.stable) {
        throw InvalidParameter("solve_lyapunov requires a Hurwitz drift matrix");
    }
    for (int i = 0; i < n_dim; ++i) {
        if (diffusion(i, i) < 0) throw InvalidParameter("diffusion matrix must be PSD");
    }

    // Nondimensionalize: (A, D) -> (A/s, D/s) leaves V unchanged but keeps
    // the linear system well scaled when rates span several decades.
    const double scale = drift.cwiseAbs().maxCoeff();
    const Matrix6 a = drift / scale;
    const Matrix6 d = diffusion / scale;

    // Symmetric vectorization of A V + V A^T = -D: 21 unknowns v_{ij}, i<=j.
    Eigen::Matrix<double, n_sym, n_sym> m = Eigen::Matrix<double, n_sym, n_sym>::Zero();
    Eigen::Matrix<double, n_sym, 1> rhs;
    for (int i = 0; i < n_dim; ++i) {
        for (int j = i; j < n_dim; ++j) {
            const int row = tri_index(i, j);
            rhs(row) = -d(i, j);
            for (int k = 0; k < n_dim; ++k) {
                m(row, tri_index(k, j)) += a(i, k);
                m(row, tri_index(i, k)) += a(j, k);
            }
        }
    }

    Eigen::PartialPivLU<Eigen::Matrix<double, n_sym, n_sym>> lu(m);
    Eigen::Matrix<double, n_sym, 1> v = lu.solve(rhs);
    // One refinement pass keeps the residual at round-off level.
    v += lu.solve(rhs - m * v);

    LyapunovSolution sol;
    const double rcond = lu.rcond();
    sol.ill_conditioned = !(rcond > 1e-12);
    for (int i = 0; i < n_dim; ++i) {
        for (int j = i; j < n_dim; ++j) {
            sol.value(i, j) = v(tri_index(i, j));
            sol.value(j, i) = sol.value(i, j);
        }
    }
    sol.value = ((sol.value + sol.value.transpose()) / 2.0).eval();

    const double residual = (a * sol.value + sol.value * a.transpose() + d).cwiseAbs().maxCoeff();
    if (!std::isfinite(residual)) throw NumericalError("Lyapunov solve produced non-finite result");
    return sol;
}

Matrix6 integrate_covariance(const Matrix6& drift, const Matrix6& diffusion,
                             const Matrix6& initial, double time) {
    if (time < 0) throw InvalidParameter("integration time must be non-negative");
    if (time == 0) return initial;

    // Work in dimensionless time t' = s t so the controller tolerances are
    // meaningful regardless of the rate scale.
    const double scale = std::max(drift.cwiseAbs().maxCoeff(), 1e-300);
    const Matrix6 a = drift / scale;
    const Matrix6 d = diffusion / scale;
    const double t_end = time * scale;

    using state_type = std::array<double, 36>;
    auto rhs = [&](const state_type& x, state_type& dxdt, double) {
        Eigen::Map<const Matrix6> v(x.data());
        Eigen::Map<Matrix6> out(dxdt.data());
        out = a * v + v * a.transpose() + d;
    };

    state_type x;
    Eigen::Map<Matrix6>(x.data()) = initial;

    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(1e-12, 1e-9,
                                        ode::runge_kutta_dopri5<state_type>());
    try {
        ode::integrate_adaptive(stepper, rhs, x, 0.0, t_end, t_end / 1000.0);
    } catch (const std::exception& e) {
        throw NumericalError(std::string("covariance integration failed: ") + e.what());
    }

    Matrix6 v = Eigen::Map<Matrix6>(x.data());
    return ((v + v.transpose()) / 2.0).eval();
}

} // namespace trimode

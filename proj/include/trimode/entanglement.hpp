#pragma once

#include "trimode/dynamics.hpp"

#include <array>
#include <string>
#include <vector>

namespace trimode {

// Quadrature ordering is (q, p) interleaved per mode; vacuum variance 1/2.
// Mode indices: 0 mirror, 1 cavity field, 2 atoms.

Eigen::MatrixXd symplectic_form(int n_modes);

// Gaussian partial trace: keeps the rows/columns of the selected modes,
// preserving (mirror, cavity, atoms) order.
Eigen::MatrixXd reduce(const Eigen::MatrixXd& cm, const std::vector<int>& modes);

// Williamson spectrum: the n positive values |eig(i Omega V)|, ascending.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cm);

// Momentum sign flip on one mode; involutive.
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& cm, int mode);

// Physicality: min symplectic eigenvalue >= 1/2 - tol.
bool is_physical(const Eigen::MatrixXd& cm, double tol = 1e-9);

// Logarithmic negativity of a two-mode CM (natural log). Computes both the
// block-determinant route and the PT-spectrum route and cross-asserts them.
double log_negativity_2mode(const Eigen::Matrix4d& cm);

// 1-vs-2 negativity of a three-mode CM across the cut singling out `mode`.
double log_negativity_1v2(const Matrix6& cm, int mode);

enum class TripartiteClass {
    fully_inseparable,      // all three 1|2 cuts NPT
    one_mode_biseparable,   // exactly one cut PPT
    two_mode_biseparable,   // exactly two cuts PPT
    not_class_1_3,          // all cuts PPT (classes 4/5 not distinguished)
};

struct TripartiteResult {
    TripartiteClass cls = TripartiteClass::not_class_1_3;
    int separable_mode = -1;  // the PPT mode for one_mode_biseparable
    std::array<double, 3> min_pt_eigenvalue{};  // per 1|2 cut, mode order
};

TripartiteResult tripartite_class(const Matrix6& cm);

std::string to_string(const TripartiteResult& r);

// Mean phonon number of the mirror from its reduced block.
double effective_occupation(const Matrix6& cm);

struct EntanglementReport {
    double e_mirror_field = 0;  // E_mf
    double e_mirror_atoms = 0;  // E_ma
    double e_atoms_field = 0;   // E_af
    double n_eff = 0;
    TripartiteResult tripartite;
    bool stable = false;
};

EntanglementReport report(const Matrix6& cm, const StabilityResult& stability);

} // namespace trimode

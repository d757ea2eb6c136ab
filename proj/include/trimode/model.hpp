#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace trimode {

using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Laboratory inputs. All rates and frequencies are angular (rad/s);
// detunings may carry either sign.
struct PhysicalParams {
    double omega_m = 0;         // mechanical frequency
    double quality_factor = 0;  // Q = omega_m / gamma_m
    double mass = 0;            // effective mass (kg)
    double cavity_length = 0;   // L (m)
    std::optional<double> finesse;  // exactly one of finesse / kappa
    std::optional<double> kappa;    // amplitude decay rate (rad/s)
    double laser_wavelength = 0;    // lambda_l (m)
    double laser_power = 0;         // P_l (W)
    double detuning_f = 0;          // Delta_f = omega_c - omega_l
    double atom_coupling = 0;       // G_a = g sqrt(N_a)
    double atom_linewidth = 0;      // gamma_a
    double detuning_a = 0;          // Delta_a = omega_a - omega_l
    double temperature = 0;         // T (K)
    std::optional<double> single_atom_g;  // for validity diagnostics only

    // Throws InvalidParameter naming the offending field.
    void validate() const;
};

struct DerivedConstants {
    double omega_c = 0;  // cavity frequency
    double omega_l = 0;  // laser frequency
    double coupling_g0 = 0;      // radiation-pressure coupling G_0 (1/s)
    double drive_amplitude = 0;  // |E_l| (1/s)
    double kappa = 0;
    double gamma_m = 0;
};

DerivedConstants derive_constants(const PhysicalParams& p);

// Bose occupation; T=0 returns exactly 0.
double thermal_occupation(double temperature, double omega_m);

// Semiclassical steady state. alpha_s is taken real >= 0 by the global
// phase convention; all_roots lists every admissible |alpha_s|^2.
struct WorkingPoint {
    double alpha_s = 0;
    double photon_number = 0;  // |alpha_s|^2
    double q_s = 0;            // stationary mirror displacement (dimensionless)
    std::complex<double> c_s{0, 0};
    double coupling_gm = 0;    // G_m = G_0 alpha_s sqrt(2)
    double detuning = 0;       // effective Delta = Delta_f - G_m^2 / (2 omega_m)
    bool bistable = false;
    std::vector<double> all_roots;
    std::optional<double> excitation_probability;
    std::optional<std::string> warning;
};

// Solves the cubic in |alpha_s|^2 at the given Delta_f; selects the
// smallest-intensity root whose drift matrix is Hurwitz.
WorkingPoint solve_working_point(const PhysicalParams& p);

// Same model with the effective detuning pinned instead of Delta_f:
// the intensity is then closed-form and Delta_f is implied.
WorkingPoint working_point_at_detuning(const PhysicalParams& p, double effective_detuning);

// Everything the linearized dynamics needs; rad/s throughout, no other
// laboratory units.
struct EffectiveParams {
    double omega_m = 0;
    double gamma_m = 0;
    double kappa = 0;
    double detuning = 0;       // effective cavity detuning Delta
    double coupling_gm = 0;    // effective optomechanical coupling
    double atom_coupling = 0;  // G_a
    double atom_linewidth = 0; // gamma_a
    double detuning_a = 0;
    double nbar = 0;
};

EffectiveParams effective_params(const PhysicalParams& p, const WorkingPoint& w);

Matrix6 build_drift(const EffectiveParams& e);
Matrix6 build_diffusion(const EffectiveParams& e);

} // namespace trimode

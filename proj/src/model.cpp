#include "trimode/model.hpp"

#include "trimode/constants.hpp"
#include "trimode/dynamics.hpp"
#include "trimode/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace trimode {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

void require_positive(double value, const char* field) {
    if (!(value > 0) || !std::isfinite(value)) {
        throw InvalidParameter(fmt::format("{} must be strictly positive, got {}", field, value));
    }
}

// Atomic susceptibility G_a^2 / (gamma_a + i Delta_a) split into the
// damping shift (real) and detuning shift (-imag part enters Delta).
struct AtomShift {
    double damping = 0;   // added to kappa
    double detuning = 0;  // subtracted from the effective detuning
};

AtomShift atom_shift(const PhysicalParams& p) {
    if (p.atom_coupling == 0) return {};
    const double denom = p.atom_linewidth * p.atom_linewidth + p.detuning_a * p.detuning_a;
    const double g2 = p.atom_coupling * p.atom_coupling;
    return {g2 * p.atom_linewidth / denom, g2 * p.detuning_a / denom};
}

// Real roots of a cubic (or lower-degree) polynomial via the companion
// matrix, Newton-polished against the monic coefficients.
std::vector<double> real_roots(std::vector<double> coeffs) {
    while (coeffs.size() > 1 && coeffs.front() == 0.0) coeffs.erase(coeffs.begin());
    const int degree = static_cast<int>(coeffs.size()) - 1;
    if (degree < 1) return {};
    for (int i = 1; i <= degree; ++i) coeffs[i] /= coeffs[0];
    coeffs[0] = 1.0;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[degree - i];
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
    if (es.info() != Eigen::Success) throw NumericalError("cubic eigenvalue solve failed");

    auto eval = [&](double x) {
        double v = 0, dv = 0;
        for (double c : coeffs) {
            dv = dv * x + v;
            v = v * x + c;
        }
        return std::pair{v, dv};
    };

    std::vector<double> roots;
    for (int i = 0; i < degree; ++i) {
        const std::complex<double> z = es.eigenvalues()(i);
        if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z.real()))) continue;
        double x = z.real();
        for (int it = 0; it < 60; ++it) {
            auto [v, dv] = eval(x);
            if (dv == 0) break;
            const double step = v / dv;
            x -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    // companion eigenvalues of a near-degenerate polynomial can converge to
    // the same root; keep one representative
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) {
                                return std::abs(a - b) <= 1e-8 * std::max({1.0, std::abs(a), std::abs(b)});
                            }),
                roots.end());
    return roots;
}

WorkingPoint finish_working_point(const PhysicalParams& p, const DerivedConstants& d,
                                  double intensity, double detuning_f,
                                  std::vector<double> all_roots, bool bistable) {
    WorkingPoint w;
    w.photon_number = intensity;
    w.alpha_s = std::sqrt(intensity);
    w.q_s = d.coupling_g0 * intensity / p.omega_m;
    w.coupling_gm = d.coupling_g0 * w.alpha_s * std::sqrt(2.0);
    w.detuning = detuning_f - w.coupling_gm * w.coupling_gm / (2.0 * p.omega_m);
    if (p.atom_coupling > 0) {
        const std::complex<double> pole(p.atom_linewidth, p.detuning_a);
        w.c_s = std::complex<double>(0, -1) * p.atom_coupling * w.alpha_s / pole;
    }
    w.all_roots = std::move(all_roots);
    w.bistable = bistable;
    if (p.quality_factor < 1e4) {
        w.warning = fmt::format("quality_factor {:.3g} below 1e4: Markovian limit marginal",
                                p.quality_factor);
    }
    if (p.single_atom_g) {
        const double g = *p.single_atom_g;
        const double prob = g * g * intensity /
                            (p.detuning_a * p.detuning_a + p.atom_linewidth * p.atom_linewidth);
        w.excitation_probability = prob;
        if (prob >= 0.1) {
            throw ValidityError(fmt::format(
                "bosonic approximation violated: single-atom excitation probability {:.3g} >= 0.1",
                prob));
        }
        if (prob >= 0.01) {
            w.warning = fmt::format(
                "single-atom excitation probability {:.3g} in [0.01, 0.1): bosonic approximation marginal",
                prob);
        }
    }
    return w;
}

bool branch_is_stable(const PhysicalParams& p, const DerivedConstants& d, double intensity,
                      double detuning_f) {
    EffectiveParams e;
    e.omega_m = p.omega_m;
    e.gamma_m = d.gamma_m;
    e.kappa = d.kappa;
    e.coupling_gm = d.coupling_g0 * std::sqrt(2.0 * intensity);
    e.detuning = detuning_f - d.coupling_g0 * d.coupling_g0 * intensity / p.omega_m;
    e.atom_coupling = p.atom_coupling;
    e.atom_linewidth = p.atom_linewidth;
    e.detuning_a = p.detuning_a;
    return is_stable(build_drift(e)).stable;
}

} // namespace

void PhysicalParams::validate() const {
    require_positive(omega_m, "omega_m");
    require_positive(quality_factor, "quality_factor");
    require_positive(mass, "mass");
    require_positive(cavity_length, "cavity_length");
    require_positive(laser_wavelength, "laser_wavelength");
    if (laser_power < 0 || !std::isfinite(laser_power)) {
        throw InvalidParameter("laser_power must be non-negative");
    }
    if (temperature < 0 || !std::isfinite(temperature)) {
        throw InvalidParameter("temperature must be non-negative");
    }
    if (finesse.has_value() == kappa.has_value()) {
        throw InvalidParameter("exactly one of finesse / kappa must be provided");
    }
    if (finesse) require_positive(*finesse, "finesse");
    if (kappa) require_positive(*kappa, "kappa");
    if (atom_coupling < 0) throw InvalidParameter("atom_coupling must be non-negative");
    if (atom_linewidth < 0) throw InvalidParameter("atom_linewidth must be non-negative");
    if (atom_coupling > 0 && atom_linewidth == 0 && detuning_a == 0) {
        throw InvalidParameter(
            "atom_linewidth and detuning_a both zero with atom_coupling > 0: steady state ill-defined");
    }
    if (quality_factor < 100) {
        throw InvalidParameter("quality_factor below 100: Markovian Brownian-noise limit invalid");
    }
}

DerivedConstants derive_constants(const PhysicalParams& p) {
    p.validate();
    DerivedConstants d;
    d.omega_l = 2.0 * pi * consts::c_light / p.laser_wavelength;
    d.omega_c = d.omega_l + p.detuning_f;
    require_positive(d.omega_c, "omega_c (= omega_l + detuning_f)");
    d.gamma_m = p.omega_m / p.quality_factor;
    // Cavity linewidth from finesse: the free spectral range pi c / L divided
    // by F, used directly as the Langevin amplitude decay rate.
    d.kappa = p.kappa ? *p.kappa : pi * consts::c_light / (p.cavity_length * *p.finesse);
    require_positive(d.kappa, "kappa");
    d.coupling_g0 = (d.omega_c / p.cavity_length) * std::sqrt(consts::hbar / (p.mass * p.omega_m));
    d.drive_amplitude = std::sqrt(2.0 * p.laser_power * d.kappa / (consts::hbar * d.omega_l));
    return d;
}

double thermal_occupation(double temperature, double omega_m) {
    if (temperature < 0) throw InvalidParameter("temperature must be non-negative");
    require_positive(omega_m, "omega_m");
    if (temperature == 0) return 0.0;
    return 1.0 / std::expm1(consts::hbar * omega_m / (consts::k_boltzmann * temperature));
}

WorkingPoint solve_working_point(const PhysicalParams& p) {
    const DerivedConstants d = derive_constants(p);
    const AtomShift shift = atom_shift(p);
    const double k_eff = d.kappa + shift.damping;
    const double d0 = p.detuning_f - shift.detuning;
    const double s = d.coupling_g0 * d.coupling_g0 / p.omega_m;
    const double el2 = d.drive_amplitude * d.drive_amplitude;

    // |alpha_s|^2 [k_eff^2 + (d0 - s I)^2] = |E_l|^2, cubic in I.
    std::vector<double> roots =
        real_roots({s * s, -2.0 * s * d0, k_eff * k_eff + d0 * d0, -el2});
    std::vector<double> admissible;
    for (double r : roots) {
        if (r < 0) {
            if (r > -1e-12 * std::max(1.0, el2 / (k_eff * k_eff + d0 * d0))) r = 0;
            else continue;
        }
        // relative residual of the modulus equation
        const double lhs = r * (k_eff * k_eff + (d0 - s * r) * (d0 - s * r));
        if (el2 > 0 && std::abs(lhs - el2) > 1e-8 * el2) continue;
        admissible.push_back(r);
    }
    if (el2 == 0) admissible.assign(1, 0.0);
    if (admissible.empty()) {
        throw NumericalError("no real non-negative intensity root: arithmetic failure");
    }

    std::optional<double> selected;
    for (double r : admissible) {
        if (branch_is_stable(p, d, r, p.detuning_f)) {
            selected = r;
            break;
        }
    }
    if (!selected) {
        throw UnstableWorkingPoint("no stable semiclassical branch at this drive");
    }
    return finish_working_point(p, d, *selected, p.detuning_f, admissible,
                                admissible.size() > 1);
}

WorkingPoint working_point_at_detuning(const PhysicalParams& p, double effective_detuning) {
    const DerivedConstants d = derive_constants(p);
    const AtomShift shift = atom_shift(p);
    const double k_eff = d.kappa + shift.damping;
    const double deff = effective_detuning - shift.detuning;
    const double el2 = d.drive_amplitude * d.drive_amplitude;
    const double intensity = el2 / (k_eff * k_eff + deff * deff);
    const double s = d.coupling_g0 * d.coupling_g0 / p.omega_m;
    const double detuning_f = effective_detuning + s * intensity;

    // Report the full root structure of the implied Delta_f for diagnostics.
    std::vector<double> admissible{intensity};
    if (s > 0 && el2 > 0) {
        admissible.clear();
        for (double r : real_roots({s * s, -2.0 * s * (detuning_f - shift.detuning),
                                    k_eff * k_eff + (detuning_f - shift.detuning) * (detuning_f - shift.detuning),
                                    -el2})) {
            if (r >= 0) admissible.push_back(r);
        }
        if (admissible.empty()) admissible.push_back(intensity);
    }
    return finish_working_point(p, d, intensity, detuning_f, admissible,
                                admissible.size() > 1);
}

EffectiveParams effective_params(const PhysicalParams& p, const WorkingPoint& w) {
    const DerivedConstants d = derive_constants(p);
    EffectiveParams e;
    e.omega_m = p.omega_m;
    e.gamma_m = d.gamma_m;
    e.kappa = d.kappa;
    e.detuning = w.detuning;
    e.coupling_gm = w.coupling_gm;
    e.atom_coupling = p.atom_coupling;
    e.atom_linewidth = p.atom_linewidth;
    e.detuning_a = p.detuning_a;
    e.nbar = thermal_occupation(p.temperature, p.omega_m);
    return e;
}

Matrix6 build_drift(const EffectiveParams& e) {
    Matrix6 a = Matrix6::Zero();
    a(0, 1) = e.omega_m;
    a(1, 0) = -e.omega_m;
    a(1, 1) = -e.gamma_m;
    a(1, 2) = e.coupling_gm;
    a(2, 2) = -e.kappa;
    a(2, 3) = e.detuning;
    a(2, 5) = e.atom_coupling;
    a(3, 0) = e.coupling_gm;
    a(3, 2) = -e.detuning;
    a(3, 3) = -e.kappa;
    a(3, 4) = -e.atom_coupling;
    a(4, 3) = e.atom_coupling;
    a(4, 4) = -e.atom_linewidth;
    a(4, 5) = e.detuning_a;
    a(5, 2) = -e.atom_coupling;
    a(5, 4) = -e.detuning_a;
    a(5, 5) = -e.atom_linewidth;
    return a;
}

Matrix6 build_diffusion(const EffectiveParams& e) {
    if (e.nbar < 0) throw InvalidParameter("nbar must be non-negative");
    Matrix6 d = Matrix6::Zero();
    d(1, 1) = e.gamma_m * (2.0 * e.nbar + 1.0);
    d(2, 2) = e.kappa;
    d(3, 3) = e.kappa;
    d(4, 4) = e.atom_linewidth;
    d(5, 5) = e.atom_linewidth;
    return d;
}

} // namespace trimode

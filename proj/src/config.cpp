#include "trimode/config.hpp"

#include "trimode/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <set>
#include <sstream>

namespace trimode {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

struct RawEntry {
    std::string value;
    int line = 0;
};

struct RawConfig {
    std::map<std::string, RawEntry> entries;
    std::vector<std::string> errors;

    bool has(const std::string& key) const { return entries.count(key) > 0; }
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::set<std::string> common_keys = {
    "mode", "axis", "start", "stop", "count", "outputs",
};

const std::set<std::string> physical_required = {
    "omega_m_over_2pi_Hz", "quality_factor", "mass_kg", "cavity_length_m",
    "laser_wavelength_m", "laser_power_W", "temperature_K",
    "atom_coupling_over_2pi_Hz", "atom_linewidth_over_2pi_Hz",
};

const std::set<std::string> physical_optional = {
    "finesse", "kappa_rad_s", "detuning_f_over_omega_m",
    "working_point_Delta_over_omega_m", "detuning_a_over_omega_m",
    "single_atom_g_Hz",
};

const std::set<std::string> effective_required = {
    "omega_m_over_2pi_Hz", "gamma_m_over_2pi_Hz", "kappa_over_2pi_Hz",
    "G_m_over_2pi_Hz", "G_a_over_2pi_Hz", "gamma_a_over_2pi_Hz",
};

const std::set<std::string> effective_optional = {
    "Delta_over_omega_m", "Delta_a_over_omega_m", "nbar", "temperature_K",
};

const std::set<std::string> known_outputs = {
    "E_mf", "E_ma", "E_af", "n_eff", "tripartite", "max_real_part",
};

RawConfig tokenize(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            raw.errors.push_back(fmt::format("line {}: expected key = value", line_no));
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            raw.errors.push_back(fmt::format("line {}: empty key", line_no));
            continue;
        }
        auto [it, inserted] = raw.entries.emplace(key, RawEntry{value, line_no});
        if (!inserted) {
            raw.errors.push_back(fmt::format("duplicate key '{}' on lines {} and {}",
                                             key, it->second.line, line_no));
        }
    }
    return raw;
}

double parse_number(const RawConfig& raw, const std::string& key,
                    std::vector<std::string>& errors) {
    const auto& entry = raw.entries.at(key);
    try {
        size_t pos = 0;
        const double v = std::stod(entry.value, &pos);
        if (pos != entry.value.size()) throw std::invalid_argument("trailing characters");
        if (!std::isfinite(v)) throw std::invalid_argument("not finite");
        return v;
    } catch (const std::exception&) {
        errors.push_back(fmt::format("line {}: key '{}': cannot parse number '{}'",
                                     entry.line, key, entry.value));
        return 0;
    }
}

[[noreturn]] void fail(const std::vector<std::string>& errors) {
    std::string msg = "configuration invalid:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw InvalidParameter(msg);
}

} // namespace

SweepSpec parse_config(const std::string& text) {
    RawConfig raw = tokenize(text);
    std::vector<std::string> errors = raw.errors;

    SweepSpec spec;
    if (!raw.has("mode")) {
        std::string missing = "missing required key 'mode'; required keys for mode=physical:";
        for (const auto& k : physical_required) missing += " " + k;
        missing += " and one of {finesse, kappa_rad_s}, one of "
                   "{detuning_f_over_omega_m, working_point_Delta_over_omega_m}";
        errors.push_back(missing);
        fail(errors);
    }
    const std::string mode = raw.entries.at("mode").value;
    if (mode == "physical") spec.mode = InputMode::physical;
    else if (mode == "effective") spec.mode = InputMode::effective;
    else {
        errors.push_back(fmt::format("line {}: mode must be 'physical' or 'effective', got '{}'",
                                     raw.entries.at("mode").line, mode));
        fail(errors);
    }

    const auto& required = spec.mode == InputMode::physical ? physical_required
                                                            : effective_required;
    const auto& optional = spec.mode == InputMode::physical ? physical_optional
                                                            : effective_optional;
    for (const auto& [key, entry] : raw.entries) {
        if (!common_keys.count(key) && !required.count(key) && !optional.count(key)) {
            errors.push_back(fmt::format("line {}: unknown key '{}'", entry.line, key));
        }
    }
    std::vector<std::string> missing;
    for (const auto& key : required) {
        if (!raw.has(key)) missing.push_back(key);
    }
    if (!missing.empty()) {
        std::string msg = "missing required keys:";
        for (const auto& k : missing) msg += " " + k;
        errors.push_back(msg);
    }

    // Axis block.
    if (raw.has("axis")) {
        const auto& entry = raw.entries.at("axis");
        if (entry.value == "Delta_over_omega_m") spec.axis = SweepAxis::delta;
        else if (entry.value == "Delta_a_over_omega_m") spec.axis = SweepAxis::delta_a;
        else if (entry.value == "temperature_K") spec.axis = SweepAxis::temperature;
        else errors.push_back(fmt::format("line {}: unknown axis '{}'", entry.line, entry.value));
        for (const char* k : {"start", "stop", "count"}) {
            if (!raw.has(k)) errors.push_back(fmt::format("axis given but '{}' missing", k));
        }
        if (raw.has("start")) spec.start = parse_number(raw, "start", errors);
        if (raw.has("stop")) spec.stop = parse_number(raw, "stop", errors);
        if (raw.has("count")) {
            const double c = parse_number(raw, "count", errors);
            spec.count = static_cast<int>(c);
            if (spec.count != c || spec.count < 2) {
                errors.push_back("count must be an integer >= 2");
            }
        }
        if (raw.has("start") && raw.has("stop") && !(spec.start < spec.stop)) {
            errors.push_back("start must be < stop");
        }
    } else {
        for (const char* k : {"start", "stop", "count"}) {
            if (raw.has(k)) {
                errors.push_back(fmt::format("line {}: '{}' given without 'axis'",
                                             raw.entries.at(k).line, k));
            }
        }
    }

    if (raw.has("outputs")) {
        std::istringstream out(raw.entries.at("outputs").value);
        std::string item;
        while (std::getline(out, item, ',')) {
            item = trim(item);
            if (!known_outputs.count(item)) {
                errors.push_back(fmt::format("unknown output column '{}'", item));
            } else {
                spec.outputs.push_back(item);
            }
        }
    }

    if (!errors.empty()) fail(errors);

    const double omega_m = two_pi * parse_number(raw, "omega_m_over_2pi_Hz", errors);

    if (spec.mode == InputMode::physical) {
        PhysicalParams p;
        p.omega_m = omega_m;
        p.quality_factor = parse_number(raw, "quality_factor", errors);
        p.mass = parse_number(raw, "mass_kg", errors);
        p.cavity_length = parse_number(raw, "cavity_length_m", errors);
        p.laser_wavelength = parse_number(raw, "laser_wavelength_m", errors);
        p.laser_power = parse_number(raw, "laser_power_W", errors);
        p.temperature = parse_number(raw, "temperature_K", errors);
        p.atom_coupling = two_pi * parse_number(raw, "atom_coupling_over_2pi_Hz", errors);
        p.atom_linewidth = two_pi * parse_number(raw, "atom_linewidth_over_2pi_Hz", errors);
        if (raw.has("finesse") && raw.has("kappa_rad_s")) {
            errors.push_back("exactly one of finesse / kappa_rad_s allowed");
        } else if (raw.has("finesse")) {
            p.finesse = parse_number(raw, "finesse", errors);
        } else if (raw.has("kappa_rad_s")) {
            p.kappa = parse_number(raw, "kappa_rad_s", errors);
        } else {
            errors.push_back("one of finesse / kappa_rad_s required");
        }
        if (raw.has("single_atom_g_Hz")) {
            p.single_atom_g = two_pi * parse_number(raw, "single_atom_g_Hz", errors);
        }
        if (raw.has("detuning_a_over_omega_m")) {
            if (spec.axis == SweepAxis::delta_a) {
                errors.push_back("detuning_a_over_omega_m is shadowed by the sweep axis; remove it");
            }
            p.detuning_a = omega_m * parse_number(raw, "detuning_a_over_omega_m", errors);
        } else if (p.atom_coupling > 0 && spec.axis != SweepAxis::delta_a) {
            errors.push_back("detuning_a_over_omega_m required when atom_coupling > 0");
        }
        const bool has_df = raw.has("detuning_f_over_omega_m");
        const bool has_wp = raw.has("working_point_Delta_over_omega_m");
        if (has_df == has_wp) {
            errors.push_back(
                "exactly one of detuning_f_over_omega_m / working_point_Delta_over_omega_m required");
        } else if (has_df) {
            p.detuning_f = omega_m * parse_number(raw, "detuning_f_over_omega_m", errors);
        } else {
            spec.working_point_detuning =
                omega_m * parse_number(raw, "working_point_Delta_over_omega_m", errors);
        }
        if (spec.axis == SweepAxis::temperature && raw.has("temperature_K")) {
            // base value is still required (single-point use); axis overrides it
        }
        spec.physical = p;
    } else {
        EffectiveParams e;
        e.omega_m = omega_m;
        e.gamma_m = two_pi * parse_number(raw, "gamma_m_over_2pi_Hz", errors);
        e.kappa = two_pi * parse_number(raw, "kappa_over_2pi_Hz", errors);
        e.coupling_gm = two_pi * parse_number(raw, "G_m_over_2pi_Hz", errors);
        e.atom_coupling = two_pi * parse_number(raw, "G_a_over_2pi_Hz", errors);
        e.atom_linewidth = two_pi * parse_number(raw, "gamma_a_over_2pi_Hz", errors);
        if (raw.has("Delta_over_omega_m")) {
            if (spec.axis == SweepAxis::delta) {
                errors.push_back("Delta_over_omega_m is shadowed by the sweep axis; remove it");
            }
            e.detuning = omega_m * parse_number(raw, "Delta_over_omega_m", errors);
        } else if (spec.axis != SweepAxis::delta) {
            errors.push_back("Delta_over_omega_m required in effective mode");
        }
        if (raw.has("Delta_a_over_omega_m")) {
            if (spec.axis == SweepAxis::delta_a) {
                errors.push_back("Delta_a_over_omega_m is shadowed by the sweep axis; remove it");
            }
            e.detuning_a = omega_m * parse_number(raw, "Delta_a_over_omega_m", errors);
        } else if (e.atom_coupling > 0 && spec.axis != SweepAxis::delta_a) {
            errors.push_back("Delta_a_over_omega_m required when G_a > 0");
        }
        const bool has_nbar = raw.has("nbar");
        const bool has_temp = raw.has("temperature_K");
        if (has_nbar == has_temp) {
            errors.push_back("exactly one of nbar / temperature_K required in effective mode");
        } else if (has_nbar) {
            if (spec.axis == SweepAxis::temperature) {
                errors.push_back("temperature axis requires temperature_K, not nbar");
            }
            e.nbar = parse_number(raw, "nbar", errors);
        } else {
            const double t = parse_number(raw, "temperature_K", errors);
            spec.effective_temperature = t;
            if (errors.empty()) e.nbar = thermal_occupation(t, e.omega_m);
        }
        spec.effective = e;
    }

    if (!errors.empty()) fail(errors);
    if (spec.physical) spec.physical->validate();
    return spec;
}

ResolvedPoint resolve_point(const SweepSpec& spec, std::optional<double> axis_value) {
    ResolvedPoint out;
    if (spec.mode == InputMode::effective) {
        EffectiveParams e = *spec.effective;
        if (axis_value) {
            switch (*spec.axis) {
                case SweepAxis::delta: e.detuning = *axis_value * e.omega_m; break;
                case SweepAxis::delta_a: e.detuning_a = *axis_value * e.omega_m; break;
                case SweepAxis::temperature:
                    e.nbar = thermal_occupation(*axis_value, e.omega_m);
                    break;
            }
        }
        out.effective = e;
        return out;
    }

    PhysicalParams p = *spec.physical;
    std::optional<double> delta_override;  // effective-model Delta sweep
    if (axis_value) {
        switch (*spec.axis) {
            case SweepAxis::delta:
                // The working point stays at the configured anchor; only the
                // drift-matrix detuning moves (fixed effective coupling).
                delta_override = *axis_value * p.omega_m;
                break;
            case SweepAxis::delta_a:
                p.detuning_a = *axis_value * p.omega_m;
                break;
            case SweepAxis::temperature:
                p.temperature = *axis_value;
                break;
        }
    }

    WorkingPoint w = spec.working_point_detuning
                         ? working_point_at_detuning(p, *spec.working_point_detuning)
                         : solve_working_point(p);
    EffectiveParams e = effective_params(p, w);
    if (delta_override) e.detuning = *delta_override;
    out.effective = e;
    out.working_point = std::move(w);
    return out;
}

} // namespace trimode

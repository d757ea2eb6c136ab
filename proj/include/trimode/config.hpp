#pragma once

#include "trimode/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trimode {

enum class InputMode { physical, effective };
enum class SweepAxis { delta, delta_a, temperature };

// Parsed flat key=value configuration. In physical mode the working point
// is anchored either by detuning_f_over_omega_m (cubic solve) or by
// working_point_Delta_over_omega_m (effective detuning pinned).
struct SweepSpec {
    InputMode mode = InputMode::physical;

    std::optional<PhysicalParams> physical;
    std::optional<double> working_point_detuning;  // rad/s; set iff pinned anchor

    std::optional<EffectiveParams> effective;
    std::optional<double> effective_temperature;   // K; set iff nbar came from T

    std::optional<SweepAxis> axis;  // absent for single-point configs
    double start = 0;
    double stop = 0;
    int count = 0;

    std::vector<std::string> outputs;  // subset of the emitted columns
};

SweepSpec parse_config(const std::string& text);

// Resolves the linearized model for a single point (the base configuration
// with optional axis-value override). Throws on invalid/unstable input.
struct ResolvedPoint {
    EffectiveParams effective;
    std::optional<WorkingPoint> working_point;  // physical mode only
};

ResolvedPoint resolve_point(const SweepSpec& spec,
                            std::optional<double> axis_value = std::nullopt);

// Shipped figure presets: fig2a, fig2b, fig2d.
const std::string& preset_text(const std::string& name);
std::vector<std::string> preset_names();

} // namespace trimode

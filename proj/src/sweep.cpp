#include "trimode/sweep.hpp"

#include "trimode/constants.hpp"
#include "trimode/errors.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <thread>

namespace trimode {

namespace {

SweepRow evaluate_point(const SweepSpec& spec, double axis_value) {
    SweepRow row;
    row.axis_value = axis_value;
    try {
        const ResolvedPoint pt = resolve_point(spec, axis_value);
        const Matrix6 drift = build_drift(pt.effective);
        const StabilityResult st = is_stable(drift);
        row.max_real_part = st.max_real_part;
        row.stable = st.stable;
        if (!st.stable) return row;
        const Matrix6 diffusion = build_diffusion(pt.effective);
        const LyapunovSolution sol = solve_lyapunov(drift, diffusion);
        row.report = report(sol.value, st);
    } catch (const std::exception& e) {
        row.stable = false;
        row.report.reset();
        row.error = e.what();
    }
    return row;
}

std::string format_number(double v) { return fmt::format("{:.11e}", v); }

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::delta: return "Delta_over_omega_m";
        case SweepAxis::delta_a: return "Delta_a_over_omega_m";
        case SweepAxis::temperature: return "temperature_K";
    }
    return "axis";
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec, int workers) {
    if (!spec.axis) throw InvalidParameter("run_sweep requires an axis in the configuration");
    if (spec.count < 2) throw InvalidParameter("sweep count must be >= 2");
    if (workers < 1) workers = 1;

    std::vector<double> grid(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        grid[i] = spec.start + (spec.stop - spec.start) * i / (spec.count - 1);
    }

    SweepResult result;
    result.rows.resize(spec.count);
    if (workers == 1) {
        for (int i = 0; i < spec.count; ++i) result.rows[i] = evaluate_point(spec, grid[i]);
    } else {
        // Each point is pure; rows land at their own index, so the output is
        // identical for any worker count.
        std::atomic<int> next{0};
        auto work = [&] {
            for (int i = next.fetch_add(1); i < spec.count; i = next.fetch_add(1)) {
                result.rows[i] = evaluate_point(spec, grid[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < std::min(workers, spec.count); ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    for (const auto& row : result.rows) {
        if (!row.error.empty()) ++result.failed_points;
    }
    result.metadata["axis"] = axis_name(*spec.axis);
    result.metadata["start"] = format_number(spec.start);
    result.metadata["stop"] = format_number(spec.stop);
    result.metadata["count"] = std::to_string(spec.count);
    result.metadata["mode"] = spec.mode == InputMode::physical ? "physical" : "effective";
    result.metadata["constants_table"] = consts::table_version;
    result.metadata["failed_points"] = std::to_string(result.failed_points);
    result.metadata["timestamp_utc"] = fmt::format(
        "{:%FT%TZ}", std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));

    // Resolved base parameters, for provenance.
    try {
        const ResolvedPoint base = resolve_point(spec);
        const EffectiveParams& e = base.effective;
        result.metadata["omega_m_rad_s"] = format_number(e.omega_m);
        result.metadata["gamma_m_rad_s"] = format_number(e.gamma_m);
        result.metadata["kappa_rad_s"] = format_number(e.kappa);
        result.metadata["G_m_rad_s"] = format_number(e.coupling_gm);
        result.metadata["G_a_rad_s"] = format_number(e.atom_coupling);
        result.metadata["gamma_a_rad_s"] = format_number(e.atom_linewidth);
        result.metadata["nbar"] = format_number(e.nbar);
    } catch (const std::exception&) {
        // base point may be undefined when the axis supplies a required value
    }
    return result;
}

std::string emit(const SweepResult& result, EmitFormat format) {
    if (format == EmitFormat::csv) {
        std::string out = "axis,E_mf,E_ma,E_af,n_eff,class,max_real_part,stable\n";
        for (const auto& row : result.rows) {
            out += format_number(row.axis_value);
            if (row.report) {
                const auto& r = *row.report;
                out += "," + format_number(r.e_mirror_field);
                out += "," + format_number(r.e_mirror_atoms);
                out += "," + format_number(r.e_atoms_field);
                out += "," + format_number(r.n_eff);
                out += "," + to_string(r.tripartite);
            } else {
                out += ",,,,,";
            }
            out += "," + format_number(row.max_real_part);
            out += row.stable ? ",true\n" : ",false\n";
        }
        return out;
    }

    nlohmann::ordered_json doc;
    doc["metadata"] = result.metadata;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : result.rows) {
        nlohmann::ordered_json j;
        j["axis"] = row.axis_value;
        j["stable"] = row.stable;
        j["max_real_part"] = row.max_real_part;
        if (row.report) {
            const auto& r = *row.report;
            j["E_mf"] = r.e_mirror_field;
            j["E_ma"] = r.e_mirror_atoms;
            j["E_af"] = r.e_atoms_field;
            j["n_eff"] = r.n_eff;
            j["class"] = to_string(r.tripartite);
            j["min_pt_eigenvalues"] = r.tripartite.min_pt_eigenvalue;
        }
        if (!row.error.empty()) j["error"] = row.error;
        doc["rows"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

} // namespace trimode

#include "trimode/config.hpp"
#include "trimode/errors.hpp"
#include "trimode/sweep.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

// Exit codes: 0 ok, 2 unstable working point (single-point run),
// 3 invalid configuration, 4 numerical failure.
constexpr int exit_unstable = 2;
constexpr int exit_config = 3;
constexpr int exit_numerical = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw trimode::InvalidParameter("cannot open config file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

int run_point(const std::string& config_path, bool as_json) {
    const trimode::SweepSpec spec = trimode::parse_config(read_file(config_path));
    if (spec.axis) {
        std::cerr << "point: config declares a sweep axis; use the sweep command\n";
        return exit_config;
    }
    const trimode::ResolvedPoint pt = trimode::resolve_point(spec);
    const trimode::Matrix6 drift = trimode::build_drift(pt.effective);
    const trimode::StabilityResult st = trimode::is_stable(drift);
    if (!st.stable) {
        std::cerr << "working point unstable: max Re(eig A) = " << st.max_real_part << " rad/s\n";
        return exit_unstable;
    }
    const auto sol = trimode::solve_lyapunov(drift, trimode::build_diffusion(pt.effective));
    const trimode::EntanglementReport rep = trimode::report(sol.value, st);

    if (as_json) {
        nlohmann::ordered_json j;
        j["E_mf"] = rep.e_mirror_field;
        j["E_ma"] = rep.e_mirror_atoms;
        j["E_af"] = rep.e_atoms_field;
        j["n_eff"] = rep.n_eff;
        j["class"] = trimode::to_string(rep.tripartite);
        j["min_pt_eigenvalues"] = rep.tripartite.min_pt_eigenvalue;
        j["max_real_part"] = st.max_real_part;
        j["stable"] = st.stable;
        if (pt.working_point) {
            j["alpha_s"] = pt.working_point->alpha_s;
            j["photon_number"] = pt.working_point->photon_number;
            j["G_m_rad_s"] = pt.working_point->coupling_gm;
            j["Delta_rad_s"] = pt.working_point->detuning;
            j["bistable"] = pt.working_point->bistable;
            if (pt.working_point->warning) j["warning"] = *pt.working_point->warning;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("E_mf          = %.6g\n", rep.e_mirror_field);
        std::printf("E_ma          = %.6g\n", rep.e_mirror_atoms);
        std::printf("E_af          = %.6g\n", rep.e_atoms_field);
        std::printf("n_eff         = %.6g\n", rep.n_eff);
        std::printf("class         = %s\n", trimode::to_string(rep.tripartite).c_str());
        std::printf("max_real_part = %.6g rad/s\n", st.max_real_part);
        if (pt.working_point) {
            std::printf("G_m/2pi       = %.6g Hz\n",
                        pt.working_point->coupling_gm / 6.283185307179586);
            std::printf("photon_number = %.6g\n", pt.working_point->photon_number);
            if (pt.working_point->bistable) std::printf("bistable      = true\n");
            if (pt.working_point->warning) {
                std::printf("warning       = %s\n", pt.working_point->warning->c_str());
            }
        }
    }
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  const std::string& format, int workers) {
    const trimode::SweepSpec spec = trimode::parse_config(read_file(config_path));
    const trimode::SweepResult result = trimode::run_sweep(spec, workers);
    const auto fmt = format == "json" ? trimode::EmitFormat::json : trimode::EmitFormat::csv;
    write_file(out_path, trimode::emit(result, fmt));
    std::cerr << "wrote " << result.rows.size() << " rows to " << out_path;
    if (result.failed_points > 0) std::cerr << " (" << result.failed_points << " failed points)";
    std::cerr << "\n";
    return 0;
}

int run_validate(const std::string& config_path) {
    const trimode::SweepSpec spec = trimode::parse_config(read_file(config_path));
    std::cout << "schema: ok\n";
    const trimode::ResolvedPoint pt = trimode::resolve_point(
        spec, spec.axis ? std::optional<double>(spec.start) : std::nullopt);
    if (pt.working_point && pt.working_point->warning) {
        std::cout << "warning: " << *pt.working_point->warning << "\n";
    }
    const trimode::StabilityResult st = trimode::is_stable(trimode::build_drift(pt.effective));
    std::cout << "stability: " << (st.stable ? "stable" : "UNSTABLE")
              << " (max Re = " << st.max_real_part << " rad/s)\n";
    return st.stable ? 0 : exit_unstable;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state covariance and entanglement of the atom-field-mirror cavity model"};
    app.require_subcommand(1);

    std::string config_path, out_path, preset_name;
    std::string format = "csv";
    int workers = 1;
    bool as_json = false;

    auto* point = app.add_subcommand("point", "single-point entanglement report");
    point->add_option("--config", config_path, "config file")->required();
    point->add_flag("--json", as_json, "emit JSON");

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--out", out_path, "output path")->required();
    sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--workers", workers, "worker thread count")
        ->check(CLI::PositiveNumber);

    auto* preset = app.add_subcommand("preset", "write a shipped figure preset");
    preset->add_option("--name", preset_name, "fig2a, fig2b or fig2d")->required();
    preset->add_option("--out", out_path, "output path")->required();

    auto* validate = app.add_subcommand("validate", "schema + stability check, no solve");
    validate->add_option("--config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (point->parsed()) return run_point(config_path, as_json);
        if (sweep->parsed()) return run_sweep_cmd(config_path, out_path, format, workers);
        if (preset->parsed()) {
            write_file(out_path, trimode::preset_text(preset_name));
            return 0;
        }
        if (validate->parsed()) return run_validate(config_path);
    } catch (const trimode::UnstableWorkingPoint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_unstable;
    } catch (const trimode::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const trimode::ValidityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return 0;
}

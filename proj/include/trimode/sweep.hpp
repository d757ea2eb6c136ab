#pragma once

#include "trimode/config.hpp"
#include "trimode/entanglement.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trimode {

struct SweepRow {
    double axis_value = 0;
    bool stable = false;
    double max_real_part = 0;
    std::optional<EntanglementReport> report;  // empty when unstable/failed
    std::string error;                         // per-point failure note
};

struct SweepResult {
    std::vector<SweepRow> rows;  // ascending axis value
    std::map<std::string, std::string> metadata;
    int failed_points = 0;
};

// Evaluates every grid point; unstable or failing points become rows with
// stable=false and empty measures. Deterministic for any worker count.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

enum class EmitFormat { csv, json };

// CSV: header axis,E_mf,E_ma,E_af,n_eff,class,max_real_part,stable with
// 12 significant digits and LF endings. JSON adds the metadata. Both are
// pure functions of the result.
std::string emit(const SweepResult& result, EmitFormat format);

} // namespace trimode

#pragma once

#include <string>
#include <vector>

#include "lmcx/placement.hpp"
#include "lmcx/scenario.hpp"

namespace lmcx {

// CSV formatting for the metrics stream; kept in one place so identical runs
// emit byte-identical files.
std::string metrics_header(int robots);
std::string metrics_row(const TickSample& sample);

// Landmark placement for the scenario's map and filtration. When out_dir is
// set, writes landmarks.json and coverage.csv (and delta_s_sweep.csv when the
// scenario requests a sweep).
PlacementResult cmd_place(const Scenario& scenario);

// Ground-truth reference complex over every configuration of the grid, using
// the deterministic placement for the scenario. Writes cech.json when out_dir
// is set. Byte-identical across runs of the same scenario.
SimplicialComplex cmd_cech(const Scenario& scenario);

struct LccaResult {
    RunStats stats;
    std::vector<LandmarkSite> sites;
    std::string metrics_csv;  // full metrics stream, also written to disk
};

// Full construction run; writes landmarks.json, metrics.csv, complex.json,
// periodic SVG snapshots, trace.jsonl (opt-in), and per-round homology dumps
// when out_dir is set.
LccaResult cmd_lcca(const Scenario& scenario);

struct SweepRow {
    double param = 0.0;  // HIW fraction or switch growth rate
    std::uint64_t seed = 0;
    long observations = 0;
    bool reached_target = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    long cech_c2 = 0;
    long target_c2 = 0;
};

// For each fraction f: random+informed walk up to (target - f) of the Cech
// 2-simplex count, then homology-informed rounds up to the target. Writes
// hiw_sweep.csv when out_dir is set.
SweepResult cmd_hiw_sweep(const Scenario& scenario);

// For each growth rate r: switch to the homology phase at r and finish at the
// target 2-simplex count. Writes switch_sweep.csv when out_dir is set.
SweepResult cmd_switch_sweep(const Scenario& scenario);

}  // namespace lmcx

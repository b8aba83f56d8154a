// Command line front end: landmark placement, ground-truth reference
// complexes, full construction runs, and the two experiment sweeps.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <string>

#include "lmcx/experiments.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;

struct CommonFlags {
    std::string config;
    std::string map;
    std::string mode;
    int n_theta = -1;
    int robots = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double target = -1.0;
    double eps1 = -1.0;
    double eps2 = -1.0;
    std::string out_dir;
    std::string schedule;
    long max_observations = -1;
    bool trace = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config, "Scenario JSON file");
    cmd->add_option("--map", flags.map, "Occupancy map (PGM P5 or grayscale PNG)");
    cmd->add_option("--mode", flags.mode, "Configuration space: r2 or se2");
    cmd->add_option("--ntheta", flags.n_theta, "Heading slices (1 for r2)");
    cmd->add_option("--robots", flags.robots, "Robot count");
    cmd->add_option("--seed", flags.seed, "Run seed")->each([&](const std::string&) {
        flags.seed_set = true;
    });
    cmd->add_option("--target", flags.target, "Coverage target as a fraction of Cech 2-simplices");
    cmd->add_option("--eps1", flags.eps1, "Growth-rate switch threshold");
    cmd->add_option("--eps2", flags.eps2, "Growth-rate stop threshold");
    cmd->add_option("--out-dir", flags.out_dir, "Output directory");
    cmd->add_option("--schedule", flags.schedule, "deterministic or concurrent");
    cmd->add_option("--max-obs", flags.max_observations, "Observation cap");
    cmd->add_flag("--trace", flags.trace, "Write trace.jsonl with every observation");
}

lmcx::Scenario resolve_scenario(const CommonFlags& flags) {
    lmcx::Scenario sc;
    if (!flags.config.empty()) sc = lmcx::Scenario::from_json_file(flags.config);
    if (!flags.map.empty()) sc.map_path = flags.map;
    if (!flags.mode.empty()) {
        sc.mode = flags.mode;
        if (flags.mode == "r2" && flags.n_theta < 0) sc.n_theta = 1;
    }
    if (flags.n_theta > 0) sc.n_theta = flags.n_theta;
    if (flags.robots > 0) sc.robots = flags.robots;
    if (flags.seed_set) sc.seed = flags.seed;
    if (flags.target > 0.0) sc.target = flags.target;
    if (flags.eps1 > 0.0) sc.walk.eps1 = flags.eps1;
    if (flags.eps2 > 0.0) sc.walk.eps2 = flags.eps2;
    if (!flags.out_dir.empty()) sc.out_dir = flags.out_dir;
    if (!flags.schedule.empty()) {
        if (flags.schedule == "deterministic")
            sc.schedule = lmcx::Schedule::deterministic;
        else if (flags.schedule == "concurrent")
            sc.schedule = lmcx::Schedule::concurrent;
        else
            throw lmcx::ScenarioError("schedule must be 'deterministic' or 'concurrent'");
    }
    if (flags.max_observations > 0) sc.walk.max_observations = flags.max_observations;
    if (flags.trace) sc.trace = true;
    sc.finalize_and_validate();
    return sc;
}

void print_sweep_summary(const lmcx::SweepResult& result, const char* param_name) {
    std::map<double, std::pair<double, int>> means;
    for (const auto& row : result.rows) {
        means[row.param].first += static_cast<double>(row.observations);
        means[row.param].second += 1;
    }
    std::printf("cech_c2=%ld target_c2=%ld\n", result.cech_c2, result.target_c2);
    for (const auto& [param, acc] : means)
        std::printf("%s=%g mean_observations=%.1f\n", param_name, param,
                    acc.first / acc.second);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landmark placement and multi-robot landmark-complex mapping simulator"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::vector<double> ds_sweep;
    std::vector<double> fractions;
    std::vector<double> rates;
    int sweep_seeds = -1;

    CLI::App* place = app.add_subcommand("place", "Place landmarks over the footprint filtration");
    add_common(place, flags);
    place->add_option("--ds-sweep", ds_sweep, "Also sweep these delta_s values into a CSV");

    CLI::App* cech = app.add_subcommand("cech", "Ground-truth reference complex for the map");
    add_common(cech, flags);

    CLI::App* lcca = app.add_subcommand("lcca", "Run the full landmark-complex construction");
    add_common(lcca, flags);

    CLI::App* hiw = app.add_subcommand("hiw-sweep", "Sweep the fraction built by homology walks");
    add_common(hiw, flags);
    hiw->add_option("--fractions", fractions, "HIW fractions, e.g. 0 0.01 0.03 0.05 0.07");
    hiw->add_option("--sweep-seeds", sweep_seeds, "Seeds per sweep point");

    CLI::App* sw = app.add_subcommand("switch-sweep", "Sweep the growth-rate switch point");
    add_common(sw, flags);
    sw->add_option("--rates", rates, "Switch growth rates");
    sw->add_option("--sweep-seeds", sweep_seeds, "Seeds per sweep point");

    CLI11_PARSE(app, argc, argv);

    try {
        lmcx::Scenario sc = resolve_scenario(flags);
        if (!ds_sweep.empty()) sc.delta_s_sweep = ds_sweep;
        if (!fractions.empty()) sc.hiw_fractions = fractions;
        if (!rates.empty()) sc.switch_rates = rates;
        if (sweep_seeds > 0) sc.sweep_seeds = sweep_seeds;
        sc.finalize_and_validate();

        if (place->parsed()) {
            const lmcx::PlacementResult result = lmcx::cmd_place(sc);
            std::printf("landmarks=%zu filtration_steps=%zu\n", result.sites.size(),
                        result.steps.size());
            return 0;
        }
        if (cech->parsed()) {
            const lmcx::SimplicialComplex complex = lmcx::cmd_cech(sc);
            std::printf("c0=%zu c1=%zu c2=%zu\n", complex.vertices().size(),
                        complex.edges().size(), complex.triangles().size());
            return 0;
        }
        if (lcca->parsed()) {
            const lmcx::LccaResult result = lmcx::cmd_lcca(sc);
            const char* ended = result.stats.ended_by == lmcx::RunEnd::rate ? "rate"
                                : result.stats.ended_by == lmcx::RunEnd::target
                                    ? "target"
                                    : "observation_cap";
            std::printf("observations=%ld c2=%zu hiw_rounds=%d ended_by=%s\n",
                        result.stats.observations, result.stats.complex.triangles().size(),
                        result.stats.hiw_rounds, ended);
            return result.stats.ended_by == lmcx::RunEnd::observation_cap ? kExitNonConvergence
                                                                          : 0;
        }
        if (hiw->parsed()) {
            const lmcx::SweepResult result = lmcx::cmd_hiw_sweep(sc);
            print_sweep_summary(result, "fraction");
            for (const auto& row : result.rows)
                if (!row.reached_target) return kExitNonConvergence;
            return 0;
        }
        if (sw->parsed()) {
            const lmcx::SweepResult result = lmcx::cmd_switch_sweep(sc);
            print_sweep_summary(result, "switch_rate");
            for (const auto& row : result.rows)
                if (!row.reached_target) return kExitNonConvergence;
            return 0;
        }
    } catch (const lmcx::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

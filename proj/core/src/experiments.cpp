#include "lmcx/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lmcx/svg.hpp"

namespace lmcx {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path.string());
    out << content;
}

std::string g9(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.9g", v);
    return buffer;
}

std::string f6(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6f", v);
    return buffer;
}

std::vector<LandmarkSite> place_sites(const Scenario& scenario, const Workspace& ws) {
    PlacementResult placement = run_lpa(ws.config_grid, ws.filtration, scenario.delta_s);
    mark_obstacle_adjacency(placement.sites, ws.grid, scenario.obstacle_adjacency_cells);
    return std::move(placement.sites);
}

std::string coverage_csv(const PlacementResult& placement) {
    std::ostringstream out;
    out << "step,radius,half_angle,placed_count,uncovered_cells\n";
    for (const auto& s : placement.steps)
        out << s.step << ',' << g9(s.radius) << ',' << g9(s.half_angle) << ',' << s.placed << ','
            << s.uncovered_at_start << '\n';
    return out.str();
}

long target_c2_count(double fraction, long cech_c2) {
    return static_cast<long>(std::ceil(fraction * static_cast<double>(cech_c2) - 1e-9));
}

struct RunArtifacts {
    std::string metrics_csv;
    RunStats stats;
};

RunArtifacts run_scenario(const Scenario& scenario, const Workspace& ws,
                          const std::vector<LandmarkSite>& sites, std::uint64_t seed,
                          const StopRules& rules, const std::string& out_dir) {
    Scenario sc = scenario;
    sc.seed = seed;
    sc.walk.rng_seed = seed;

    SimConfig config;
    config.grid = ws.grid;
    config.footprint = sc.footprint;
    config.sites = sites;
    config.start_poses = resolve_start_poses(sc, ws.grid);
    config.walk = sc.walk;
    config.schedule = sc.schedule;

    std::ostringstream metrics;
    metrics << metrics_header(sc.robots);

    RunSinks sinks;
    sinks.on_tick = [&metrics](const TickSample& sample) { metrics << metrics_row(sample); };

    std::ofstream trace_out;
    if (!out_dir.empty() && sc.trace) {
        trace_out.open(fs::path(out_dir) / "trace.jsonl");
        sinks.on_observation = [&trace_out](const ObservationEvent& event) {
            trace_out << "{\"tick\":" << event.tick << ",\"robot\":" << event.robot
                      << ",\"observation\":" << event.observation_index << ",\"landmarks\":[";
            for (std::size_t k = 0; k < event.landmarks.size(); ++k) {
                if (k) trace_out << ',';
                trace_out << event.landmarks[k];
            }
            trace_out << "]}\n";
        };
    }

    if (!out_dir.empty() && sc.snapshot_every > 0) {
        fs::create_directories(fs::path(out_dir) / "snapshots");
        sinks.snapshot_every = sc.snapshot_every;
        sinks.on_snapshot = [&ws, &sites, out_dir](long observations,
                                                   const SimplicialComplex& complex,
                                                   const std::vector<Pose>& poses) {
            char name[64];
            std::snprintf(name, sizeof(name), "snap_%07ld.svg", observations);
            std::ofstream svg(fs::path(out_dir) / "snapshots" / name);
            write_complex_svg(svg, complex, sites, ws.grid, poses);
        };
    }

    if (!out_dir.empty()) {
        sinks.on_hiw_round = [out_dir](const HiwDiagnostics& diag) {
            char name[64];
            std::snprintf(name, sizeof(name), "hiw_round_%03d.csv", diag.round);
            std::ofstream out(fs::path(out_dir) / name);
            out << "edge_id,u,v,x,y,selected\n";
            const auto& edges = diag.b->edge_index;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                bool selected = false;
                for (const auto& comp : diag.holes->components)
                    if (comp.edges.count(edges[e])) {
                        selected = true;
                        break;
                    }
                out << e << ',' << edges[e][0] << ',' << edges[e][1] << ','
                    << g9((*diag.harmonic)[static_cast<Eigen::Index>(e)]) << ','
                    << g9((*diag.tightened)[static_cast<Eigen::Index>(e)]) << ','
                    << (selected ? 1 : 0) << '\n';
            }
        };
    }

    RunArtifacts artifacts;
    artifacts.stats = run_lcca(std::move(config), rules, std::move(sinks));
    artifacts.metrics_csv = metrics.str();
    return artifacts;
}

std::string sweep_csv(const SweepResult& result, const char* param_name) {
    std::ostringstream out;
    out << param_name << ",seed,total_observations,reached_target\n";
    for (const auto& row : result.rows)
        out << g9(row.param) << ',' << row.seed << ',' << row.observations << ','
            << (row.reached_target ? 1 : 0) << '\n';
    return out.str();
}

}  // namespace

std::string metrics_header(int robots) {
    std::ostringstream out;
    out << "tick,observations,c0,c1,c2,growth_rate,phase";
    for (int r = 0; r < robots; ++r)
        out << ",robot" << r << "_x,robot" << r << "_y,robot" << r << "_theta";
    out << '\n';
    return out.str();
}

std::string metrics_row(const TickSample& sample) {
    std::ostringstream out;
    out << sample.tick << ',' << sample.observations << ',' << sample.c0 << ',' << sample.c1 << ','
        << sample.c2 << ',' << g9(sample.growth_rate) << ',' << sample.phase;
    for (const auto& p : sample.poses)
        out << ',' << f6(p.x) << ',' << f6(p.y) << ',' << f6(p.theta);
    out << '\n';
    return out.str();
}

PlacementResult cmd_place(const Scenario& scenario) {
    const Workspace ws = build_workspace(scenario);
    PlacementResult placement = run_lpa(ws.config_grid, ws.filtration, scenario.delta_s);
    mark_obstacle_adjacency(placement.sites, ws.grid, scenario.obstacle_adjacency_cells);

    if (!scenario.out_dir.empty()) {
        fs::create_directories(scenario.out_dir);
        write_file(fs::path(scenario.out_dir) / "landmarks.json",
                   landmarks_to_json(placement.sites));
        write_file(fs::path(scenario.out_dir) / "coverage.csv", coverage_csv(placement));

        if (!scenario.delta_s_sweep.empty()) {
            std::ostringstream sweep;
            sweep << "delta_s,landmarks\n";
            for (const double ds : scenario.delta_s_sweep) {
                const PlacementResult r = run_lpa(ws.config_grid, ws.filtration, ds);
                sweep << g9(ds) << ',' << r.sites.size() << '\n';
            }
            write_file(fs::path(scenario.out_dir) / "delta_s_sweep.csv", sweep.str());
        }
    }
    return placement;
}

SimplicialComplex cmd_cech(const Scenario& scenario) {
    const Workspace ws = build_workspace(scenario);
    const std::vector<LandmarkSite> sites = place_sites(scenario, ws);
    SimplicialComplex cech = cech_reference(sites, scenario.footprint, ws.config_grid);
    if (!scenario.out_dir.empty()) {
        fs::create_directories(scenario.out_dir);
        write_file(fs::path(scenario.out_dir) / "cech.json", cech.to_json());
    }
    return cech;
}

LccaResult cmd_lcca(const Scenario& scenario) {
    const Workspace ws = build_workspace(scenario);
    LccaResult result;
    result.sites = place_sites(scenario, ws);
    if (!scenario.out_dir.empty()) fs::create_directories(scenario.out_dir);

    RunArtifacts artifacts =
        run_scenario(scenario, ws, result.sites, scenario.seed, StopRules{}, scenario.out_dir);
    result.stats = std::move(artifacts.stats);
    result.metrics_csv = std::move(artifacts.metrics_csv);

    if (!scenario.out_dir.empty()) {
        write_file(fs::path(scenario.out_dir) / "landmarks.json", landmarks_to_json(result.sites));
        write_file(fs::path(scenario.out_dir) / "metrics.csv", result.metrics_csv);
        write_file(fs::path(scenario.out_dir) / "complex.json", result.stats.complex.to_json());
    }
    return result;
}

SweepResult cmd_hiw_sweep(const Scenario& scenario) {
    const Workspace ws = build_workspace(scenario);
    const std::vector<LandmarkSite> sites = place_sites(scenario, ws);
    const SimplicialComplex cech = cech_reference(sites, scenario.footprint, ws.config_grid);

    SweepResult result;
    result.cech_c2 = static_cast<long>(cech.triangles().size());
    result.target_c2 = target_c2_count(scenario.target, result.cech_c2);

    for (const double fraction : scenario.hiw_fractions) {
        StopRules rules;
        rules.phase2_c2 = target_c2_count(scenario.target - fraction, result.cech_c2);
        rules.finish_c2 = result.target_c2;
        for (int k = 0; k < scenario.sweep_seeds; ++k) {
            const std::uint64_t seed = scenario.seed + static_cast<std::uint64_t>(k);
            const RunArtifacts artifacts = run_scenario(scenario, ws, sites, seed, rules, "");
            result.rows.push_back(SweepRow{fraction, seed, artifacts.stats.observations,
                                           artifacts.stats.ended_by == RunEnd::target});
        }
    }
    if (!scenario.out_dir.empty()) {
        fs::create_directories(scenario.out_dir);
        write_file(fs::path(scenario.out_dir) / "hiw_sweep.csv", sweep_csv(result, "fraction"));
    }
    return result;
}

SweepResult cmd_switch_sweep(const Scenario& scenario) {
    const Workspace ws = build_workspace(scenario);
    const std::vector<LandmarkSite> sites = place_sites(scenario, ws);
    const SimplicialComplex cech = cech_reference(sites, scenario.footprint, ws.config_grid);

    SweepResult result;
    result.cech_c2 = static_cast<long>(cech.triangles().size());
    result.target_c2 = target_c2_count(scenario.target, result.cech_c2);

    for (const double rate : scenario.switch_rates) {
        StopRules rules;
        rules.phase2_rate = rate;
        rules.finish_c2 = result.target_c2;
        for (int k = 0; k < scenario.sweep_seeds; ++k) {
            const std::uint64_t seed = scenario.seed + static_cast<std::uint64_t>(k);
            const RunArtifacts artifacts = run_scenario(scenario, ws, sites, seed, rules, "");
            result.rows.push_back(SweepRow{rate, seed, artifacts.stats.observations,
                                           artifacts.stats.ended_by == RunEnd::target});
        }
    }
    if (!scenario.out_dir.empty()) {
        fs::create_directories(scenario.out_dir);
        write_file(fs::path(scenario.out_dir) / "switch_sweep.csv", sweep_csv(result, "switch_rate"));
    }
    return result;
}

}  // namespace lmcx

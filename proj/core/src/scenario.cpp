#include "lmcx/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "lmcx/rng.hpp"

namespace lmcx {

using nlohmann::json;

Scenario::Scenario() {
    // Sentinels for fields derived from the footprint when absent.
    walk.rho_max = 0.0;
    walk.s_max = 0.0;
    walk.waypoint_ds = 0.0;
}

namespace {

void parse_walk(const json& j, WalkParams& walk) {
    if (j.contains("rho_max")) walk.rho_max = j["rho_max"].get<double>();
    if (j.contains("s_max")) walk.s_max = j["s_max"].get<double>();
    if (j.contains("gamma")) walk.gamma = j["gamma"].get<int>();
    if (j.contains("omega")) walk.omega = j["omega"].get<int>();
    if (j.contains("eta")) walk.eta = j["eta"].get<int>();
    if (j.contains("delta")) walk.delta = j["delta"].get<int>();
    if (j.contains("sigma")) walk.sigma = j["sigma"].get<int>();
    if (j.contains("eps1")) walk.eps1 = j["eps1"].get<double>();
    if (j.contains("eps2")) walk.eps2 = j["eps2"].get<double>();
    if (j.contains("window")) walk.window = j["window"].get<long>();
    if (j.contains("waypoint_ds")) walk.waypoint_ds = j["waypoint_ds"].get<double>();
    if (j.contains("max_observations")) walk.max_observations = j["max_observations"].get<long>();
    if (j.contains("max_replans")) walk.max_replans = j["max_replans"].get<int>();
    if (j.contains("zeta_factor")) walk.zeta_factor = j["zeta_factor"].get<double>();
    if (j.contains("flow_tol")) walk.flow_tol = j["flow_tol"].get<double>();
    if (j.contains("tighten_iters")) walk.tighten_iters = j["tighten_iters"].get<long>();
}

}  // namespace

Scenario Scenario::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario JSON parse error: ") + e.what());
    }
    Scenario sc;
    try {
        if (j.contains("map")) sc.map_path = j["map"].get<std::string>();
        if (j.contains("mode")) sc.mode = j["mode"].get<std::string>();
        if (j.contains("n_theta")) sc.n_theta = j["n_theta"].get<int>();
        if (j.contains("resolution")) sc.resolution = j["resolution"].get<double>();
        if (j.contains("footprint")) {
            const auto& f = j["footprint"];
            if (f.contains("radius")) sc.footprint.radius = f["radius"].get<double>();
            if (f.contains("half_angle")) sc.footprint.half_angle = f["half_angle"].get<double>();
        }
        if (j.contains("filtration")) {
            const auto& f = j["filtration"];
            if (f.contains("radius_shrink")) sc.radius_shrink = f["radius_shrink"].get<double>();
            if (f.contains("angle_shrink")) sc.angle_shrink = f["angle_shrink"].get<double>();
        }
        if (j.contains("delta_s")) sc.delta_s = j["delta_s"].get<double>();
        if (j.contains("robots")) sc.robots = j["robots"].get<int>();
        if (j.contains("start") && j["start"].is_array()) {
            for (const auto& p : j["start"])
                sc.start_poses.push_back(
                    Pose{p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
        }
        if (j.contains("seed")) sc.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("target")) sc.target = j["target"].get<double>();
        if (j.contains("schedule")) {
            const auto s = j["schedule"].get<std::string>();
            if (s == "deterministic")
                sc.schedule = Schedule::deterministic;
            else if (s == "concurrent")
                sc.schedule = Schedule::concurrent;
            else
                throw ScenarioError("schedule must be 'deterministic' or 'concurrent'");
        }
        if (j.contains("walk")) parse_walk(j["walk"], sc.walk);
        if (j.contains("out_dir")) sc.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("hiw_fractions"))
            sc.hiw_fractions = j["hiw_fractions"].get<std::vector<double>>();
        if (j.contains("switch_rates"))
            sc.switch_rates = j["switch_rates"].get<std::vector<double>>();
        if (j.contains("sweep_seeds")) sc.sweep_seeds = j["sweep_seeds"].get<int>();
        if (j.contains("obstacle_adjacency_cells"))
            sc.obstacle_adjacency_cells = j["obstacle_adjacency_cells"].get<int>();
        if (j.contains("trace")) sc.trace = j["trace"].get<bool>();
        if (j.contains("snapshot_every")) sc.snapshot_every = j["snapshot_every"].get<long>();
        if (j.contains("delta_s_sweep"))
            sc.delta_s_sweep = j["delta_s_sweep"].get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario JSON schema error: ") + e.what());
    }
    return sc;
}

Scenario Scenario::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    Scenario sc = from_json(buffer.str());
    // Relative map paths resolve against the scenario file's directory.
    if (!sc.map_path.empty() && sc.map_path.front() != '/') {
        const auto dir = std::filesystem::path(path).parent_path();
        sc.map_path = (dir / sc.map_path).lexically_normal().string();
    }
    return sc;
}

void Scenario::finalize_and_validate() {
    if (footprint.radius <= 0.0) throw ScenarioError("footprint radius must be positive");
    if (footprint.half_angle <= 0.0 || footprint.half_angle > std::numbers::pi)
        throw ScenarioError("footprint half_angle must be in (0, pi]");

    if (walk.rho_max <= 0.0) walk.rho_max = 10.0 * footprint.radius;
    if (walk.s_max <= 0.0) walk.s_max = 4.0 * footprint.radius;
    if (walk.waypoint_ds <= 0.0) walk.waypoint_ds = resolution / 4.0;
    if (delta_s < 0.0) delta_s = footprint.radius / 2.0;
    walk.rng_seed = seed;

    if (map_path.empty()) throw ScenarioError("scenario needs a map (--map or \"map\")");
    if (resolution <= 0.0) throw ScenarioError("resolution must be positive");
    if (mode == "r2") {
        if (n_theta != 1) throw ScenarioError("mode r2 requires n_theta = 1");
        if (!footprint.is_disk())
            throw ScenarioError("mode r2 requires a disk footprint (half_angle = pi)");
    } else if (mode == "se2") {
        if (n_theta < 2) throw ScenarioError("mode se2 requires n_theta >= 2");
    } else {
        throw ScenarioError("mode must be 'r2' or 'se2'");
    }
    if (robots < 1) throw ScenarioError("robots must be >= 1");
    if (!start_poses.empty() && static_cast<int>(start_poses.size()) != robots)
        throw ScenarioError("start poses count must match the robot count");
    if (target <= 0.0 || target > 1.0) throw ScenarioError("target must lie in (0, 1]");
    if (radius_shrink <= 0.0 || radius_shrink >= 1.0 || angle_shrink <= 0.0 || angle_shrink >= 1.0)
        throw ScenarioError("filtration shrink factors must lie in (0, 1)");
    if (sweep_seeds < 1) throw ScenarioError("sweep_seeds must be >= 1");
    if (hiw_fractions.empty()) throw ScenarioError("hiw_fractions must not be empty");
    for (const double f : hiw_fractions)
        if (f < 0.0 || f >= target)
            throw ScenarioError("hiw fractions must lie in [0, target)");
    if (switch_rates.empty()) throw ScenarioError("switch_rates must not be empty");
    for (const double r : switch_rates)
        if (r <= 0.0) throw ScenarioError("switch rates must be positive");
    if (obstacle_adjacency_cells < 0)
        throw ScenarioError("obstacle_adjacency_cells must be non-negative");
    if (snapshot_every < 0) throw ScenarioError("snapshot_every must be non-negative");
    try {
        walk.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("walk parameters: ") + e.what());
    }
}

Workspace build_workspace(const Scenario& scenario) {
    Workspace ws;
    OccupancyGrid loaded = load_map(scenario.map_path);
    ws.grid = OccupancyGrid(loaded.width(), loaded.height(), scenario.resolution);
    for (int j = 0; j < loaded.height(); ++j)
        for (int i = 0; i < loaded.width(); ++i)
            if (loaded.occupied(i, j)) ws.grid.set_occupied(i, j);
    ws.grid.close_boundary();
    if (ws.grid.free_count() == 0) throw ScenarioError("map has no free space inside the boundary");

    ws.config_grid = ConfigGrid{ws.grid, scenario.n_theta};
    ws.filtration = make_geometric_filtration(scenario.footprint, ws.grid.diagonal_m(),
                                              scenario.radius_shrink, scenario.angle_shrink);
    return ws;
}

std::vector<Pose> resolve_start_poses(const Scenario& scenario, const OccupancyGrid& grid) {
    if (!scenario.start_poses.empty()) {
        for (const auto& p : scenario.start_poses)
            if (grid.occupied_at(p.x, p.y))
                throw ScenarioError("start pose lies in an occupied cell");
        return scenario.start_poses;
    }
    std::vector<Cell> free;
    for (int j = 0; j < grid.height(); ++j)
        for (int i = 0; i < grid.width(); ++i)
            if (grid.free_cell(i, j)) free.push_back(Cell{i, j});

    Rng rng(scenario.seed, 0x53544152ull);  // start-pose stream
    std::vector<Pose> poses;
    for (int r = 0; r < scenario.robots; ++r) {
        const Cell c = free[rng.uniform_int(0, static_cast<int>(free.size()) - 1)];
        poses.push_back(Pose{grid.cell_center_x(c.i), grid.cell_center_y(c.j),
                             rng.uniform(-std::numbers::pi, std::numbers::pi)});
    }
    return poses;
}

}  // namespace lmcx

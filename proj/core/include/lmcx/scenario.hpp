#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lmcx/exploration.hpp"
#include "lmcx/sensor.hpp"

namespace lmcx {

class ScenarioError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything a run needs: the world, the sensor, the robot team, walk
// parameters, and experiment settings. Loadable from JSON; command-line flags
// override individual fields.
struct Scenario {
    std::string map_path;
    std::string mode = "se2";  // "r2" (disk sensor, planar) or "se2" (directional)
    int n_theta = 8;
    double resolution = 1.0;
    SensorFootprint footprint{14.0, 1.2};
    double radius_shrink = 0.6;
    double angle_shrink = 0.75;
    double delta_s = -1.0;  // < 0: defaults to footprint.radius / 2
    int robots = 4;
    std::vector<Pose> start_poses;  // empty: seeded random free poses
    std::uint64_t seed = 1;
    double target = 0.98;
    Schedule schedule = Schedule::deterministic;
    WalkParams walk;
    std::string out_dir;
    std::vector<double> hiw_fractions{0.0, 0.01, 0.03, 0.05, 0.07};
    std::vector<double> switch_rates{0.0005, 0.001, 0.002, 0.004, 0.008, 0.016};
    int sweep_seeds = 5;
    int obstacle_adjacency_cells = 1;
    bool trace = false;
    long snapshot_every = 2000;
    std::vector<double> delta_s_sweep;  // optional sweep for the place command

    Scenario();

    static Scenario from_json(const std::string& text);
    static Scenario from_json_file(const std::string& path);

    // Fills derived defaults (delta_s, rho_max, s_max, waypoint_ds) from the
    // footprint and resolution, then checks the configuration; throws
    // ScenarioError with a precise message on any violation.
    void finalize_and_validate();
};

// The loaded world for a scenario: occupancy grid with closed boundary, the
// configuration grid, and the placement filtration.
struct Workspace {
    OccupancyGrid grid;
    ConfigGrid config_grid;
    FootprintFiltration filtration;
};

Workspace build_workspace(const Scenario& scenario);

// Start poses: validated scenario poses, or seeded samples over free cells.
std::vector<Pose> resolve_start_poses(const Scenario& scenario, const OccupancyGrid& grid);

}  // namespace lmcx

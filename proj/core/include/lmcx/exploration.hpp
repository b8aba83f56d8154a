#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lmcx/environment.hpp"
#include "lmcx/graph_ops.hpp"
#include "lmcx/homology.hpp"
#include "lmcx/rng.hpp"

namespace lmcx {

// One Dubins arc: turn radius rho, arc length s, and the turn direction beta
// (+1 right, -1 left). s never exceeds half a circle; rho = 0 collapses to a
// point (in-place reorientation happens separately, on collision).
struct ShortTermTrajectory {
    double rho = 0.0;
    double s = 0.0;
    int beta = +1;

    // Radii at or above this are treated as the straight-line limit.
    static constexpr double kStraightRadius = 1e9;
};

// Poses along the arc tangent to the start heading, spaced at most waypoint_ds
// apart, first element the start pose itself. Final heading is
// theta - beta * s / rho.
std::vector<Pose> generate_arc(const Pose& start, const ShortTermTrajectory& stt,
                               double waypoint_ds);

struct WalkParams {
    double rho_max = 100.0;  // turn radius upper bound
    double s_max = 40.0;     // arc length upper bound
    int gamma = 50;          // bootstrap random-walk legs per robot
    int omega = 2;           // boundary g-score threshold
    int eta = 3;             // max consecutive informed-walk legs
    int delta = 10;          // interleaved random-walk legs
    int sigma = 5;           // random-walk legs inside navigation recovery
    double eps1 = 0.004;     // growth-rate switch to the homology phase
    double eps2 = 0.0005;    // growth-rate full-stop
    long window = 500;       // observations per growth-rate sample
    double waypoint_ds = 0.25;
    std::uint64_t rng_seed = 1;
    long max_observations = 150000;
    int max_replans = 25;       // navigation replan budget per goal
    double zeta_factor = 2.0;   // hole-threshold multiplier on stddev(|y|)
    double flow_tol = 1e-9;
    long tighten_iters = 4000;

    void validate() const;  // throws std::invalid_argument
};

enum class Schedule { deterministic, concurrent };

// Termination rules for a run. Unset fields fall back to the growth-rate
// defaults (eps1 / eps2); experiment sweeps set the c2 targets instead.
struct StopRules {
    std::optional<double> phase2_rate;
    std::optional<long> phase2_c2;
    std::optional<double> finish_rate;
    std::optional<long> finish_c2;
};

enum class RunEnd { rate, target, observation_cap };

struct ObservationEvent {
    long tick = 0;
    int robot = 0;
    long observation_index = 0;
    std::vector<LandmarkId> landmarks;
};

struct TickSample {
    long tick = 0;
    long observations = 0;
    long c0 = 0, c1 = 0, c2 = 0;
    double growth_rate = 1.0;
    int phase = 1;
    std::vector<Pose> poses;
};

struct HiwDiagnostics {
    int round = 0;
    const BoundaryMatrices* b = nullptr;
    const Eigen::VectorXd* harmonic = nullptr;
    const Eigen::VectorXd* tightened = nullptr;
    const HoleCycleSet* holes = nullptr;
};

// Optional observers; every hook may be left empty.
struct RunSinks {
    std::function<void(const TickSample&)> on_tick;
    std::function<void(const ObservationEvent&)> on_observation;
    std::function<void(int robot, LandmarkId target)> on_estt_target;
    std::function<void(int robot)> on_rw_leg;
    std::function<void(long observations, const SimplicialComplex&, const std::vector<Pose>&)>
        on_snapshot;
    long snapshot_every = 0;  // observations between snapshots; 0 disables
    std::function<void(const HiwDiagnostics&)> on_hiw_round;
};

struct SimConfig {
    OccupancyGrid grid;
    SensorFootprint footprint;
    std::vector<LandmarkSite> sites;
    std::vector<Pose> start_poses;
    WalkParams walk;
    Schedule schedule = Schedule::deterministic;
};

// The simulated world plus the shared landmark complex. Robots interact only
// through detections (ids and side bits), arc executions, and collision bits;
// ground-truth poses stay inside the simulator for visualization and metrics.
// Observation batches apply atomically under an internal lock, so concurrent
// robot threads see a consistent, linearizable complex.
class Simulation {
public:
    Simulation(SimConfig config, RunSinks sinks = {});

    int robot_count() const { return static_cast<int>(poses_.size()); }
    const WalkParams& params() const { return config_.walk; }
    const OccupancyGrid& grid() const { return config_.grid; }
    const std::vector<LandmarkSite>& sites() const { return config_.sites; }

    std::vector<Detection> sense(int robot) const;

    // Executes one short-term trajectory, observing at every waypoint.
    // Returns true if the leg ended in a collision (the robot re-orients to a
    // uniformly random heading in place and observes once more).
    bool execute_stt(int robot, const ShortTermTrajectory& stt);

    // One random-walk leg: (rho, s, beta) sampled uniformly within bounds.
    void rw_leg(int robot);

    // One informed leg toward a currently visible landmark: beta follows the
    // target's side, rho and s stay random. Returns false (and stays put) if
    // the target is not visible at call time.
    bool estt_leg(int robot, LandmarkId target);

    long observations() const;
    long c2_count() const;
    double growth_rate() const;
    std::vector<double> rate_samples() const;
    SimplicialComplex complex_snapshot() const;
    Pose robot_pose(int robot) const;
    std::vector<Pose> robot_poses() const;

    bool observation_cap_reached() const;

    long tick() const { return tick_; }
    void advance_tick();
    void set_phase(int phase) { phase_ = phase; }

    // Pre-loads complex state (scripted tests, resumed runs).
    void seed_complex(const SimplicialComplex& complex);

    void emit_hiw_diagnostics(const HiwDiagnostics& diag) const {
        if (sinks_.on_hiw_round) sinks_.on_hiw_round(diag);
    }

    Rng& robot_rng(int robot) { return rngs_[robot]; }

private:
    void observe_locked(int robot);
    std::vector<Detection> detect_at(const Pose& pose) const;

    SimConfig config_;
    RunSinks sinks_;
    std::vector<Pose> poses_;
    std::vector<Rng> rngs_;
    std::vector<std::vector<LandmarkSite>> nearby_sites_;

    mutable std::mutex mutex_;
    SimplicialComplex complex_;
    long observations_ = 0;
    long tick_ = 0;
    int phase_ = 1;
    // growth-rate window state
    long window_obs_ = 0;
    long window_start_c2_ = 0;
    double latest_rate_ = 1.0;
    std::vector<double> rate_samples_;
    long next_snapshot_at_ = 0;
};

struct IswChoice {
    LandmarkId goal = 0;
    int gscore = 0;
};

// Goal selection for the informed systematic walk: Voronoi-partition the
// 1-skeleton around the robots' observed landmarks and pick the least observed
// landmark inside `robot`'s cell (ties to the lowest id). Empty when the robot
// observes nothing or owns no vertex.
std::optional<IswChoice> isw_select(const SimplicialComplex& complex,
                                    const std::vector<std::vector<LandmarkId>>& seeds, int robot);

enum class NavStatus { in_progress, success, failure };

// Drives one goal-directed navigation (plan on the 1-skeleton, steer to the
// furthest visible path landmark, random-walk recovery, replan) one leg at a
// time so a scheduler can interleave robots fairly.
class NavRunner {
public:
    NavRunner(LandmarkId goal, const WalkParams& params)
        : goal_(goal), sigma_(params.sigma), max_replans_(params.max_replans) {}

    NavStatus step(Simulation& sim, int robot);
    LandmarkId goal() const { return goal_; }

private:
    LandmarkId goal_;
    int sigma_;
    int max_replans_;
    std::vector<LandmarkId> path_;
    bool have_plan_ = false;
    bool executed_rw_ = false;
    int rw_remaining_ = 0;
    int replans_ = 0;
};

// Runs a navigation to completion (convenience for tests and tours).
NavStatus navigate_to(Simulation& sim, int robot, LandmarkId goal);

struct RunStats {
    long observations = 0;
    long ticks = 0;
    double final_growth_rate = 1.0;
    RunEnd ended_by = RunEnd::rate;
    int hiw_rounds = 0;
    std::vector<double> rate_samples;
    long phase2_start_sample = 0;  // index of the first sample after phase 1
    SimplicialComplex complex;
};

// Full landmark-complex construction: bootstrap random walk, interleaved
// random/informed walk until the growth rate drops below eps1 (or a c2
// target), then homology-informed rounds until eps2 (or the finish target or
// the observation cap).
class Orchestrator {
public:
    Orchestrator(Simulation& sim, Schedule schedule);
    ~Orchestrator();

    RunStats run(const StopRules& rules = {});

    // Exposed phase pieces (scripted tests drive these directly).
    void run_bootstrap();
    bool run_hiw_round();  // false when no false holes were found

private:
    struct Agent;

    void step_main(Agent& agent);
    void step_hiw(Agent& agent);
    void rw_sweep(int legs);
    bool phase2_done() const;
    bool finished() const;

    Simulation& sim_;
    Schedule schedule_;
    StopRules rules_;
    std::vector<Agent> agents_;
    Rng hiw_rng_;
    int hiw_rounds_ = 0;
};

RunStats run_lcca(SimConfig config, const StopRules& rules = {}, RunSinks sinks = {});

}  // namespace lmcx

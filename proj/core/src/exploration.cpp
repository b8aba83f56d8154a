#include "lmcx/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace lmcx {

std::vector<Pose> generate_arc(const Pose& start, const ShortTermTrajectory& stt,
                               double waypoint_ds) {
    std::vector<Pose> points{start};
    if (stt.s <= 0.0) return points;
    if (waypoint_ds <= 0.0) throw std::invalid_argument("waypoint_ds must be positive");
    if (stt.rho <= 0.0) return points;  // s > 0 with rho = 0 is outside the model

    const int n = std::max(1, static_cast<int>(std::ceil(stt.s / waypoint_ds)));
    points.reserve(static_cast<std::size_t>(n) + 1);

    if (stt.rho >= ShortTermTrajectory::kStraightRadius) {
        const double hx = std::cos(start.theta);
        const double hy = std::sin(start.theta);
        for (int k = 1; k <= n; ++k) {
            const double u = stt.s * k / n;
            points.push_back(Pose{start.x + u * hx, start.y + u * hy, start.theta});
        }
        return points;
    }

    const double half_pi = std::numbers::pi / 2.0;
    const double beta = stt.beta >= 0 ? 1.0 : -1.0;
    // Circle center sits a radius away on the turning side; the robot starts
    // at angle psi0 on that circle and sweeps clockwise for right turns.
    const double cx = start.x + stt.rho * std::cos(start.theta - beta * half_pi);
    const double cy = start.y + stt.rho * std::sin(start.theta - beta * half_pi);
    const double psi0 = start.theta + beta * half_pi;
    for (int k = 1; k <= n; ++k) {
        const double u = stt.s * k / n;
        const double psi = psi0 - beta * u / stt.rho;
        points.push_back(Pose{cx + stt.rho * std::cos(psi), cy + stt.rho * std::sin(psi),
                              wrap_angle(start.theta - beta * u / stt.rho)});
    }
    return points;
}

void WalkParams::validate() const {
    if (rho_max <= 0.0 || s_max <= 0.0) throw std::invalid_argument("rho_max and s_max must be positive");
    if (waypoint_ds <= 0.0) throw std::invalid_argument("waypoint_ds must be positive");
    if (gamma < 0) throw std::invalid_argument("gamma must be non-negative");
    if (omega < 0) throw std::invalid_argument("omega must be non-negative");
    if (eta < 1 || delta < 1 || sigma < 1)
        throw std::invalid_argument("eta, delta and sigma must be positive");
    if (eps1 <= 0.0 || eps2 <= 0.0) throw std::invalid_argument("eps1 and eps2 must be positive");
    if (!(eps2 < eps1)) throw std::invalid_argument("eps2 must be strictly less than eps1");
    if (window < 1) throw std::invalid_argument("window must be positive");
    if (max_observations < 1) throw std::invalid_argument("max_observations must be positive");
    if (max_replans < 1) throw std::invalid_argument("max_replans must be positive");
    if (zeta_factor <= 0.0) throw std::invalid_argument("zeta_factor must be positive");
    if (flow_tol <= 0.0) throw std::invalid_argument("flow_tol must be positive");
    if (tighten_iters < 1) throw std::invalid_argument("tighten_iters must be positive");
}

Simulation::Simulation(SimConfig config, RunSinks sinks)
    : config_(std::move(config)), sinks_(std::move(sinks)) {
    config_.walk.validate();
    if (config_.start_poses.empty()) throw std::invalid_argument("simulation needs start poses");
    for (const auto& p : config_.start_poses)
        if (config_.grid.occupied_at(p.x, p.y))
            throw std::invalid_argument("start pose lies in an occupied cell");
    poses_ = config_.start_poses;
    rngs_.reserve(poses_.size());
    for (std::size_t r = 0; r < poses_.size(); ++r)
        rngs_.emplace_back(config_.walk.rng_seed, static_cast<std::uint64_t>(r));
    next_snapshot_at_ = sinks_.snapshot_every > 0 ? sinks_.snapshot_every : 0;

    // Per-cell candidate lists: only sites within sensing range of a cell can
    // ever be detected from it, which keeps detection cost flat in the total
    // site count.
    const OccupancyGrid& grid = config_.grid;
    const double margin = config_.footprint.radius + 2.0 * grid.resolution();
    nearby_sites_.resize(static_cast<std::size_t>(grid.width()) * grid.height());
    for (int j = 0; j < grid.height(); ++j) {
        for (int i = 0; i < grid.width(); ++i) {
            auto& bucket = nearby_sites_[static_cast<std::size_t>(j) * grid.width() + i];
            const double cx = grid.cell_center_x(i);
            const double cy = grid.cell_center_y(j);
            for (const auto& site : config_.sites)
                if (std::hypot(site.x - cx, site.y - cy) <= margin) bucket.push_back(site);
        }
    }
}

std::vector<Detection> Simulation::sense(int robot) const {
    std::lock_guard lock(mutex_);
    return detect_at(poses_[robot]);
}

std::vector<Detection> Simulation::detect_at(const Pose& pose) const {
    const Cell c = config_.grid.cell_at(pose.x, pose.y);
    if (!config_.grid.in_bounds(c.i, c.j)) return {};
    const auto& bucket = nearby_sites_[static_cast<std::size_t>(c.j) * config_.grid.width() + c.i];
    return detect_landmarks(pose, bucket, config_.footprint, config_.grid);
}

void Simulation::observe_locked(int robot) {
    const auto detections = detect_at(poses_[robot]);
    std::vector<LandmarkId> ids;
    ids.reserve(detections.size());
    for (const auto& d : detections) ids.push_back(d.id);
    if (!ids.empty()) complex_.insert_observation(ids);
    ++observations_;

    ++window_obs_;
    if (window_obs_ >= config_.walk.window) {
        const long total = static_cast<long>(complex_.triangles().size());
        const long fresh = total - window_start_c2_;
        latest_rate_ = window_start_c2_ == 0
                           ? 1.0
                           : static_cast<double>(fresh) / static_cast<double>(window_start_c2_);
        rate_samples_.push_back(latest_rate_);
        window_start_c2_ = total;
        window_obs_ = 0;
        if (config_.schedule == Schedule::concurrent && sinks_.on_tick) {
            TickSample sample{static_cast<long>(rate_samples_.size()),
                              observations_,
                              static_cast<long>(complex_.vertices().size()),
                              static_cast<long>(complex_.edges().size()),
                              total,
                              latest_rate_,
                              phase_,
                              poses_};
            sinks_.on_tick(sample);
        }
    }

    if (sinks_.on_observation) {
        ObservationEvent event{tick_, robot, observations_, std::move(ids)};
        sinks_.on_observation(event);
    }
    if (sinks_.snapshot_every > 0 && observations_ >= next_snapshot_at_ && sinks_.on_snapshot) {
        sinks_.on_snapshot(observations_, complex_, poses_);
        next_snapshot_at_ += sinks_.snapshot_every;
    }
}

bool Simulation::execute_stt(int robot, const ShortTermTrajectory& stt) {
    Pose start;
    {
        std::lock_guard lock(mutex_);
        if (observations_ >= config_.walk.max_observations) return false;
        start = poses_[robot];
        observe_locked(robot);
    }
    const auto waypoints = generate_arc(start, stt, config_.walk.waypoint_ds);
    for (std::size_t k = 1; k < waypoints.size(); ++k) {
        std::lock_guard lock(mutex_);
        if (observations_ >= config_.walk.max_observations) return false;
        if (step_pose(poses_[robot], waypoints[k], config_.grid) == StepResult::collided) {
            // Contact with an obstacle: stop, pick a fresh heading in place,
            // take one look around, and let the caller resume next leg.
            poses_[robot].theta = rngs_[robot].uniform(-std::numbers::pi, std::numbers::pi);
            observe_locked(robot);
            return true;
        }
        observe_locked(robot);
    }
    return false;
}

void Simulation::rw_leg(int robot) {
    if (sinks_.on_rw_leg) sinks_.on_rw_leg(robot);
    Rng& rng = rngs_[robot];
    ShortTermTrajectory stt;
    stt.rho = rng.uniform(0.0, config_.walk.rho_max);
    stt.s = rng.uniform(0.0, std::min(config_.walk.s_max, std::numbers::pi * stt.rho));
    stt.beta = rng.coin_sign();
    execute_stt(robot, stt);
}

bool Simulation::estt_leg(int robot, LandmarkId target) {
    const auto detections = sense(robot);
    const auto it = std::find_if(detections.begin(), detections.end(),
                                 [&](const Detection& d) { return d.id == target; });
    if (it == detections.end()) return false;
    if (sinks_.on_estt_target) sinks_.on_estt_target(robot, target);

    Rng& rng = rngs_[robot];
    ShortTermTrajectory stt;
    stt.rho = rng.uniform(0.0, config_.walk.rho_max);
    stt.s = rng.uniform(0.0, std::min(config_.walk.s_max, std::numbers::pi * stt.rho));
    stt.beta = it->side == Side::right ? +1 : -1;
    execute_stt(robot, stt);
    return true;
}

long Simulation::observations() const {
    std::lock_guard lock(mutex_);
    return observations_;
}

long Simulation::c2_count() const {
    std::lock_guard lock(mutex_);
    return static_cast<long>(complex_.triangles().size());
}

double Simulation::growth_rate() const {
    std::lock_guard lock(mutex_);
    return latest_rate_;
}

std::vector<double> Simulation::rate_samples() const {
    std::lock_guard lock(mutex_);
    return rate_samples_;
}

SimplicialComplex Simulation::complex_snapshot() const {
    std::lock_guard lock(mutex_);
    return complex_;
}

Pose Simulation::robot_pose(int robot) const {
    std::lock_guard lock(mutex_);
    return poses_[robot];
}

std::vector<Pose> Simulation::robot_poses() const {
    std::lock_guard lock(mutex_);
    return poses_;
}

bool Simulation::observation_cap_reached() const {
    std::lock_guard lock(mutex_);
    return observations_ >= config_.walk.max_observations;
}

void Simulation::advance_tick() {
    std::lock_guard lock(mutex_);
    ++tick_;
    if (sinks_.on_tick && config_.schedule == Schedule::deterministic) {
        TickSample sample{tick_,
                          observations_,
                          static_cast<long>(complex_.vertices().size()),
                          static_cast<long>(complex_.edges().size()),
                          static_cast<long>(complex_.triangles().size()),
                          latest_rate_,
                          phase_,
                          poses_};
        sinks_.on_tick(sample);
    }
}

void Simulation::seed_complex(const SimplicialComplex& complex) {
    std::lock_guard lock(mutex_);
    complex_ = complex;
    window_start_c2_ = static_cast<long>(complex_.triangles().size());
}

std::optional<IswChoice> isw_select(const SimplicialComplex& complex,
                                    const std::vector<std::vector<LandmarkId>>& seeds, int robot) {
    if (robot < 0 || robot >= static_cast<int>(seeds.size())) return std::nullopt;
    if (seeds[robot].empty() || complex.vertices().empty()) return std::nullopt;

    const Graph g = one_skeleton(complex);
    const Tessellation tess = voronoi(g, seeds);

    int best_index = -1;
    long best_count = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (tess.owner[v] != robot) continue;
        const long count = complex.observation_count(g.id_of(v));
        if (best_index < 0 || count < best_count) {
            best_index = v;
            best_count = count;
        }
        // ties fall to the lowest id, which the ascending scan already gives
    }
    if (best_index < 0) return std::nullopt;
    return IswChoice{g.id_of(best_index), tess.gscore[best_index]};
}

NavStatus NavRunner::step(Simulation& sim, int robot) {
    if (rw_remaining_ > 0) {
        sim.rw_leg(robot);
        --rw_remaining_;
        return NavStatus::in_progress;
    }

    for (int attempt = 0; attempt < 2; ++attempt) {
        if (!have_plan_) {
            std::vector<LandmarkId> sources;
            for (const auto& d : sim.sense(robot)) sources.push_back(d.id);
            if (sources.empty()) {
                // Nowhere to plan from; wander until a landmark shows up.
                if (++replans_ > max_replans_) return NavStatus::failure;
                rw_remaining_ = sigma_;
                sim.rw_leg(robot);
                --rw_remaining_;
                return NavStatus::in_progress;
            }
            path_ = shortest_path(one_skeleton(sim.complex_snapshot()), sources, goal_);
            if (path_.empty()) return NavStatus::failure;  // goal unreachable in the 1-skeleton
            have_plan_ = true;
            executed_rw_ = false;
        }

        const auto detections = sim.sense(robot);
        int furthest = -1;
        for (int idx = static_cast<int>(path_.size()) - 1; idx >= 0; --idx) {
            const LandmarkId candidate = path_[idx];
            if (std::any_of(detections.begin(), detections.end(),
                            [&](const Detection& d) { return d.id == candidate; })) {
                furthest = idx;
                break;
            }
        }
        if (furthest >= 0) {
            sim.estt_leg(robot, path_[furthest]);
            path_.erase(path_.begin(), path_.begin() + furthest + 1);
            executed_rw_ = false;
            return path_.empty() ? NavStatus::success : NavStatus::in_progress;
        }
        if (!executed_rw_) {
            executed_rw_ = true;
            rw_remaining_ = sigma_;
            sim.rw_leg(robot);
            --rw_remaining_;
            return NavStatus::in_progress;
        }
        // Recovery walk did not expose any path landmark: replan from scratch.
        if (++replans_ > max_replans_) return NavStatus::failure;
        have_plan_ = false;
    }

    // Fresh plan and still nothing visible: walk before the next scan.
    executed_rw_ = true;
    rw_remaining_ = sigma_;
    sim.rw_leg(robot);
    --rw_remaining_;
    return NavStatus::in_progress;
}

NavStatus navigate_to(Simulation& sim, int robot, LandmarkId goal) {
    NavRunner runner(goal, sim.params());
    NavStatus status = NavStatus::in_progress;
    while (status == NavStatus::in_progress && !sim.observation_cap_reached())
        status = runner.step(sim, robot);
    return status;
}

struct Orchestrator::Agent {
    int robot = 0;
    int isw_counter = 0;
    int rw_burst_remaining = 0;
    std::optional<NavRunner> nav;
    std::vector<LandmarkId> tour;
    std::size_t tour_pos = 0;
    int idle_rw_remaining = 0;

    bool main_idle() const { return rw_burst_remaining == 0 && !nav.has_value(); }
    bool hiw_busy() const {
        return idle_rw_remaining > 0 || nav.has_value() || tour_pos < tour.size();
    }
    void reset_activity() {
        rw_burst_remaining = 0;
        nav.reset();
        tour.clear();
        tour_pos = 0;
        idle_rw_remaining = 0;
    }
};

Orchestrator::Orchestrator(Simulation& sim, Schedule schedule)
    : sim_(sim), schedule_(schedule), hiw_rng_(sim.params().rng_seed, 0x48495721ull) {
    agents_.resize(sim.robot_count());
    for (int r = 0; r < sim.robot_count(); ++r) agents_[r].robot = r;
}

bool Orchestrator::phase2_done() const {
    if (sim_.observation_cap_reached()) return true;
    if (rules_.phase2_c2 && sim_.c2_count() >= *rules_.phase2_c2) return true;
    if (rules_.phase2_rate && sim_.growth_rate() <= *rules_.phase2_rate) return true;
    return false;
}

bool Orchestrator::finished() const {
    if (rules_.finish_c2 && sim_.c2_count() >= *rules_.finish_c2) return true;
    if (rules_.finish_rate && sim_.growth_rate() <= *rules_.finish_rate) return true;
    return false;
}

void Orchestrator::step_main(Agent& agent) {
    if (agent.rw_burst_remaining > 0) {
        sim_.rw_leg(agent.robot);
        --agent.rw_burst_remaining;
        return;
    }
    if (agent.nav) {
        if (agent.nav->step(sim_, agent.robot) != NavStatus::in_progress) agent.nav.reset();
        return;
    }

    std::vector<std::vector<LandmarkId>> seeds(sim_.robot_count());
    for (int r = 0; r < sim_.robot_count(); ++r)
        for (const auto& d : sim_.sense(r)) seeds[r].push_back(d.id);

    const auto choice = isw_select(sim_.complex_snapshot(), seeds, agent.robot);
    if (!choice) {
        sim_.rw_leg(agent.robot);  // nothing observed or empty cell: keep wandering
        return;
    }
    const WalkParams& p = sim_.params();
    if (choice->gscore <= p.omega || agent.isw_counter >= p.eta) {
        agent.isw_counter = 0;
        agent.rw_burst_remaining = p.delta;
        sim_.rw_leg(agent.robot);
        --agent.rw_burst_remaining;
        return;
    }
    ++agent.isw_counter;
    agent.nav.emplace(choice->goal, p);
    if (agent.nav->step(sim_, agent.robot) != NavStatus::in_progress) agent.nav.reset();
}

void Orchestrator::step_hiw(Agent& agent) {
    if (agent.idle_rw_remaining > 0) {
        sim_.rw_leg(agent.robot);
        --agent.idle_rw_remaining;
        return;
    }
    if (!agent.nav && agent.tour_pos < agent.tour.size()) {
        agent.nav.emplace(agent.tour[agent.tour_pos], sim_.params());
    }
    if (agent.nav) {
        const NavStatus status = agent.nav->step(sim_, agent.robot);
        if (status == NavStatus::in_progress) return;
        agent.nav.reset();
        if (status == NavStatus::failure) {
            // The tour's vertices are mutually connected in the 1-skeleton, so
            // an unreachable one means they all are; skip the rest this round.
            agent.tour_pos = agent.tour.size();
        } else {
            ++agent.tour_pos;
        }
    }
}

void Orchestrator::rw_sweep(int legs) {
    if (schedule_ == Schedule::concurrent) {
        std::vector<std::thread> threads;
        for (auto& agent : agents_)
            threads.emplace_back([this, &agent, legs] {
                for (int k = 0; k < legs && !sim_.observation_cap_reached(); ++k)
                    sim_.rw_leg(agent.robot);
            });
        for (auto& t : threads) t.join();
        return;
    }
    for (int k = 0; k < legs; ++k) {
        if (sim_.observation_cap_reached()) return;
        for (auto& agent : agents_) sim_.rw_leg(agent.robot);
        sim_.advance_tick();
    }
}

void Orchestrator::run_bootstrap() {
    sim_.set_phase(1);
    rw_sweep(sim_.params().gamma);
}

bool Orchestrator::run_hiw_round() {
    sim_.set_phase(3);
    const long observations_before = sim_.observations();
    const SimplicialComplex snapshot = sim_.complex_snapshot();
    const BoundaryMatrices b = boundary_matrices(snapshot);

    HoleCycleSet holes;
    if (!b.edge_index.empty() && !b.tri_index.empty()) {
        const auto l1 = hodge_laplacian_1(b);
        Eigen::VectorXd x0(b.edge_index.size());
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = hiw_rng_.normal();
        const FlowResult flow = flow_to_kernel(l1, x0, sim_.params().flow_tol);
        TightenParams tighten;
        tighten.max_iters = sim_.params().tighten_iters;
        const Eigen::VectorXd y = tighten_l1(flow.x, b.b2, tighten);
        holes = extract_holes(y, b, sim_.params().zeta_factor, snapshot.obstacle_adjacency());
        sim_.emit_hiw_diagnostics(HiwDiagnostics{hiw_rounds_, &b, &flow.x, &y, &holes});
    }
    ++hiw_rounds_;

    if (holes.empty()) {
        // Nothing to chase this round; keep observing so the growth window
        // keeps moving toward the stop rule.
        rw_sweep(sim_.params().delta);
        return false;
    }

    std::vector<HoleComponent> pending = holes.components;
    while (!pending.empty() && !sim_.observation_cap_reached()) {
        const SimplicialComplex current = sim_.complex_snapshot();
        const Graph g = one_skeleton(current);

        const int robots = sim_.robot_count();
        std::vector<std::vector<int>> robot_dist(robots);
        for (int r = 0; r < robots; ++r) {
            std::vector<std::vector<LandmarkId>> seeds(1);
            for (const auto& d : sim_.sense(r)) seeds[0].push_back(d.id);
            robot_dist[r] = voronoi(g, seeds).gscore;
        }

        CostMatrix cost(robots, static_cast<int>(pending.size()));
        for (int r = 0; r < robots; ++r) {
            for (int c = 0; c < static_cast<int>(pending.size()); ++c) {
                double best = kInfiniteCost;
                for (const LandmarkId v : pending[c].vertices) {
                    const int idx = g.index_of(v);
                    if (idx < 0) continue;
                    const int d = robot_dist[r][idx];
                    if (d != kUnreached && d < best) best = d;
                }
                cost.at(r, c) = best;
            }
        }

        // Components nobody can reach are skipped for the rest of this round.
        std::vector<HoleComponent> reachable;
        std::vector<int> keep;
        for (int c = 0; c < cost.cols; ++c) {
            bool any = false;
            for (int r = 0; r < cost.rows && !any; ++r) any = std::isfinite(cost.at(r, c));
            if (any) keep.push_back(c);
        }
        if (keep.empty()) break;
        CostMatrix filtered(cost.rows, static_cast<int>(keep.size()));
        for (int r = 0; r < cost.rows; ++r)
            for (int c = 0; c < static_cast<int>(keep.size()); ++c)
                filtered.at(r, c) = cost.at(r, keep[c]);
        for (const int c : keep) reachable.push_back(pending[c]);

        const std::vector<int> assignment = hungarian(filtered);
        std::vector<char> served(reachable.size(), 0);
        bool anyone_assigned = false;
        for (int r = 0; r < robots; ++r) {
            Agent& agent = agents_[r];
            agent.reset_activity();
            const int c = assignment[r];
            if (c >= 0) {
                anyone_assigned = true;
                served[c] = 1;
                agent.tour.assign(reachable[c].vertices.begin(), reachable[c].vertices.end());
                agent.tour_pos = 0;
            } else {
                agent.idle_rw_remaining = sim_.params().delta;
            }
        }
        if (!anyone_assigned) break;

        if (schedule_ == Schedule::concurrent) {
            std::vector<std::thread> threads;
            for (auto& agent : agents_)
                threads.emplace_back([this, &agent] {
                    while (agent.hiw_busy() && !sim_.observation_cap_reached()) step_hiw(agent);
                });
            for (auto& t : threads) t.join();
        } else {
            while (!sim_.observation_cap_reached()) {
                bool busy = false;
                for (auto& agent : agents_)
                    if (agent.hiw_busy()) {
                        busy = true;
                        step_hiw(agent);
                    }
                if (!busy) break;
                sim_.advance_tick();
            }
        }

        std::vector<HoleComponent> remaining;
        for (std::size_t c = 0; c < reachable.size(); ++c)
            if (!served[c]) remaining.push_back(reachable[c]);
        pending = std::move(remaining);
    }

    if (sim_.observations() == observations_before) {
        // A round that moved nobody must still make progress.
        rw_sweep(sim_.params().delta);
    }
    return true;
}

RunStats Orchestrator::run(const StopRules& rules) {
    rules_ = rules;
    if (!rules_.phase2_rate && !rules_.phase2_c2) rules_.phase2_rate = sim_.params().eps1;
    if (!rules_.finish_rate && !rules_.finish_c2) rules_.finish_rate = sim_.params().eps2;

    RunStats stats;

    run_bootstrap();
    stats.phase2_start_sample = static_cast<long>(sim_.rate_samples().size());

    sim_.set_phase(2);
    if (schedule_ == Schedule::concurrent) {
        std::vector<std::thread> threads;
        for (auto& agent : agents_)
            threads.emplace_back([this, &agent] {
                while (!sim_.observation_cap_reached()) {
                    const bool wrapping_up = phase2_done();
                    if (wrapping_up && agent.main_idle()) break;
                    if (wrapping_up) {
                        // Finish the current burst or navigation, no new goals.
                        if (agent.rw_burst_remaining > 0) {
                            sim_.rw_leg(agent.robot);
                            --agent.rw_burst_remaining;
                        } else if (agent.nav) {
                            if (agent.nav->step(sim_, agent.robot) != NavStatus::in_progress)
                                agent.nav.reset();
                        }
                    } else {
                        step_main(agent);
                    }
                }
            });
        for (auto& t : threads) t.join();
    } else {
        bool wrapping_up = false;
        while (!sim_.observation_cap_reached()) {
            if (!wrapping_up && phase2_done()) wrapping_up = true;
            if (wrapping_up &&
                std::all_of(agents_.begin(), agents_.end(),
                            [](const Agent& a) { return a.main_idle(); }))
                break;
            for (auto& agent : agents_) {
                if (wrapping_up) {
                    if (agent.rw_burst_remaining > 0) {
                        sim_.rw_leg(agent.robot);
                        --agent.rw_burst_remaining;
                    } else if (agent.nav) {
                        if (agent.nav->step(sim_, agent.robot) != NavStatus::in_progress)
                            agent.nav.reset();
                    }
                } else {
                    step_main(agent);
                }
            }
            sim_.advance_tick();
        }
    }
    for (auto& agent : agents_) agent.reset_activity();

    while (!finished() && !sim_.observation_cap_reached()) run_hiw_round();

    stats.observations = sim_.observations();
    stats.ticks = sim_.tick();
    stats.final_growth_rate = sim_.growth_rate();
    stats.hiw_rounds = hiw_rounds_;
    stats.rate_samples = sim_.rate_samples();
    stats.complex = sim_.complex_snapshot();
    if (rules_.finish_c2 && stats.complex.triangles().size() >= static_cast<std::size_t>(*rules_.finish_c2))
        stats.ended_by = RunEnd::target;
    else if (rules_.finish_rate && stats.final_growth_rate <= *rules_.finish_rate)
        stats.ended_by = RunEnd::rate;
    else
        stats.ended_by = RunEnd::observation_cap;
    return stats;
}

RunStats run_lcca(SimConfig config, const StopRules& rules, RunSinks sinks) {
    const Schedule schedule = config.schedule;
    Simulation sim(std::move(config), std::move(sinks));
    Orchestrator orchestrator(sim, schedule);
    return orchestrator.run(rules);
}

Orchestrator::~Orchestrator() = default;

}  // namespace lmcx

// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Long-running end-to-end checks share their run results.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "lmcx/experiments.hpp"
#include "lmcx/homology.hpp"
#include "lmcx/placement.hpp"
#include "lmcx/scenario.hpp"
#include "support/oracles.hpp"

using namespace lmcx;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double mean_of(const std::vector<long>& values) {
    double sum = 0.0;
    for (const long v : values) sum += static_cast<double>(v);
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

std::vector<double> moving_average(const std::vector<double>& values, int window) {
    std::vector<double> out;
    if (static_cast<int>(values.size()) < window) return out;
    double sum = 0.0;
    for (int k = 0; k < window; ++k) sum += values[k];
    out.push_back(sum / window);
    for (std::size_t k = window; k < values.size(); ++k) {
        sum += values[k] - values[k - window];
        out.push_back(sum / window);
    }
    return out;
}

Scenario load_scenario(const std::string& name) {
    Scenario sc = Scenario::from_json_file(std::string(LMCX_SCENARIOS_DIR) + "/" + name);
    sc.finalize_and_validate();
    return sc;
}

// --- shared expensive artifacts ---------------------------------------------

struct SharedRuns {
    Scenario ring;
    Workspace ring_ws;
    std::vector<LandmarkSite> ring_sites;
    long ring_cech_c2 = 0;
    std::vector<RunStats> lcca_runs;  // seeds 1..10 on the ring map
    bool ready = false;
};

SharedRuns g_shared;

void prepare_shared() {
    g_shared.ring = load_scenario("ring64.json");
    g_shared.ring_ws = build_workspace(g_shared.ring);
    PlacementResult placement =
        run_lpa(g_shared.ring_ws.config_grid, g_shared.ring_ws.filtration, g_shared.ring.delta_s);
    mark_obstacle_adjacency(placement.sites, g_shared.ring_ws.grid,
                            g_shared.ring.obstacle_adjacency_cells);
    g_shared.ring_sites = placement.sites;
    const SimplicialComplex cech =
        cech_reference(g_shared.ring_sites, g_shared.ring.footprint, g_shared.ring_ws.config_grid);
    g_shared.ring_cech_c2 = static_cast<long>(cech.triangles().size());

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Scenario sc = g_shared.ring;
        sc.seed = seed;
        sc.walk.rng_seed = seed;
        SimConfig config;
        config.grid = g_shared.ring_ws.grid;
        config.footprint = sc.footprint;
        config.sites = g_shared.ring_sites;
        config.start_poses = resolve_start_poses(sc, g_shared.ring_ws.grid);
        config.walk = sc.walk;
        config.schedule = Schedule::deterministic;
        g_shared.lcca_runs.push_back(run_lcca(std::move(config), {}, {}));
    }
    g_shared.ready = true;
}

// --- criteria ----------------------------------------------------------------

Outcome coverage_completeness() {
    Outcome out;
    std::string detail;
    for (const char* name : {"ring64.json", "tworooms96.json"}) {
        const Scenario sc = load_scenario(name);
        const Workspace ws = build_workspace(sc);
        PlacementResult placement = run_lpa(ws.config_grid, ws.filtration, sc.delta_s);

        long uncovered = 0;
        const ConfigGrid& grid = ws.config_grid;
        for (int k = 0; k < grid.n_theta; ++k)
            for (int j = 0; j < grid.base.height(); ++j)
                for (int i = 0; i < grid.base.width(); ++i) {
                    if (!grid.base.free_cell(i, j)) continue;
                    const Pose pose{grid.base.cell_center_x(i), grid.base.cell_center_y(j),
                                    grid.theta(k)};
                    if (detect_landmarks(pose, placement.sites, sc.footprint, grid.base).empty())
                        ++uncovered;
                }
        detail += std::string(name) + ": landmarks=" + std::to_string(placement.sites.size()) +
                  " uncovered=" + std::to_string(uncovered) + "  ";
        if (uncovered != 0) {
            out.detail = detail;
            return out;
        }
    }
    out.pass = true;
    out.detail = detail;
    return out;
}

Outcome chain_identity() {
    Outcome out;
    Rng rng(8081);
    for (int trial = 0; trial < 100; ++trial) {
        const SimplicialComplex k = oracle::random_complex(rng, 12, 60, 45);
        const BoundaryMatrices b = boundary_matrices(k);
        if (b.b2.cols() > 0) {
            const Eigen::MatrixXi product = Eigen::MatrixXi(b.b1 * b.b2);
            if (!product.isZero()) {
                out.detail = "B1*B2 != 0 at trial " + std::to_string(trial);
                return out;
            }
        }
        if (b.edge_index.empty()) continue;
        const Eigen::MatrixXd l1 = Eigen::MatrixXd(hodge_laplacian_1(b));
        if ((l1 - l1.transpose()).cwiseAbs().maxCoeff() != 0.0) {
            out.detail = "L1 not symmetric at trial " + std::to_string(trial);
            return out;
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l1);
        if (solver.eigenvalues().minCoeff() < -1e-9) {
            out.detail = "L1 has eigenvalue " + std::to_string(solver.eigenvalues().minCoeff());
            return out;
        }
    }
    out.pass = true;
    out.detail = "100 random complexes";
    return out;
}

Outcome hole_localization() {
    Outcome out;
    const auto pipeline = [](const SimplicialComplex& k, Rng& rng,
                             std::vector<std::set<Edge>>& components, double& residual) {
        const BoundaryMatrices b = boundary_matrices(k);
        const auto l1 = hodge_laplacian_1(b);
        Eigen::VectorXd x0(b.edge_index.size());
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = rng.normal();
        const FlowResult flow = flow_to_kernel(l1, x0, 1e-9);
        residual = flow.residual;
        if (!flow.converged) return false;
        const Eigen::VectorXd y = tighten_l1(flow.x, b.b2, TightenParams{0.01, 6000});
        const HoleCycleSet holes = extract_holes(y, b, 2.0, k.obstacle_adjacency());
        for (const auto& comp : holes.components) components.push_back(comp.edges);
        return true;
    };

    Rng rng(606);
    {
        std::vector<std::set<Edge>> components;
        double residual = 0.0;
        const auto start = std::chrono::steady_clock::now();
        if (!pipeline(oracle::hex_annulus(), rng, components, residual)) {
            out.detail = "annulus flow did not converge";
            return out;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (components.size() != 1 || components[0] != oracle::hex_annulus_hole_edges()) {
            out.detail = "annulus: wrong edge set";
            return out;
        }
        if (residual > 1e-9 || elapsed > 5.0) {
            out.detail = "annulus: residual/time budget exceeded";
            return out;
        }
    }
    {
        // Double annulus: two disjoint copies, both holes recovered exactly.
        SimplicialComplex k = oracle::hex_annulus(0);
        const SimplicialComplex far = oracle::hex_annulus(100);
        for (const auto& t : far.triangles()) k.insert_observation({t[0], t[1], t[2]});
        std::vector<std::set<Edge>> components;
        double residual = 0.0;
        const auto start = std::chrono::steady_clock::now();
        if (!pipeline(k, rng, components, residual)) {
            out.detail = "double annulus flow did not converge";
            return out;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const std::set<Edge> expect_a = oracle::hex_annulus_hole_edges(0);
        const std::set<Edge> expect_b = oracle::hex_annulus_hole_edges(100);
        if (components.size() != 2 || components[0] != expect_a || components[1] != expect_b) {
            out.detail = "double annulus: wrong components (" + std::to_string(components.size()) +
                         ")";
            return out;
        }
        if (residual > 1e-9 || elapsed > 5.0) {
            out.detail = "double annulus: residual/time budget exceeded";
            return out;
        }
    }
    out.pass = true;
    out.detail = "annulus and double annulus recovered exactly";
    return out;
}

Outcome kernel_dimension() {
    Outcome out;
    Rng rng(1717);
    int agreements = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const SimplicialComplex k = oracle::random_complex(rng, 9, 50, 26);
        const BoundaryMatrices b = boundary_matrices(k);
        const int m = static_cast<int>(b.edge_index.size());
        const int expected = oracle::betti_1(b);
        int probed = 0;
        if (m > 0) {
            const auto l1 = hodge_laplacian_1(b);
            Eigen::MatrixXd converged(m, m);
            for (int probe = 0; probe < m; ++probe) {
                Eigen::VectorXd x0(m);
                for (int i = 0; i < m; ++i) x0[i] = rng.normal();
                const FlowResult r = flow_to_kernel(l1, x0);
                if (!r.converged) {
                    out.detail = "flow stalled at trial " + std::to_string(trial);
                    return out;
                }
                converged.col(probe) = r.x;
            }
            const Eigen::JacobiSVD<Eigen::MatrixXd> svd(converged);
            const double scale =
                svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
            for (int s = 0; s < svd.singularValues().size(); ++s)
                if (svd.singularValues()[s] > std::max(1e-6, 1e-6 * scale)) ++probed;
        }
        if (probed != expected) {
            out.detail = "trial " + std::to_string(trial) + ": probed " + std::to_string(probed) +
                         " vs rank " + std::to_string(expected);
            return out;
        }
        ++agreements;
    }
    out.pass = agreements == 50;
    out.detail = std::to_string(agreements) + "/50 agreements";
    return out;
}

Outcome graph_oracles() {
    Outcome out;
    Rng rng(2525);
    // Voronoi vs brute-force BFS on random graphs up to 200 vertices.
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(10, 200);
        std::vector<LandmarkId> ids(n);
        std::iota(ids.begin(), ids.end(), 0);
        Graph g(ids);
        const double p = rng.uniform(0.01, 0.08);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.uniform() < p) g.add_edge(u, v);
        const int robots = rng.uniform_int(1, 4);
        std::vector<std::vector<LandmarkId>> seeds(robots);
        for (int r = 0; r < robots; ++r)
            for (int k = rng.uniform_int(0, 3); k > 0; --k)
                seeds[r].push_back(rng.uniform_int(0, n - 1));
        const Tessellation t = voronoi(g, seeds);

        std::vector<std::vector<int>> adj(n);
        for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
        std::vector<std::vector<int>> dist(robots);
        for (int r = 0; r < robots; ++r) {
            std::vector<int> s;
            for (const LandmarkId id : seeds[r]) s.push_back(g.index_of(id));
            dist[r] = oracle::bfs_hops(adj, s);
        }
        for (int v = 0; v < n; ++v) {
            int best_robot = kUnreached, best = -1;
            for (int r = 0; r < robots; ++r) {
                if (dist[r][v] < 0) continue;
                if (best_robot == kUnreached || dist[r][v] < best) {
                    best_robot = r;
                    best = dist[r][v];
                }
            }
            if (t.owner[v] != best_robot ||
                t.gscore[v] != (best_robot == kUnreached ? kUnreached : best)) {
                out.detail = "voronoi mismatch at trial " + std::to_string(trial);
                return out;
            }
        }
    }
    // Hungarian vs permutation enumeration up to 7x7.
    for (int trial = 0; trial < 120; ++trial) {
        const int n = rng.uniform_int(1, 7);
        const int m = rng.uniform_int(1, 7);
        CostMatrix cost(n, m);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < m; ++c)
                cost.at(r, c) = rng.uniform() < 0.12
                                    ? kInfiniteCost
                                    : static_cast<double>(rng.uniform_int(0, 50));
        const auto assignment = hungarian(cost);
        const auto value = oracle::evaluate_assignment(cost, assignment);
        const auto best = oracle::brute_force_assignment(cost);
        if (value.finite_pairs != best.finite_pairs ||
            std::abs(value.finite_cost - best.finite_cost) > 1e-9) {
            out.detail = "hungarian mismatch at trial " + std::to_string(trial);
            return out;
        }
    }
    out.pass = true;
    out.detail = "100 voronoi graphs, 120 assignment matrices";
    return out;
}

Outcome lcca_end_to_end() {
    Outcome out;
    const long needed = static_cast<long>(
        std::ceil(g_shared.ring.target * static_cast<double>(g_shared.ring_cech_c2) - 1e-9));
    int successes = 0;
    std::string detail = "cech_c2=" + std::to_string(g_shared.ring_cech_c2) +
                         " target=" + std::to_string(needed) + " c2:";
    for (const RunStats& stats : g_shared.lcca_runs) {
        const long c2 = static_cast<long>(stats.complex.triangles().size());
        detail += " " + std::to_string(c2) + "/" + std::to_string(stats.observations);
        if (c2 >= needed && stats.observations <= 150000) ++successes;
    }
    out.pass = successes >= 9;
    out.detail = detail + " -> " + std::to_string(successes) + "/10 seeds";
    return out;
}

Outcome hiw_benefit() {
    Outcome out;
    Scenario sc = g_shared.ring;
    sc.out_dir.clear();
    const SweepResult result = cmd_hiw_sweep(sc);

    std::map<double, std::vector<long>> by_fraction;
    for (const auto& row : result.rows) {
        if (!row.reached_target) {
            out.detail = "a sweep run missed the target (fraction " + std::to_string(row.param) +
                         ", seed " + std::to_string(row.seed) + ")";
            return out;
        }
        by_fraction[row.param].push_back(row.observations);
    }
    std::vector<std::pair<double, double>> means;
    for (const auto& [fraction, obs] : by_fraction) means.push_back({fraction, mean_of(obs)});
    std::sort(means.begin(), means.end());

    std::string detail;
    for (const auto& [fraction, mean] : means)
        detail += "f=" + std::to_string(fraction) + ":" + std::to_string((long)mean) + " ";

    const auto min_it = std::min_element(
        means.begin(), means.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    const bool min_nonzero = min_it->first > 0.0;
    double mean_zero = -1.0, mean_five = -1.0;
    for (const auto& [fraction, mean] : means) {
        if (fraction == 0.0) mean_zero = mean;
        if (std::abs(fraction - 0.05) < 1e-12) mean_five = mean;
    }
    const bool five_not_worse = mean_five >= 0.0 && mean_zero >= 0.0 && mean_five <= mean_zero;
    out.pass = min_nonzero && five_not_worse;
    out.detail = detail + (out.pass ? "" : "(needs interior min and f5% <= f0%)");
    return out;
}

Outcome switch_sweep_shape() {
    Outcome out;
    Scenario sc = g_shared.ring;
    sc.out_dir.clear();
    const SweepResult result = cmd_switch_sweep(sc);

    std::map<double, std::vector<long>> by_rate;
    for (const auto& row : result.rows) {
        if (!row.reached_target) {
            out.detail = "a sweep run missed the target (rate " + std::to_string(row.param) +
                         ", seed " + std::to_string(row.seed) + ")";
            return out;
        }
        by_rate[row.param].push_back(row.observations);
    }
    std::vector<std::pair<double, double>> means;
    for (const auto& [rate, obs] : by_rate) means.push_back({rate, mean_of(obs)});
    std::sort(means.begin(), means.end());

    std::string detail;
    for (const auto& [rate, mean] : means)
        detail += "r=" + std::to_string(rate) + ":" + std::to_string((long)mean) + " ";
    std::size_t arg_min = 0;
    for (std::size_t k = 1; k < means.size(); ++k)
        if (means[k].second < means[arg_min].second) arg_min = k;
    out.pass = arg_min > 0 && arg_min + 1 < means.size();
    out.detail = detail + "interior_min=" + std::to_string(means[arg_min].first) +
                 " (reference optimum from the source study: 0.004)";
    return out;
}

Outcome growth_decay() {
    Outcome out;
    int decaying = 0;
    std::string detail = "spearman:";
    for (const RunStats& stats : g_shared.lcca_runs) {
        std::vector<double> samples(
            stats.rate_samples.begin() +
                std::min<std::size_t>(stats.phase2_start_sample, stats.rate_samples.size()),
            stats.rate_samples.end());
        const std::vector<double> smooth = moving_average(samples, 5);
        const double rho = oracle::spearman_vs_time(smooth);
        char buffer[16];
        std::snprintf(buffer, sizeof(buffer), " %.2f", rho);
        detail += buffer;
        if (rho < -0.8) ++decaying;
    }
    out.pass = decaying >= 8;
    out.detail = detail + " -> " + std::to_string(decaying) + "/10";
    return out;
}

Outcome determinism() {
    Outcome out;
    const auto run_once = [&] {
        Scenario sc = g_shared.ring;
        sc.seed = 5;
        sc.walk.rng_seed = 5;
        sc.walk.max_observations = 40000;
        SimConfig config;
        config.grid = g_shared.ring_ws.grid;
        config.footprint = sc.footprint;
        config.sites = g_shared.ring_sites;
        config.start_poses = resolve_start_poses(sc, g_shared.ring_ws.grid);
        config.walk = sc.walk;
        std::string csv = metrics_header(sc.robots);
        RunSinks sinks;
        sinks.on_tick = [&csv](const TickSample& sample) { csv += metrics_row(sample); };
        run_lcca(std::move(config), {}, std::move(sinks));
        return csv;
    };
    const std::string a = run_once();
    const std::string b = run_once();
    out.pass = !a.empty() && a == b;
    out.detail = "metrics streams of " + std::to_string(a.size()) + " bytes " +
                 (out.pass ? "identical" : "differ");
    return out;
}

Outcome dubins_geometry() {
    Outcome out;
    Rng rng(8899);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        ShortTermTrajectory stt;
        stt.rho = rng.uniform(0.05, 60.0);
        stt.s = rng.uniform(0.0, std::min(40.0, std::numbers::pi * stt.rho));
        stt.beta = rng.coin_sign();
        const Pose start{rng.uniform(-100, 100), rng.uniform(-100, 100),
                         rng.uniform(-std::numbers::pi, std::numbers::pi)};
        const Pose end = generate_arc(start, stt, 0.25).back();

        const double beta = stt.beta >= 0 ? 1.0 : -1.0;
        const double sweep = stt.s / stt.rho;
        const double forward = stt.rho * std::sin(sweep);
        const double lateral = -beta * stt.rho * (1.0 - std::cos(sweep));
        const double c = std::cos(start.theta), s = std::sin(start.theta);
        const double ex = start.x + c * forward - s * lateral;
        const double ey = start.y + s * forward + c * lateral;
        const double et = wrap_angle(start.theta - beta * sweep);

        worst = std::max({worst, std::abs(end.x - ex), std::abs(end.y - ey),
                          std::abs(wrap_angle(end.theta - et))});
    }
    out.pass = worst <= 1e-9;
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "max deviation %.3e over 1000 arcs", worst);
    out.detail = buffer;
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };

    prepare_shared();

    const std::vector<Criterion> criteria{
        {1, "coverage completeness after placement", coverage_completeness},
        {2, "chain-complex identity and PSD Laplacian", chain_identity},
        {3, "hole localization on annulus complexes", hole_localization},
        {4, "flow-probed kernel dimension vs integer rank", kernel_dimension},
        {5, "voronoi and hungarian against brute force", graph_oracles},
        {6, "construction reaches 98% of the reference complex", lcca_end_to_end},
        {7, "homology walks reduce total observations", hiw_benefit},
        {8, "switch sweep has an interior optimum", switch_sweep_shape},
        {9, "growth rate decays after bootstrap", growth_decay},
        {10, "deterministic schedule reproduces metrics byte-for-byte", determinism},
        {11, "arc endpoints match closed-form geometry", dubins_geometry},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s (%.1fs) %s\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.id, criterion.title, elapsed, outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}

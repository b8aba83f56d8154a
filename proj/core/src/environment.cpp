#include "lmcx/environment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmcx {

using nlohmann::json;

namespace {

bool site_visible_from(const Pose& pose, double sx, double sy, const SensorFootprint& footprint,
                       const OccupancyGrid& grid) {
    const double dx = sx - pose.x;
    const double dy = sy - pose.y;
    const double dist = std::hypot(dx, dy);
    if (dist > footprint.radius) return false;
    if (dist > 0.0) {
        const double bearing = wrap_angle(std::atan2(dy, dx) - pose.theta);
        if (!footprint.contains(dist, bearing)) return false;
    }
    return grid.segment_clear(pose.x, pose.y, sx, sy);
}

}  // namespace

std::vector<Detection> detect_landmarks(const Pose& pose, const std::vector<LandmarkSite>& sites,
                                        const SensorFootprint& footprint,
                                        const OccupancyGrid& grid) {
    std::vector<Detection> out;
    for (const auto& site : sites) {
        if (!site_visible_from(pose, site.x, site.y, footprint, grid)) continue;
        const double dx = site.x - pose.x;
        const double dy = site.y - pose.y;
        const double cross = std::cos(pose.theta) * dy - std::sin(pose.theta) * dx;
        out.push_back(Detection{site.id, cross > 0.0 ? Side::left : Side::right});
    }
    std::sort(out.begin(), out.end(),
              [](const Detection& a, const Detection& b) { return a.id < b.id; });
    return out;
}

CoverageMask visibility_domain(const LandmarkSite& site, const SensorFootprint& footprint,
                               const ConfigGrid& grid) {
    CoverageMask mask(grid.cells());
    const OccupancyGrid& base = grid.base;
    const double res = base.resolution();

    // Candidate robot cells lie within the footprint radius of the site.
    const int reach = static_cast<int>(std::ceil(footprint.radius / res)) + 1;
    const Cell sc = base.cell_at(site.x, site.y);
    const int i_lo = std::max(0, sc.i - reach);
    const int i_hi = std::min(base.width() - 1, sc.i + reach);
    const int j_lo = std::max(0, sc.j - reach);
    const int j_hi = std::min(base.height() - 1, sc.j + reach);

    for (int j = j_lo; j <= j_hi; ++j) {
        for (int i = i_lo; i <= i_hi; ++i) {
            if (!base.free_cell(i, j)) continue;
            const double cx = base.cell_center_x(i);
            const double cy = base.cell_center_y(j);
            const double dx = site.x - cx;
            const double dy = site.y - cy;
            const double dist = std::hypot(dx, dy);
            if (dist > footprint.radius) continue;
            if (!base.segment_clear(cx, cy, site.x, site.y)) continue;
            if (dist == 0.0) {
                for (int k = 0; k < grid.n_theta; ++k) mask.set(grid.index(i, j, k));
                continue;
            }
            const double direction = std::atan2(dy, dx);
            for (int k = 0; k < grid.n_theta; ++k) {
                const double bearing = wrap_angle(direction - grid.theta(k));
                if (std::abs(bearing) <= footprint.half_angle) mask.set(grid.index(i, j, k));
            }
        }
    }
    return mask;
}

SimplicialComplex cech_reference(const std::vector<LandmarkSite>& sites,
                                 const SensorFootprint& footprint, const ConfigGrid& grid) {
    std::vector<CoverageMask> domains;
    domains.reserve(sites.size());
    for (const auto& site : sites) domains.push_back(visibility_domain(site, footprint, grid));

    // Iterate sites in id order so each observation set comes out sorted.
    std::vector<std::size_t> order(sites.size());
    for (std::size_t s = 0; s < sites.size(); ++s) order[s] = s;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return sites[a].id < sites[b].id; });

    SimplicialComplex complex;
    std::vector<LandmarkId> seen;
    const OccupancyGrid& base = grid.base;
    for (int k = 0; k < grid.n_theta; ++k) {
        for (int j = 0; j < base.height(); ++j) {
            for (int i = 0; i < base.width(); ++i) {
                if (!base.free_cell(i, j)) continue;
                const long idx = grid.index(i, j, k);
                seen.clear();
                for (const std::size_t s : order)
                    if (domains[s].test(idx)) seen.push_back(sites[s].id);
                if (!seen.empty()) complex.insert_observation(seen);
            }
        }
    }
    for (const auto& site : sites)
        if (complex.contains(site.id)) complex.set_obstacle_adjacent(site.id, site.obstacle_adjacent);
    return complex;
}

StepResult step_pose(Pose& pose, const Pose& target, const OccupancyGrid& grid) {
    if (grid.occupied_at(target.x, target.y)) return StepResult::collided;
    pose = target;
    return StepResult::moved;
}

void mark_obstacle_adjacency(std::vector<LandmarkSite>& sites, const OccupancyGrid& grid,
                             int radius_cells) {
    for (auto& site : sites) {
        const Cell c = grid.cell_at(site.x, site.y);
        bool adjacent = false;
        for (int dj = -radius_cells; dj <= radius_cells && !adjacent; ++dj)
            for (int di = -radius_cells; di <= radius_cells && !adjacent; ++di)
                if (grid.occupied(c.i + di, c.j + dj)) adjacent = true;
        site.obstacle_adjacent = adjacent;
    }
}

std::string landmarks_to_json(const std::vector<LandmarkSite>& sites) {
    json arr = json::array();
    for (const auto& s : sites) {
        json item;
        item["id"] = s.id;
        item["x"] = s.x;
        item["y"] = s.y;
        item["obstacle_adjacent"] = s.obstacle_adjacent;
        arr.push_back(item);
    }
    return arr.dump(2) + "\n";
}

std::vector<LandmarkSite> landmarks_from_json(const std::string& text) {
    json arr;
    try {
        arr = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("landmark JSON parse error: ") + e.what());
    }
    std::vector<LandmarkSite> sites;
    try {
        for (const auto& item : arr) {
            LandmarkSite s;
            s.id = item.at("id").get<LandmarkId>();
            s.x = item.at("x").get<double>();
            s.y = item.at("y").get<double>();
            s.obstacle_adjacent = item.at("obstacle_adjacent").get<bool>();
            sites.push_back(s);
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("landmark JSON schema error: ") + e.what());
    }
    return sites;
}

}  // namespace lmcx

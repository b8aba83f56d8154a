#include "lmcx/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lmcx/graph_ops.hpp"

namespace lmcx {

namespace {

LandmarkSite site_at_cell(const OccupancyGrid& base, Cell c, LandmarkId id) {
    return LandmarkSite{id, base.cell_center_x(c.i), base.cell_center_y(c.j), false};
}

// Nearest free cell to (x, y) restricted to the [lo, hi] cell box; {-1,-1}
// when the box holds no free cell.
Cell nearest_free_in_box(const OccupancyGrid& base, double x, double y, Cell lo, Cell hi) {
    double best = std::numeric_limits<double>::infinity();
    Cell best_cell{-1, -1};
    for (int j = std::max(0, lo.j); j <= std::min(base.height() - 1, hi.j); ++j) {
        for (int i = std::max(0, lo.i); i <= std::min(base.width() - 1, hi.i); ++i) {
            if (!base.free_cell(i, j)) continue;
            const double dx = base.cell_center_x(i) - x;
            const double dy = base.cell_center_y(j) - y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best) {
                best = d2;
                best_cell = Cell{i, j};
            }
        }
    }
    return best_cell;
}

}  // namespace

LandmarkSite place_landmark(const std::vector<long>& component_cells, const ConfigGrid& grid,
                            double delta_s, LandmarkId id) {
    if (component_cells.empty()) throw std::invalid_argument("place_landmark: empty component");
    const OccupancyGrid& base = grid.base;

    double cx = 0.0, cy = 0.0;
    Cell lo{base.width(), base.height()}, hi{-1, -1};
    for (const long idx : component_cells) {
        const Cell c = grid.cell_of(idx);
        cx += base.cell_center_x(c.i);
        cy += base.cell_center_y(c.j);
        lo.i = std::min(lo.i, c.i);
        lo.j = std::min(lo.j, c.j);
        hi.i = std::max(hi.i, c.i);
        hi.j = std::max(hi.j, c.j);
    }
    cx /= static_cast<double>(component_cells.size());
    cy /= static_cast<double>(component_cells.size());

    double tx = cx, ty = cy;
    if (grid.n_theta > 1) {
        // Components live in a single theta slice. The visibility domain of a
        // landmark extends from it along theta+pi, so the landmark goes ahead
        // of the centroid (along +theta) to center that domain on the
        // component.
        const double theta = grid.theta(grid.slice_of(component_cells.front()));
        tx += delta_s * std::cos(theta);
        ty += delta_s * std::sin(theta);
    }
    // Clamp into the world before snapping.
    tx = std::clamp(tx, 0.5 * base.resolution(), base.width_m() - 0.5 * base.resolution());
    ty = std::clamp(ty, 0.5 * base.resolution(), base.height_m() - 0.5 * base.resolution());

    const Cell target = base.cell_at(tx, ty);
    if (base.free_cell(target.i, target.j)) return site_at_cell(base, target, id);

    if (grid.n_theta > 1) {
        const Cell snapped = nearest_free_in_box(base, tx, ty, lo, hi);
        if (snapped.i < 0)
            throw std::runtime_error("place_landmark: no free cell in component bounding box");
        return site_at_cell(base, snapped, id);
    }
    return site_at_cell(base, base.nearest_free_cell(tx, ty), id);
}

PlacementResult run_lpa(const ConfigGrid& grid, const FootprintFiltration& filtration,
                        double delta_s) {
    filtration.validate();
    if (delta_s < 0.0) throw std::invalid_argument("run_lpa: delta_s must be non-negative");

    PlacementResult result;
    CoverageMask valid(grid.cells());
    for (int k = 0; k < grid.n_theta; ++k)
        for (int j = 0; j < grid.base.height(); ++j)
            for (int i = 0; i < grid.base.width(); ++i)
                if (grid.base.free_cell(i, j)) valid.set(grid.index(i, j, k));

    for (std::size_t t = 0; t < filtration.steps.size(); ++t) {
        const SensorFootprint& footprint = filtration.steps[t];

        CoverageMask covered(grid.cells());
        for (const auto& site : result.sites)
            covered.or_with(visibility_domain(site, footprint, grid));
        CoverageMask uncovered = valid;
        uncovered.and_not(covered);

        PlacementStepStats stats;
        stats.step = static_cast<int>(t);
        stats.radius = footprint.radius;
        stats.half_angle = footprint.half_angle;
        stats.uncovered_at_start = uncovered.count();

        while (uncovered.any()) {
            const auto components = connected_components(uncovered, grid);
            const std::vector<long>& first = components.front();
            const LandmarkId id = static_cast<LandmarkId>(result.sites.size());

            LandmarkSite site = place_landmark(first, grid, delta_s, id);
            CoverageMask domain = visibility_domain(site, footprint, grid);
            if (domain.count_and(uncovered) == 0) {
                // The centroid rule can land where it covers nothing new (thin
                // slivers near obstacles). Drop that site and place directly at
                // an uncovered cell, which always covers its own configuration.
                const Cell direct = grid.cell_of(first.front());
                site = site_at_cell(grid.base, direct, id);
                domain = visibility_domain(site, footprint, grid);
                if (domain.count_and(uncovered) == 0)
                    throw std::runtime_error("run_lpa: direct placement failed to gain coverage");
            }
            result.sites.push_back(site);
            covered.or_with(domain);
            uncovered.and_not(domain);
            ++stats.placed;
        }
        result.steps.push_back(stats);
    }

    mark_obstacle_adjacency(result.sites, grid.base);
    return result;
}

}  // namespace lmcx

#pragma once

#include <vector>

#include "lmcx/environment.hpp"
#include "lmcx/sensor.hpp"

namespace lmcx {

struct PlacementStepStats {
    int step = 0;
    double radius = 0.0;
    double half_angle = 0.0;
    int placed = 0;                // landmarks placed during this step
    long uncovered_at_start = 0;   // uncovered configurations entering the step
};

struct PlacementResult {
    std::vector<LandmarkSite> sites;
    std::vector<PlacementStepStats> steps;
};

// Picks a landmark position for one uncovered component. Planar grids
// (n_theta == 1) use the component centroid snapped to the nearest free cell;
// theta-slice components displace the centroid by delta_s opposite the slice
// heading so the backward-facing visibility sector lands on the component.
// Throws std::runtime_error when no free cell can host the landmark.
LandmarkSite place_landmark(const std::vector<long>& component_cells, const ConfigGrid& grid,
                            double delta_s, LandmarkId id);

// Landmark Placement Algorithm: walks the footprint filtration, repeatedly
// placing a landmark for the first connected component of the uncovered
// region until every valid configuration sees at least one landmark under the
// true footprint. Deterministic: identical inputs give identical site lists.
PlacementResult run_lpa(const ConfigGrid& grid, const FootprintFiltration& filtration,
                        double delta_s);

}  // namespace lmcx

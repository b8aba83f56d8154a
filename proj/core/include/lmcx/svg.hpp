#pragma once

#include <ostream>
#include <vector>

#include "lmcx/complex.hpp"
#include "lmcx/environment.hpp"
#include "lmcx/geometry.hpp"
#include "lmcx/occupancy_grid.hpp"

namespace lmcx {

// Renders the complex immersed at the simulator's ground-truth landmark
// positions (visualization only), over the occupancy grid, with robot poses
// drawn as heading arrows.
void write_complex_svg(std::ostream& out, const SimplicialComplex& complex,
                       const std::vector<LandmarkSite>& sites, const OccupancyGrid& grid,
                       const std::vector<Pose>& robots);

}  // namespace lmcx

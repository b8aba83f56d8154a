#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lmcx/complex.hpp"
#include "lmcx/geometry.hpp"
#include "lmcx/occupancy_grid.hpp"
#include "lmcx/sensor.hpp"

namespace lmcx {

// A placed landmark: continuous position in free space plus the
// obstacle-adjacency bit baked in at placement time.
struct LandmarkSite {
    LandmarkId id = 0;
    double x = 0.0;
    double y = 0.0;
    bool obstacle_adjacent = false;
};

enum class Side : std::uint8_t { left, right };

struct Detection {
    LandmarkId id = 0;
    Side side = Side::right;
    bool operator==(const Detection&) const = default;
};

// Landmarks inside the footprint at `pose` with an unobstructed straight
// segment from the pose to the site. Side is right when the cross product of
// the heading with the pose->site vector is negative; ties go right. Results
// are sorted by id.
std::vector<Detection> detect_landmarks(const Pose& pose, const std::vector<LandmarkSite>& sites,
                                        const SensorFootprint& footprint,
                                        const OccupancyGrid& grid);

// Set of discrete configurations from which the site would be detected. In a
// theta slice the shape is the disk sector of apex angle 2*half_angle sitting
// behind the site relative to the slice heading, clipped by line of sight.
CoverageMask visibility_domain(const LandmarkSite& site, const SensorFootprint& footprint,
                               const ConfigGrid& grid);

// Ground-truth reference complex: one observation inserted per valid
// configuration of the grid. Pure function of (sites, footprint, grid).
SimplicialComplex cech_reference(const std::vector<LandmarkSite>& sites,
                                 const SensorFootprint& footprint, const ConfigGrid& grid);

enum class StepResult { moved, collided };

// Advances `pose` to `target` unless the target cell is occupied or out of
// bounds, in which case the pose is left unchanged.
StepResult step_pose(Pose& pose, const Pose& target, const OccupancyGrid& grid);

// Sets each site's obstacle_adjacent flag: true when an occupied cell lies
// within `radius_cells` (Chebyshev) of the site's cell.
void mark_obstacle_adjacency(std::vector<LandmarkSite>& sites, const OccupancyGrid& grid,
                             int radius_cells = 1);

// JSON array of {id, x, y, obstacle_adjacent}.
std::string landmarks_to_json(const std::vector<LandmarkSite>& sites);
std::vector<LandmarkSite> landmarks_from_json(const std::string& text);

}  // namespace lmcx

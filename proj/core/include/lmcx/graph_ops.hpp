#pragma once

#include <limits>
#include <vector>

#include "lmcx/occupancy_grid.hpp"

namespace lmcx {

// Landmark identity. IDs are the only landmark information robots share.
using LandmarkId = int;

inline constexpr int kUnreached = -1;

// Undirected graph over landmark ids with unit edge cost. Vertices are kept
// sorted; adjacency lists hold vertex indices in ascending order.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::vector<LandmarkId> vertices);

    void add_edge(LandmarkId u, LandmarkId v);

    int vertex_count() const { return static_cast<int>(verts_.size()); }
    long edge_count() const { return edges_; }
    int index_of(LandmarkId id) const;  // -1 when absent
    LandmarkId id_of(int index) const { return verts_[index]; }
    const std::vector<LandmarkId>& vertices() const { return verts_; }
    const std::vector<int>& neighbors(int index) const { return adj_[index]; }
    int degree(int index) const { return static_cast<int>(adj_[index].size()); }

private:
    std::vector<LandmarkId> verts_;
    std::vector<std::vector<int>> adj_;
    long edges_ = 0;
};

// Graph Voronoi tessellation: owner[v] is the robot whose seed set is nearest
// to v in hop distance (ties to the lowest robot index), gscore[v] the hop
// distance itself. Unreached vertices carry kUnreached in both fields.
struct Tessellation {
    std::vector<int> owner;
    std::vector<int> gscore;
};

// Multi-source wavefront propagation with unit costs. seeds[i] lists the
// vertex ids robot i currently observes (may be empty; unknown ids are
// ignored).
Tessellation voronoi(const Graph& g, const std::vector<std::vector<LandmarkId>>& seeds);

// Minimal-hop path from any of `sources` to `goal`, returned as vertex ids
// including both endpoints. Empty result signals an unreachable goal (or no
// usable source). A goal that is itself a source yields a single-element path.
std::vector<LandmarkId> shortest_path(const Graph& g, const std::vector<LandmarkId>& sources,
                                      LandmarkId goal);

// Connected components of the graph, each sorted ascending, ordered by their
// smallest vertex id.
std::vector<std::vector<LandmarkId>> connected_components(const Graph& g);

// Connected components of the set bits of a configuration-space mask, using
// 4-connectivity within each theta slice (slices are never bridged). Each
// component lists linear config indices ascending; components are ordered by
// their smallest index.
std::vector<std::vector<long>> connected_components(const CoverageMask& mask,
                                                    const ConfigGrid& grid);

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// Robot-by-component travel cost matrix; kInfiniteCost marks unreachable pairs.
struct CostMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    CostMatrix() = default;
    CostMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

// Minimum-cost injective assignment of rows to columns covering min(rows,
// cols) pairs; O(n^3). Returns the assigned column per row, or -1 for rows
// left unassigned (padding or all-infinite rows).
std::vector<int> hungarian(const CostMatrix& cost);

}  // namespace lmcx

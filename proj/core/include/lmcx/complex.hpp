#pragma once

#include <Eigen/Sparse>

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lmcx/graph_ops.hpp"

namespace lmcx {

// Simplices are stored as strictly increasing id tuples; a k+1 tuple is a
// k-simplex. The complex is truncated at dimension 2.
using Edge = std::array<LandmarkId, 2>;
using Triangle = std::array<LandmarkId, 3>;

Edge make_edge(LandmarkId a, LandmarkId b);
Triangle make_triangle(LandmarkId a, LandmarkId b, LandmarkId c);

struct InsertStats {
    int new_vertices = 0;
    int new_edges = 0;
    int new_triangles = 0;
};

// Abstract simplicial complex over landmark ids, dimensions 0-2, closed under
// taking faces by construction. Tracks a per-landmark observation count and an
// obstacle-adjacency flag supplied by the environment.
class SimplicialComplex {
public:
    // Records one observation event: inserts every subset of `landmarks` of
    // size <= 3 as a simplex (larger subsets contribute all their 2-dimensional
    // faces) and increments each landmark's observation count once. An empty
    // set is a no-op: the sensor saw nothing.
    InsertStats insert_observation(std::vector<LandmarkId> landmarks);

    const std::set<LandmarkId>& vertices() const { return c0_; }
    const std::set<Edge>& edges() const { return c1_; }
    const std::set<Triangle>& triangles() const { return c2_; }

    bool contains(LandmarkId v) const { return c0_.count(v) != 0; }
    bool contains(const Edge& e) const { return c1_.count(e) != 0; }
    bool contains(const Triangle& t) const { return c2_.count(t) != 0; }

    long observation_count(LandmarkId v) const;
    const std::map<LandmarkId, long>& observation_counts() const { return obs_count_; }

    bool obstacle_adjacent(LandmarkId v) const;
    void set_obstacle_adjacent(LandmarkId v, bool flag) { obstacle_adjacent_[v] = flag; }
    const std::map<LandmarkId, bool>& obstacle_adjacency() const { return obstacle_adjacent_; }

    // Full-scan closure check: every face of every stored simplex is present.
    bool closed_under_faces() const;

    bool operator==(const SimplicialComplex&) const = default;

    // JSON export/import with arrays c0, c1, c2, obs_count, obstacle_adjacent;
    // round-trips bit-exactly. from_json throws std::runtime_error on
    // malformed or closure-violating input.
    std::string to_json() const;
    static SimplicialComplex from_json(const std::string& text);

private:
    std::set<LandmarkId> c0_;
    std::set<Edge> c1_;
    std::set<Triangle> c2_;
    std::map<LandmarkId, long> obs_count_;
    std::map<LandmarkId, bool> obstacle_adjacent_;
};

// Graph whose vertices are the 0-simplices and edges the 1-simplices, with
// unit cost on every edge.
Graph one_skeleton(const SimplicialComplex& complex);

// Signed vertex-edge and edge-triangle incidence matrices under the fixed
// orientation convention: edge {u, v} with u < v points u -> v; triangle
// {a, b, c} with a < b < c is traversed a -> b -> c -> a. Indices follow the
// lexicographic order of the stored simplices, so matrices are reproducible.
struct BoundaryMatrices {
    Eigen::SparseMatrix<int> b1;  // n x m
    Eigen::SparseMatrix<int> b2;  // m x p
    std::vector<LandmarkId> vertex_index;
    std::vector<Edge> edge_index;
    std::vector<Triangle> tri_index;
};

BoundaryMatrices boundary_matrices(const SimplicialComplex& complex);

}  // namespace lmcx

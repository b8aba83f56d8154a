// Independent reference implementations used only by tests. Everything here
// deliberately avoids the library's own code paths for the quantity it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmcx/complex.hpp"
#include "lmcx/graph_ops.hpp"
#include "lmcx/occupancy_grid.hpp"
#include "lmcx/rng.hpp"

namespace oracle {

// --- graph distances -------------------------------------------------------

// Plain BFS hop distances from a seed set over an adjacency-list graph.
inline std::vector<int> bfs_hops(const std::vector<std::vector<int>>& adj,
                                 const std::vector<int>& seeds) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> queue;
    for (const int s : seeds)
        if (dist[s] != 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (const int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

// --- assignment ------------------------------------------------------------

struct AssignmentValue {
    int finite_pairs = 0;
    double finite_cost = 0.0;
};

inline AssignmentValue evaluate_assignment(const lmcx::CostMatrix& cost,
                                           const std::vector<int>& cols) {
    AssignmentValue value;
    for (int r = 0; r < cost.rows; ++r) {
        if (cols[r] < 0) continue;
        const double c = cost.at(r, cols[r]);
        if (!std::isfinite(c)) throw std::logic_error("assignment uses an infinite entry");
        ++value.finite_pairs;
        value.finite_cost += c;
    }
    return value;
}

// Enumerates every injective row->column map covering min(rows, cols) pairs,
// maximizing the number of finite pairs and then minimizing their total cost.
inline AssignmentValue brute_force_assignment(const lmcx::CostMatrix& cost) {
    const int n = cost.rows;
    const int m = cost.cols;
    AssignmentValue best{-1, 0.0};

    std::vector<int> cols(m);
    std::iota(cols.begin(), cols.end(), 0);

    if (n <= m) {
        std::vector<int> chosen(n);
        std::vector<char> used(m, 0);
        const auto recurse = [&](auto&& self, int row) -> void {
            if (row == n) {
                AssignmentValue value;
                for (int r = 0; r < n; ++r) {
                    const double c = cost.at(r, chosen[r]);
                    if (std::isfinite(c)) {
                        ++value.finite_pairs;
                        value.finite_cost += c;
                    }
                }
                if (value.finite_pairs > best.finite_pairs ||
                    (value.finite_pairs == best.finite_pairs &&
                     value.finite_cost < best.finite_cost - 1e-12))
                    best = value;
                return;
            }
            for (int c = 0; c < m; ++c) {
                if (used[c]) continue;
                used[c] = 1;
                chosen[row] = c;
                self(self, row + 1);
                used[c] = 0;
            }
        };
        recurse(recurse, 0);
    } else {
        // More rows than columns: every column must be matched to some row.
        std::vector<int> chosen(m);
        std::vector<char> used(n, 0);
        const auto recurse = [&](auto&& self, int col) -> void {
            if (col == m) {
                AssignmentValue value;
                for (int c = 0; c < m; ++c) {
                    const double v = cost.at(chosen[c], c);
                    if (std::isfinite(v)) {
                        ++value.finite_pairs;
                        value.finite_cost += v;
                    }
                }
                if (value.finite_pairs > best.finite_pairs ||
                    (value.finite_pairs == best.finite_pairs &&
                     value.finite_cost < best.finite_cost - 1e-12))
                    best = value;
                return;
            }
            for (int r = 0; r < n; ++r) {
                if (used[r]) continue;
                used[r] = 1;
                chosen[col] = r;
                self(self, col + 1);
                used[r] = 0;
            }
        };
        recurse(recurse, 0);
    }
    return best;
}

// --- exact integer rank (fraction-free elimination) -------------------------

// Bareiss fraction-free Gaussian elimination over the integers. Intermediate
// entries are leading minors, which stay well inside int64 for the small
// incidence matrices used in tests; products are checked in 128-bit.
inline int bareiss_rank(std::vector<std::vector<long long>> a) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    long long prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c) {
                const __int128 num = static_cast<__int128>(a[rank][col]) * a[r][c] -
                                     static_cast<__int128>(a[r][col]) * a[rank][c];
                const __int128 q = num / prev;
                if (q > INT64_MAX || q < INT64_MIN)
                    throw std::overflow_error("bareiss_rank: entry overflow");
                a[r][c] = static_cast<long long>(q);
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<long long>> to_dense(const Eigen::SparseMatrix<int>& m) {
    std::vector<std::vector<long long>> dense(m.rows(), std::vector<long long>(m.cols(), 0));
    for (int col = 0; col < m.outerSize(); ++col)
        for (Eigen::SparseMatrix<int>::InnerIterator it(m, col); it; ++it)
            dense[it.row()][it.col()] = it.value();
    return dense;
}

// First Betti number by rank-nullity over the integers.
inline int betti_1(const lmcx::BoundaryMatrices& b) {
    const int m = static_cast<int>(b.edge_index.size());
    if (m == 0) return 0;
    const int rank_b1 = bareiss_rank(to_dense(b.b1));
    const int rank_b2 = b.tri_index.empty() ? 0 : bareiss_rank(to_dense(b.b2));
    return m - rank_b1 - rank_b2;
}

// --- statistics --------------------------------------------------------------

// Spearman rank correlation of values against their sample index, with
// tie-averaged ranks.
inline double spearman_vs_time(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    if (n < 3) return 0.0;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    std::vector<double> rank(n, 0.0);
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (i + j) / 2.0 + 1.0;
        for (int k = i; k <= j; ++k) rank[order[k]] = avg;
        i = j + 1;
    }
    double mean_x = (n + 1) / 2.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    double mean_y = std::accumulate(rank.begin(), rank.end(), 0.0) / n;
    for (int k = 0; k < n; ++k) {
        const double dx = (k + 1) - mean_x;
        const double dy = rank[k] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

// --- complexes ----------------------------------------------------------------

// Random face-closed complex built from random observation batches.
inline lmcx::SimplicialComplex random_complex(lmcx::Rng& rng, int vertex_pool, int max_edges,
                                              int batches) {
    lmcx::SimplicialComplex complex;
    for (int b = 0; b < batches; ++b) {
        const int size = rng.uniform_int(1, 4);
        std::vector<lmcx::LandmarkId> obs;
        for (int k = 0; k < size; ++k) obs.push_back(rng.uniform_int(0, vertex_pool - 1));
        complex.insert_observation(obs);
        if (static_cast<int>(complex.edges().size()) >= max_edges) break;
    }
    return complex;
}

// Hollow square over the given four ids (edges only, no faces).
inline lmcx::SimplicialComplex hollow_square(lmcx::LandmarkId a, lmcx::LandmarkId b,
                                             lmcx::LandmarkId c, lmcx::LandmarkId d) {
    lmcx::SimplicialComplex complex;
    complex.insert_observation({a, b});
    complex.insert_observation({b, c});
    complex.insert_observation({c, d});
    complex.insert_observation({d, a});
    return complex;
}

// Triangulated annulus: inner triangle (first three ids) inside a hexagonal
// outer boundary, the center face missing. Its unique l1-tightest hole cycle
// is the inner triangle.
inline lmcx::SimplicialComplex hex_annulus(int id_offset = 0) {
    lmcx::SimplicialComplex complex;
    const auto tri = [&](int a, int b, int c) {
        complex.insert_observation({a + id_offset, b + id_offset, c + id_offset});
    };
    tri(0, 3, 4);
    tri(0, 1, 4);
    tri(1, 4, 5);
    tri(1, 5, 6);
    tri(1, 2, 6);
    tri(2, 6, 7);
    tri(2, 7, 8);
    tri(0, 2, 8);
    tri(0, 3, 8);
    return complex;
}

inline std::set<lmcx::Edge> hex_annulus_hole_edges(int id_offset = 0) {
    return {lmcx::make_edge(id_offset + 0, id_offset + 1),
            lmcx::make_edge(id_offset + 1, id_offset + 2),
            lmcx::make_edge(id_offset + 0, id_offset + 2)};
}

// --- misc ---------------------------------------------------------------------

// Minimal XML well-formedness check: balanced, properly nested tags.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    bool saw_root = false;
    while (i < text.size()) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        const std::size_t end = text.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;  // declaration or comment
        const bool closing = tag[0] == '/';
        const bool self_closing = tag.back() == '/';
        if (closing) tag = tag.substr(1);
        if (self_closing) tag = tag.substr(0, tag.size() - 1);
        const std::size_t space = tag.find_first_of(" \t\n\r");
        const std::string name = space == std::string::npos ? tag : tag.substr(0, space);
        if (name.empty()) return false;
        if (closing) {
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else if (!self_closing) {
            if (stack.empty() && saw_root) return false;  // second root
            stack.push_back(name);
            saw_root = true;
        }
    }
    return stack.empty() && saw_root;
}

}  // namespace oracle

#include "lmcx/graph_ops.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace lmcx {

Graph::Graph(std::vector<LandmarkId> vertices) : verts_(std::move(vertices)) {
    std::sort(verts_.begin(), verts_.end());
    verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
    adj_.resize(verts_.size());
}

int Graph::index_of(LandmarkId id) const {
    const auto it = std::lower_bound(verts_.begin(), verts_.end(), id);
    if (it == verts_.end() || *it != id) return -1;
    return static_cast<int>(it - verts_.begin());
}

void Graph::add_edge(LandmarkId u, LandmarkId v) {
    const int a = index_of(u);
    const int b = index_of(v);
    if (a < 0 || b < 0) throw std::invalid_argument("add_edge: unknown vertex id");
    if (a == b) throw std::invalid_argument("add_edge: self loops not allowed");
    auto& na = adj_[a];
    const auto pos = std::lower_bound(na.begin(), na.end(), b);
    if (pos != na.end() && *pos == b) return;  // already present
    na.insert(pos, b);
    auto& nb = adj_[b];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    ++edges_;
}

Tessellation voronoi(const Graph& g, const std::vector<std::vector<LandmarkId>>& seeds) {
    const int n = g.vertex_count();
    Tessellation t{std::vector<int>(n, kUnreached), std::vector<int>(n, kUnreached)};

    std::vector<int> frontier;
    for (int r = 0; r < static_cast<int>(seeds.size()); ++r) {
        for (const LandmarkId id : seeds[r]) {
            const int v = g.index_of(id);
            if (v < 0) continue;
            if (t.owner[v] == kUnreached) {
                t.owner[v] = r;  // lowest robot index wins shared seeds
                t.gscore[v] = 0;
                frontier.push_back(v);
            }
        }
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());

    // Layered BFS: owners settle one hop layer at a time, so a vertex's owner
    // is the minimum robot index over all of its shortest-path predecessors.
    while (!frontier.empty()) {
        std::vector<int> next;
        for (const int v : frontier)
            for (const int w : g.neighbors(v))
                if (t.gscore[w] == kUnreached) {
                    t.gscore[w] = t.gscore[v] + 1;
                    next.push_back(w);
                }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (const int w : next) {
            int best = kUnreached;
            for (const int u : g.neighbors(w))
                if (t.gscore[u] == t.gscore[w] - 1 && t.owner[u] != kUnreached)
                    if (best == kUnreached || t.owner[u] < best) best = t.owner[u];
            t.owner[w] = best;
        }
        frontier = std::move(next);
    }
    return t;
}

std::vector<LandmarkId> shortest_path(const Graph& g, const std::vector<LandmarkId>& sources,
                                      LandmarkId goal) {
    const int target = g.index_of(goal);
    if (target < 0) return {};

    const int n = g.vertex_count();
    std::vector<int> parent(n, -2);  // -2 undiscovered, -1 source

    std::vector<int> start;
    for (const LandmarkId id : sources) {
        const int v = g.index_of(id);
        if (v >= 0) start.push_back(v);
    }
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    if (start.empty()) return {};

    std::deque<int> queue;
    for (const int v : start) {
        parent[v] = -1;
        queue.push_back(v);
    }
    while (!queue.empty() && parent[target] == -2) {
        const int v = queue.front();
        queue.pop_front();
        for (const int w : g.neighbors(v))
            if (parent[w] == -2) {
                parent[w] = v;
                queue.push_back(w);
            }
    }
    if (parent[target] == -2) return {};

    std::vector<LandmarkId> path;
    for (int v = target; v != -1; v = parent[v]) path.push_back(g.id_of(v));
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::vector<LandmarkId>> connected_components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<LandmarkId>> components;
    for (int v = 0; v < n; ++v) {
        if (seen[v]) continue;
        std::vector<int> stack{v};
        std::vector<LandmarkId> comp;
        seen[v] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            comp.push_back(g.id_of(u));
            for (const int w : g.neighbors(u))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

std::vector<std::vector<long>> connected_components(const CoverageMask& mask,
                                                    const ConfigGrid& grid) {
    const int w = grid.base.width();
    const int h = grid.base.height();
    const long per_slice = grid.base.cell_count();
    std::vector<char> seen(mask.size(), 0);
    std::vector<std::vector<long>> components;

    for (long start = 0; start < mask.size(); ++start) {
        if (seen[start] || !mask.test(start)) continue;
        std::vector<long> comp;
        std::vector<long> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            const long cur = stack.back();
            stack.pop_back();
            comp.push_back(cur);
            const long slice_base = (cur / per_slice) * per_slice;
            const long in_slice = cur - slice_base;
            const int i = static_cast<int>(in_slice % w);
            const int j = static_cast<int>(in_slice / w);
            const int di[4] = {1, -1, 0, 0};
            const int dj[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                const int ni = i + di[d];
                const int nj = j + dj[d];
                if (ni < 0 || ni >= w || nj < 0 || nj >= h) continue;
                const long nidx = slice_base + static_cast<long>(nj) * w + ni;
                if (!seen[nidx] && mask.test(nidx)) {
                    seen[nidx] = 1;
                    stack.push_back(nidx);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

std::vector<int> hungarian(const CostMatrix& cost) {
    const int n = cost.rows;
    const int m = cost.cols;
    if (n == 0 || m == 0) return std::vector<int>(n, -1);
    const int dim = std::max(n, m);
    const double kBig = 1e15;  // sentinel for infinity and padding

    const auto entry = [&](int i, int j) -> double {
        if (i < n && j < m) {
            const double v = cost.at(i, j);
            if (!std::isfinite(v)) return kBig;
            return std::min(v, kBig);
        }
        return kBig;
    };

    // Potentials-based O(n^3) assignment on the padded square matrix.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(dim + 1, 0.0), v(dim + 1, 0.0);
    std::vector<int> p(dim + 1, 0), way(dim + 1, 0);
    for (int i = 1; i <= dim; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(dim + 1, inf);
        std::vector<char> used(dim + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= dim; ++j) {
                if (used[j]) continue;
                const double cur = entry(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= dim; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> assignment(n, -1);
    for (int j = 1; j <= dim; ++j) {
        const int i = p[j];
        if (i >= 1 && i <= n && j <= m && entry(i - 1, j - 1) < kBig / 2)
            assignment[i - 1] = j - 1;
    }
    return assignment;
}

}  // namespace lmcx

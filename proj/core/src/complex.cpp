#include "lmcx/complex.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace lmcx {

using nlohmann::json;

Edge make_edge(LandmarkId a, LandmarkId b) {
    if (a == b) throw std::invalid_argument("edge vertices must be distinct");
    if (a > b) std::swap(a, b);
    return Edge{a, b};
}

Triangle make_triangle(LandmarkId a, LandmarkId b, LandmarkId c) {
    Triangle t{a, b, c};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2])
        throw std::invalid_argument("triangle vertices must be distinct");
    return t;
}

InsertStats SimplicialComplex::insert_observation(std::vector<LandmarkId> landmarks) {
    std::sort(landmarks.begin(), landmarks.end());
    landmarks.erase(std::unique(landmarks.begin(), landmarks.end()), landmarks.end());

    InsertStats stats;
    if (landmarks.empty()) return stats;

    const std::size_t k = landmarks.size();
    for (const LandmarkId v : landmarks) {
        if (c0_.insert(v).second) ++stats.new_vertices;
        ++obs_count_[v];
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (c1_.insert(Edge{landmarks[a], landmarks[b]}).second) ++stats.new_edges;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c)
                if (c2_.insert(Triangle{landmarks[a], landmarks[b], landmarks[c]}).second)
                    ++stats.new_triangles;
    return stats;
}

long SimplicialComplex::observation_count(LandmarkId v) const {
    const auto it = obs_count_.find(v);
    return it == obs_count_.end() ? 0 : it->second;
}

bool SimplicialComplex::obstacle_adjacent(LandmarkId v) const {
    const auto it = obstacle_adjacent_.find(v);
    return it != obstacle_adjacent_.end() && it->second;
}

bool SimplicialComplex::closed_under_faces() const {
    for (const auto& e : c1_)
        if (!c0_.count(e[0]) || !c0_.count(e[1])) return false;
    for (const auto& t : c2_) {
        for (const LandmarkId v : t)
            if (!c0_.count(v)) return false;
        if (!c1_.count(Edge{t[0], t[1]}) || !c1_.count(Edge{t[1], t[2]}) ||
            !c1_.count(Edge{t[0], t[2]}))
            return false;
    }
    for (const LandmarkId v : c0_)
        if (observation_count(v) < 1) return false;
    return true;
}

std::string SimplicialComplex::to_json() const {
    json j;
    j["c0"] = json::array();
    for (const LandmarkId v : c0_) j["c0"].push_back(v);
    j["c1"] = json::array();
    for (const auto& e : c1_) j["c1"].push_back(json::array({e[0], e[1]}));
    j["c2"] = json::array();
    for (const auto& t : c2_) j["c2"].push_back(json::array({t[0], t[1], t[2]}));
    j["obs_count"] = json::array();
    for (const auto& [v, n] : obs_count_) j["obs_count"].push_back(json::array({v, n}));
    j["obstacle_adjacent"] = json::array();
    for (const auto& [v, f] : obstacle_adjacent_)
        j["obstacle_adjacent"].push_back(json::array({v, f ? 1 : 0}));
    return j.dump(2) + "\n";
}

SimplicialComplex SimplicialComplex::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("complex JSON parse error: ") + e.what());
    }
    SimplicialComplex k;
    try {
        for (const auto& v : j.at("c0")) k.c0_.insert(v.get<LandmarkId>());
        for (const auto& e : j.at("c1")) {
            if (e.size() != 2) throw std::runtime_error("c1 entry must have 2 vertices");
            k.c1_.insert(make_edge(e[0].get<LandmarkId>(), e[1].get<LandmarkId>()));
        }
        for (const auto& t : j.at("c2")) {
            if (t.size() != 3) throw std::runtime_error("c2 entry must have 3 vertices");
            k.c2_.insert(
                make_triangle(t[0].get<LandmarkId>(), t[1].get<LandmarkId>(), t[2].get<LandmarkId>()));
        }
        for (const auto& p : j.at("obs_count"))
            k.obs_count_[p.at(0).get<LandmarkId>()] = p.at(1).get<long>();
        for (const auto& p : j.at("obstacle_adjacent"))
            k.obstacle_adjacent_[p.at(0).get<LandmarkId>()] = p.at(1).get<int>() != 0;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("complex JSON schema error: ") + e.what());
    }
    if (!k.closed_under_faces())
        throw std::runtime_error("complex JSON violates face closure or observation counts");
    return k;
}

Graph one_skeleton(const SimplicialComplex& complex) {
    Graph g(std::vector<LandmarkId>(complex.vertices().begin(), complex.vertices().end()));
    for (const auto& e : complex.edges()) g.add_edge(e[0], e[1]);
    return g;
}

BoundaryMatrices boundary_matrices(const SimplicialComplex& complex) {
    BoundaryMatrices b;
    b.vertex_index.assign(complex.vertices().begin(), complex.vertices().end());
    b.edge_index.assign(complex.edges().begin(), complex.edges().end());
    b.tri_index.assign(complex.triangles().begin(), complex.triangles().end());

    const auto vertex_row = [&](LandmarkId v) {
        return static_cast<int>(std::lower_bound(b.vertex_index.begin(), b.vertex_index.end(), v) -
                                b.vertex_index.begin());
    };
    const auto edge_row = [&](const Edge& e) {
        return static_cast<int>(std::lower_bound(b.edge_index.begin(), b.edge_index.end(), e) -
                                b.edge_index.begin());
    };

    const int n = static_cast<int>(b.vertex_index.size());
    const int m = static_cast<int>(b.edge_index.size());
    const int p = static_cast<int>(b.tri_index.size());

    std::vector<Eigen::Triplet<int>> t1;
    t1.reserve(2 * m);
    for (int col = 0; col < m; ++col) {
        const Edge& e = b.edge_index[col];
        t1.emplace_back(vertex_row(e[0]), col, -1);  // points away from u
        t1.emplace_back(vertex_row(e[1]), col, +1);  // points toward v
    }
    b.b1.resize(n, m);
    b.b1.setFromTriplets(t1.begin(), t1.end());

    std::vector<Eigen::Triplet<int>> t2;
    t2.reserve(3 * p);
    for (int col = 0; col < p; ++col) {
        const Triangle& t = b.tri_index[col];
        // Traversal a->b->c->a against edges oriented low->high: {a,b} and
        // {b,c} are aligned, {a,c} runs against the traversal.
        t2.emplace_back(edge_row(Edge{t[0], t[1]}), col, +1);
        t2.emplace_back(edge_row(Edge{t[1], t[2]}), col, +1);
        t2.emplace_back(edge_row(Edge{t[0], t[2]}), col, -1);
    }
    b.b2.resize(m, p);
    b.b2.setFromTriplets(t2.begin(), t2.end());
    return b;
}

}  // namespace lmcx

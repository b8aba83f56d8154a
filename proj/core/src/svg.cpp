#include "lmcx/svg.hpp"

#include <cmath>
#include <cstdio>
#include <map>

namespace lmcx {

namespace {

std::string fixed(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
}

}  // namespace

void write_complex_svg(std::ostream& out, const SimplicialComplex& complex,
                       const std::vector<LandmarkSite>& sites, const OccupancyGrid& grid,
                       const std::vector<Pose>& robots) {
    const double w = grid.width_m();
    const double h = grid.height_m();
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fixed(w) << " " << fixed(h)
        << "\" width=\"640\" height=\"" << fixed(640.0 * h / w) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << fixed(w) << "\" height=\"" << fixed(h)
        << "\" fill=\"#ffffff\"/>\n";

    // Occupied cells, merged into per-row runs.
    const double res = grid.resolution();
    for (int j = 0; j < grid.height(); ++j) {
        int run_start = -1;
        for (int i = 0; i <= grid.width(); ++i) {
            const bool occ = i < grid.width() && grid.occupied(i, j);
            if (occ && run_start < 0) run_start = i;
            if (!occ && run_start >= 0) {
                out << "<rect x=\"" << fixed(run_start * res) << "\" y=\"" << fixed(j * res)
                    << "\" width=\"" << fixed((i - run_start) * res) << "\" height=\"" << fixed(res)
                    << "\" fill=\"#555555\"/>\n";
                run_start = -1;
            }
        }
    }

    std::map<LandmarkId, const LandmarkSite*> by_id;
    for (const auto& s : sites) by_id[s.id] = &s;
    const auto pos = [&](LandmarkId v) { return by_id.at(v); };

    for (const auto& t : complex.triangles()) {
        const auto* a = pos(t[0]);
        const auto* b = pos(t[1]);
        const auto* c = pos(t[2]);
        out << "<polygon points=\"" << fixed(a->x) << "," << fixed(a->y) << " " << fixed(b->x)
            << "," << fixed(b->y) << " " << fixed(c->x) << "," << fixed(c->y)
            << "\" fill=\"#58b06c\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
    }
    for (const auto& e : complex.edges()) {
        const auto* a = pos(e[0]);
        const auto* b = pos(e[1]);
        out << "<line x1=\"" << fixed(a->x) << "\" y1=\"" << fixed(a->y) << "\" x2=\""
            << fixed(b->x) << "\" y2=\"" << fixed(b->y)
            << "\" stroke=\"#2b6ca8\" stroke-width=\"0.18\"/>\n";
    }
    for (const LandmarkId v : complex.vertices()) {
        const auto* s = pos(v);
        out << "<circle cx=\"" << fixed(s->x) << "\" cy=\"" << fixed(s->y)
            << "\" r=\"0.35\" fill=\"#111111\"/>\n";
    }
    for (const auto& r : robots) {
        const double tip_x = r.x + 1.2 * std::cos(r.theta);
        const double tip_y = r.y + 1.2 * std::sin(r.theta);
        out << "<circle cx=\"" << fixed(r.x) << "\" cy=\"" << fixed(r.y)
            << "\" r=\"0.5\" fill=\"#c03030\"/>\n";
        out << "<line x1=\"" << fixed(r.x) << "\" y1=\"" << fixed(r.y) << "\" x2=\"" << fixed(tip_x)
            << "\" y2=\"" << fixed(tip_y) << "\" stroke=\"#c03030\" stroke-width=\"0.25\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace lmcx

#include "percolab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "percolab/common.hpp"
#include "percolab/generators.hpp"
#include "percolab/harmonic.hpp"

namespace percolab {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string svg_header(double minx, double miny, double w, double h) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(minx) << ' ' << fmt(miny)
        << ' ' << fmt(w) << ' ' << fmt(h) << "\">\n";
    return out.str();
}

// Distinct-ish fill per label via hue rotation.
std::string label_color(int label) {
    const double hue = std::fmod(0.618033988749895 * (label + 1), 1.0) * 360.0;
    const double s = 0.65, v = 0.92;
    const double c = v * s;
    const double x = c * (1.0 - std::fabs(std::fmod(hue / 60.0, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hue < 60) r = c, g = x;
    else if (hue < 120) r = x, g = c;
    else if (hue < 180) g = c, b = x;
    else if (hue < 240) g = x, b = c;
    else if (hue < 300) r = x, b = c;
    else r = c, b = x;
    const double m = v - c;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>((r + m) * 255),
                  static_cast<int>((g + m) * 255), static_cast<int>((b + m) * 255));
    return buf;
}

}  // namespace

std::string render_packing_svg(const CirclePacking& packing, const std::vector<int>* fill_labels) {
    double minx = 0, maxx = 0, miny = 0, maxy = 0;
    for (size_t v = 0; v < packing.radius.size(); ++v) {
        minx = std::min(minx, packing.cx[v] - packing.radius[v]);
        maxx = std::max(maxx, packing.cx[v] + packing.radius[v]);
        miny = std::min(miny, packing.cy[v] - packing.radius[v]);
        maxy = std::max(maxy, packing.cy[v] + packing.radius[v]);
    }
    const double pad = 0.02 * std::max(maxx - minx, maxy - miny);
    std::ostringstream out;
    out << svg_header(minx - pad, miny - pad, maxx - minx + 2 * pad, maxy - miny + 2 * pad);
    const double stroke = 0.004 * std::max(maxx - minx, maxy - miny);
    for (size_t v = 0; v < packing.radius.size(); ++v) {
        std::string fill = "none";
        if (fill_labels) {
            const int lab = (*fill_labels)[v];
            fill = lab < 0 ? "white" : label_color(lab);
        }
        out << "<circle cx=\"" << fmt(packing.cx[v]) << "\" cy=\"" << fmt(packing.cy[v])
            << "\" r=\"" << fmt(packing.radius[v]) << "\" fill=\"" << fill
            << "\" stroke=\"black\" stroke-width=\"" << fmt(stroke) << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_tiling_svg(const SquareTiling& tiling, const TileColoring* coloring) {
    std::ostringstream out;
    const double pad = 0.02 * std::max(tiling.width, tiling.height);
    out << svg_header(-pad, -pad, tiling.width + 2 * pad, tiling.height + 2 * pad);
    out << "<g>\n";
    const double stroke = 0.0015 * std::max(tiling.width, tiling.height);
    for (size_t i = 0; i < tiling.tiles.size(); ++i) {
        const Tile& t = tiling.tiles[i];
        std::string fill = "none";
        if (coloring) fill = coloring->black[i] ? "black" : "white";
        out << "<rect x=\"" << fmt(t.x) << "\" y=\"" << fmt(t.y) << "\" width=\"" << fmt(t.side)
            << "\" height=\"" << fmt(t.side) << "\" fill=\"" << fill
            << "\" stroke=\"black\" stroke-width=\"" << fmt(stroke) << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string render_voronoi_svg(const VoronoiTessellation& tess) {
    std::ostringstream out;
    out << svg_header(-1.05, -1.05, 2.1, 2.1);
    out << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"gray\" "
           "stroke-width=\"0.004\"/>\n";
    const size_t n = tess.x.size();
    for (size_t v = 0; v < n; ++v) {
        for (int k = tess.adj_offset[v]; k < tess.adj_offset[v + 1]; ++k) {
            const int u = tess.adj_neighbor[static_cast<size_t>(k)];
            if (u < static_cast<int>(v)) continue;
            out << "<line x1=\"" << fmt(tess.x[v]) << "\" y1=\"" << fmt(tess.y[v]) << "\" x2=\""
                << fmt(tess.x[static_cast<size_t>(u)]) << "\" y2=\"" << fmt(tess.y[static_cast<size_t>(u)])
                << "\" stroke=\"#bbbbbb\" stroke-width=\"0.0015\"/>\n";
        }
    }
    for (size_t v = 0; v < n; ++v) {
        const bool black = !tess.black.empty() && tess.black[v];
        out << "<circle cx=\"" << fmt(tess.x[v]) << "\" cy=\"" << fmt(tess.y[v])
            << "\" r=\"0.006\" fill=\"" << (black ? "black" : "white")
            << "\" stroke=\"black\" stroke-width=\"0.001\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

CylinderTiling tile_cylinder_from_root(const Triangulation& t, int root, double tol) {
    if (root < 0 || root >= t.V) throw ConfigError("tile_cylinder_from_root: root out of range");
    if (t.on_boundary[static_cast<size_t>(root)])
        throw ConfigError("tile_cylinder_from_root: root must be interior");

    DirichletProblem dp;
    dp.adjacency = &t.rot;
    dp.tol = tol;
    dp.fixed_vertices.push_back(root);
    dp.fixed_values.push_back(0.0);
    for (int v : t.boundary) {
        dp.fixed_vertices.push_back(v);
        dp.fixed_values.push_back(1.0);
    }
    const HarmonicSolution sol = solve_dirichlet(dp);

    double total_current = 0.0;
    for (int w : t.rot[static_cast<size_t>(root)]) total_current += sol.potential[static_cast<size_t>(w)];
    if (total_current <= 0) throw NumericalError("tile_cylinder_from_root: zero current");

    // Dual potential on interior faces + one outer node, consistent only
    // modulo the winding around the root; spanning-tree assignment.
    const int nfaces = static_cast<int>(t.faces.size());
    const int outer_node = nfaces;
    std::vector<double> psi(static_cast<size_t>(nfaces) + 1, 0.0);
    std::vector<uint8_t> have(static_cast<size_t>(nfaces) + 1, 0);
    have[static_cast<size_t>(outer_node)] = 1;
    std::vector<int> queue = {outer_node};
    std::vector<std::vector<std::pair<int, double>>> cadj(static_cast<size_t>(nfaces) + 1);
    for (int u = 0; u < t.V; ++u) {
        for (size_t i = 0; i < t.rot[static_cast<size_t>(u)].size(); ++i) {
            const int v = t.rot[static_cast<size_t>(u)][i];
            int ln = t.face_of_slot[static_cast<size_t>(t.slot(u, static_cast<int>(i)))];
            const int back = find_rot_index(t.rot, v, u);
            int rn = t.face_of_slot[static_cast<size_t>(t.slot(v, back))];
            if (ln < 0) ln = outer_node;
            if (rn < 0) rn = outer_node;
            const double jump = sol.potential[static_cast<size_t>(v)] - sol.potential[static_cast<size_t>(u)];
            cadj[static_cast<size_t>(rn)].push_back({ln, jump});
            cadj[static_cast<size_t>(ln)].push_back({rn, -jump});
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        const int n = queue[head];
        for (const auto& [m, jump] : cadj[static_cast<size_t>(n)]) {
            if (have[static_cast<size_t>(m)]) continue;
            have[static_cast<size_t>(m)] = 1;
            psi[static_cast<size_t>(m)] = psi[static_cast<size_t>(n)] + jump;
            queue.push_back(m);
        }
    }
    for (int n = 0; n <= nfaces; ++n)
        if (!have[static_cast<size_t>(n)])
            throw NumericalError("tile_cylinder_from_root: dual graph disconnected");

    CylinderTiling ct;
    ct.width = 1.0;
    ct.circumference = total_current;
    auto wrap = [&](double y) {
        y = std::fmod(y, total_current);
        if (y < 0) y += total_current;
        return y;
    };
    for (int u = 0; u < t.V; ++u) {
        for (size_t i = 0; i < t.rot[static_cast<size_t>(u)].size(); ++i) {
            const int v = t.rot[static_cast<size_t>(u)][i];
            if (sol.potential[static_cast<size_t>(u)] > sol.potential[static_cast<size_t>(v)] ||
                (sol.potential[static_cast<size_t>(u)] == sol.potential[static_cast<size_t>(v)] && u > v))
                continue;
            const double j = sol.potential[static_cast<size_t>(v)] - sol.potential[static_cast<size_t>(u)];
            if (j < 1e-12) continue;
            const int back = find_rot_index(t.rot, v, u);
            int rn = t.face_of_slot[static_cast<size_t>(t.slot(v, back))];
            if (rn < 0) rn = outer_node;
            Tile tile;
            tile.x = sol.potential[static_cast<size_t>(u)];
            tile.y = wrap(psi[static_cast<size_t>(rn)]);
            tile.side = j;
            tile.edge_u = u;
            tile.edge_v = v;
            ct.tiles.push_back(tile);
        }
    }
    return ct;
}

std::string render_cylinder_tiling_svg(const CylinderTiling& tiling) {
    std::ostringstream out;
    const double pad = 0.02 * std::max(tiling.width, tiling.circumference);
    out << svg_header(-pad, -pad, tiling.width + 2 * pad, tiling.circumference + 2 * pad);
    out << "<g>\n";
    const double stroke = 0.0015 * std::max(tiling.width, tiling.circumference);
    for (const Tile& t : tiling.tiles) {
        // Wrap tiles crossing the seam into two rects.
        const double over = t.y + t.side - tiling.circumference;
        auto rect = [&](double y, double h) {
            out << "<rect x=\"" << fmt(t.x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(t.side)
                << "\" height=\"" << fmt(h) << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
                << fmt(stroke) << "\"/>\n";
        };
        if (over > 1e-12) {
            rect(t.y, t.side - over);
            rect(0.0, over);
        } else {
            rect(t.y, t.side);
        }
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string cylinder_tiling_to_json(const CylinderTiling& tiling) {
    nlohmann::json j;
    j["cylinder"] = true;
    j["width"] = tiling.width;
    j["height"] = tiling.circumference;
    auto& arr = j["tiles"] = nlohmann::json::array();
    for (const auto& t : tiling.tiles)
        arr.push_back({{"x", t.x}, {"y", t.y}, {"side", t.side}, {"u", t.edge_u}, {"v", t.edge_v}});
    return j.dump(2) + "\n";
}

std::pair<std::string, std::string> render_figure1(int d, int r) {
    if (d < 7) throw ConfigError("render_figure1: d >= 7 required");
    const Triangulation t = regular_hyperbolic_triangulation(d, r);
    const std::vector<double> boundary_radii(t.boundary.size(), 1.0);
    const CirclePacking packing = pack(t, boundary_radii, 1e-10);
    const CylinderTiling tiling = tile_cylinder_from_root(t, 0);
    return {render_packing_svg(packing), render_cylinder_tiling_svg(tiling)};
}

}  // namespace percolab

#include "percolab/square_tiling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "percolab/common.hpp"
#include "percolab/harmonic.hpp"
#include "percolab/rng.hpp"

namespace percolab {

namespace {

struct OuterWalk {
    std::vector<int> slot_u;      // source vertex per walk position
    std::vector<int> slot_index;  // index in rot[u]
};

// Re-trace the outer orbit starting from a directed edge whose left face is
// the outer face.
OuterWalk trace_outer(const std::vector<std::vector<int>>& rot, const FaceStructure& fs,
                      int outer_face) {
    int u0 = -1, i0 = -1;
    for (int v = 0; v < static_cast<int>(rot.size()) && u0 < 0; ++v)
        for (size_t i = 0; i < rot[static_cast<size_t>(v)].size(); ++i)
            if (fs.face_of_slot[static_cast<size_t>(fs.slot(v, static_cast<int>(i)))] == outer_face) {
                u0 = v;
                i0 = static_cast<int>(i);
                break;
            }
    if (u0 < 0) throw ValidationError("tiling: outer face not found");
    OuterWalk walk;
    int u = u0, i = i0;
    do {
        walk.slot_u.push_back(u);
        walk.slot_index.push_back(i);
        const int v = rot[static_cast<size_t>(u)][static_cast<size_t>(i)];
        const int back = find_rot_index(rot, v, u);
        const int d = static_cast<int>(rot[static_cast<size_t>(v)].size());
        u = v;
        i = (back - 1 + d) % d;
    } while (!(u == u0 && i == i0));
    return walk;
}

// Cyclic run [start, start+len) of positions whose walk vertex lies in `set`.
std::pair<int, int> cyclic_run(const std::vector<int>& walk_vertices,
                               const std::vector<uint8_t>& in_set, const char* what) {
    const int L = static_cast<int>(walk_vertices.size());
    int count = 0;
    for (int i = 0; i < L; ++i) count += in_set[static_cast<size_t>(walk_vertices[static_cast<size_t>(i)])] ? 1 : 0;
    if (count == 0) throw ValidationError(std::string("tiling: ") + what + " not on outer face");
    int start = -1;
    for (int i = 0; i < L; ++i) {
        const bool cur = in_set[static_cast<size_t>(walk_vertices[static_cast<size_t>(i)])];
        const bool prev = in_set[static_cast<size_t>(walk_vertices[static_cast<size_t>((i - 1 + L) % L)])];
        if (cur && !prev) {
            if (start >= 0)
                throw ValidationError(std::string("tiling: ") + what +
                                      " vertices not contiguous on the outer walk");
            start = i;
        }
    }
    if (start < 0) throw ValidationError(std::string("tiling: ") + what + " covers the whole outer walk");
    return {start, count};
}

}  // namespace

SquareTiling tile_from_two_terminal(const PlanarNetwork& net, double tol) {
    const auto& rot = net.rot;
    const int V = net.vertex_count();
    if (net.source.empty() || net.sink.empty())
        throw ConfigError("tiling: source and sink must be nonempty");
    std::vector<uint8_t> in_s(static_cast<size_t>(V), 0), in_t(static_cast<size_t>(V), 0);
    for (int v : net.source) in_s[static_cast<size_t>(v)] = 1;
    for (int v : net.sink) {
        if (in_s[static_cast<size_t>(v)]) throw ConfigError("tiling: source = sink vertex " + std::to_string(v));
        in_t[static_cast<size_t>(v)] = 1;
    }

    DirichletProblem dp;
    dp.adjacency = &rot;
    dp.tol = tol;
    for (int v : net.source) {
        dp.fixed_vertices.push_back(v);
        dp.fixed_values.push_back(0.0);
    }
    for (int v : net.sink) {
        dp.fixed_vertices.push_back(v);
        dp.fixed_values.push_back(1.0);
    }
    const HarmonicSolution sol = solve_dirichlet(dp);

    double total_current = 0.0;
    for (int s : net.source)
        for (int w : rot[static_cast<size_t>(s)]) total_current += sol.potential[static_cast<size_t>(w)];
    if (total_current <= 1e-12) throw NumericalError("tiling: zero total current");

    // Dual potential on faces, with the outer face split into the two banks
    // between the source stretch and the sink stretch of the outer walk.
    FaceStructure fs = trace_faces(rot);
    int outer_face = -1;
    for (size_t f = 0; f < fs.face_vertices.size(); ++f)
        if (cyclic_equal(fs.face_vertices[f], net.outer)) {
            outer_face = static_cast<int>(f);
            break;
        }
    if (outer_face < 0) throw ValidationError("tiling: stored outer walk is not a face orbit");

    const OuterWalk walk = trace_outer(rot, fs, outer_face);
    const int L = static_cast<int>(walk.slot_u.size());
    const auto [s_start, s_len] = cyclic_run(walk.slot_u, in_s, "source");
    const auto [t_start, t_len] = cyclic_run(walk.slot_u, in_t, "sink");

    // Walk positions i carry edge (w_i -> w_{i+1}); bank A covers the stretch
    // after the source run up to the sink run, bank B the rest.
    const int nfaces = static_cast<int>(fs.face_vertices.size());
    const int bank_a = nfaces;      // replaces outer on one side
    const int bank_b = nfaces + 1;  // and on the other
    auto in_cyclic = [L](int i, int from, int len) {
        const int rel = ((i - from) % L + L) % L;
        return rel < len;
    };
    std::vector<int> bank_of_pos(static_cast<size_t>(L), -1);
    for (int i = 0; i < L; ++i) {
        if (in_cyclic(i, s_start, s_len - 1) || in_cyclic(i, t_start, t_len - 1)) {
            // Edge within a pole stretch: zero current, either bank works.
            bank_of_pos[static_cast<size_t>(i)] = bank_b;
        } else if (in_cyclic(i, (s_start + s_len - 1) % L,
                             ((t_start - (s_start + s_len - 1)) % L + L) % L)) {
            bank_of_pos[static_cast<size_t>(i)] = bank_a;
        } else {
            bank_of_pos[static_cast<size_t>(i)] = bank_b;
        }
    }

    // node id per directed-edge slot: left face, outer replaced by its bank.
    std::vector<int> left_node(fs.face_of_slot.size());
    for (size_t s = 0; s < fs.face_of_slot.size(); ++s) left_node[s] = fs.face_of_slot[s];
    for (int i = 0; i < L; ++i) {
        const long long s = fs.slot(walk.slot_u[static_cast<size_t>(i)], walk.slot_index[static_cast<size_t>(i)]);
        left_node[static_cast<size_t>(s)] = bank_of_pos[static_cast<size_t>(i)];
    }

    // psi via BFS over the constraint graph: psi(left(u->v)) - psi(right(u->v))
    // = phi(v) - phi(u) for every directed edge.
    const int nnodes = nfaces + 2;
    std::vector<double> psi(static_cast<size_t>(nnodes), 0.0);
    std::vector<uint8_t> have(static_cast<size_t>(nnodes), 0);
    psi[static_cast<size_t>(bank_a)] = 0.0;
    have[static_cast<size_t>(bank_a)] = 1;
    {
        std::vector<int> queue = {bank_a};
        // Adjacency of the constraint graph: iterate all slots grouped by node.
        std::vector<std::vector<std::pair<int, double>>> cadj(static_cast<size_t>(nnodes));
        for (int u = 0; u < V; ++u) {
            for (size_t i = 0; i < rot[static_cast<size_t>(u)].size(); ++i) {
                const int v = rot[static_cast<size_t>(u)][i];
                const int ln = left_node[static_cast<size_t>(fs.slot(u, static_cast<int>(i)))];
                const int back = find_rot_index(rot, v, u);
                const int rn = left_node[static_cast<size_t>(fs.slot(v, back))];
                const double jump = sol.potential[static_cast<size_t>(v)] - sol.potential[static_cast<size_t>(u)];
                cadj[static_cast<size_t>(rn)].push_back({ln, jump});   // psi(ln) = psi(rn) + jump
                cadj[static_cast<size_t>(ln)].push_back({rn, -jump});
            }
        }
        for (size_t head = 0; head < queue.size(); ++head) {
            const int n = queue[head];
            for (const auto& [m, jump] : cadj[static_cast<size_t>(n)]) {
                if (!have[static_cast<size_t>(m)]) {
                    have[static_cast<size_t>(m)] = 1;
                    psi[static_cast<size_t>(m)] = psi[static_cast<size_t>(n)] + jump;
                    queue.push_back(m);
                } else if (std::fabs(psi[static_cast<size_t>(m)] - psi[static_cast<size_t>(n)] - jump) >
                           1e6 * tol * std::max(1.0, total_current)) {
                    throw NumericalError("tiling: dual potential inconsistent (non-planar data?)");
                }
            }
        }
        for (int n = 0; n < nnodes; ++n)
            if (n != outer_face && !have[static_cast<size_t>(n)])
                throw ValidationError("tiling: dual graph disconnected");
    }

    SquareTiling tiling;
    tiling.width = 1.0;
    tiling.height = total_current;

    double psi_min = std::min(psi[static_cast<size_t>(bank_a)], psi[static_cast<size_t>(bank_b)]);
    for (int f = 0; f < nfaces; ++f)
        if (f != outer_face) psi_min = std::min(psi_min, psi[static_cast<size_t>(f)]);

    for (int u = 0; u < V; ++u) {
        for (size_t i = 0; i < rot[static_cast<size_t>(u)].size(); ++i) {
            const int v = rot[static_cast<size_t>(u)][i];
            if (sol.potential[static_cast<size_t>(u)] > sol.potential[static_cast<size_t>(v)] ||
                (sol.potential[static_cast<size_t>(u)] == sol.potential[static_cast<size_t>(v)] && u > v))
                continue;  // orient each edge once, along increasing potential
            const double j = sol.potential[static_cast<size_t>(v)] - sol.potential[static_cast<size_t>(u)];
            if (j < 1e-12) {
                ++tiling.dropped_zero_current;
                continue;
            }
            const int back = find_rot_index(rot, v, u);
            const int rn = left_node[static_cast<size_t>(fs.slot(v, back))];
            Tile tile;
            tile.x = sol.potential[static_cast<size_t>(u)];
            tile.y = psi[static_cast<size_t>(rn)] - psi_min;
            tile.side = j;
            tile.edge_u = u;
            tile.edge_v = v;
            tiling.tiles.push_back(tile);
        }
    }

    double area = 0.0;
    for (const auto& t : tiling.tiles) area += t.side * t.side;
    tiling.area_residual = std::fabs(area - tiling.width * tiling.height) /
                           (tiling.width * tiling.height);

    recompute_contacts(&tiling);
    return tiling;
}

void recompute_contacts(SquareTiling* tiling) {
    auto& tl = *tiling;
    tl.contacts.clear();
    const int n = static_cast<int>(tl.tiles.size());
    for (int a = 0; a < n; ++a) {
        const auto& ta = tl.tiles[static_cast<size_t>(a)];
        for (int b = a + 1; b < n; ++b) {
            const auto& tb = tl.tiles[static_cast<size_t>(b)];
            const double ox = std::min(ta.x + ta.side, tb.x + tb.side) - std::max(ta.x, tb.x);
            const double oy = std::min(ta.y + ta.side, tb.y + tb.side) - std::max(ta.y, tb.y);
            const bool vertical_touch = std::fabs(ta.x + ta.side - tb.x) <= kContactTol ||
                                        std::fabs(tb.x + tb.side - ta.x) <= kContactTol;
            const bool horizontal_touch = std::fabs(ta.y + ta.side - tb.y) <= kContactTol ||
                                          std::fabs(tb.y + tb.side - ta.y) <= kContactTol;
            if ((vertical_touch && oy > kContactTol) || (horizontal_touch && ox > kContactTol))
                tl.contacts.push_back({a, b});
        }
    }

    // Corner incidence: cluster all tile corners, then count tiles whose
    // boundary passes through each corner point.
    std::vector<std::pair<double, double>> corners;
    for (const auto& t : tl.tiles) {
        corners.push_back({t.x, t.y});
        corners.push_back({t.x + t.side, t.y});
        corners.push_back({t.x, t.y + t.side});
        corners.push_back({t.x + t.side, t.y + t.side});
    }
    std::sort(corners.begin(), corners.end());
    corners.erase(std::unique(corners.begin(), corners.end(),
                              [](const auto& p, const auto& q) {
                                  return std::fabs(p.first - q.first) <= kContactTol &&
                                         std::fabs(p.second - q.second) <= kContactTol;
                              }),
                  corners.end());
    int max_inc = 0;
    for (const auto& [px, py] : corners) {
        int inc = 0;
        for (const auto& t : tl.tiles) {
            const double x1 = t.x + t.side, y1 = t.y + t.side;
            const bool inside_x = px >= t.x - kContactTol && px <= x1 + kContactTol;
            const bool inside_y = py >= t.y - kContactTol && py <= y1 + kContactTol;
            if (!inside_x || !inside_y) continue;
            const bool on_vert = std::fabs(px - t.x) <= kContactTol || std::fabs(px - x1) <= kContactTol;
            const bool on_horiz = std::fabs(py - t.y) <= kContactTol || std::fabs(py - y1) <= kContactTol;
            if (on_vert || on_horiz) ++inc;
        }
        max_inc = std::max(max_inc, inc);
    }
    tl.max_corner_incidence = max_inc;
}

Conjecture2Report validate_conjecture2_conditions(const SquareTiling& tiling) {
    Conjecture2Report rep;
    SquareTiling copy = tiling;
    recompute_contacts(&copy);
    rep.max_corner_incidence = copy.max_corner_incidence;
    rep.pass = copy.max_corner_incidence <= 3;

    double area = 0.0;
    rep.inside_rectangle = true;
    for (const auto& t : tiling.tiles) {
        area += t.side * t.side;
        if (t.x < -kContactTol || t.y < -kContactTol ||
            t.x + t.side > tiling.width + kContactTol || t.y + t.side > tiling.height + kContactTol)
            rep.inside_rectangle = false;
    }
    rep.area_residual = std::fabs(area - tiling.width * tiling.height) /
                        (tiling.width * tiling.height);

    const int n = static_cast<int>(tiling.tiles.size());
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const auto& ta = tiling.tiles[static_cast<size_t>(a)];
            const auto& tb = tiling.tiles[static_cast<size_t>(b)];
            const double ox = std::min(ta.x + ta.side, tb.x + tb.side) - std::max(ta.x, tb.x);
            const double oy = std::min(ta.y + ta.side, tb.y + tb.side) - std::max(ta.y, tb.y);
            if (ox > kContactTol && oy > kContactTol) ++rep.overlap_pairs;
        }
    }
    return rep;
}

TileColoring sample_coloring(const SquareTiling& tiling, double p, uint64_t seed, uint64_t trial) {
    if (p < 0.0 || p > 1.0) throw ConfigError("sample_coloring: p outside [0,1]");
    TileColoring c;
    c.p = p;
    c.seed = seed;
    c.trial = trial;
    const CounterRng rng(seed, static_cast<uint64_t>(StreamTag::kTileColors));
    c.black.resize(tiling.tiles.size());
    for (size_t i = 0; i < tiling.tiles.size(); ++i)
        c.black[i] = rng.uniform(trial, i) < p ? 1 : 0;
    return c;
}

bool left_right_crossing(const SquareTiling& tiling, const TileColoring& coloring) {
    const int n = static_cast<int>(tiling.tiles.size());
    if (static_cast<int>(coloring.black.size()) != n)
        throw ConfigError("left_right_crossing: coloring size mismatch");
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (const auto& [a, b] : tiling.contacts) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    std::vector<uint8_t> seen(static_cast<size_t>(n), 0);
    std::vector<int> queue;
    for (int i = 0; i < n; ++i) {
        if (coloring.black[static_cast<size_t>(i)] && tiling.tiles[static_cast<size_t>(i)].x <= kContactTol) {
            seen[static_cast<size_t>(i)] = 1;
            queue.push_back(i);
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        const int i = queue[head];
        const auto& t = tiling.tiles[static_cast<size_t>(i)];
        if (t.x + t.side >= tiling.width - kContactTol) return true;
        for (int j : adj[static_cast<size_t>(i)]) {
            if (!seen[static_cast<size_t>(j)] && coloring.black[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = 1;
                queue.push_back(j);
            }
        }
    }
    return false;
}

EstimateWithCI crossing_probability_tiling(const SquareTiling& tiling, double p,
                                           uint64_t trials, uint64_t seed) {
    if (trials < 1) throw ConfigError("crossing_probability_tiling: trials >= 1");
    uint64_t successes = 0;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        const TileColoring c = sample_coloring(tiling, p, seed, trial);
        if (left_right_crossing(tiling, c)) ++successes;
    }
    return make_estimate(successes, trials);
}

double exact_crossing_probability(const SquareTiling& tiling, double p) {
    const size_t n = tiling.tiles.size();
    if (n > 24) throw ConfigError("exact_crossing_probability: too many tiles to enumerate");
    TileColoring c;
    c.p = p;
    c.black.assign(n, 0);
    double prob = 0.0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        double w = 1.0;
        for (size_t i = 0; i < n; ++i) {
            c.black[i] = (mask >> i) & 1;
            w *= c.black[i] ? p : (1.0 - p);
        }
        if (w > 0.0 && left_right_crossing(tiling, c)) prob += w;
    }
    return prob;
}

std::string tiling_to_json(const SquareTiling& tiling) {
    nlohmann::json j;
    j["width"] = tiling.width;
    j["height"] = tiling.height;
    j["dropped_zero_current"] = tiling.dropped_zero_current;
    auto& arr = j["tiles"] = nlohmann::json::array();
    for (const auto& t : tiling.tiles)
        arr.push_back({{"x", t.x}, {"y", t.y}, {"side", t.side}, {"u", t.edge_u}, {"v", t.edge_v}});
    return j.dump(2) + "\n";
}

SquareTiling tiling_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SquareTiling tiling;
    tiling.width = j.at("width").get<double>();
    tiling.height = j.at("height").get<double>();
    if (j.contains("dropped_zero_current"))
        tiling.dropped_zero_current = j["dropped_zero_current"].get<int>();
    for (const auto& jt : j.at("tiles")) {
        Tile t;
        t.x = jt.at("x").get<double>();
        t.y = jt.at("y").get<double>();
        t.side = jt.at("side").get<double>();
        t.edge_u = jt.value("u", -1);
        t.edge_v = jt.value("v", -1);
        tiling.tiles.push_back(t);
    }
    double area = 0.0;
    for (const auto& t : tiling.tiles) area += t.side * t.side;
    if (tiling.width * tiling.height > 0)
        tiling.area_residual = std::fabs(area - tiling.width * tiling.height) /
                               (tiling.width * tiling.height);
    recompute_contacts(&tiling);
    return tiling;
}

}  // namespace percolab

#include "percolab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "percolab/common.hpp"

namespace percolab {

int find_rot_index(const std::vector<std::vector<int>>& rot, int u, int v) {
    const auto& nb = rot[static_cast<size_t>(u)];
    for (size_t i = 0; i < nb.size(); ++i)
        if (nb[i] == v) return static_cast<int>(i);
    return -1;
}

bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size() || a.empty()) return a.size() == b.size();
    const size_t n = a.size();
    for (size_t shift = 0; shift < n; ++shift) {
        if (b[shift] != a[0]) continue;
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = a[i] == b[(shift + i) % n];
        if (ok) return true;
    }
    return false;
}

FaceStructure trace_faces(const std::vector<std::vector<int>>& rot) {
    const int V = static_cast<int>(rot.size());
    FaceStructure fs;
    fs.rot_offset.assign(static_cast<size_t>(V) + 1, 0);
    for (int v = 0; v < V; ++v)
        fs.rot_offset[static_cast<size_t>(v) + 1] =
            fs.rot_offset[static_cast<size_t>(v)] + static_cast<long long>(rot[static_cast<size_t>(v)].size());
    fs.face_of_slot.assign(static_cast<size_t>(fs.rot_offset[static_cast<size_t>(V)]), -1);

    for (int v0 = 0; v0 < V; ++v0) {
        for (size_t i0 = 0; i0 < rot[static_cast<size_t>(v0)].size(); ++i0) {
            if (fs.face_of_slot[static_cast<size_t>(fs.rot_offset[static_cast<size_t>(v0)]) + i0] >= 0) continue;
            const int face_id = static_cast<int>(fs.face_vertices.size());
            std::vector<int> walk;
            int u = v0;
            int i = static_cast<int>(i0);
            // Follow next(u->v) = (v, predecessor of u at v) until the orbit closes.
            while (true) {
                const long long s = fs.rot_offset[static_cast<size_t>(u)] + i;
                if (fs.face_of_slot[static_cast<size_t>(s)] >= 0) break;
                fs.face_of_slot[static_cast<size_t>(s)] = face_id;
                walk.push_back(u);
                const int v = rot[static_cast<size_t>(u)][static_cast<size_t>(i)];
                const int back = find_rot_index(rot, v, u);
                if (back < 0) throw ValidationError("rotation system not symmetric");
                const int d = static_cast<int>(rot[static_cast<size_t>(v)].size());
                const int j = (back - 1 + d) % d;
                u = v;
                i = j;
            }
            fs.face_vertices.push_back(std::move(walk));
        }
    }
    return fs;
}

namespace {

void check_basic_graph(const std::vector<std::vector<int>>& rot) {
    const int V = static_cast<int>(rot.size());
    if (V <= 2) throw ValidationError("degenerate input: V <= 2");
    for (int v = 0; v < V; ++v) {
        std::unordered_set<int> seen;
        for (int u : rot[static_cast<size_t>(v)]) {
            if (u < 0 || u >= V) throw ValidationError("neighbor id out of range");
            if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(v));
            if (!seen.insert(u).second)
                throw ValidationError("multi-edge at vertex " + std::to_string(v));
            if (find_rot_index(rot, u, v) < 0)
                throw ValidationError("adjacency not symmetric: " + std::to_string(v) + "->" +
                                      std::to_string(u));
        }
        if (rot[static_cast<size_t>(v)].empty()) throw ValidationError("isolated vertex " + std::to_string(v));
    }
}

std::vector<int> reversed(std::vector<int> c) {
    std::reverse(c.begin(), c.end());
    return c;
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

Triangulation build_from_rotation(std::vector<std::vector<int>> rotation,
                                  std::vector<int> boundary_cycle) {
    check_basic_graph(rotation);
    const int V = static_cast<int>(rotation.size());

    if (boundary_cycle.size() < 3) throw ValidationError("boundary cycle too short");
    {
        std::unordered_set<int> seen;
        for (int v : boundary_cycle) {
            if (v < 0 || v >= V) throw ValidationError("boundary vertex out of range");
            if (!seen.insert(v).second) throw ValidationError("boundary cycle not simple");
        }
        for (size_t i = 0; i < boundary_cycle.size(); ++i) {
            const int a = boundary_cycle[i];
            const int b = boundary_cycle[(i + 1) % boundary_cycle.size()];
            if (find_rot_index(rotation, a, b) < 0)
                throw ValidationError("boundary cycle uses a non-edge");
        }
    }

    // Outer face is traced clockwise for CCW rotations; accept either input
    // orientation and normalize.
    const std::vector<int> rev_boundary = reversed(boundary_cycle);
    FaceStructure fs = trace_faces(rotation);
    int outer = -1;
    for (size_t f = 0; f < fs.face_vertices.size(); ++f) {
        if (cyclic_equal(fs.face_vertices[f], rev_boundary)) {
            outer = static_cast<int>(f);
            break;
        }
    }
    if (outer < 0) {
        bool forward_found = false;
        for (const auto& fv : fs.face_vertices)
            if (cyclic_equal(fv, boundary_cycle)) forward_found = true;
        if (!forward_found)
            throw ValidationError("boundary is not the outer face walk of the rotation system");
        for (auto& nb : rotation) std::reverse(nb.begin(), nb.end());
        fs = trace_faces(rotation);
        for (size_t f = 0; f < fs.face_vertices.size(); ++f) {
            if (cyclic_equal(fs.face_vertices[f], rev_boundary)) {
                outer = static_cast<int>(f);
                break;
            }
        }
        if (outer < 0) throw ValidationError("boundary is not the outer face walk");
    }

    Triangulation t;
    t.V = V;
    t.rot = std::move(rotation);
    t.boundary = std::move(boundary_cycle);
    long long deg_sum = 0;
    t.degree_bound = 0;
    for (int v = 0; v < V; ++v) {
        deg_sum += t.degree(v);
        t.degree_bound = std::max(t.degree_bound, t.degree(v));
    }
    if (deg_sum % 2 != 0) throw ValidationError("degree sum odd");
    t.E = deg_sum / 2;

    // All non-outer faces must be triangles; renumber them densely.
    std::vector<int> face_remap(fs.face_vertices.size(), -1);
    for (size_t f = 0; f < fs.face_vertices.size(); ++f) {
        if (static_cast<int>(f) == outer) continue;
        if (fs.face_vertices[f].size() != 3)
            throw ValidationError("non-triangular interior face (size " +
                                  std::to_string(fs.face_vertices[f].size()) + ")");
        face_remap[f] = static_cast<int>(t.faces.size());
        t.faces.push_back({fs.face_vertices[f][0], fs.face_vertices[f][1], fs.face_vertices[f][2]});
    }

    const long long F = static_cast<long long>(fs.face_vertices.size());
    if (V - t.E + F != 2)
        throw ValidationError("Euler relation violated: V-E+F = " + std::to_string(V - t.E + F));

    t.rot_offset = fs.rot_offset;
    t.face_of_slot.assign(fs.face_of_slot.size(), -1);
    for (size_t s = 0; s < fs.face_of_slot.size(); ++s) {
        const int f = fs.face_of_slot[s];
        t.face_of_slot[s] = (f == outer) ? -1 : face_remap[static_cast<size_t>(f)];
    }

    t.on_boundary.assign(static_cast<size_t>(V), 0);
    for (int v : t.boundary) t.on_boundary[static_cast<size_t>(v)] = 1;

    // Disk condition per vertex: the interior faces around v form one fan
    // (full cycle for interior vertices, one gap for boundary vertices).
    for (int v = 0; v < V; ++v) {
        const int d = t.degree(v);
        int gaps = 0;
        for (int i = 0; i < d; ++i)
            if (t.face_of_slot[static_cast<size_t>(t.slot(v, i))] < 0) ++gaps;
        const int expect = t.on_boundary[static_cast<size_t>(v)] ? 1 : 0;
        if (gaps != expect)
            throw ValidationError("vertex " + std::to_string(v) +
                                  " link is not a single fan (gap count " + std::to_string(gaps) +
                                  ")");
    }
    return t;
}

std::vector<int> bfs_distances(const Triangulation& t, int source) {
    if (source < 0 || source >= t.V) throw ConfigError("bfs source out of range");
    std::vector<int> dist(static_cast<size_t>(t.V), -1);
    std::vector<int> queue;
    queue.reserve(static_cast<size_t>(t.V));
    dist[static_cast<size_t>(source)] = 0;
    queue.push_back(source);
    for (size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int w : t.rot[static_cast<size_t>(u)]) {
            if (dist[static_cast<size_t>(w)] < 0) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

ExtractResult extract_masked_subcomplex(const Triangulation& t, const std::vector<uint8_t>& mask,
                                        int center) {
    if (static_cast<int>(mask.size()) != t.V) throw ConfigError("extract: mask size mismatch");
    if (center < 0 || center >= t.V || !mask[static_cast<size_t>(center)])
        throw ConfigError("extract: center must be masked");

    // Kept faces: all three corners inside the mask.
    std::vector<int> face_keep_id(t.faces.size(), -1);
    std::vector<std::array<int, 3>> kept;
    std::vector<int> kept_orig_face;
    for (size_t f = 0; f < t.faces.size(); ++f) {
        const auto& fc = t.faces[f];
        if (mask[static_cast<size_t>(fc[0])] && mask[static_cast<size_t>(fc[1])] && mask[static_cast<size_t>(fc[2])]) {
            face_keep_id[f] = static_cast<int>(kept.size());
            kept.push_back(fc);
            kept_orig_face.push_back(static_cast<int>(f));
        }
    }
    if (kept.empty()) throw ValidationError("extract: no faces kept");

    auto corner = [](int kf, int which) { return kf * 3 + which; };
    auto corner_of = [&](int kf, int vertex) {
        for (int w = 0; w < 3; ++w)
            if (kept[static_cast<size_t>(kf)][static_cast<size_t>(w)] == vertex) return corner(kf, w);
        throw ValidationError("extract: corner lookup failed");
    };
    auto partner_kept_face = [&](int kf, int w) {
        // Face across side (fc[w], fc[w+1]) = left face of the reversed side.
        const auto& fc = kept[static_cast<size_t>(kf)];
        const int a = fc[static_cast<size_t>(w)];
        const int b = fc[static_cast<size_t>((w + 1) % 3)];
        const int ib = find_rot_index(t.rot, b, a);
        const int other = t.face_of_slot[static_cast<size_t>(t.slot(b, ib))];
        if (other < 0) return -1;
        return face_keep_id[static_cast<size_t>(other)];
    };

    // Face components, then corner classes over the component of the center.
    const int nkept = static_cast<int>(kept.size());
    DisjointSet face_ds(static_cast<size_t>(nkept));
    DisjointSet corner_ds(static_cast<size_t>(nkept) * 3);
    for (int kf = 0; kf < nkept; ++kf) {
        for (int w = 0; w < 3; ++w) {
            const int okf = partner_kept_face(kf, w);
            if (okf < 0) continue;
            face_ds.unite(kf, okf);
            const auto& fc = kept[static_cast<size_t>(kf)];
            const int a = fc[static_cast<size_t>(w)];
            const int b = fc[static_cast<size_t>((w + 1) % 3)];
            corner_ds.unite(corner_of(kf, a), corner_of(okf, a));
            corner_ds.unite(corner_of(kf, b), corner_of(okf, b));
        }
    }

    ExtractResult res;

    // Pinch accounting on the full gluing: extra corner classes per vertex.
    {
        std::vector<std::pair<int, int>> vertex_class;  // (orig vertex, class root)
        for (int c = 0; c < nkept * 3; ++c) {
            if (corner_ds.find(c) != c) continue;
            vertex_class.push_back({kept[static_cast<size_t>(c / 3)][static_cast<size_t>(c % 3)], c});
        }
        std::sort(vertex_class.begin(), vertex_class.end());
        for (size_t i = 1; i < vertex_class.size(); ++i)
            if (vertex_class[i].first == vertex_class[i - 1].first) ++res.pinch_splits;
    }

    // Keep only the face component containing the center.
    int center_component = -1;
    for (int kf = 0; kf < nkept && center_component < 0; ++kf)
        for (int w = 0; w < 3; ++w)
            if (kept[static_cast<size_t>(kf)][static_cast<size_t>(w)] == center) center_component = face_ds.find(kf);
    if (center_component < 0) throw ValidationError("extract: center has no kept face");
    {
        std::unordered_set<int> comps;
        for (int kf = 0; kf < nkept; ++kf) comps.insert(face_ds.find(kf));
        res.dropped_components = static_cast<int>(comps.size()) - 1;
    }

    std::vector<int> live(static_cast<size_t>(nkept), 0);
    for (int kf = 0; kf < nkept; ++kf) live[static_cast<size_t>(kf)] = face_ds.find(kf) == center_component;

    // Dense new ids in order of (original vertex, class representative).
    std::vector<std::pair<std::pair<int, int>, int>> reps;
    {
        std::unordered_set<int> seen;
        for (int c = 0; c < nkept * 3; ++c) {
            if (!live[static_cast<size_t>(c / 3)]) continue;
            const int root = corner_ds.find(c);
            if (seen.insert(root).second)
                reps.push_back({{kept[static_cast<size_t>(root / 3)][static_cast<size_t>(root % 3)], root}, root});
        }
    }
    std::sort(reps.begin(), reps.end());
    std::vector<int> class_to_new(static_cast<size_t>(nkept) * 3, -1);
    res.original_id.resize(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) {
        class_to_new[static_cast<size_t>(reps[i].second)] = static_cast<int>(i);
        res.original_id[i] = reps[i].first.first;
    }
    const int newV = static_cast<int>(reps.size());
    auto new_id = [&](int kf, int vertex) {
        return class_to_new[static_cast<size_t>(corner_ds.find(corner_of(kf, vertex)))];
    };

    // Rotation lists: each class's faces in original rotation-index order form
    // one fan (or a full cycle).
    std::vector<std::vector<int>> nrot(static_cast<size_t>(newV));
    std::vector<uint8_t> orig_used(static_cast<size_t>(t.V), 0);
    for (int kf = 0; kf < nkept; ++kf)
        if (live[static_cast<size_t>(kf)])
            for (int w = 0; w < 3; ++w) orig_used[static_cast<size_t>(kept[static_cast<size_t>(kf)][static_cast<size_t>(w)])] = 1;

    for (int v = 0; v < t.V; ++v) {
        if (!orig_used[static_cast<size_t>(v)]) continue;
        const int d = t.degree(v);
        std::vector<int> pair_face(static_cast<size_t>(d), -1);  // live kept-face per rotation pair
        int live_count = 0;
        for (int i = 0; i < d; ++i) {
            const int f = t.face_of_slot[static_cast<size_t>(t.slot(v, i))];
            if (f < 0) continue;
            const int kf = face_keep_id[static_cast<size_t>(f)];
            if (kf >= 0 && live[static_cast<size_t>(kf)]) {
                pair_face[static_cast<size_t>(i)] = kf;
                ++live_count;
            }
        }
        if (live_count == 0) continue;
        if (live_count == d) {
            const int nv = new_id(pair_face[0], v);
            for (int i = 0; i < d; ++i) {
                const int u = t.rot[static_cast<size_t>(v)][static_cast<size_t>(i)];
                const int kf = pair_face[static_cast<size_t>(i)] >= 0
                                   ? pair_face[static_cast<size_t>(i)]
                                   : pair_face[static_cast<size_t>((i - 1 + d) % d)];
                nrot[static_cast<size_t>(nv)].push_back(new_id(kf, u));
            }
            continue;
        }
        for (int i = 0; i < d; ++i) {
            if (pair_face[static_cast<size_t>(i)] < 0) continue;
            if (pair_face[static_cast<size_t>((i - 1 + d) % d)] >= 0) continue;  // not a fan start
            const int nv = new_id(pair_face[static_cast<size_t>(i)], v);
            int j = i;
            nrot[static_cast<size_t>(nv)].push_back(
                new_id(pair_face[static_cast<size_t>(j)], t.rot[static_cast<size_t>(v)][static_cast<size_t>(j)]));
            while (pair_face[static_cast<size_t>(j)] >= 0) {
                const int nxt = t.rot[static_cast<size_t>(v)][static_cast<size_t>((j + 1) % d)];
                nrot[static_cast<size_t>(nv)].push_back(new_id(pair_face[static_cast<size_t>(j)], nxt));
                j = (j + 1) % d;
            }
        }
    }

    // Boundary: unpaired CCW face sides chained forward; one cycle required.
    std::vector<std::array<int, 3>> nfaces;
    for (int kf = 0; kf < nkept; ++kf) {
        if (!live[static_cast<size_t>(kf)]) continue;
        std::array<int, 3> fc;
        for (int w = 0; w < 3; ++w)
            fc[static_cast<size_t>(w)] = class_to_new[static_cast<size_t>(corner_ds.find(corner(kf, w)))];
        nfaces.push_back(fc);
    }
    std::unordered_set<long long> sides;
    for (const auto& fc : nfaces)
        for (int w = 0; w < 3; ++w)
            sides.insert((static_cast<long long>(fc[static_cast<size_t>(w)]) << 32) |
                         static_cast<long long>(fc[static_cast<size_t>((w + 1) % 3)]));
    std::vector<int> next_on_boundary(static_cast<size_t>(newV), -1);
    int start = -1;
    int boundary_edges = 0;
    for (const auto& fc : nfaces) {
        for (int w = 0; w < 3; ++w) {
            const int a = fc[static_cast<size_t>(w)];
            const int b = fc[static_cast<size_t>((w + 1) % 3)];
            const long long rev = (static_cast<long long>(b) << 32) | static_cast<long long>(a);
            if (!sides.count(rev)) {
                if (next_on_boundary[static_cast<size_t>(a)] >= 0)
                    throw ValidationError("extract: result is not simply connected");
                next_on_boundary[static_cast<size_t>(a)] = b;
                start = a;
                ++boundary_edges;
            }
        }
    }
    if (start < 0) throw ValidationError("extract: no boundary found");
    std::vector<int> cyc;
    int cur = start;
    do {
        cyc.push_back(cur);
        cur = next_on_boundary[static_cast<size_t>(cur)];
        if (cur < 0 || static_cast<int>(cyc.size()) > boundary_edges)
            throw ValidationError("extract: boundary walk broken");
    } while (cur != start);
    if (static_cast<int>(cyc.size()) != boundary_edges)
        throw ValidationError("extract: result is not simply connected");

    res.t = build_from_rotation(nrot, cyc);
    for (int v = 0; v < newV; ++v)
        if (res.original_id[static_cast<size_t>(v)] == center) res.center_new_id = v;
    if (res.center_new_id < 0) throw ValidationError("extract: center lost");
    return res;
}

std::pair<Triangulation, BallDecomposition> ball(const Triangulation& t, int center, int r) {
    if (center < 0 || center >= t.V) throw ConfigError("ball: center out of range");
    if (r < 0) throw ConfigError("ball: negative radius");
    const std::vector<int> dist = bfs_distances(t, center);

    if (r == 0) {
        // Degenerate single-vertex ball; bypasses triangulation validation.
        Triangulation t0;
        t0.V = 1;
        t0.E = 0;
        t0.degree_bound = 0;
        t0.rot = {{}};
        t0.boundary = {0};
        t0.on_boundary = {1};
        t0.rot_offset = {0, 0};
        BallDecomposition dec;
        dec.center = 0;
        dec.distance = {0};
        dec.layer_sizes = {1};
        dec.original_id = {center};
        return {std::move(t0), std::move(dec)};
    }

    std::vector<uint8_t> mask(static_cast<size_t>(t.V), 0);
    for (int v = 0; v < t.V; ++v)
        mask[static_cast<size_t>(v)] = dist[static_cast<size_t>(v)] >= 0 && dist[static_cast<size_t>(v)] <= r;

    ExtractResult ex = extract_masked_subcomplex(t, mask, center);

    BallDecomposition dec;
    dec.center = ex.center_new_id;
    dec.pinch_splits = ex.pinch_splits;
    dec.original_id = ex.original_id;
    dec.distance.resize(static_cast<size_t>(ex.t.V));
    dec.layer_sizes.assign(static_cast<size_t>(r) + 1, 0);
    for (int v = 0; v < ex.t.V; ++v) {
        const int dv = dist[static_cast<size_t>(ex.original_id[static_cast<size_t>(v)])];
        dec.distance[static_cast<size_t>(v)] = dv;
        ++dec.layer_sizes[static_cast<size_t>(dv)];
    }
    return {std::move(ex.t), std::move(dec)};
}

std::vector<GrowthRow> growth_profile(const Triangulation& t, int center) {
    const std::vector<int> dist = bfs_distances(t, center);
    int ecc = 0;
    for (int v = 0; v < t.V; ++v) {
        if (dist[static_cast<size_t>(v)] < 0) throw ValidationError("growth_profile: graph disconnected");
        ecc = std::max(ecc, dist[static_cast<size_t>(v)]);
    }
    std::vector<long long> layer(static_cast<size_t>(ecc) + 1, 0);
    for (int v = 0; v < t.V; ++v) ++layer[static_cast<size_t>(dist[static_cast<size_t>(v)])];
    std::vector<GrowthRow> rows;
    long long cum = 0;
    for (int r = 0; r <= ecc; ++r) {
        cum += layer[static_cast<size_t>(r)];
        rows.push_back({r, cum, layer[static_cast<size_t>(r)]});
    }
    return rows;
}

long long PlanarNetwork::edge_count() const {
    long long deg_sum = 0;
    for (const auto& nb : rot) deg_sum += static_cast<long long>(nb.size());
    return deg_sum / 2;
}

PlanarNetwork network_from_triangulation(const Triangulation& t, std::vector<int> source,
                                         std::vector<int> sink) {
    PlanarNetwork net;
    net.rot = t.rot;
    net.outer = t.boundary;
    std::reverse(net.outer.begin(), net.outer.end());
    net.source = std::move(source);
    net.sink = std::move(sink);
    return net;
}

std::string serialize_graph(const std::vector<std::vector<int>>& rot,
                            const std::vector<int>& boundary,
                            const std::vector<int>& source,
                            const std::vector<int>& sink) {
    long long deg_sum = 0;
    for (const auto& nb : rot) deg_sum += static_cast<long long>(nb.size());
    std::ostringstream out;
    out << rot.size() << ' ' << deg_sum / 2 << '\n';
    for (const auto& nb : rot) {
        for (size_t i = 0; i < nb.size(); ++i) out << (i ? " " : "") << nb[i];
        out << '\n';
    }
    for (size_t i = 0; i < boundary.size(); ++i) out << (i ? " " : "") << boundary[i];
    out << '\n';
    if (!source.empty()) {
        out << "source";
        for (int v : source) out << ' ' << v;
        out << '\n';
    }
    if (!sink.empty()) {
        out << "sink";
        for (int v : sink) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

GraphFile parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next_line = [&](std::string* out) {
        while (std::getline(in, *out)) {
            if (!out->empty() && (*out)[0] == '#') continue;
            return true;
        }
        return false;
    };
    GraphFile g;
    if (!next_line(&line)) throw ConfigError("graph file: missing header");
    long long V = 0, E = 0;
    {
        std::istringstream h(line);
        if (!(h >> V >> E)) throw ConfigError("graph file: bad header line");
    }
    if (V <= 0 || V > 100000000) throw ConfigError("graph file: bad vertex count");
    g.rot.resize(static_cast<size_t>(V));
    long long deg_sum = 0;
    for (long long v = 0; v < V; ++v) {
        if (!next_line(&line)) throw ConfigError("graph file: missing neighbor list");
        std::istringstream ls(line);
        int u;
        while (ls >> u) g.rot[static_cast<size_t>(v)].push_back(u);
        deg_sum += static_cast<long long>(g.rot[static_cast<size_t>(v)].size());
    }
    if (deg_sum != 2 * E) throw ConfigError("graph file: edge count mismatch");
    if (!next_line(&line)) throw ConfigError("graph file: missing boundary line");
    {
        std::istringstream ls(line);
        int u;
        while (ls >> u) g.boundary.push_back(u);
    }
    while (next_line(&line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        std::vector<int>* dst = nullptr;
        if (tag == "source") dst = &g.source;
        else if (tag == "sink") dst = &g.sink;
        else if (tag.empty()) continue;
        else throw ConfigError("graph file: unknown trailing line '" + tag + "'");
        int u;
        while (ls >> u) dst->push_back(u);
    }
    return g;
}

void save_graph_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for write: " + path);
    out << text;
}

GraphFile load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

Triangulation triangulation_from_file(const GraphFile& f) {
    return build_from_rotation(f.rot, f.boundary);
}

PlanarNetwork network_from_file(const GraphFile& f) {
    PlanarNetwork net;
    net.rot = f.rot;
    net.outer = f.boundary;
    net.source = f.source;
    net.sink = f.sink;
    return net;
}

}  // namespace percolab

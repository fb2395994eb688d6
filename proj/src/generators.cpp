#include "percolab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "percolab/common.hpp"
#include "percolab/rng.hpp"

namespace percolab {

namespace {

// Axial coordinates; the six lattice directions in CCW order.
constexpr int kHexDir[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};

int hex_dist(int q, int s) { return (std::abs(q) + std::abs(s) + std::abs(q + s)) / 2; }

uint64_t hex_key(int q, int s) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(q)) << 32) |
           static_cast<uint64_t>(static_cast<uint32_t>(s));
}

}  // namespace

Triangulation triangular_lattice_disk(int r) {
    if (r < 1) throw ConfigError("triangular_lattice_disk: r >= 1 required");
    std::vector<std::pair<int, int>> coords;
    coords.push_back({0, 0});
    std::unordered_map<uint64_t, int> id;
    id[hex_key(0, 0)] = 0;
    std::vector<int> ring_start = {0, 1};
    for (int k = 1; k <= r; ++k) {
        // Ring walk: start at k*d0, take k steps in each of d2..d1.
        int q = k, s = 0;
        for (int leg = 2; leg < 8; ++leg) {
            const auto& d = kHexDir[leg % 6];
            for (int step = 0; step < k; ++step) {
                id[hex_key(q, s)] = static_cast<int>(coords.size());
                coords.push_back({q, s});
                q += d[0];
                s += d[1];
            }
        }
        ring_start.push_back(static_cast<int>(coords.size()));
    }
    const int V = static_cast<int>(coords.size());
    std::vector<std::vector<int>> rot(static_cast<size_t>(V));
    for (int v = 0; v < V; ++v) {
        const auto [q, s] = coords[static_cast<size_t>(v)];
        for (const auto& d : kHexDir) {
            const int nq = q + d[0], ns = s + d[1];
            if (hex_dist(nq, ns) > r) continue;
            rot[static_cast<size_t>(v)].push_back(id.at(hex_key(nq, ns)));
        }
    }
    std::vector<int> boundary;
    for (int v = ring_start[static_cast<size_t>(r)]; v < V; ++v) boundary.push_back(v);
    return build_from_rotation(std::move(rot), std::move(boundary));
}

namespace {

// Layered construction shared by the d-regular and mixed-degree families:
// each boundary vertex is completed to its target degree by a fan of new
// vertices, consecutive boundary vertices sharing one fan endpoint.
Triangulation layered_triangulation(int r, int hub_degree,
                                    const std::function<int(int layer, int index)>& target_degree) {
    if (r < 1) throw ConfigError("layered_triangulation: r >= 1 required");
    std::vector<std::vector<int>> up;      // up-neighbors in CCW cycle order
    std::vector<std::vector<int>> down;    // down-neighbors in CCW cycle order
    std::vector<int> target;

    up.push_back({});
    down.push_back({});
    target.push_back(hub_degree);

    std::vector<int> cycle;
    for (int i = 0; i < hub_degree; ++i) {
        cycle.push_back(static_cast<int>(up.size()));
        up.push_back({});
        down.push_back({0});
        target.push_back(target_degree(1, i));
        up[0].push_back(cycle.back());
    }

    std::vector<std::vector<int>> layer_cycles = {{0}, cycle};

    for (int layer = 2; layer <= r; ++layer) {
        const auto& cyc = layer_cycles.back();
        const int n = static_cast<int>(cyc.size());
        std::vector<int> next_cycle;
        std::vector<int> shared(static_cast<size_t>(n), -1);
        int new_index = 0;
        auto new_vertex = [&](std::vector<int> down_nbrs) {
            const int v = static_cast<int>(up.size());
            up.push_back({});
            down.push_back(std::move(down_nbrs));
            target.push_back(target_degree(layer, new_index++));
            return v;
        };
        for (int i = 0; i < n; ++i)
            shared[static_cast<size_t>(i)] = new_vertex({cyc[static_cast<size_t>(i)], cyc[static_cast<size_t>((i + 1) % n)]});
        for (int i = 0; i < n; ++i) {
            const int v = cyc[static_cast<size_t>(i)];
            const int have = static_cast<int>(down[static_cast<size_t>(v)].size()) + 2;
            const int m = target[static_cast<size_t>(v)] - have;
            if (m < 2)
                throw ValidationError("layered_triangulation: target degree too small at layer " +
                                      std::to_string(layer));
            // new_vertex() may reallocate `up`; index it fresh on every push.
            up[static_cast<size_t>(v)].push_back(shared[static_cast<size_t>((i - 1 + n) % n)]);
            for (int j = 0; j < m - 2; ++j) {
                const int f = new_vertex({v});
                up[static_cast<size_t>(v)].push_back(f);
                next_cycle.push_back(f);
            }
            up[static_cast<size_t>(v)].push_back(shared[static_cast<size_t>(i)]);
            next_cycle.push_back(shared[static_cast<size_t>(i)]);
        }
        layer_cycles.push_back(std::move(next_cycle));
    }

    // Assemble CCW rotations: [next, down reversed, prev, up].
    const int V = static_cast<int>(up.size());
    std::vector<std::vector<int>> rot(static_cast<size_t>(V));
    rot[0] = up[0];
    for (size_t layer = 1; layer < layer_cycles.size(); ++layer) {
        const auto& cyc = layer_cycles[layer];
        const int n = static_cast<int>(cyc.size());
        for (int i = 0; i < n; ++i) {
            const int v = cyc[static_cast<size_t>(i)];
            auto& rv = rot[static_cast<size_t>(v)];
            rv.push_back(cyc[static_cast<size_t>((i + 1) % n)]);
            for (auto it = down[static_cast<size_t>(v)].rbegin(); it != down[static_cast<size_t>(v)].rend(); ++it)
                rv.push_back(*it);
            rv.push_back(cyc[static_cast<size_t>((i - 1 + n) % n)]);
            for (int u : up[static_cast<size_t>(v)]) rv.push_back(u);
        }
    }
    return build_from_rotation(std::move(rot), layer_cycles.back());
}

}  // namespace

Triangulation regular_hyperbolic_triangulation(int d, int r) {
    if (d < 7) throw ConfigError("regular_hyperbolic_triangulation: d >= 7 required");
    return layered_triangulation(r, d, [d](int, int) { return d; });
}

Triangulation mixed_degree_triangulation(int r, uint64_t seed) {
    if (r < 1) throw ConfigError("mixed_degree_triangulation: r >= 1 required");
    CounterRng rng(seed, static_cast<uint64_t>(StreamTag::kDefects));
    auto target = [&rng](int layer, int index) {
        // Defect density decays polynomially with the layer index.
        const double p = 0.5 / std::pow(1.0 + layer, 1.5);
        return rng.uniform(static_cast<uint64_t>(layer), static_cast<uint64_t>(index)) < p ? 7 : 6;
    };
    return layered_triangulation(r, 6, target);
}

RhombusGraph lattice_rhombus(int n) {
    if (n < 2) throw ConfigError("lattice_rhombus: n >= 2 required");
    auto vid = [n](int i, int j) { return j * n + i; };
    std::vector<std::vector<int>> rot(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            auto& rv = rot[static_cast<size_t>(vid(i, j))];
            for (const auto& d : kHexDir) {
                const int ni = i + d[0], nj = j + d[1];
                if (ni < 0 || ni >= n || nj < 0 || nj >= n) continue;
                rv.push_back(vid(ni, nj));
            }
        }
    }
    std::vector<int> boundary;
    for (int i = 0; i < n - 1; ++i) boundary.push_back(vid(i, 0));
    for (int j = 0; j < n - 1; ++j) boundary.push_back(vid(n - 1, j));
    for (int i = n - 1; i > 0; --i) boundary.push_back(vid(i, n - 1));
    for (int j = n - 1; j > 0; --j) boundary.push_back(vid(0, j));

    RhombusGraph rg;
    rg.t = build_from_rotation(std::move(rot), std::move(boundary));
    for (int j = 0; j < n; ++j) {
        rg.left.push_back(vid(0, j));
        rg.right.push_back(vid(n - 1, j));
    }
    for (int i = 0; i < n; ++i) {
        rg.bottom.push_back(vid(i, 0));
        rg.top.push_back(vid(i, n - 1));
    }
    return rg;
}

namespace {

std::vector<int> outer_walk_of(const std::vector<std::vector<int>>& rot, int from, int to) {
    FaceStructure fs = trace_faces(rot);
    const int i = find_rot_index(rot, from, to);
    if (i < 0) throw ValidationError("outer_walk_of: edge missing");
    const int f = fs.face_of_slot[static_cast<size_t>(fs.slot(from, i))];
    return fs.face_vertices[static_cast<size_t>(f)];
}

}  // namespace

PlanarNetwork ladder_graph(int k) {
    if (k < 1) throw ConfigError("ladder_graph: k >= 1 required");
    PlanarNetwork net;
    net.rot.resize(static_cast<size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        if (i > 0) net.rot[static_cast<size_t>(i)].push_back(i - 1);
        if (i < k) net.rot[static_cast<size_t>(i)].push_back(i + 1);
    }
    net.outer = outer_walk_of(net.rot, 0, 1);
    net.source = {0};
    net.sink = {k};
    return net;
}

PlanarNetwork parallel_paths(int count, int length) {
    if (count < 1) throw ConfigError("parallel_paths: count >= 1 required");
    if (length < 2 && count > 1) throw ConfigError("parallel_paths: length >= 2 required");
    if (length < 1) throw ConfigError("parallel_paths: length >= 1 required");
    PlanarNetwork net;
    const int internal = length - 1;
    const int V = 2 + count * internal;
    net.rot.resize(static_cast<size_t>(V));
    auto pv = [&](int path, int idx) { return 2 + path * internal + idx; };
    // Paths nested top (path 0) to bottom; CCW at the source lists bottom first.
    for (int p = count - 1; p >= 0; --p)
        net.rot[0].push_back(internal ? pv(p, 0) : 1);
    for (int p = 0; p < count; ++p)
        net.rot[1].push_back(internal ? pv(p, internal - 1) : 0);
    for (int p = 0; p < count; ++p) {
        for (int i = 0; i < internal; ++i) {
            auto& rv = net.rot[static_cast<size_t>(pv(p, i))];
            rv.push_back(i == 0 ? 0 : pv(p, i - 1));
            rv.push_back(i == internal - 1 ? 1 : pv(p, i + 1));
        }
    }
    net.outer = outer_walk_of(net.rot, 0, net.rot[0][0]);
    net.source = {0};
    net.sink = {1};
    return net;
}

PlanarNetwork grid_with_poles(int n, int m) {
    if (n < 1 || m < 1) throw ConfigError("grid_with_poles: n, m >= 1 required");
    if (m < 2) throw ConfigError("grid_with_poles: m >= 2 so poles are disjoint");
    PlanarNetwork net;
    auto vid = [m](int row, int col) { return row * m + col; };
    net.rot.resize(static_cast<size_t>(n) * static_cast<size_t>(m));
    constexpr int kDir[4][2] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};  // E, N, W, S
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < m; ++col) {
            auto& rv = net.rot[static_cast<size_t>(vid(row, col))];
            for (const auto& d : kDir) {
                const int nr = row + d[0], nc = col + d[1];
                if (nr < 0 || nr >= n || nc < 0 || nc >= m) continue;
                rv.push_back(vid(nr, nc));
            }
        }
    }
    net.outer = outer_walk_of(net.rot, 1, 0);
    for (int row = 0; row < n; ++row) {
        net.source.push_back(vid(row, 0));
        net.sink.push_back(vid(row, m - 1));
    }
    return net;
}

std::string generate_serialized(const GeneratorSpec& spec) {
    if (spec.family == "triangular-lattice-disk") {
        const Triangulation t = triangular_lattice_disk(spec.size);
        return serialize_graph(t.rot, t.boundary);
    }
    if (spec.family == "d-regular-hyperbolic") {
        const Triangulation t = regular_hyperbolic_triangulation(spec.degree, spec.size);
        return serialize_graph(t.rot, t.boundary);
    }
    if (spec.family == "mixed-degree") {
        const Triangulation t = mixed_degree_triangulation(spec.size, spec.seed);
        return serialize_graph(t.rot, t.boundary);
    }
    if (spec.family == "ladder") {
        const PlanarNetwork net = ladder_graph(spec.size);
        return serialize_graph(net.rot, net.outer, net.source, net.sink);
    }
    if (spec.family == "grid-with-poles") {
        const PlanarNetwork net = grid_with_poles(spec.rows, spec.cols);
        return serialize_graph(net.rot, net.outer, net.source, net.sink);
    }
    throw ConfigError("unknown generator family: " + spec.family);
}

}  // namespace percolab

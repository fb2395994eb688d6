#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "percolab/common.hpp"
#include "percolab/generators.hpp"
#include "percolab/graph.hpp"

using namespace percolab;

namespace {

// Test-local BFS oracle, frontier by frontier, independent of the library's.
std::vector<int> oracle_bfs(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<int> dist(adj.size(), -1);
    std::set<int> frontier = {src};
    dist[static_cast<size_t>(src)] = 0;
    int d = 0;
    while (!frontier.empty()) {
        std::set<int> next;
        for (int v : frontier)
            for (int u : adj[static_cast<size_t>(v)])
                if (dist[static_cast<size_t>(u)] < 0) {
                    dist[static_cast<size_t>(u)] = d + 1;
                    next.insert(u);
                }
        frontier = std::move(next);
        ++d;
    }
    return dist;
}

Triangulation single_triangle() {
    return build_from_rotation({{1, 2}, {2, 0}, {0, 1}}, {0, 1, 2});
}

Triangulation wheel(int k) {
    // Hub 0, rim 1..k.
    std::vector<std::vector<int>> rot(static_cast<size_t>(k) + 1);
    for (int i = 1; i <= k; ++i) rot[0].push_back(i);
    std::vector<int> rim;
    for (int i = 1; i <= k; ++i) {
        const int next = i == k ? 1 : i + 1;
        const int prev = i == 1 ? k : i - 1;
        rot[static_cast<size_t>(i)] = {next, 0, prev};
        rim.push_back(i);
    }
    return build_from_rotation(rot, rim);
}

}  // namespace

TEST_CASE("single triangle is the smallest triangulation") {
    const Triangulation t = single_triangle();
    CHECK(t.V == 3);
    CHECK(t.E == 3);
    // V - E + F = 2 counting the outer face.
    CHECK(static_cast<int>(t.faces.size()) + 1 == 2);
}

TEST_CASE("4-cycle without chord is rejected") {
    CHECK_THROWS_WITH_AS(
        build_from_rotation({{1, 3}, {2, 0}, {3, 1}, {0, 2}}, {0, 1, 2, 3}),
        doctest::Contains("non-triangular"), ValidationError);
}

TEST_CASE("wheel-6 counts") {
    const Triangulation t = wheel(6);
    CHECK(t.V == 7);
    CHECK(t.E == 12);
    CHECK(static_cast<int>(t.faces.size()) == 6);  // 7 faces total with the outer
    CHECK(t.interior(0));
    for (int i = 1; i <= 6; ++i) CHECK_FALSE(t.interior(i));
}

TEST_CASE("degenerate inputs rejected") {
    CHECK_THROWS_AS(build_from_rotation({{1}, {0}}, {0, 1}), ValidationError);
    CHECK_THROWS_AS(build_from_rotation({}, {}), ValidationError);
}

TEST_CASE("asymmetric adjacency and self loops rejected") {
    CHECK_THROWS_AS(build_from_rotation({{1, 2}, {2}, {0, 1}}, {0, 1, 2}), ValidationError);
    CHECK_THROWS_AS(build_from_rotation({{0, 1, 2}, {2, 0}, {0, 1}}, {0, 1, 2}), ValidationError);
}

TEST_CASE("clockwise input is normalized") {
    // Same triangle with reversed rotations everywhere.
    const Triangulation t = build_from_rotation({{2, 1}, {0, 2}, {1, 0}}, {0, 1, 2});
    CHECK(t.V == 3);
    CHECK(static_cast<int>(t.faces.size()) == 1);
}

TEST_CASE("boundary must be the outer face walk") {
    // Wheel with a "boundary" that cuts through the hub.
    std::vector<std::vector<int>> rot(7);
    for (int i = 1; i <= 6; ++i) rot[0].push_back(i);
    for (int i = 1; i <= 6; ++i) {
        const int next = i == 6 ? 1 : i + 1;
        const int prev = i == 1 ? 6 : i - 1;
        rot[static_cast<size_t>(i)] = {next, 0, prev};
    }
    CHECK_THROWS_AS(build_from_rotation(rot, {0, 1, 2}), ValidationError);
}

TEST_CASE("ball r=0 is a single vertex") {
    const Triangulation t = triangular_lattice_disk(2);
    auto [bt, dec] = ball(t, 0, 0);
    CHECK(bt.V == 1);
    CHECK(dec.layer_sizes == std::vector<int>{1});
}

TEST_CASE("lattice ball r=1 is the degree-6 flower") {
    const Triangulation t = triangular_lattice_disk(3);
    auto [bt, dec] = ball(t, 0, 1);
    CHECK(bt.V == 7);
    CHECK(dec.layer_sizes == std::vector<int>{1, 6});
}

TEST_CASE("lattice ball sizes match the closed form 1+3r(r+1)") {
    const Triangulation t = triangular_lattice_disk(6);
    for (int r = 1; r <= 4; ++r) {
        auto [bt, dec] = ball(t, 0, r);
        CHECK(bt.V == 1 + 3 * r * (r + 1));
        long long total = 0;
        for (int s : dec.layer_sizes) total += s;
        CHECK(total == bt.V);
    }
    auto [b3, dec3] = ball(t, 0, 3);
    CHECK(b3.V == 37);
}

TEST_CASE("ball vertex set equals the BFS ball (oracle equivalence)") {
    const Triangulation t = regular_hyperbolic_triangulation(7, 4);
    const std::vector<int> dist = oracle_bfs(t.rot, 0);
    for (int r = 1; r <= 3; ++r) {
        auto [bt, dec] = ball(t, 0, r);
        std::set<int> got(dec.original_id.begin(), dec.original_id.end());
        std::set<int> want;
        for (int v = 0; v < t.V; ++v)
            if (dist[static_cast<size_t>(v)] <= r) want.insert(v);
        CHECK(got == want);
        CHECK(dec.pinch_splits == 0);
        // Distances carried by the decomposition match the oracle.
        for (int v = 0; v < bt.V; ++v)
            CHECK(dec.distance[static_cast<size_t>(v)] ==
                  dist[static_cast<size_t>(dec.original_id[static_cast<size_t>(v)])]);
    }
}

TEST_CASE("interior links are single cycles on generated graphs") {
    const Triangulation t = triangular_lattice_disk(4);
    for (int v = 0; v < t.V; ++v) {
        if (!t.interior(v)) continue;
        const int d = t.degree(v);
        for (int i = 0; i < d; ++i) {
            const int a = t.rot[static_cast<size_t>(v)][static_cast<size_t>(i)];
            const int b = t.rot[static_cast<size_t>(v)][static_cast<size_t>((i + 1) % d)];
            CHECK(find_rot_index(t.rot, a, b) >= 0);
        }
    }
}

TEST_CASE("growth profile telescopes and matches the lattice") {
    const Triangulation t = triangular_lattice_disk(5);
    const auto rows = growth_profile(t, 0);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].r == 0);
    CHECK(rows[0].ball_size == 1);
    CHECK(rows[0].sphere_size == 1);
    for (size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].ball_size - rows[i - 1].ball_size == rows[i].sphere_size);
        CHECK(rows[i].ball_size >= rows[i - 1].ball_size);
    }
    CHECK(rows[5].ball_size == t.V);
}

TEST_CASE("growth profile of the single triangle") {
    const Triangulation t = single_triangle();
    const auto rows = growth_profile(t, 0);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].r == 0);
    CHECK(rows[0].ball_size == 1);
    CHECK(rows[0].sphere_size == 1);
}

TEST_CASE("pinch split keeps the center component and records the event") {
    // Fan disk: hub 0 with open fan 1..9 (hub on the boundary). Rim rotations
    // run CCW as for a wheel: next, hub, prev.
    std::vector<std::vector<int>> rot(10);
    for (int i = 1; i <= 9; ++i) rot[0].push_back(i);
    for (int i = 1; i <= 9; ++i) {
        if (i < 9) rot[static_cast<size_t>(i)].push_back(i + 1);
        rot[static_cast<size_t>(i)].push_back(0);
        if (i > 1) rot[static_cast<size_t>(i)].push_back(i - 1);
    }
    std::vector<int> boundary = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    const Triangulation t = build_from_rotation(rot, boundary);
    REQUIRE(t.faces.size() == 8);

    // Mask {0,3,4,6,7}: two face fans at the hub, joined only at vertex 0.
    std::vector<uint8_t> mask(10, 0);
    for (int v : {0, 3, 4, 6, 7}) mask[static_cast<size_t>(v)] = 1;
    const ExtractResult ex = extract_masked_subcomplex(t, mask, 4);
    CHECK(ex.pinch_splits == 1);
    CHECK(ex.dropped_components == 1);
    CHECK(ex.t.V == 3);
    std::set<int> kept(ex.original_id.begin(), ex.original_id.end());
    CHECK(kept == std::set<int>{0, 3, 4});
}

TEST_CASE("graph text format round-trips") {
    const Triangulation t = triangular_lattice_disk(2);
    const std::string text = serialize_graph(t.rot, t.boundary);
    const GraphFile f = parse_graph(text);
    const Triangulation t2 = triangulation_from_file(f);
    CHECK(t2.V == t.V);
    CHECK(t2.E == t.E);
    CHECK(t2.rot == t.rot);
    CHECK(t2.boundary == t.boundary);
    CHECK(serialize_graph(t2.rot, t2.boundary) == text);
}

TEST_CASE("network text format carries poles") {
    const PlanarNetwork net = grid_with_poles(3, 4);
    const std::string text = serialize_graph(net.rot, net.outer, net.source, net.sink);
    const GraphFile f = parse_graph(text);
    const PlanarNetwork n2 = network_from_file(f);
    CHECK(n2.rot == net.rot);
    CHECK(n2.source == net.source);
    CHECK(n2.sink == net.sink);
}

TEST_CASE("malformed graph files are rejected") {
    CHECK_THROWS_AS(parse_graph(""), ConfigError);
    CHECK_THROWS_AS(parse_graph("3 5\n1 2\n2 0\n0 1\n0 1 2\n"), ConfigError);  // bad E
    CHECK_THROWS_AS(parse_graph("3 3\n1 2\n2 0\n0 1\n0 1 2\nbogus 1\n"), ConfigError);
}

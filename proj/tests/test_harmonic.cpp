#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "percolab/common.hpp"
#include "percolab/generators.hpp"
#include "percolab/harmonic.hpp"

using namespace percolab;

namespace {

// Dense Gaussian-elimination oracle for effective resistance: ground one sink
// vertex, solve L x = b with unit current injected at the sources.
double oracle_resistance(const std::vector<std::vector<int>>& adj, const std::vector<int>& source,
                         const std::vector<int>& sink) {
    const int V = static_cast<int>(adj.size());
    // Collapse source set and sink set to single nodes.
    std::vector<int> id(static_cast<size_t>(V));
    for (int v = 0; v < V; ++v) id[static_cast<size_t>(v)] = v;
    for (int s : source) id[static_cast<size_t>(s)] = source[0];
    for (int t : sink) id[static_cast<size_t>(t)] = sink[0];
    // Laplacian over merged nodes (parallel edges keep their conductances).
    std::vector<std::vector<double>> L(static_cast<size_t>(V), std::vector<double>(static_cast<size_t>(V), 0.0));
    for (int v = 0; v < V; ++v) {
        for (int u : adj[static_cast<size_t>(v)]) {
            if (u < v) continue;
            const int a = id[static_cast<size_t>(v)], b = id[static_cast<size_t>(u)];
            if (a == b) continue;
            L[static_cast<size_t>(a)][static_cast<size_t>(a)] += 1;
            L[static_cast<size_t>(b)][static_cast<size_t>(b)] += 1;
            L[static_cast<size_t>(a)][static_cast<size_t>(b)] -= 1;
            L[static_cast<size_t>(b)][static_cast<size_t>(a)] -= 1;
        }
    }
    std::vector<double> b(static_cast<size_t>(V), 0.0);
    b[static_cast<size_t>(source[0])] = 1.0;
    b[static_cast<size_t>(sink[0])] = -1.0;
    // Ground the sink row.
    const int g = sink[0];
    for (int j = 0; j < V; ++j) L[static_cast<size_t>(g)][static_cast<size_t>(j)] = 0.0;
    L[static_cast<size_t>(g)][static_cast<size_t>(g)] = 1.0;
    b[static_cast<size_t>(g)] = 0.0;
    // Gaussian elimination with partial pivoting.
    std::vector<int> cols;
    for (int v = 0; v < V; ++v)
        if (id[static_cast<size_t>(v)] == v) cols.push_back(v);
    const int n = static_cast<int>(cols.size());
    std::vector<std::vector<double>> M(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = L[static_cast<size_t>(cols[static_cast<size_t>(i)])][static_cast<size_t>(cols[static_cast<size_t>(j)])];
        M[static_cast<size_t>(i)][static_cast<size_t>(n)] = b[static_cast<size_t>(cols[static_cast<size_t>(i)])];
    }
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(M[static_cast<size_t>(i)][static_cast<size_t>(k)]) > std::fabs(M[static_cast<size_t>(piv)][static_cast<size_t>(k)])) piv = i;
        std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(piv)]);
        for (int i = k + 1; i < n; ++i) {
            const double f = M[static_cast<size_t>(i)][static_cast<size_t>(k)] / M[static_cast<size_t>(k)][static_cast<size_t>(k)];
            for (int j = k; j <= n; ++j) M[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * M[static_cast<size_t>(k)][static_cast<size_t>(j)];
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = M[static_cast<size_t>(i)][static_cast<size_t>(n)];
        for (int j = i + 1; j < n; ++j) s -= M[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] = s / M[static_cast<size_t>(i)][static_cast<size_t>(i)];
    }
    double phi_s = 0.0, phi_t = 0.0;
    for (int i = 0; i < n; ++i) {
        if (cols[static_cast<size_t>(i)] == source[0]) phi_s = x[static_cast<size_t>(i)];
        if (cols[static_cast<size_t>(i)] == sink[0]) phi_t = x[static_cast<size_t>(i)];
    }
    return phi_s - phi_t;  // unit current, so resistance = potential gap
}

std::vector<std::vector<int>> path_graph(int k) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(k) + 1);
    for (int i = 0; i < k; ++i) {
        adj[static_cast<size_t>(i)].push_back(i + 1);
        adj[static_cast<size_t>(i) + 1].push_back(i);
    }
    return adj;
}

}  // namespace

TEST_CASE("midpoint of a 2-edge path sits at half the gap") {
    const auto adj = path_graph(2);
    DirichletProblem p;
    p.adjacency = &adj;
    p.fixed_vertices = {0, 2};
    p.fixed_values = {0.0, 1.0};
    const HarmonicSolution sol = solve_dirichlet(p);
    CHECK(sol.potential[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sol.residual_norm <= 1e-9);
}

TEST_CASE("constant boundary data gives a constant potential and zero current") {
    const Triangulation t = triangular_lattice_disk(3);
    DirichletProblem p;
    p.adjacency = &t.rot;
    for (int v : t.boundary) {
        p.fixed_vertices.push_back(v);
        p.fixed_values.push_back(0.75);
    }
    const HarmonicSolution sol = solve_dirichlet(p);
    for (int v = 0; v < t.V; ++v) CHECK(sol.potential[static_cast<size_t>(v)] == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(sol.dirichlet_energy == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("3x3 grid with opposite columns fixed has a linear middle column") {
    const PlanarNetwork net = grid_with_poles(3, 3);
    DirichletProblem p;
    p.adjacency = &net.rot;
    for (int v : net.source) {
        p.fixed_vertices.push_back(v);
        p.fixed_values.push_back(0.0);
    }
    for (int v : net.sink) {
        p.fixed_vertices.push_back(v);
        p.fixed_values.push_back(1.0);
    }
    const HarmonicSolution sol = solve_dirichlet(p);
    // Middle column ids are row*3 + 1.
    for (int row = 0; row < 3; ++row)
        CHECK(sol.potential[static_cast<size_t>(row * 3 + 1)] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("maximum principle on random boundary data") {
    const Triangulation t = triangular_lattice_disk(4);
    DirichletProblem p;
    p.adjacency = &t.rot;
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> uni(-2.0, 5.0);
    double lo = 1e300, hi = -1e300;
    for (int v : t.boundary) {
        const double val = uni(gen);
        p.fixed_vertices.push_back(v);
        p.fixed_values.push_back(val);
        lo = std::min(lo, val);
        hi = std::max(hi, val);
    }
    const HarmonicSolution sol = solve_dirichlet(p);
    for (int v = 0; v < t.V; ++v) {
        CHECK(sol.potential[static_cast<size_t>(v)] >= lo - 1e-9);
        CHECK(sol.potential[static_cast<size_t>(v)] <= hi + 1e-9);
    }
}

TEST_CASE("energy minimality: perturbing an interior potential increases energy") {
    const Triangulation t = triangular_lattice_disk(2);
    DirichletProblem p;
    p.adjacency = &t.rot;
    for (size_t i = 0; i < t.boundary.size(); ++i) {
        p.fixed_vertices.push_back(t.boundary[i]);
        p.fixed_values.push_back(static_cast<double>(i % 3));
    }
    const HarmonicSolution sol = solve_dirichlet(p);
    auto energy_of = [&](const std::vector<double>& phi) {
        double e = 0.0;
        for (int v = 0; v < t.V; ++v)
            for (int u : t.rot[static_cast<size_t>(v)])
                if (u > v) e += (phi[static_cast<size_t>(u)] - phi[static_cast<size_t>(v)]) * (phi[static_cast<size_t>(u)] - phi[static_cast<size_t>(v)]);
        return e;
    };
    const double base = energy_of(sol.potential);
    for (int v = 0; v < t.V; ++v) {
        if (t.on_boundary[static_cast<size_t>(v)]) continue;
        for (double eps : {0.05, -0.05}) {
            std::vector<double> phi = sol.potential;
            phi[static_cast<size_t>(v)] += eps;
            CHECK(energy_of(phi) > base + 1e-12);
        }
    }
}

TEST_CASE("solver reports disconnected free components") {
    // Two triangles sharing nothing; boundary values only on one of them.
    std::vector<std::vector<int>> adj = {{1, 2}, {2, 0}, {0, 1}, {4, 5}, {5, 3}, {3, 4}};
    DirichletProblem p;
    p.adjacency = &adj;
    p.fixed_vertices = {0};
    p.fixed_values = {1.0};
    CHECK_THROWS_AS(solve_dirichlet(p), ValidationError);
}

TEST_CASE("effective resistance of a k-edge path is k (series law)") {
    for (int k : {1, 3, 7}) {
        const auto adj = path_graph(k);
        CHECK(effective_resistance(adj, {0}, {k}) == doctest::Approx(k).epsilon(1e-9));
    }
}

TEST_CASE("two disjoint 2-edge paths in parallel have resistance 1") {
    const PlanarNetwork net = parallel_paths(2, 2);
    CHECK(effective_resistance(net.rot, net.source, net.sink) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("grid with poles: single row acts as a series path") {
    const PlanarNetwork net = grid_with_poles(1, 6);
    CHECK(effective_resistance(net.rot, net.source, net.sink) == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("effective resistance matches the dense oracle on small graphs") {
    const std::vector<std::pair<std::vector<int>, std::vector<int>>> pole_sets = {
        {{0}, {8}}, {{0, 3}, {2, 5}}};
    const PlanarNetwork grid = grid_with_poles(3, 3);
    for (const auto& [src, snk] : pole_sets) {
        const double got = effective_resistance(grid.rot, src, snk);
        const double want = oracle_resistance(grid.rot, src, snk);
        CHECK(got == doctest::Approx(want).epsilon(1e-8));
    }
    const Triangulation t = triangular_lattice_disk(2);
    std::vector<int> sphere;
    const auto dist = bfs_distances(t, 0);
    for (int v = 0; v < t.V; ++v)
        if (dist[static_cast<size_t>(v)] == 2) sphere.push_back(v);
    CHECK(effective_resistance(t.rot, {0}, sphere) ==
          doctest::Approx(oracle_resistance(t.rot, {0}, sphere)).epsilon(1e-8));
}

TEST_CASE("Rayleigh monotonicity: deleting an edge never decreases resistance") {
    const PlanarNetwork grid = grid_with_poles(3, 4);
    const double base = effective_resistance(grid.rot, grid.source, grid.sink);
    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 10; ++rep) {
        // Delete one random non-pole-critical edge.
        auto adj = grid.rot;
        const int v = static_cast<int>(gen() % adj.size());
        if (adj[static_cast<size_t>(v)].empty()) continue;
        const int u = adj[static_cast<size_t>(v)][gen() % adj[static_cast<size_t>(v)].size()];
        std::erase(adj[static_cast<size_t>(v)], u);
        std::erase(adj[static_cast<size_t>(u)], v);
        double r = 0.0;
        try {
            r = effective_resistance(adj, grid.source, grid.sink);
        } catch (const std::exception&) {
            continue;  // deletion disconnected the poles
        }
        CHECK(r >= base - 1e-9);
    }
}

TEST_CASE("resistance curve is nondecreasing and the lattice looks recurrent") {
    const Triangulation t = triangular_lattice_disk(16);
    auto [curve, verdict] = classify_walk(t, 0, 16);
    REQUIRE(curve.resistance.size() == 16);
    for (size_t i = 1; i < curve.resistance.size(); ++i)
        CHECK(curve.resistance[i] >= curve.resistance[i - 1] - 1e-10);
    CHECK(verdict == WalkVerdict::kRecurrentLike);
}

TEST_CASE("7-regular triangulation looks transient") {
    const Triangulation t = regular_hyperbolic_triangulation(7, 10);
    auto [curve, verdict] = classify_walk(t, 0, 10);
    CHECK(verdict == WalkVerdict::kTransientLike);
    // Geometric decay of increments per doubling.
    const double inc1 = curve.resistance[7] - curve.resistance[3];   // R(8)-R(4)
    const double inc2 = curve.resistance[9] - curve.resistance[4];   // R(10)-R(5)
    CHECK(inc1 < 0.2 * curve.resistance[3]);
    CHECK(inc2 < inc1 + 1e-12);
}

TEST_CASE("classify_walk rejects tiny graphs") {
    const Triangulation t = triangular_lattice_disk(2);
    CHECK_THROWS_AS(classify_walk(t, 0, 3), ConfigError);
    CHECK_THROWS_AS(classify_walk(t, 0, 4), ConfigError);  // radius 2 < 4
}

TEST_CASE("lattice resistance grows like log r") {
    const Triangulation t = triangular_lattice_disk(48);
    std::vector<double> lx, ly;
    for (int r : {4, 8, 16, 32, 48}) {
        auto [bt, dec] = ball(t, 0, r);
        std::vector<int> sphere;
        for (int v = 0; v < bt.V; ++v)
            if (dec.distance[static_cast<size_t>(v)] == r) sphere.push_back(v);
        lx.push_back(std::log(r));
        ly.push_back(effective_resistance(bt.rot, {dec.center}, sphere));
    }
    // Slope of R against log r is positive and stable; for the triangular
    // lattice the continuum slope is 1/(2 pi sigma) with sigma = sqrt(3).
    const double slope = regression_slope(lx, ly);
    CHECK(slope > 0.05);
    CHECK(slope < 0.2);
    const double s1 = (ly[2] - ly[1]) / (lx[2] - lx[1]);
    const double s2 = (ly[3] - ly[2]) / (lx[3] - lx[2]);
    CHECK(std::fabs(s1 - s2) < 0.25 * s1);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "percolab/common.hpp"
#include "percolab/generators.hpp"
#include "percolab/stats.hpp"

using namespace percolab;

namespace {

std::map<int, int> interior_degree_histogram(const Triangulation& t) {
    std::map<int, int> h;
    for (int v = 0; v < t.V; ++v)
        if (t.interior(v)) ++h[t.degree(v)];
    return h;
}

}  // namespace

TEST_CASE("triangular lattice disk r=1 is the wheel-6") {
    const Triangulation t = triangular_lattice_disk(1);
    CHECK(t.V == 7);
    CHECK(t.E == 12);
    CHECK(t.degree(0) == 6);
    CHECK(t.boundary.size() == 6);
}

TEST_CASE("triangular lattice disk r=2 has 19 vertices") {
    const Triangulation t = triangular_lattice_disk(2);
    CHECK(t.V == 19);
}

TEST_CASE("triangular lattice interior degrees are all 6") {
    const Triangulation t = triangular_lattice_disk(3);
    const auto h = interior_degree_histogram(t);
    REQUIRE(h.size() == 1);
    CHECK(h.at(6) == 19);  // interior of B_3 is B_2
}

TEST_CASE("lattice growth is quadratic (log-log slope in [1.9, 2.1])") {
    const Triangulation t = triangular_lattice_disk(32);
    std::vector<double> lx, ly;
    for (int r = 8; r <= 32; ++r) {
        lx.push_back(std::log(r));
        ly.push_back(std::log(1.0 + 3.0 * r * (r + 1.0)));
    }
    const double slope = regression_slope(lx, ly);
    CHECK(slope > 1.9);
    CHECK(slope < 2.1);
}

TEST_CASE("7-regular triangulation r=1 is the wheel-7") {
    const Triangulation t = regular_hyperbolic_triangulation(7, 1);
    CHECK(t.V == 8);
    CHECK(t.degree(0) == 7);
    CHECK(t.boundary.size() == 7);
}

TEST_CASE("8-regular triangulation r=1 is the wheel-8") {
    const Triangulation t = regular_hyperbolic_triangulation(8, 1);
    CHECK(t.V == 9);
    CHECK(t.boundary.size() == 8);
}

TEST_CASE("7-regular triangulation has exact interior degrees and growing layers") {
    const Triangulation t = regular_hyperbolic_triangulation(7, 6);
    const auto h = interior_degree_histogram(t);
    REQUIRE(h.size() == 1);
    CHECK(h.begin()->first == 7);

    const auto rows = growth_profile(t, 0);
    REQUIRE(rows.size() == 7);
    double prev_ratio = 0.0;
    for (size_t i = 2; i < rows.size(); ++i) {
        const double ratio = static_cast<double>(rows[i].sphere_size) /
                             static_cast<double>(rows[i - 1].sphere_size);
        CHECK(rows[i].sphere_size > rows[i - 1].sphere_size);
        prev_ratio = ratio;
    }
    // Growth constant for d=7 is (3+sqrt(5))/2 ~ 2.618.
    CHECK(prev_ratio > 2.4);
    CHECK(prev_ratio < 2.8);
}

TEST_CASE("7-regular growth is exponential (log size linear in r)") {
    const Triangulation t = regular_hyperbolic_triangulation(7, 8);
    const auto rows = growth_profile(t, 0);
    std::vector<double> x, y;
    for (size_t i = 2; i < rows.size(); ++i) {
        x.push_back(static_cast<double>(rows[i].r));
        y.push_back(std::log(static_cast<double>(rows[i].ball_size)));
    }
    const double slope = regression_slope(x, y);
    CHECK(slope > 0.8);  // log growth rate near log(2.618) ~ 0.96
}

TEST_CASE("d >= 7 required for the hyperbolic family") {
    CHECK_THROWS_AS(regular_hyperbolic_triangulation(6, 2), ConfigError);
}

TEST_CASE("mixed-degree family is a valid triangulation with sparse defects") {
    const Triangulation t = mixed_degree_triangulation(8, 42);
    const auto h = interior_degree_histogram(t);
    CHECK(h.count(6) == 1);
    CHECK(h.count(7) == 1);
    int total = 0, defects = 0;
    for (const auto& [deg, count] : h) {
        total += count;
        if (deg == 7) defects += count;
    }
    CHECK(defects > 0);
    CHECK(defects < total / 4);
}

TEST_CASE("generator determinism: same spec and seed give identical bytes") {
    GeneratorSpec spec;
    spec.family = "mixed-degree";
    spec.size = 5;
    spec.seed = 1234;
    CHECK(generate_serialized(spec) == generate_serialized(spec));
    spec.seed = 1235;
    const std::string other = generate_serialized(spec);
    GeneratorSpec back = spec;
    back.seed = 1234;
    CHECK(other != generate_serialized(back));
}

TEST_CASE("ladder graph is a marked path") {
    const PlanarNetwork net = ladder_graph(3);
    CHECK(net.vertex_count() == 4);
    CHECK(net.edge_count() == 3);
    CHECK(net.source == std::vector<int>{0});
    CHECK(net.sink == std::vector<int>{3});
    CHECK(net.outer.size() == 6);  // each edge walked twice
}

TEST_CASE("grid with poles marks full columns") {
    const PlanarNetwork net = grid_with_poles(3, 4);
    CHECK(net.vertex_count() == 12);
    CHECK(net.edge_count() == 3 * 3 + 2 * 4);
    CHECK(net.source.size() == 3);
    CHECK(net.sink.size() == 3);
    for (int v : net.source) CHECK(v % 4 == 0);
    for (int v : net.sink) CHECK(v % 4 == 3);
}

TEST_CASE("single-row grid is a path") {
    const PlanarNetwork net = grid_with_poles(1, 5);
    CHECK(net.vertex_count() == 5);
    CHECK(net.edge_count() == 4);
}

TEST_CASE("parallel paths network") {
    const PlanarNetwork net = parallel_paths(2, 2);
    CHECK(net.vertex_count() == 4);
    CHECK(net.edge_count() == 4);
}

TEST_CASE("lattice rhombus validates and marks sides") {
    const RhombusGraph rg = lattice_rhombus(4);
    CHECK(rg.t.V == 16);
    CHECK(rg.left.size() == 4);
    CHECK(rg.right.size() == 4);
    // Interior vertices of the rhombus have degree 6.
    const auto h = interior_degree_histogram(rg.t);
    REQUIRE(h.size() == 1);
    CHECK(h.at(6) == 4);
}

TEST_CASE("unknown family rejected") {
    GeneratorSpec spec;
    spec.family = "dodecahedral";
    CHECK_THROWS_AS(generate_serialized(spec), ConfigError);
}

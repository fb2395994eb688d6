#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/stats.hpp"

namespace percolab {

struct Tile {
    double x = 0.0;  // lower-left corner
    double y = 0.0;
    double side = 0.0;
    int edge_u = -1;  // source-side endpoint of the generating edge
    int edge_v = -1;
};

struct SquareTiling {
    double width = 0.0;   // potential axis, normalized to 1
    double height = 0.0;  // total current = 1 / R_eff
    std::vector<Tile> tiles;
    std::vector<std::pair<int, int>> contacts;  // positive-length shared segments
    int max_corner_incidence = 0;
    int dropped_zero_current = 0;
    double area_residual = 0.0;  // |sum(side^2) - width*height| / (width*height)
};

// Segment-contact tolerance on unit-width-normalized coordinates.
constexpr double kContactTol = 1e-9;

// One square per edge carrying current; side = |current| under a unit
// potential gap, x-extent = the edge's potential interval, y from the dual
// potential on faces. Zero-current edges (|i| < 1e-12) are dropped and counted.
SquareTiling tile_from_two_terminal(const PlanarNetwork& net, double tol = 1e-10);

struct Conjecture2Report {
    int max_corner_incidence = 0;
    bool pass = false;  // at most 3 tiles meet at any corner
    double area_residual = 0.0;
    int overlap_pairs = 0;
    bool inside_rectangle = true;
};

Conjecture2Report validate_conjecture2_conditions(const SquareTiling& tiling);

struct TileColoring {
    std::vector<uint8_t> black;
    double p = 0.5;
    uint64_t seed = 0;
    uint64_t trial = 0;
};

TileColoring sample_coloring(const SquareTiling& tiling, double p, uint64_t seed,
                             uint64_t trial = 0);

// True iff black contact-adjacent tiles connect x = 0 to x = width.
bool left_right_crossing(const SquareTiling& tiling, const TileColoring& coloring);

EstimateWithCI crossing_probability_tiling(const SquareTiling& tiling, double p,
                                           uint64_t trials, uint64_t seed);

// Exact crossing probability by enumerating all 2^tiles colorings.
double exact_crossing_probability(const SquareTiling& tiling, double p);

// Geometry-only (re)computation used by both the builder and the validator.
void recompute_contacts(SquareTiling* tiling);

std::string tiling_to_json(const SquareTiling& tiling);
SquareTiling tiling_from_json(const std::string& text);

}  // namespace percolab

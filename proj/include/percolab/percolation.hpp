#pragma once

#include <cstdint>
#include <vector>

#include "percolab/generators.hpp"
#include "percolab/graph.hpp"
#include "percolab/stats.hpp"

namespace percolab {

struct SiteConfiguration {
    std::vector<uint8_t> open;
    double p = 0.5;
    uint64_t seed = 0;
    uint64_t trial = 0;
};

// Counter-based: vertex v's flag depends only on (seed, trial, v), so the
// open set at p is a subset of the open set at p' >= p for a shared seed.
SiteConfiguration sample_sites(int vertex_count, double p, uint64_t seed, uint64_t trial = 0);

struct ClusterLabeling {
    std::vector<int> label;          // -1 for closed vertices
    std::vector<long long> sizes;    // per cluster id
};

// Union-find labels normalized to first-seen order (equals BFS labeling).
ClusterLabeling clusters(const std::vector<std::vector<int>>& adjacency,
                         const SiteConfiguration& config);

// Fraction of trials in which the center is open and its open cluster reaches
// graph distance exactly r from the center.
EstimateWithCI one_arm_probability(const Triangulation& t, int center, int r, double p,
                                   uint64_t trials, uint64_t seed);

// Mean number of clusters inside B_r(center) whose double-BFS diameter
// estimate is >= r/2.
MeanWithCI macroscopic_cluster_count(const Triangulation& t, int center, int r, double p,
                                     uint64_t trials, uint64_t seed);

// Open path between two site sets inside the graph.
EstimateWithCI set_to_set_crossing(const std::vector<std::vector<int>>& adjacency,
                                   const std::vector<int>& from, const std::vector<int>& to,
                                   double p, uint64_t trials, uint64_t seed);

// Arcs are index ranges [begin, end) into the boundary cycle, in cyclic order.
struct BoundaryArcs {
    int a_begin = 0, a_end = 0;
    int b_begin = 0, b_end = 0;
    int c_begin = 0, c_end = 0;
    int d_begin = 0, d_end = 0;
};

BoundaryArcs quarter_arcs(int boundary_size);

EstimateWithCI boundary_arc_crossing(const Triangulation& t, const BoundaryArcs& arcs, double p,
                                     uint64_t trials, uint64_t seed);

struct PcSweepRow {
    int size = 0;
    double p = 0.0;
    EstimateWithCI crossing;
};

struct PcSweepResult {
    std::vector<PcSweepRow> rows;
    double pc_estimate = 0.0;
    double pc_lo = 0.0;
    double pc_hi = 0.0;
};

// Crossing-statistic sweep over a size ladder and p grid; pc estimate is the
// crossing-probability-1/2 intercept at the largest size with a bootstrap CI.
// family: "triangular-lattice" (rhombus left-right crossing) or "d-regular"
// (ball with quartered boundary arcs, A to C crossing).
PcSweepResult pc_sweep(const std::string& family, int degree, const std::vector<int>& sizes,
                       const std::vector<double>& p_grid, uint64_t trials, uint64_t seed);

}  // namespace percolab

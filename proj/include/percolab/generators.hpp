#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

// Families the experiments quantify over. size = ball radius for the
// triangulation families; degree only applies to d-regular; seed only to
// randomized families (mixed-degree).
struct GeneratorSpec {
    std::string family;  // triangular-lattice-disk | d-regular-hyperbolic |
                         // mixed-degree | ladder | grid-with-poles
    int size = 1;
    int degree = 7;
    int rows = 1;  // grid-with-poles
    int cols = 1;
    uint64_t seed = 0;
};

// Disk of the triangular lattice: all interior degrees 6, |B_r| = 1+3r(r+1),
// vertex 0 is the center.
Triangulation triangular_lattice_disk(int r);

// Ball of radius r in the d-regular triangulation (d >= 7), built layer by
// layer; every interior vertex has degree exactly d, vertex 0 is the root.
Triangulation regular_hyperbolic_triangulation(int d, int r);

// Triangular lattice with sparse degree-7 defects; defect probability decays
// polynomially with the layer index, controlled by seed.
Triangulation mixed_degree_triangulation(int r, uint64_t seed);

// n x n rhombus of the triangular lattice with its left/right columns marked;
// the self-dual crossing shape.
struct RhombusGraph {
    Triangulation t;
    std::vector<int> left;
    std::vector<int> right;
    std::vector<int> bottom;
    std::vector<int> top;
};
RhombusGraph lattice_rhombus(int n);

// Path of k unit edges with endpoints marked source/sink.
PlanarNetwork ladder_graph(int k);

// count vertex-disjoint paths of `length` edges between the two poles.
PlanarNetwork parallel_paths(int count, int length);

// n x m grid; left column is the source set, right column the sink set.
PlanarNetwork grid_with_poles(int n, int m);

// Dispatch on GeneratorSpec; returns the serialized text-format graph.
std::string generate_serialized(const GeneratorSpec& spec);

}  // namespace percolab

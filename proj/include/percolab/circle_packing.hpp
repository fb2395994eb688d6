#pragma once

#include <string>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

struct CirclePacking {
    std::vector<double> radius;
    std::vector<double> cx;
    std::vector<double> cy;
    double max_angle_error = 0.0;     // radians, over interior vertices
    double max_tangency_error = 0.0;  // relative, over edges
    int sweeps = 0;
    bool error_monotone = true;  // max angle error non-increasing across sweeps
};

// Angle sum of the packing flower at v for the given radii.
double angle_sum(const Triangulation& t, const std::vector<double>& radii, int v);

// Uniform-neighbor angle-sum relaxation with guarded acceleration supersteps.
// Boundary radii are fixed; interior radii end with |angle sum - 2pi| <= tol.
// Layout anchors vertex 0 at the origin with its first neighbor on +x.
CirclePacking pack(const Triangulation& t, const std::vector<double>& boundary_radii,
                   double tol = 1e-10, long long max_sweeps = 1000000);

struct PackingReport {
    double max_angle_error = 0.0;
    double max_tangency_error = 0.0;
    int overlap_violations = 0;  // non-adjacent circle pairs overlapping beyond tol
    bool matches_stored = false; // recomputed maxima agree with stored to 1e-12
};

PackingReport validate_packing(const CirclePacking& packing, const Triangulation& t,
                               double tol = 1e-10);

std::string packing_to_json(const CirclePacking& packing);
CirclePacking packing_from_json(const std::string& text);

}  // namespace percolab

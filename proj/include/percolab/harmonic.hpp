#pragma once

#include <string>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

// Unit-conductance weighted graph view shared by the solver entry points.
// Adjacency is whatever rotation/neighbor lists the caller has.
struct HarmonicSolution {
    std::vector<double> potential;   // volts, per vertex
    std::vector<uint8_t> fixed;      // Dirichlet vertices
    double dirichlet_energy = 0.0;   // sum over edges of (dphi)^2
    double residual_norm = 0.0;      // max |net current| over free vertices
    int iterations = 0;

    // Currents are derived, so antisymmetry i(u->v) = -i(v->u) is exact.
    double current(int u, int v) const { return potential[u] - potential[v]; }
};

struct DirichletProblem {
    const std::vector<std::vector<int>>* adjacency = nullptr;
    std::vector<int> fixed_vertices;
    std::vector<double> fixed_values;
    double tol = 1e-10;
};

// Conjugate gradient with Jacobi preconditioning on the interior block of the
// graph Laplacian; iteration budget 20*V. Throws NumericalError on
// non-convergence and ValidationError if a free component has no boundary
// contact.
HarmonicSolution solve_dirichlet(const DirichletProblem& p);

double effective_resistance(const std::vector<std::vector<int>>& adjacency,
                            const std::vector<int>& source, const std::vector<int>& sink,
                            double tol = 1e-10);

struct ResistanceCurve {
    std::vector<int> radius;
    std::vector<double> resistance;  // root <-> sphere at radius, within B_r
};

enum class WalkVerdict { kRecurrentLike, kTransientLike };

std::string verdict_name(WalkVerdict v);

// Resistance curve from `center` out to r_max plus the heuristic dichotomy
// verdict: transient-like iff R(r_max) - R(r_max/2) < 0.05 * R(r_max/2).
std::pair<ResistanceCurve, WalkVerdict> classify_walk(const Triangulation& t, int center,
                                                      int r_max, double tol = 1e-10);

}  // namespace percolab

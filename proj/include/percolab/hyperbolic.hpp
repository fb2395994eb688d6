#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "percolab/stats.hpp"

namespace percolab {

// Four marked points on the circle at infinity, strictly cyclically ordered;
// arcs A=(a,b), B=(b,c), C=(c,d), D=(d,a) going counterclockwise.
struct IdealBoundaryQuad {
    double a, b, c, d;  // radians
};

IdealBoundaryQuad make_quad(double a, double b, double c, double d);

// eta = (z_c - z_b)(z_d - z_a) / ((z_c - z_a)(z_d - z_b)) on unit-circle
// points; real in (0,1) for cyclically ordered quads. Swapping the roles of
// (A,C) and (B,D) maps eta to 1 - eta.
double cross_ratio(const IdealBoundaryQuad& q);

// Conformal modulus governing the A<->C crossing: the Cardy prediction for
// the crossing probability is cardy(crossing_modulus(q)) = cardy(1 - eta).
double crossing_modulus(const IdealBoundaryQuad& q);

// Cardy's crossing function: the constant times eta^{1/3} 2F1(1/3,2/3;4/3;eta);
// monotone increasing with P(eta) + P(1-eta) = 1.
double cardy(double eta);

// Disc automorphism z -> e^{i rot}(z - w)/(1 - conj(w) z) applied to a
// boundary angle.
double apply_mobius(double angle, std::complex<double> w, double rot);
IdealBoundaryQuad apply_mobius(const IdealBoundaryQuad& q, std::complex<double> w, double rot);

// cosh of the hyperbolic distance between Poincare-disc points.
double cosh_hyperbolic_distance(double ux, double uy, double vx, double vy);

struct PoissonSample {
    double lambda = 0.0;
    double truncation_radius = 0.0;  // hyperbolic
    uint64_t seed = 0;
    uint64_t trial = 0;
    std::vector<double> rho;    // hyperbolic radius, <= R
    std::vector<double> theta;  // angle
};

// Bounded density reweighting against the uniform hyperbolic measure.
struct DensityWeight {
    std::function<double(double rho, double theta)> w;  // values in [1/M, M]
    double bound = 1.0;                                 // M
};

// Unweighted: count ~ Poisson(lambda * 2pi(cosh R - 1)), radius by inverse
// CDF, angle uniform. Weighted: candidates at intensity M*lambda thinned by
// w/M. M == 1 takes the unweighted path exactly.
PoissonSample sample_poisson_hyperbolic(double lambda, double R, uint64_t seed, uint64_t trial = 0,
                                        const DensityWeight* weight = nullptr);

// Deterministic Poisson count sampler used above (exposed for tests).
uint64_t poisson_count(double mean, class SplitMix& rng);

enum ArcBit : uint8_t { kArcA = 1, kArcB = 2, kArcC = 4, kArcD = 8 };

struct VoronoiTessellation {
    std::vector<double> x, y;          // Poincare coordinates per site
    std::vector<double> rho, theta;    // hyperbolic polar per site
    std::vector<int> adj_offset;       // Delaunay adjacency, CSR
    std::vector<int> adj_neighbor;
    std::vector<uint8_t> exposed;      // ideal exposure flag
    std::vector<uint8_t> arc_incidence;  // ArcBit mask
    std::vector<uint8_t> black;          // colors, filled by color_tessellation
    int degenerate_ties = 0;
};

// Euclidean Delaunay of the Poincare coordinates; a site is incident to arc X
// iff it is ideal-exposed, its angle lies in X, and rho >= R - 1.
VoronoiTessellation build_tessellation(const PoissonSample& sample, const IdealBoundaryQuad& quad,
                                       uint64_t tie_seed);

void color_tessellation(VoronoiTessellation* tess, double p, uint64_t seed, uint64_t trial);

// Black Delaunay path between A-incident and C-incident sites in one sampled
// tessellation. Returns -1 if an arc has no incident sites (excluded trial).
int crossing_trial(const IdealBoundaryQuad& quad, double lambda, double R, double p,
                   uint64_t seed, uint64_t trial, const DensityWeight* weight = nullptr);

struct HyperbolicCrossing {
    EstimateWithCI estimate;   // over non-excluded trials
    uint64_t excluded = 0;
    double lambda = 0.0;
    double R = 0.0;
    double eta = 0.0;    // crossing modulus of the quad
    double cardy_value = 0.0;
};

HyperbolicCrossing crossing_probability_hyperbolic(const IdealBoundaryQuad& quad, double lambda,
                                                   double R, uint64_t trials, uint64_t seed,
                                                   double p = 0.5,
                                                   const DensityWeight* weight = nullptr,
                                                   int workers = 1);

// Truncation radius rule: R = max(4, ln(lambda)/2 + 4); the unit-width
// incidence collar then stays far thicker than the ~lambda^{-1/2} cell size.
double default_truncation_radius(double lambda);

struct LadderRow {
    double lambda = 0.0;
    double R = 0.0;
    double eta = 0.0;
    HyperbolicCrossing crossing;
    double gap = 0.0;  // |estimate - cardy|
};

std::vector<LadderRow> lambda_ladder(const IdealBoundaryQuad& quad,
                                     const std::vector<double>& lambdas, uint64_t trials,
                                     uint64_t seed, double p = 0.5, int workers = 1);

}  // namespace percolab

#include "percolab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "percolab/common.hpp"
#include "percolab/delaunay.hpp"
#include "percolab/parallel.hpp"
#include "percolab/rng.hpp"

namespace percolab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

// CCW arc length from a to b.
double arc_gap(double a, double b) {
    double g = wrap_angle(b - a);
    return g;
}

bool angle_in_arc(double theta, double from, double to) {
    return arc_gap(from, theta) < arc_gap(from, to);
}

}  // namespace

IdealBoundaryQuad make_quad(double a, double b, double c, double d) {
    IdealBoundaryQuad q{wrap_angle(a), wrap_angle(b), wrap_angle(c), wrap_angle(d)};
    const double ab = arc_gap(q.a, q.b), bc = arc_gap(q.b, q.c), cd = arc_gap(q.c, q.d),
                 da = arc_gap(q.d, q.a);
    if (!(ab > 0 && bc > 0 && cd > 0 && da > 0) ||
        std::fabs(ab + bc + cd + da - kTwoPi) > 1e-9)
        throw ConfigError("make_quad: angles not strictly cyclically ordered");
    return q;
}

double cross_ratio(const IdealBoundaryQuad& q) {
    const std::complex<double> za = std::polar(1.0, q.a);
    const std::complex<double> zb = std::polar(1.0, q.b);
    const std::complex<double> zc = std::polar(1.0, q.c);
    const std::complex<double> zd = std::polar(1.0, q.d);
    if (za == zb || zb == zc || zc == zd || zd == za)
        throw ConfigError("cross_ratio: coincident boundary points");
    const std::complex<double> num = (zc - zb) * (zd - za);
    const std::complex<double> den = (zc - za) * (zd - zb);
    const std::complex<double> eta = num / den;
    return eta.real();
}

double crossing_modulus(const IdealBoundaryQuad& q) { return 1.0 - cross_ratio(q); }

double cardy(double eta) {
    if (eta < 0.0 || eta > 1.0) throw ConfigError("cardy: eta outside [0,1]");
    if (eta == 0.0) return 0.0;
    if (eta == 1.0) return 1.0;
    // Gauss series for 2F1(1/3, 2/3; 4/3; eta); all terms positive.
    const double a = 1.0 / 3.0, b = 2.0 / 3.0, c = 4.0 / 3.0;
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 100000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * eta;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    const double prefactor =
        std::tgamma(2.0 / 3.0) / (std::tgamma(1.0 / 3.0) * std::tgamma(4.0 / 3.0));
    const double v = prefactor * std::cbrt(eta) * sum;
    return std::clamp(v, 0.0, 1.0);
}

double apply_mobius(double angle, std::complex<double> w, double rot) {
    if (std::abs(w) >= 1.0) throw ConfigError("apply_mobius: |w| must be < 1");
    const std::complex<double> z = std::polar(1.0, angle);
    const std::complex<double> image = std::polar(1.0, rot) * (z - w) / (1.0 - std::conj(w) * z);
    return wrap_angle(std::arg(image));
}

IdealBoundaryQuad apply_mobius(const IdealBoundaryQuad& q, std::complex<double> w, double rot) {
    return make_quad(apply_mobius(q.a, w, rot), apply_mobius(q.b, w, rot),
                     apply_mobius(q.c, w, rot), apply_mobius(q.d, w, rot));
}

double cosh_hyperbolic_distance(double ux, double uy, double vx, double vy) {
    const double du = 1.0 - (ux * ux + uy * uy);
    const double dv = 1.0 - (vx * vx + vy * vy);
    const double d2 = (ux - vx) * (ux - vx) + (uy - vy) * (uy - vy);
    return 1.0 + 2.0 * d2 / (du * dv);
}

uint64_t poisson_count(double mean, SplitMix& rng) {
    if (mean < 0) throw ConfigError("poisson_count: negative mean");
    // Sum of Poisson chunks with mean <= 60 keeps the Knuth product in range.
    uint64_t total = 0;
    double remaining = mean;
    while (remaining > 0) {
        const double chunk = std::min(remaining, 60.0);
        remaining -= chunk;
        const double limit = std::exp(-chunk);
        double prod = rng.uniform_pos();
        uint64_t k = 0;
        while (prod > limit) {
            ++k;
            prod *= rng.uniform_pos();
        }
        total += k;
    }
    return total;
}

PoissonSample sample_poisson_hyperbolic(double lambda, double R, uint64_t seed, uint64_t trial,
                                        const DensityWeight* weight) {
    if (!(lambda > 0) || R < 0) throw ConfigError("sample_poisson_hyperbolic: bad lambda or R");
    PoissonSample s;
    s.lambda = lambda;
    s.truncation_radius = R;
    s.seed = seed;
    s.trial = trial;
    if (R == 0.0) return s;

    SplitMix rng(trial_stream_seed(seed, static_cast<uint64_t>(StreamTag::kPoisson), trial));
    const double area = kTwoPi * (std::cosh(R) - 1.0);
    const double M = weight ? weight->bound : 1.0;
    if (weight && !(M >= 1.0)) throw ConfigError("sample_poisson_hyperbolic: bound M must be >= 1");

    const bool thinning = weight && M != 1.0;
    const uint64_t n = poisson_count((thinning ? M : 1.0) * lambda * area, rng);
    const double cosh_r_minus_1 = std::cosh(R) - 1.0;
    s.rho.reserve(n);
    s.theta.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const double rho = std::acosh(1.0 + u * cosh_r_minus_1);
        const double theta = kTwoPi * rng.uniform();
        if (thinning) {
            const double wv = weight->w(rho, theta);
            if (!(wv >= 1.0 / M - 1e-12 && wv <= M + 1e-12))
                throw ConfigError("sample_poisson_hyperbolic: weight outside [1/M, M]");
            if (rng.uniform() >= wv / M) continue;
        } else if (weight) {
            // M == 1 forces w == 1; identical stream to the unweighted path.
            const double wv = weight->w(rho, theta);
            if (std::fabs(wv - 1.0) > 1e-12)
                throw ConfigError("sample_poisson_hyperbolic: M = 1 requires w == 1");
        }
        s.rho.push_back(rho);
        s.theta.push_back(theta);
    }
    return s;
}

VoronoiTessellation build_tessellation(const PoissonSample& sample, const IdealBoundaryQuad& quad,
                                       uint64_t tie_seed) {
    VoronoiTessellation tess;
    const size_t n = sample.rho.size();
    tess.x.resize(n);
    tess.y.resize(n);
    tess.rho = sample.rho;
    tess.theta = sample.theta;
    for (size_t i = 0; i < n; ++i) {
        const double r_euclid = std::tanh(sample.rho[i] / 2.0);
        tess.x[i] = r_euclid * std::cos(sample.theta[i]);
        tess.y[i] = r_euclid * std::sin(sample.theta[i]);
    }
    if (n < 2) {
        tess.adj_offset.assign(n + 1, 0);
        tess.exposed.assign(n, 1);
        tess.arc_incidence.assign(n, 0);
        tess.black.assign(n, 0);
        const double collar = sample.truncation_radius - 1.0;
        for (size_t i = 0; i < n; ++i) {
            if (sample.rho[i] < collar) continue;
            uint8_t bits = 0;
            if (angle_in_arc(sample.theta[i], quad.a, quad.b)) bits |= kArcA;
            if (angle_in_arc(sample.theta[i], quad.b, quad.c)) bits |= kArcB;
            if (angle_in_arc(sample.theta[i], quad.c, quad.d)) bits |= kArcC;
            if (angle_in_arc(sample.theta[i], quad.d, quad.a)) bits |= kArcD;
            tess.arc_incidence[i] = bits;
        }
        return tess;
    }

    Delaunay dt(tess.x, tess.y, tie_seed);
    auto adj = dt.site_adjacency();
    tess.adj_offset = std::move(adj.offset);
    tess.adj_neighbor = std::move(adj.neighbor);
    tess.exposed = dt.exposed_sites();
    tess.degenerate_ties = dt.tie_breaks();

    tess.arc_incidence.assign(n, 0);
    const double collar = sample.truncation_radius - 1.0;
    for (size_t i = 0; i < n; ++i) {
        if (!tess.exposed[i] || sample.rho[i] < collar) continue;
        uint8_t bits = 0;
        if (angle_in_arc(sample.theta[i], quad.a, quad.b)) bits |= kArcA;
        if (angle_in_arc(sample.theta[i], quad.b, quad.c)) bits |= kArcB;
        if (angle_in_arc(sample.theta[i], quad.c, quad.d)) bits |= kArcC;
        if (angle_in_arc(sample.theta[i], quad.d, quad.a)) bits |= kArcD;
        tess.arc_incidence[i] = bits;
    }
    tess.black.assign(n, 0);
    return tess;
}

void color_tessellation(VoronoiTessellation* tess, double p, uint64_t seed, uint64_t trial) {
    if (p < 0.0 || p > 1.0) throw ConfigError("color_tessellation: p outside [0,1]");
    const CounterRng rng(seed, static_cast<uint64_t>(StreamTag::kCellColors));
    const size_t n = tess->x.size();
    tess->black.resize(n);
    for (size_t i = 0; i < n; ++i) tess->black[i] = rng.uniform(trial, i) < p ? 1 : 0;
}

int crossing_trial(const IdealBoundaryQuad& quad, double lambda, double R, double p,
                   uint64_t seed, uint64_t trial, const DensityWeight* weight) {
    const PoissonSample sample = sample_poisson_hyperbolic(lambda, R, seed, trial, weight);
    VoronoiTessellation tess = build_tessellation(
        sample, quad, trial_stream_seed(seed, static_cast<uint64_t>(StreamTag::kDelaunayTies), trial));
    color_tessellation(&tess, p, seed, trial);

    const size_t n = tess.x.size();
    bool has_a = false, has_c = false;
    for (size_t i = 0; i < n; ++i) {
        if (tess.arc_incidence[i] & kArcA) has_a = true;
        if (tess.arc_incidence[i] & kArcC) has_c = true;
    }
    if (!has_a || !has_c) return -1;

    std::vector<uint8_t> seen(n, 0);
    std::vector<int> queue;
    for (size_t i = 0; i < n; ++i) {
        if ((tess.arc_incidence[i] & kArcA) && tess.black[i]) {
            seen[i] = 1;
            queue.push_back(static_cast<int>(i));
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        if (tess.arc_incidence[static_cast<size_t>(v)] & kArcC) return 1;
        for (int k = tess.adj_offset[static_cast<size_t>(v)]; k < tess.adj_offset[static_cast<size_t>(v) + 1]; ++k) {
            const int u = tess.adj_neighbor[static_cast<size_t>(k)];
            if (!seen[static_cast<size_t>(u)] && tess.black[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = 1;
                queue.push_back(u);
            }
        }
    }
    return 0;
}

HyperbolicCrossing crossing_probability_hyperbolic(const IdealBoundaryQuad& quad, double lambda,
                                                   double R, uint64_t trials, uint64_t seed,
                                                   double p, const DensityWeight* weight,
                                                   int workers) {
    if (trials < 1) throw ConfigError("crossing_probability_hyperbolic: trials >= 1");
    std::vector<int8_t> outcome(trials, 0);
    parallel_trials(workers, trials, [&](uint64_t trial) {
        outcome[trial] = static_cast<int8_t>(crossing_trial(quad, lambda, R, p, seed, trial, weight));
    });
    uint64_t successes = 0, excluded = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        if (outcome[t] < 0)
            ++excluded;
        else if (outcome[t] == 1)
            ++successes;
    }
    if (excluded == trials)
        throw NumericalError("crossing_probability_hyperbolic: every trial excluded (R too small "
                             "or lambda too low)");
    HyperbolicCrossing hc;
    hc.estimate = make_estimate(successes, trials - excluded);
    hc.excluded = excluded;
    hc.lambda = lambda;
    hc.R = R;
    hc.eta = crossing_modulus(quad);
    hc.cardy_value = cardy(hc.eta);
    return hc;
}

double default_truncation_radius(double lambda) {
    return std::max(4.0, 0.5 * std::log(lambda) + 4.0);
}

std::vector<LadderRow> lambda_ladder(const IdealBoundaryQuad& quad,
                                     const std::vector<double>& lambdas, uint64_t trials,
                                     uint64_t seed, double p, int workers) {
    if (lambdas.empty()) throw ConfigError("lambda_ladder: empty lambda list");
    for (size_t i = 1; i < lambdas.size(); ++i)
        if (lambdas[i] <= lambdas[i - 1]) throw ConfigError("lambda_ladder: lambdas must increase");
    std::vector<LadderRow> rows;
    for (double lambda : lambdas) {
        LadderRow row;
        row.lambda = lambda;
        row.R = default_truncation_radius(lambda);
        row.crossing =
            crossing_probability_hyperbolic(quad, lambda, row.R, trials, seed, p, nullptr, workers);
        row.eta = row.crossing.eta;
        row.gap = std::fabs(row.crossing.estimate.estimate - row.crossing.cardy_value);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace percolab

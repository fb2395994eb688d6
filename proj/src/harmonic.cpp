#include "percolab/harmonic.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "percolab/common.hpp"

namespace percolab {

HarmonicSolution solve_dirichlet(const DirichletProblem& p) {
    const auto& adj = *p.adjacency;
    const int V = static_cast<int>(adj.size());
    if (p.fixed_vertices.empty()) throw ConfigError("solve_dirichlet: no boundary vertices");
    if (p.fixed_vertices.size() != p.fixed_values.size())
        throw ConfigError("solve_dirichlet: boundary size mismatch");
    if (!(p.tol > 0)) throw ConfigError("solve_dirichlet: tol must be positive");

    HarmonicSolution sol;
    sol.potential.assign(static_cast<size_t>(V), 0.0);
    sol.fixed.assign(static_cast<size_t>(V), 0);
    for (size_t i = 0; i < p.fixed_vertices.size(); ++i) {
        const int v = p.fixed_vertices[i];
        if (v < 0 || v >= V) throw ConfigError("solve_dirichlet: boundary vertex out of range");
        sol.fixed[static_cast<size_t>(v)] = 1;
        sol.potential[static_cast<size_t>(v)] = p.fixed_values[i];
    }

    std::vector<int> free_index(static_cast<size_t>(V), -1);
    std::vector<int> free_vertices;
    for (int v = 0; v < V; ++v) {
        if (!sol.fixed[static_cast<size_t>(v)]) {
            free_index[static_cast<size_t>(v)] = static_cast<int>(free_vertices.size());
            free_vertices.push_back(v);
        }
    }

    // Every free vertex must reach a fixed vertex.
    {
        std::vector<uint8_t> reached(static_cast<size_t>(V), 0);
        std::vector<int> queue;
        for (int v : p.fixed_vertices) {
            if (!reached[static_cast<size_t>(v)]) {
                reached[static_cast<size_t>(v)] = 1;
                queue.push_back(v);
            }
        }
        for (size_t head = 0; head < queue.size(); ++head)
            for (int w : adj[static_cast<size_t>(queue[head])])
                if (!reached[static_cast<size_t>(w)]) {
                    reached[static_cast<size_t>(w)] = 1;
                    queue.push_back(w);
                }
        for (int v : free_vertices)
            if (!reached[static_cast<size_t>(v)])
                throw ValidationError("solve_dirichlet: free component without boundary contact");
    }

    const int nfree = static_cast<int>(free_vertices.size());
    if (nfree > 0) {
        Eigen::SparseMatrix<double> L(nfree, nfree);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(nfree);
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<size_t>(nfree) * 8);
        for (int fi = 0; fi < nfree; ++fi) {
            const int v = free_vertices[static_cast<size_t>(fi)];
            double deg = 0.0;
            for (int w : adj[static_cast<size_t>(v)]) {
                deg += 1.0;
                const int fj = free_index[static_cast<size_t>(w)];
                if (fj >= 0)
                    trip.emplace_back(fi, fj, -1.0);
                else
                    b[fi] += sol.potential[static_cast<size_t>(w)];
            }
            trip.emplace_back(fi, fi, deg);
        }
        L.setFromTriplets(trip.begin(), trip.end());

        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                                 Eigen::DiagonalPreconditioner<double>>
            cg;
        cg.setMaxIterations(20 * std::max(V, 1));
        cg.setTolerance(p.tol);
        cg.compute(L);
        Eigen::VectorXd x = cg.solve(b);
        sol.iterations = static_cast<int>(cg.iterations());
        if (cg.info() != Eigen::Success)
            throw NumericalError("solve_dirichlet: CG did not converge, residual " +
                                 std::to_string(cg.error()));
        for (int fi = 0; fi < nfree; ++fi)
            sol.potential[static_cast<size_t>(free_vertices[static_cast<size_t>(fi)])] = x[fi];
    }

    double energy = 0.0;
    double residual = 0.0;
    for (int v = 0; v < V; ++v) {
        double net = 0.0;
        for (int w : adj[static_cast<size_t>(v)]) {
            const double d = sol.potential[static_cast<size_t>(v)] - sol.potential[static_cast<size_t>(w)];
            net += d;
            if (w > v) energy += d * d;
        }
        if (!sol.fixed[static_cast<size_t>(v)]) residual = std::max(residual, std::fabs(net));
    }
    sol.dirichlet_energy = energy;
    sol.residual_norm = residual;
    return sol;
}

double effective_resistance(const std::vector<std::vector<int>>& adjacency,
                            const std::vector<int>& source, const std::vector<int>& sink,
                            double tol) {
    if (source.empty() || sink.empty()) throw ConfigError("effective_resistance: empty pole set");
    for (int s : source)
        for (int t : sink)
            if (s == t) throw ConfigError("effective_resistance: poles not disjoint");

    DirichletProblem p;
    p.adjacency = &adjacency;
    p.tol = tol;
    for (int s : source) {
        p.fixed_vertices.push_back(s);
        p.fixed_values.push_back(0.0);
    }
    for (int t : sink) {
        p.fixed_vertices.push_back(t);
        p.fixed_values.push_back(1.0);
    }
    const HarmonicSolution sol = solve_dirichlet(p);

    double current = 0.0;
    for (int s : source)
        for (int w : adjacency[static_cast<size_t>(s)])
            current += sol.potential[static_cast<size_t>(w)] - sol.potential[static_cast<size_t>(s)];
    if (current <= 0.0) throw NumericalError("effective_resistance: no current flows");

    // Unit potential gap: both identities R = gap/current and R = gap^2/energy
    // must agree.
    const double r1 = 1.0 / current;
    const double r2 = 1.0 / sol.dirichlet_energy;
    if (std::fabs(r1 - r2) > 1e6 * tol * std::max(r1, 1.0))
        throw NumericalError("effective_resistance: energy and current identities disagree");
    return r1;
}

std::string verdict_name(WalkVerdict v) {
    return v == WalkVerdict::kTransientLike ? "transient-like" : "recurrent-like";
}

std::pair<ResistanceCurve, WalkVerdict> classify_walk(const Triangulation& t, int center,
                                                      int r_max, double tol) {
    if (r_max < 4) throw ConfigError("classify_walk: r_max too small (need >= 4)");
    const std::vector<int> dist = bfs_distances(t, center);
    int ecc = 0;
    for (int v = 0; v < t.V; ++v) ecc = std::max(ecc, dist[v]);
    if (ecc < r_max)
        throw ConfigError("classify_walk: graph radius " + std::to_string(ecc) +
                          " smaller than r_max " + std::to_string(r_max));

    ResistanceCurve curve;
    for (int r = 1; r <= r_max; ++r) {
        auto [bt, dec] = ball(t, center, r);
        std::vector<int> sphere;
        for (int v = 0; v < bt.V; ++v)
            if (dec.distance[static_cast<size_t>(v)] == r) sphere.push_back(v);
        curve.radius.push_back(r);
        curve.resistance.push_back(effective_resistance(bt.rot, {dec.center}, sphere, tol));
    }
    const double r_full = curve.resistance[static_cast<size_t>(r_max - 1)];
    const double r_half = curve.resistance[static_cast<size_t>(r_max / 2 - 1)];
    const WalkVerdict verdict = (r_full - r_half) < 0.05 * r_half ? WalkVerdict::kTransientLike
                                                                  : WalkVerdict::kRecurrentLike;
    return {std::move(curve), verdict};
}

}  // namespace percolab

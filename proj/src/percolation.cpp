#include "percolab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "percolab/common.hpp"
#include "percolab/rng.hpp"

namespace percolab {

SiteConfiguration sample_sites(int vertex_count, double p, uint64_t seed, uint64_t trial) {
    if (p < 0.0 || p > 1.0) throw ConfigError("sample_sites: p outside [0,1]");
    SiteConfiguration cfg;
    cfg.p = p;
    cfg.seed = seed;
    cfg.trial = trial;
    cfg.open.resize(static_cast<size_t>(vertex_count));
    const CounterRng rng(seed, static_cast<uint64_t>(StreamTag::kSites));
    for (int v = 0; v < vertex_count; ++v)
        cfg.open[static_cast<size_t>(v)] = rng.uniform(trial, static_cast<uint64_t>(v)) < p ? 1 : 0;
    return cfg;
}

ClusterLabeling clusters(const std::vector<std::vector<int>>& adjacency,
                         const SiteConfiguration& config) {
    const int V = static_cast<int>(adjacency.size());
    if (static_cast<int>(config.open.size()) != V)
        throw ConfigError("clusters: configuration size mismatch");
    std::vector<int> parent(static_cast<size_t>(V));
    for (int v = 0; v < V; ++v) parent[static_cast<size_t>(v)] = v;
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (int v = 0; v < V; ++v) {
        if (!config.open[static_cast<size_t>(v)]) continue;
        for (int u : adjacency[static_cast<size_t>(v)]) {
            if (u < v || !config.open[static_cast<size_t>(u)]) continue;
            const int a = find(v), b = find(u);
            if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
        }
    }
    ClusterLabeling lab;
    lab.label.assign(static_cast<size_t>(V), -1);
    for (int v = 0; v < V; ++v) {
        if (!config.open[static_cast<size_t>(v)]) continue;
        const int root = find(v);
        if (lab.label[static_cast<size_t>(root)] < 0) {
            lab.label[static_cast<size_t>(root)] = static_cast<int>(lab.sizes.size());
            lab.sizes.push_back(0);
        }
        lab.label[static_cast<size_t>(v)] = lab.label[static_cast<size_t>(root)];
        ++lab.sizes[static_cast<size_t>(lab.label[static_cast<size_t>(v)])];
    }
    return lab;
}

namespace {

// BFS from `center` over open vertices restricted to distance <= r; true iff
// a distance-r vertex is reached. Scratch buffers avoid per-trial allocation.
struct OneArmScratch {
    std::vector<uint8_t> seen;
    std::vector<int> queue;
};

bool one_arm_trial(const Triangulation& t, const std::vector<int>& dist, int center, int r,
                   double p, const CounterRng& rng, uint64_t trial, OneArmScratch* scratch) {
    auto open = [&](int v) { return rng.uniform(trial, static_cast<uint64_t>(v)) < p; };
    if (!open(center)) return false;
    if (r == 0) return true;
    auto& seen = scratch->seen;
    auto& queue = scratch->queue;
    std::fill(seen.begin(), seen.end(), 0);
    queue.clear();
    seen[static_cast<size_t>(center)] = 1;
    queue.push_back(center);
    for (size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int u : t.rot[static_cast<size_t>(v)]) {
            if (seen[static_cast<size_t>(u)] || dist[static_cast<size_t>(u)] > r) continue;
            if (!open(u)) continue;
            if (dist[static_cast<size_t>(u)] == r) return true;
            seen[static_cast<size_t>(u)] = 1;
            queue.push_back(u);
        }
    }
    return false;
}

}  // namespace

EstimateWithCI one_arm_probability(const Triangulation& t, int center, int r, double p,
                                   uint64_t trials, uint64_t seed) {
    if (trials < 1) throw ConfigError("one_arm_probability: trials >= 1");
    const std::vector<int> dist = bfs_distances(t, center);
    int ecc = 0;
    for (int v = 0; v < t.V; ++v) ecc = std::max(ecc, dist[v]);
    if (r > ecc)
        throw ConfigError("one_arm_probability: r exceeds available radius " + std::to_string(ecc));
    const CounterRng rng(seed, static_cast<uint64_t>(StreamTag::kSites));
    OneArmScratch scratch;
    scratch.seen.assign(static_cast<size_t>(t.V), 0);
    uint64_t successes = 0;
    for (uint64_t trial = 0; trial < trials; ++trial)
        if (one_arm_trial(t, dist, center, r, p, rng, trial, &scratch)) ++successes;
    return make_estimate(successes, trials);
}

MeanWithCI macroscopic_cluster_count(const Triangulation& t, int center, int r, double p,
                                     uint64_t trials, uint64_t seed) {
    if (trials < 1) throw ConfigError("macroscopic_cluster_count: trials >= 1");
    const std::vector<int> dist = bfs_distances(t, center);
    int ecc = 0;
    for (int v = 0; v < t.V; ++v) ecc = std::max(ecc, dist[v]);
    if (r > ecc) throw ConfigError("macroscopic_cluster_count: r exceeds available radius");

    std::vector<int> ball_vertices;
    for (int v = 0; v < t.V; ++v)
        if (dist[v] <= r) ball_vertices.push_back(v);

    const CounterRng rng(seed, static_cast<uint64_t>(StreamTag::kSites));
    std::vector<double> counts;
    counts.reserve(trials);
    std::vector<int> comp(static_cast<size_t>(t.V));
    std::vector<int> bfs_dist(static_cast<size_t>(t.V));
    std::vector<int> queue;

    // BFS eccentricity within the open ball subgraph, from `start`.
    auto far_bfs = [&](int start, const std::vector<uint8_t>& open, int* far_vertex) {
        std::fill(bfs_dist.begin(), bfs_dist.end(), -1);
        queue.clear();
        bfs_dist[static_cast<size_t>(start)] = 0;
        queue.push_back(start);
        int best = start, bestd = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            for (int u : t.rot[static_cast<size_t>(v)]) {
                if (bfs_dist[static_cast<size_t>(u)] >= 0 || dist[static_cast<size_t>(u)] > r ||
                    !open[static_cast<size_t>(u)])
                    continue;
                bfs_dist[static_cast<size_t>(u)] = bfs_dist[static_cast<size_t>(v)] + 1;
                if (bfs_dist[static_cast<size_t>(u)] > bestd) {
                    bestd = bfs_dist[static_cast<size_t>(u)];
                    best = u;
                }
                queue.push_back(u);
            }
        }
        if (far_vertex) *far_vertex = best;
        return bestd;
    };

    for (uint64_t trial = 0; trial < trials; ++trial) {
        std::vector<uint8_t> open(static_cast<size_t>(t.V), 0);
        for (int v : ball_vertices)
            open[static_cast<size_t>(v)] = rng.uniform(trial, static_cast<uint64_t>(v)) < p ? 1 : 0;
        std::fill(comp.begin(), comp.end(), -1);
        int macroscopic = 0;
        for (int v : ball_vertices) {
            if (!open[static_cast<size_t>(v)] || comp[static_cast<size_t>(v)] >= 0) continue;
            // Mark the component, then double-BFS for the diameter estimate.
            queue.clear();
            comp[static_cast<size_t>(v)] = v;
            queue.push_back(v);
            for (size_t head = 0; head < queue.size(); ++head) {
                const int w = queue[head];
                for (int u : t.rot[static_cast<size_t>(w)]) {
                    if (comp[static_cast<size_t>(u)] >= 0 || dist[static_cast<size_t>(u)] > r ||
                        !open[static_cast<size_t>(u)])
                        continue;
                    comp[static_cast<size_t>(u)] = v;
                    queue.push_back(u);
                }
            }
            int far = v;
            far_bfs(v, open, &far);
            const int diam_est = far_bfs(far, open, nullptr);
            if (2 * diam_est >= r) ++macroscopic;
        }
        counts.push_back(static_cast<double>(macroscopic));
    }
    return make_mean_estimate(counts);
}

EstimateWithCI set_to_set_crossing(const std::vector<std::vector<int>>& adjacency,
                                   const std::vector<int>& from, const std::vector<int>& to,
                                   double p, uint64_t trials, uint64_t seed) {
    if (trials < 1) throw ConfigError("set_to_set_crossing: trials >= 1");
    if (from.empty() || to.empty()) throw ConfigError("set_to_set_crossing: empty terminal set");
    const int V = static_cast<int>(adjacency.size());
    std::vector<uint8_t> target(static_cast<size_t>(V), 0);
    for (int v : to) target[static_cast<size_t>(v)] = 1;
    const CounterRng rng(seed, static_cast<uint64_t>(StreamTag::kSites));
    std::vector<uint8_t> seen(static_cast<size_t>(V));
    std::vector<int> queue;
    uint64_t successes = 0;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        auto open = [&](int v) { return rng.uniform(trial, static_cast<uint64_t>(v)) < p; };
        std::fill(seen.begin(), seen.end(), 0);
        queue.clear();
        bool hit = false;
        for (int v : from) {
            if (!seen[static_cast<size_t>(v)] && open(v)) {
                seen[static_cast<size_t>(v)] = 1;
                queue.push_back(v);
                if (target[static_cast<size_t>(v)]) hit = true;
            }
        }
        for (size_t head = 0; head < queue.size() && !hit; ++head) {
            const int v = queue[head];
            for (int u : adjacency[static_cast<size_t>(v)]) {
                if (seen[static_cast<size_t>(u)] || !open(u)) continue;
                if (target[static_cast<size_t>(u)]) {
                    hit = true;
                    break;
                }
                seen[static_cast<size_t>(u)] = 1;
                queue.push_back(u);
            }
        }
        if (hit) ++successes;
    }
    return make_estimate(successes, trials);
}

BoundaryArcs quarter_arcs(int boundary_size) {
    if (boundary_size < 4) throw ConfigError("quarter_arcs: boundary too short");
    BoundaryArcs arcs;
    arcs.a_begin = 0;
    arcs.a_end = boundary_size / 4;
    arcs.b_begin = arcs.a_end;
    arcs.b_end = boundary_size / 2;
    arcs.c_begin = arcs.b_end;
    arcs.c_end = 3 * boundary_size / 4;
    arcs.d_begin = arcs.c_end;
    arcs.d_end = boundary_size;
    return arcs;
}

EstimateWithCI boundary_arc_crossing(const Triangulation& t, const BoundaryArcs& arcs, double p,
                                     uint64_t trials, uint64_t seed) {
    const int n = static_cast<int>(t.boundary.size());
    const bool partition = arcs.a_begin == 0 && arcs.a_begin < arcs.a_end &&
                           arcs.a_end == arcs.b_begin && arcs.b_begin < arcs.b_end &&
                           arcs.b_end == arcs.c_begin && arcs.c_begin < arcs.c_end &&
                           arcs.c_end == arcs.d_begin && arcs.d_begin < arcs.d_end &&
                           arcs.d_end == n;
    if (!partition)
        throw ConfigError("boundary_arc_crossing: arcs must partition the boundary in cyclic order");
    std::vector<int> from, to;
    for (int i = arcs.a_begin; i < arcs.a_end; ++i) from.push_back(t.boundary[static_cast<size_t>(i)]);
    for (int i = arcs.c_begin; i < arcs.c_end; ++i) to.push_back(t.boundary[static_cast<size_t>(i)]);
    return set_to_set_crossing(t.rot, from, to, p, trials, seed);
}

PcSweepResult pc_sweep(const std::string& family, int degree, const std::vector<int>& sizes,
                       const std::vector<double>& p_grid, uint64_t trials, uint64_t seed) {
    if (sizes.empty() || p_grid.empty()) throw ConfigError("pc_sweep: empty grids");
    for (size_t i = 1; i < p_grid.size(); ++i)
        if (p_grid[i] <= p_grid[i - 1]) throw ConfigError("pc_sweep: p grid must increase");

    PcSweepResult result;
    std::vector<EstimateWithCI> largest_row;
    for (int size : sizes) {
        std::vector<std::vector<int>> adjacency;
        std::vector<int> from, to;
        if (family == "triangular-lattice") {
            const RhombusGraph rg = lattice_rhombus(size);
            adjacency = rg.t.rot;
            from = rg.left;
            to = rg.right;
        } else if (family == "d-regular") {
            const Triangulation t = regular_hyperbolic_triangulation(degree, size);
            adjacency = t.rot;
            const BoundaryArcs arcs = quarter_arcs(static_cast<int>(t.boundary.size()));
            for (int i = arcs.a_begin; i < arcs.a_end; ++i) from.push_back(t.boundary[static_cast<size_t>(i)]);
            for (int i = arcs.c_begin; i < arcs.c_end; ++i) to.push_back(t.boundary[static_cast<size_t>(i)]);
        } else {
            throw ConfigError("pc_sweep: unknown family " + family);
        }
        std::vector<EstimateWithCI> row;
        for (double p : p_grid) {
            const EstimateWithCI est = set_to_set_crossing(adjacency, from, to, p, trials,
                                                           mix64(seed + static_cast<uint64_t>(size)));
            result.rows.push_back({size, p, est});
            row.push_back(est);
        }
        largest_row = row;
    }

    // 0.5-intercept of the largest-size crossing curve by linear interpolation.
    auto intercept = [&](const std::vector<double>& estimates) {
        for (size_t i = 1; i < estimates.size(); ++i) {
            const double a = estimates[i - 1], b = estimates[i];
            if ((a - 0.5) * (b - 0.5) <= 0.0 && a != b) {
                return p_grid[i - 1] + (0.5 - a) / (b - a) * (p_grid[i] - p_grid[i - 1]);
            }
        }
        return estimates.back() < 0.5 ? p_grid.back() : p_grid.front();
    };
    std::vector<double> point;
    for (const auto& e : largest_row) point.push_back(e.estimate);
    result.pc_estimate = intercept(point);

    // Bootstrap: resample each grid point's binomial count.
    const CounterRng boot(seed, static_cast<uint64_t>(StreamTag::kBootstrap));
    const int B = 1000;
    std::vector<double> samples;
    samples.reserve(static_cast<size_t>(B));
    for (int b = 0; b < B; ++b) {
        std::vector<double> resampled(largest_row.size());
        for (size_t i = 0; i < largest_row.size(); ++i) {
            const auto& e = largest_row[i];
            uint64_t s = 0;
            for (uint64_t k = 0; k < e.trials; ++k)
                if (boot.uniform(static_cast<uint64_t>(b) * largest_row.size() + i, k) < e.estimate) ++s;
            resampled[i] = static_cast<double>(s) / static_cast<double>(e.trials);
        }
        samples.push_back(intercept(resampled));
    }
    std::sort(samples.begin(), samples.end());
    result.pc_lo = samples[static_cast<size_t>(0.025 * B)];
    result.pc_hi = samples[static_cast<size_t>(0.975 * B) - 1];
    return result;
}

}  // namespace percolab

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace percolab {

// Incremental (Bowyer-Watson) Delaunay triangulation of points in the unit
// disc. Eight guard vertices on a radius-100 circle bound the walk domain;
// they are far enough out that every true Delaunay edge between sites
// survives. Near-degenerate predicates fall back to long double, residual
// ties break by a seed-derived vertex order.
class Delaunay {
  public:
    Delaunay(const std::vector<double>& xs, const std::vector<double>& ys, uint64_t tie_seed);

    int site_count() const { return n_sites_; }
    int tie_breaks() const { return tie_breaks_; }
    int duplicates_dropped() const { return duplicates_; }

    // Delaunay adjacency over real sites in CSR form.
    struct Adjacency {
        std::vector<int> offset;
        std::vector<int> neighbor;
    };
    Adjacency site_adjacency() const;

    // Per-site ideal exposure: the site belongs to a triangle whose
    // circumdisk is not contained in the unit disc, or touches the guard hull.
    std::vector<uint8_t> exposed_sites() const;

    // All-real triangles as vertex triples (CCW).
    std::vector<std::array<int, 3>> triangles() const;

  private:
    struct Tri {
        int v[3];
        int adj[3];  // neighbor opposite v[i], -1 = none
        bool alive;
    };

    int n_sites_ = 0;
    int n_total_ = 0;
    std::vector<double> px_, py_;
    std::vector<uint64_t> rank_;  // symbolic perturbation order
    std::vector<Tri> tris_;
    std::vector<int> free_;
    int last_tri_ = 0;
    int tie_breaks_ = 0;
    int duplicates_ = 0;

    int orient(int a, int b, int c) const;
    int in_circle(int a, int b, int c, int d) const;
    int locate(int p) const;
    void insert(int p);
    int alloc_tri();
};

}  // namespace percolab

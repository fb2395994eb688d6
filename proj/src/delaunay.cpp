#include "percolab/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "percolab/common.hpp"
#include "percolab/rng.hpp"

namespace percolab {

namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr long double kEpsL = 5.42101086242752217e-20L;

// Hilbert index on a 2^16 grid for insertion locality.
uint32_t hilbert_index(uint32_t x, uint32_t y) {
    uint32_t rx, ry, d = 0;
    for (uint32_t s = 1u << 15; s > 0; s >>= 1) {
        rx = (x & s) > 0;
        ry = (y & s) > 0;
        d += s * s * ((3 * rx) ^ ry);
        if (ry == 0) {
            if (rx == 1) {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::swap(x, y);
        }
    }
    return d;
}

}  // namespace

int Delaunay::orient(int a, int b, int c) const {
    const double ax = px_[static_cast<size_t>(a)], ay = py_[static_cast<size_t>(a)];
    const double bx = px_[static_cast<size_t>(b)], by = py_[static_cast<size_t>(b)];
    const double cx = px_[static_cast<size_t>(c)], cy = py_[static_cast<size_t>(c)];
    const double p = (bx - ax) * (cy - ay);
    const double q = (by - ay) * (cx - ax);
    const double det = p - q;
    const double bound = 4.0 * kEps * (std::fabs(p) + std::fabs(q));
    if (det > bound) return 1;
    if (det < -bound) return -1;
    {
        const long double axl = px_[static_cast<size_t>(a)], ayl = py_[static_cast<size_t>(a)];
        const long double pl = (static_cast<long double>(bx) - axl) * (static_cast<long double>(cy) - ayl);
        const long double ql = (static_cast<long double>(by) - ayl) * (static_cast<long double>(cx) - axl);
        const long double detl = pl - ql;
        const long double boundl = 8.0L * kEpsL * (std::fabs(static_cast<double>(pl)) + std::fabs(static_cast<double>(ql)));
        if (detl > boundl) return 1;
        if (detl < -boundl) return -1;
    }
    return 0;
}

int Delaunay::in_circle(int a, int b, int c, int d) const {
    const double dx = px_[static_cast<size_t>(d)], dy = py_[static_cast<size_t>(d)];
    const double adx = px_[static_cast<size_t>(a)] - dx, ady = py_[static_cast<size_t>(a)] - dy;
    const double bdx = px_[static_cast<size_t>(b)] - dx, bdy = py_[static_cast<size_t>(b)] - dy;
    const double cdx = px_[static_cast<size_t>(c)] - dx, cdy = py_[static_cast<size_t>(c)] - dy;
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    const double t1 = ad * (bdx * cdy - bdy * cdx);
    const double t2 = bd * (adx * cdy - ady * cdx);
    const double t3 = cd * (adx * bdy - ady * bdx);
    const double det = t1 - t2 + t3;
    const double bound = 16.0 * kEps * (std::fabs(t1) + std::fabs(t2) + std::fabs(t3));
    if (det > bound) return 1;
    if (det < -bound) return -1;
    {
        const long double adxl = static_cast<long double>(px_[static_cast<size_t>(a)]) - dx;
        const long double adyl = static_cast<long double>(py_[static_cast<size_t>(a)]) - dy;
        const long double bdxl = static_cast<long double>(px_[static_cast<size_t>(b)]) - dx;
        const long double bdyl = static_cast<long double>(py_[static_cast<size_t>(b)]) - dy;
        const long double cdxl = static_cast<long double>(px_[static_cast<size_t>(c)]) - dx;
        const long double cdyl = static_cast<long double>(py_[static_cast<size_t>(c)]) - dy;
        const long double adl = adxl * adxl + adyl * adyl;
        const long double bdl = bdxl * bdxl + bdyl * bdyl;
        const long double cdl = cdxl * cdxl + cdyl * cdyl;
        const long double t1l = adl * (bdxl * cdyl - bdyl * cdxl);
        const long double t2l = bdl * (adxl * cdyl - adyl * cdxl);
        const long double t3l = cdl * (adxl * bdyl - adyl * bdxl);
        const long double detl = t1l - t2l + t3l;
        const long double boundl =
            32.0L * kEpsL * (std::fabs(static_cast<double>(t1l)) + std::fabs(static_cast<double>(t2l)) +
                             std::fabs(static_cast<double>(t3l)));
        if (detl > boundl) return 1;
        if (detl < -boundl) return -1;
    }
    return 0;
}

int Delaunay::alloc_tri() {
    if (!free_.empty()) {
        const int id = free_.back();
        free_.pop_back();
        return id;
    }
    tris_.push_back({});
    return static_cast<int>(tris_.size()) - 1;
}

int Delaunay::locate(int p) const {
    int cur = last_tri_;
    int steps = 0;
    const int limit = 4 * static_cast<int>(tris_.size()) + 64;
    while (true) {
        if (++steps > limit) throw NumericalError("delaunay: point location walk did not terminate");
        const Tri& t = tris_[static_cast<size_t>(cur)];
        int next = -1;
        bool outside_wall = false;
        for (int e = 0; e < 3; ++e) {
            const int u = t.v[(e + 1) % 3];
            const int v = t.v[(e + 2) % 3];
            if (orient(u, v, p) < 0) {
                if (t.adj[e] >= 0) {
                    next = t.adj[e];
                    break;
                }
                outside_wall = true;
            }
        }
        if (next >= 0) {
            cur = next;
            continue;
        }
        if (outside_wall) throw NumericalError("delaunay: point escaped the guard hull");
        return cur;
    }
}

void Delaunay::insert(int p) {
    const int start = locate(p);

    // Exact duplicate: drop.
    for (int k = 0; k < 3; ++k) {
        const int v = tris_[static_cast<size_t>(start)].v[k];
        if (px_[static_cast<size_t>(v)] == px_[static_cast<size_t>(p)] &&
            py_[static_cast<size_t>(v)] == py_[static_cast<size_t>(p)]) {
            ++duplicates_;
            return;
        }
    }

    // Cavity: triangles whose circumcircle contains p; ties resolved by the
    // perturbation ranks (count as inside iff p's rank beats the face's min).
    std::vector<int> cavity = {start};
    std::vector<int> stack = {start};
    auto mark_of = [&](int tri) -> int {
        for (size_t i = 0; i < cavity.size(); ++i)
            if (cavity[i] == tri) return static_cast<int>(i);
        return -1;
    };
    auto inside_cavity_test = [&](int tri) {
        const Tri& t = tris_[static_cast<size_t>(tri)];
        const int s = in_circle(t.v[0], t.v[1], t.v[2], p);
        if (s != 0) return s > 0;
        ++tie_breaks_;
        uint64_t m = std::min({rank_[static_cast<size_t>(t.v[0])], rank_[static_cast<size_t>(t.v[1])],
                               rank_[static_cast<size_t>(t.v[2])]});
        return rank_[static_cast<size_t>(p)] < m;
    };
    while (!stack.empty()) {
        const int tri = stack.back();
        stack.pop_back();
        const Tri t = tris_[static_cast<size_t>(tri)];
        for (int e = 0; e < 3; ++e) {
            const int nb = t.adj[e];
            if (nb < 0 || mark_of(nb) >= 0) continue;
            if (inside_cavity_test(nb)) {
                cavity.push_back(nb);
                stack.push_back(nb);
            }
        }
    }

    // Boundary edges of the cavity, enforcing star-shapedness around p.
    struct BEdge {
        int u, v, outside;
    };
    std::vector<BEdge> boundary;
    bool changed = true;
    while (changed) {
        changed = false;
        boundary.clear();
        for (int tri : cavity) {
            const Tri& t = tris_[static_cast<size_t>(tri)];
            for (int e = 0; e < 3; ++e) {
                const int nb = t.adj[e];
                if (nb >= 0 && mark_of(nb) >= 0) continue;
                const int u = t.v[(e + 1) % 3];
                const int v = t.v[(e + 2) % 3];
                if (orient(u, v, p) <= 0) {
                    // Cavity not star-shaped across this edge; absorb the
                    // neighbor and restart the scan.
                    if (nb < 0) throw NumericalError("delaunay: cavity hit the guard hull");
                    cavity.push_back(nb);
                    changed = true;
                    break;
                }
                boundary.push_back({u, v, nb});
            }
            if (changed) break;
        }
    }

    for (int tri : cavity) {
        tris_[static_cast<size_t>(tri)].alive = false;
        free_.push_back(tri);
    }

    // Fan around p; link siblings by shared endpoints.
    std::vector<int> fresh;
    fresh.reserve(boundary.size());
    for (const BEdge& be : boundary) {
        const int id = alloc_tri();
        Tri& t = tris_[static_cast<size_t>(id)];
        t.v[0] = be.u;
        t.v[1] = be.v;
        t.v[2] = p;
        t.adj[0] = -1;
        t.adj[1] = -1;
        t.adj[2] = be.outside;
        t.alive = true;
        if (be.outside >= 0) {
            Tri& o = tris_[static_cast<size_t>(be.outside)];
            for (int e = 0; e < 3; ++e) {
                const int ou = o.v[(e + 1) % 3], ov = o.v[(e + 2) % 3];
                if ((ou == be.v && ov == be.u)) o.adj[e] = id;
            }
        }
        fresh.push_back(id);
    }
    for (int i : fresh) {
        Tri& t = tris_[static_cast<size_t>(i)];
        for (int j : fresh) {
            if (i == j) continue;
            const Tri& s = tris_[static_cast<size_t>(j)];
            if (s.v[0] == t.v[1]) t.adj[0] = j;  // shared edge (t.v1, p)
            if (s.v[1] == t.v[0]) t.adj[1] = j;  // shared edge (p, t.v0)
        }
    }
    last_tri_ = fresh.empty() ? last_tri_ : fresh[0];
}

Delaunay::Delaunay(const std::vector<double>& xs, const std::vector<double>& ys,
                   uint64_t tie_seed) {
    if (xs.size() != ys.size()) throw ConfigError("delaunay: coordinate size mismatch");
    n_sites_ = static_cast<int>(xs.size());
    const int guards = 8;
    n_total_ = n_sites_ + guards;
    px_.resize(static_cast<size_t>(n_total_));
    py_.resize(static_cast<size_t>(n_total_));
    rank_.resize(static_cast<size_t>(n_total_));
    for (int i = 0; i < n_sites_; ++i) {
        if (!(std::isfinite(xs[static_cast<size_t>(i)]) && std::isfinite(ys[static_cast<size_t>(i)])))
            throw ConfigError("delaunay: non-finite coordinate");
        if (xs[static_cast<size_t>(i)] * xs[static_cast<size_t>(i)] + ys[static_cast<size_t>(i)] * ys[static_cast<size_t>(i)] >= 25.0)
            throw ConfigError("delaunay: point outside the working disc");
        px_[static_cast<size_t>(i)] = xs[static_cast<size_t>(i)];
        py_[static_cast<size_t>(i)] = ys[static_cast<size_t>(i)];
    }
    for (int g = 0; g < guards; ++g) {
        const double ang = (2.0 * std::numbers::pi * g) / guards + 0.3;
        px_[static_cast<size_t>(n_sites_ + g)] = 100.0 * std::cos(ang);
        py_[static_cast<size_t>(n_sites_ + g)] = 100.0 * std::sin(ang);
    }
    for (int i = 0; i < n_total_; ++i)
        rank_[static_cast<size_t>(i)] = mix64(tie_seed ^ (static_cast<uint64_t>(i) + 1) * kGolden);

    // Fan triangulation of the guard octagon.
    const int F = n_sites_;  // first guard
    std::vector<int> fan;
    for (int k = 1; k + 1 < guards; ++k) {
        const int id = alloc_tri();
        Tri& t = tris_[static_cast<size_t>(id)];
        t.v[0] = F;
        t.v[1] = F + k;
        t.v[2] = F + k + 1;
        t.adj[0] = -1;
        t.adj[1] = -1;
        t.adj[2] = -1;
        t.alive = true;
        fan.push_back(id);
    }
    for (size_t a = 0; a < fan.size(); ++a) {
        for (size_t b = 0; b < fan.size(); ++b) {
            if (a == b) continue;
            Tri& ta = tris_[static_cast<size_t>(fan[a])];
            const Tri& tb = tris_[static_cast<size_t>(fan[b])];
            for (int e = 0; e < 3; ++e) {
                const int u = ta.v[(e + 1) % 3], v = ta.v[(e + 2) % 3];
                for (int f = 0; f < 3; ++f) {
                    const int su = tb.v[(f + 1) % 3], sv = tb.v[(f + 2) % 3];
                    if (su == v && sv == u) ta.adj[e] = fan[b];
                }
            }
        }
    }
    last_tri_ = fan.empty() ? 0 : fan[0];

    // Hilbert-sorted insertion for walk locality.
    std::vector<int> order(static_cast<size_t>(n_sites_));
    for (int i = 0; i < n_sites_; ++i) order[static_cast<size_t>(i)] = i;
    std::vector<uint32_t> hkey(static_cast<size_t>(n_sites_));
    for (int i = 0; i < n_sites_; ++i) {
        const double nx = (px_[static_cast<size_t>(i)] + 1.5) / 3.0;
        const double ny = (py_[static_cast<size_t>(i)] + 1.5) / 3.0;
        const uint32_t gx = static_cast<uint32_t>(std::clamp(nx, 0.0, 0.999999) * 65536.0);
        const uint32_t gy = static_cast<uint32_t>(std::clamp(ny, 0.0, 0.999999) * 65536.0);
        hkey[static_cast<size_t>(i)] = hilbert_index(gx, gy);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (hkey[static_cast<size_t>(a)] != hkey[static_cast<size_t>(b)]) return hkey[static_cast<size_t>(a)] < hkey[static_cast<size_t>(b)];
        return a < b;
    });
    for (int i : order) insert(i);
}

Delaunay::Adjacency Delaunay::site_adjacency() const {
    Adjacency adj;
    std::vector<std::pair<int, int>> edges;
    for (const Tri& t : tris_) {
        if (!t.alive) continue;
        for (int e = 0; e < 3; ++e) {
            // CCW triangles traverse a shared edge in opposite directions, so
            // keeping u < v emits each undirected edge exactly once.
            const int u = t.v[(e + 1) % 3], v = t.v[(e + 2) % 3];
            if (u >= n_sites_ || v >= n_sites_ || u >= v) continue;
            edges.push_back({u, v});
        }
    }
    adj.offset.assign(static_cast<size_t>(n_sites_) + 1, 0);
    for (const auto& [u, v] : edges) {
        ++adj.offset[static_cast<size_t>(u) + 1];
        ++adj.offset[static_cast<size_t>(v) + 1];
    }
    for (int i = 0; i < n_sites_; ++i) adj.offset[static_cast<size_t>(i) + 1] += adj.offset[static_cast<size_t>(i)];
    adj.neighbor.resize(static_cast<size_t>(adj.offset[static_cast<size_t>(n_sites_)]));
    std::vector<int> cursor(adj.offset.begin(), adj.offset.end() - 1);
    for (const auto& [u, v] : edges) {
        adj.neighbor[static_cast<size_t>(cursor[static_cast<size_t>(u)]++)] = v;
        adj.neighbor[static_cast<size_t>(cursor[static_cast<size_t>(v)]++)] = u;
    }
    return adj;
}

std::vector<uint8_t> Delaunay::exposed_sites() const {
    std::vector<uint8_t> exposed(static_cast<size_t>(n_sites_), 0);
    for (const Tri& t : tris_) {
        if (!t.alive) continue;
        const bool has_guard = t.v[0] >= n_sites_ || t.v[1] >= n_sites_ || t.v[2] >= n_sites_;
        bool exits = false;
        if (!has_guard) {
            const double ax = px_[static_cast<size_t>(t.v[0])], ay = py_[static_cast<size_t>(t.v[0])];
            const double bx = px_[static_cast<size_t>(t.v[1])], by = py_[static_cast<size_t>(t.v[1])];
            const double cx = px_[static_cast<size_t>(t.v[2])], cy = py_[static_cast<size_t>(t.v[2])];
            const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
            if (d != 0.0) {
                const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
                const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
                const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
                const double rad = std::sqrt((ax - ux) * (ax - ux) + (ay - uy) * (ay - uy));
                exits = std::sqrt(ux * ux + uy * uy) + rad > 1.0 - 1e-12;
            }
        }
        if (has_guard || exits)
            for (int k = 0; k < 3; ++k)
                if (t.v[k] < n_sites_) exposed[static_cast<size_t>(t.v[k])] = 1;
    }
    return exposed;
}

std::vector<std::array<int, 3>> Delaunay::triangles() const {
    std::vector<std::array<int, 3>> out;
    for (const Tri& t : tris_) {
        if (!t.alive) continue;
        if (t.v[0] < n_sites_ && t.v[1] < n_sites_ && t.v[2] < n_sites_)
            out.push_back({t.v[0], t.v[1], t.v[2]});
    }
    return out;
}

}  // namespace percolab

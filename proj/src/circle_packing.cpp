#include "percolab/circle_packing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "percolab/common.hpp"

namespace percolab {

namespace {

constexpr double kPi = std::numbers::pi;

// Angle at v in the tangency triangle with neighbor radii ra, rb:
// sin^2(a/2) = ra*rb / ((rv+ra)(rv+rb)).
inline double flower_angle(double rv, double ra, double rb) {
    return 2.0 * std::asin(std::sqrt((ra / (rv + ra)) * (rb / (rv + rb))));
}

double angle_sum_impl(const Triangulation& t, const std::vector<double>& radii, int v) {
    const auto& nb = t.rot[static_cast<size_t>(v)];
    const int d = static_cast<int>(nb.size());
    double sum = 0.0;
    for (int i = 0; i < d; ++i) {
        // Only petals that bound an interior face contribute.
        if (t.face_of_slot[static_cast<size_t>(t.slot(v, i))] < 0) continue;
        const double ra = radii[static_cast<size_t>(nb[static_cast<size_t>(i)])];
        const double rb = radii[static_cast<size_t>(nb[static_cast<size_t>((i + 1) % d)])];
        sum += flower_angle(radii[static_cast<size_t>(v)], ra, rb);
    }
    return sum;
}

}  // namespace

double angle_sum(const Triangulation& t, const std::vector<double>& radii, int v) {
    return angle_sum_impl(t, radii, v);
}

CirclePacking pack(const Triangulation& t, const std::vector<double>& boundary_radii,
                   double tol, long long max_sweeps) {
    if (!(tol > 0)) throw ConfigError("pack: tol must be positive");
    if (boundary_radii.size() != t.boundary.size())
        throw ConfigError("pack: need one radius per boundary vertex");
    for (double r : boundary_radii)
        if (!(r > 0)) throw ConfigError("pack: boundary radii must be positive");

    CirclePacking cp;
    cp.radius.assign(static_cast<size_t>(t.V), 1.0);
    for (size_t i = 0; i < t.boundary.size(); ++i)
        cp.radius[static_cast<size_t>(t.boundary[i])] = boundary_radii[i];

    std::vector<int> interior;
    for (int v = 0; v < t.V; ++v)
        if (t.interior(v)) interior.push_back(v);

    auto max_error = [&](const std::vector<double>& radii) {
        double e = 0.0;
        for (int v : interior) e = std::max(e, std::fabs(angle_sum_impl(t, radii, v) - 2.0 * kPi));
        return e;
    };

    auto sweep = [&](std::vector<double>& radii) {
        for (int v : interior) {
            const int k = t.degree(v);
            const double theta = angle_sum_impl(t, radii, v);
            const double beta = std::sin(theta / (2.0 * k));
            const double delta = std::sin(kPi / k);
            const double r_uniform = radii[static_cast<size_t>(v)] * beta / (1.0 - beta);
            radii[static_cast<size_t>(v)] = r_uniform * (1.0 - delta) / delta;
        }
    };

    double err = max_error(cp.radius);
    double prev_err = err;
    std::vector<double> prev = cp.radius;
    std::vector<double> scratch;
    int worst = -1;
    long long n = 0;
    for (; n < max_sweeps && err > tol; ++n) {
        prev = cp.radius;
        sweep(cp.radius);
        double new_err = max_error(cp.radius);

        // Superstep: extrapolate along the last increment when the error
        // contraction ratio looks stable, keep only improving steps.
        const double ratio = err > 0 ? new_err / err : 0.0;
        if (ratio > 0.05 && ratio < 1.0 && n > 0) {
            const double lam = std::min(ratio / (1.0 - ratio), 100.0);
            scratch = cp.radius;
            bool ok = true;
            for (size_t i = 0; i < scratch.size(); ++i) {
                scratch[i] += lam * (scratch[i] - prev[i]);
                if (!(scratch[i] > 0)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                const double acc_err = max_error(scratch);
                if (acc_err < new_err) {
                    cp.radius.swap(scratch);
                    new_err = acc_err;
                }
            }
        }
        if (new_err > prev_err * (1.0 + 1e-9) + 1e-15) cp.error_monotone = false;
        prev_err = new_err;
        err = new_err;
    }
    cp.sweeps = static_cast<int>(n);
    if (err > tol) {
        double w = -1.0;
        for (int v : interior) {
            const double e = std::fabs(angle_sum_impl(t, cp.radius, v) - 2.0 * kPi);
            if (e > w) {
                w = e;
                worst = v;
            }
        }
        throw NumericalError("pack: iteration budget exhausted, worst vertex " +
                             std::to_string(worst) + " with angle error " + std::to_string(w));
    }

    // Layout by breadth-first placement over faces.
    cp.cx.assign(static_cast<size_t>(t.V), 0.0);
    cp.cy.assign(static_cast<size_t>(t.V), 0.0);
    std::vector<uint8_t> placed(static_cast<size_t>(t.V), 0);
    const int root = 0;
    const int first = t.rot[static_cast<size_t>(root)][0];
    placed[static_cast<size_t>(root)] = 1;
    cp.cx[static_cast<size_t>(first)] = cp.radius[static_cast<size_t>(root)] + cp.radius[static_cast<size_t>(first)];
    placed[static_cast<size_t>(first)] = 1;

    std::vector<uint8_t> face_done(t.faces.size(), 0);
    std::vector<int> queue;
    auto push_faces_of_edge = [&](int u, int v) {
        const int iu = find_rot_index(t.rot, u, v);
        const int f1 = t.face_of_slot[static_cast<size_t>(t.slot(u, iu))];
        const int iv = find_rot_index(t.rot, v, u);
        const int f2 = t.face_of_slot[static_cast<size_t>(t.slot(v, iv))];
        if (f1 >= 0 && !face_done[static_cast<size_t>(f1)]) queue.push_back(f1);
        if (f2 >= 0 && !face_done[static_cast<size_t>(f2)]) queue.push_back(f2);
    };
    push_faces_of_edge(root, first);
    for (size_t head = 0; head < queue.size(); ++head) {
        const int f = queue[head];
        if (face_done[static_cast<size_t>(f)]) continue;
        const auto& fc = t.faces[static_cast<size_t>(f)];
        int unplaced = -1, count = 0;
        for (int k = 0; k < 3; ++k) {
            if (!placed[static_cast<size_t>(fc[static_cast<size_t>(k)])]) {
                unplaced = k;
                ++count;
            }
        }
        if (count >= 2) continue;  // revisited later through another edge
        face_done[static_cast<size_t>(f)] = 1;
        if (count == 1) {
            const int w = fc[static_cast<size_t>(unplaced)];
            const int u = fc[static_cast<size_t>((unplaced + 1) % 3)];
            const int v = fc[static_cast<size_t>((unplaced + 2) % 3)];
            // w sits left of u->v at tangency distances.
            const double ru = cp.radius[static_cast<size_t>(u)] + cp.radius[static_cast<size_t>(w)];
            const double rv = cp.radius[static_cast<size_t>(v)] + cp.radius[static_cast<size_t>(w)];
            const double ex = cp.cx[static_cast<size_t>(v)] - cp.cx[static_cast<size_t>(u)];
            const double ey = cp.cy[static_cast<size_t>(v)] - cp.cy[static_cast<size_t>(u)];
            const double d = std::sqrt(ex * ex + ey * ey);
            const double a = (d * d + ru * ru - rv * rv) / (2.0 * d);
            const double h2 = ru * ru - a * a;
            const double h = h2 > 0 ? std::sqrt(h2) : 0.0;
            const double ux = ex / d, uy = ey / d;
            cp.cx[static_cast<size_t>(w)] = cp.cx[static_cast<size_t>(u)] + a * ux - h * uy;
            cp.cy[static_cast<size_t>(w)] = cp.cy[static_cast<size_t>(u)] + a * uy + h * ux;
            placed[static_cast<size_t>(w)] = 1;
        }
        for (int k = 0; k < 3; ++k) {
            const int a = fc[static_cast<size_t>(k)];
            const int b = fc[static_cast<size_t>((k + 1) % 3)];
            if (placed[static_cast<size_t>(a)] && placed[static_cast<size_t>(b)]) push_faces_of_edge(a, b);
        }
    }
    for (int v = 0; v < t.V; ++v)
        if (!placed[static_cast<size_t>(v)])
            throw NumericalError("pack: layout did not reach vertex " + std::to_string(v));

    double max_tan = 0.0;
    for (int v = 0; v < t.V; ++v) {
        for (int u : t.rot[static_cast<size_t>(v)]) {
            if (u < v) continue;
            const double want = cp.radius[static_cast<size_t>(u)] + cp.radius[static_cast<size_t>(v)];
            const double dx = cp.cx[static_cast<size_t>(u)] - cp.cx[static_cast<size_t>(v)];
            const double dy = cp.cy[static_cast<size_t>(u)] - cp.cy[static_cast<size_t>(v)];
            max_tan = std::max(max_tan, std::fabs(std::sqrt(dx * dx + dy * dy) - want) / want);
        }
    }
    cp.max_tangency_error = max_tan;
    cp.max_angle_error = max_error(cp.radius);
    if (cp.max_tangency_error > 10.0 * tol)
        throw NumericalError("pack: layout inconsistency, tangency error " +
                             std::to_string(cp.max_tangency_error));
    return cp;
}

PackingReport validate_packing(const CirclePacking& packing, const Triangulation& t, double tol) {
    PackingReport rep;
    for (int v = 0; v < t.V; ++v)
        if (t.interior(v))
            rep.max_angle_error = std::max(
                rep.max_angle_error, std::fabs(angle_sum_impl(t, packing.radius, v) - 2.0 * kPi));
    for (int v = 0; v < t.V; ++v) {
        for (int u : t.rot[static_cast<size_t>(v)]) {
            if (u < v) continue;
            const double want = packing.radius[static_cast<size_t>(u)] + packing.radius[static_cast<size_t>(v)];
            const double dx = packing.cx[static_cast<size_t>(u)] - packing.cx[static_cast<size_t>(v)];
            const double dy = packing.cy[static_cast<size_t>(u)] - packing.cy[static_cast<size_t>(v)];
            rep.max_tangency_error =
                std::max(rep.max_tangency_error, std::fabs(std::sqrt(dx * dx + dy * dy) - want) / want);
        }
    }
    rep.matches_stored = std::fabs(rep.max_angle_error - packing.max_angle_error) <= 1e-12 &&
                         std::fabs(rep.max_tangency_error - packing.max_tangency_error) <= 1e-12;

    // Non-adjacent overlap spot check on a uniform spatial hash.
    double rmax = 0.0;
    for (double r : packing.radius) rmax = std::max(rmax, r);
    const double cell = 2.0 * rmax + 1e-12;
    std::unordered_map<long long, std::vector<int>> grid;
    auto key = [cell](double x, double y) {
        const long long gx = static_cast<long long>(std::floor(x / cell));
        const long long gy = static_cast<long long>(std::floor(y / cell));
        return (gx << 32) ^ (gy & 0xffffffffLL);
    };
    for (int v = 0; v < t.V; ++v)
        grid[key(packing.cx[static_cast<size_t>(v)], packing.cy[static_cast<size_t>(v)])].push_back(v);
    for (int v = 0; v < t.V; ++v) {
        const double x = packing.cx[static_cast<size_t>(v)], y = packing.cy[static_cast<size_t>(v)];
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                const auto it = grid.find(key(x + dx * cell, y + dy * cell));
                if (it == grid.end()) continue;
                for (int u : it->second) {
                    if (u <= v) continue;
                    if (find_rot_index(t.rot, v, u) >= 0) continue;
                    const double ddx = packing.cx[static_cast<size_t>(u)] - x;
                    const double ddy = packing.cy[static_cast<size_t>(u)] - y;
                    const double dist = std::sqrt(ddx * ddx + ddy * ddy);
                    const double sum = packing.radius[static_cast<size_t>(u)] + packing.radius[static_cast<size_t>(v)];
                    if (sum - dist > tol * sum) ++rep.overlap_violations;
                }
            }
        }
    }
    return rep;
}

std::string packing_to_json(const CirclePacking& packing) {
    nlohmann::json j;
    auto& arr = j["circles"] = nlohmann::json::array();
    for (size_t v = 0; v < packing.radius.size(); ++v)
        arr.push_back({{"vertex", v},
                       {"radius", packing.radius[v]},
                       {"cx", packing.cx[v]},
                       {"cy", packing.cy[v]}});
    j["max_angle_error"] = packing.max_angle_error;
    j["max_tangency_error"] = packing.max_tangency_error;
    return j.dump(2) + "\n";
}

CirclePacking packing_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CirclePacking cp;
    const auto& arr = j.at("circles");
    cp.radius.resize(arr.size());
    cp.cx.resize(arr.size());
    cp.cy.resize(arr.size());
    for (const auto& c : arr) {
        const size_t v = c.at("vertex").get<size_t>();
        cp.radius.at(v) = c.at("radius").get<double>();
        cp.cx.at(v) = c.at("cx").get<double>();
        cp.cy.at(v) = c.at("cy").get<double>();
    }
    cp.max_angle_error = j.value("max_angle_error", 0.0);
    cp.max_tangency_error = j.value("max_tangency_error", 0.0);
    return cp;
}

}  // namespace percolab

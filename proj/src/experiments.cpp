#include "percolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "percolab/common.hpp"
#include "percolab/generators.hpp"
#include "percolab/harmonic.hpp"
#include "percolab/percolation.hpp"
#include "percolab/svg.hpp"

namespace percolab {

std::string format_csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string experiment_resistance_csv(const Triangulation& t, int center, int rmax) {
    auto [curve, verdict] = classify_walk(t, center, rmax);
    std::ostringstream out;
    out << "# verdict=" << verdict_name(verdict) << "\n";
    out << "r,R_eff\n";
    for (size_t i = 0; i < curve.radius.size(); ++i)
        out << curve.radius[i] << ',' << format_csv_double(curve.resistance[i]) << '\n';
    return out.str();
}

std::string experiment_one_arm_csv(const Triangulation& t, int center, const std::vector<int>& rs,
                                   double p, uint64_t trials, uint64_t seed) {
    std::ostringstream out;
    out << "r,p,trials,successes,estimate,ci_lo,ci_hi,seed\n";
    for (int r : rs) {
        const EstimateWithCI e = one_arm_probability(t, center, r, p, trials, seed);
        out << r << ',' << format_csv_double(p) << ',' << e.trials << ',' << e.successes << ','
            << format_csv_double(e.estimate) << ',' << format_csv_double(e.ci_lo) << ','
            << format_csv_double(e.ci_hi) << ',' << seed << '\n';
    }
    return out.str();
}

std::string experiment_cross_tiling_csv(const SquareTiling& tiling, const std::vector<double>& ps,
                                        uint64_t trials, uint64_t seed) {
    std::ostringstream out;
    out << "p,trials,successes,estimate,ci_lo,ci_hi\n";
    for (double p : ps) {
        const EstimateWithCI e = crossing_probability_tiling(tiling, p, trials, seed);
        out << format_csv_double(p) << ',' << e.trials << ',' << e.successes << ','
            << format_csv_double(e.estimate) << ',' << format_csv_double(e.ci_lo) << ','
            << format_csv_double(e.ci_hi) << '\n';
    }
    return out.str();
}

std::string experiment_arc_cross_csv(const Triangulation& t, double p, uint64_t trials,
                                     uint64_t seed) {
    const BoundaryArcs arcs = quarter_arcs(static_cast<int>(t.boundary.size()));
    const EstimateWithCI e = boundary_arc_crossing(t, arcs, p, trials, seed);
    std::ostringstream out;
    out << "p,trials,successes,estimate,ci_lo,ci_hi,seed\n";
    out << format_csv_double(p) << ',' << e.trials << ',' << e.successes << ','
        << format_csv_double(e.estimate) << ',' << format_csv_double(e.ci_lo) << ','
        << format_csv_double(e.ci_hi) << ',' << seed << '\n';
    return out.str();
}

std::string experiment_pc_sweep_csv(const std::string& family, int degree,
                                    const std::vector<int>& sizes,
                                    const std::vector<double>& p_grid, uint64_t trials,
                                    uint64_t seed) {
    const PcSweepResult res = pc_sweep(family, degree, sizes, p_grid, trials, seed);
    std::ostringstream out;
    out << "# pc_estimate=" << format_csv_double(res.pc_estimate)
        << " ci_lo=" << format_csv_double(res.pc_lo) << " ci_hi=" << format_csv_double(res.pc_hi)
        << "\n";
    out << "size,p,trials,successes,estimate,ci_lo,ci_hi,seed\n";
    for (const auto& row : res.rows)
        out << row.size << ',' << format_csv_double(row.p) << ',' << row.crossing.trials << ','
            << row.crossing.successes << ',' << format_csv_double(row.crossing.estimate) << ','
            << format_csv_double(row.crossing.ci_lo) << ','
            << format_csv_double(row.crossing.ci_hi) << ',' << seed << '\n';
    return out.str();
}

DensityWeight weight_by_id(const std::string& id) {
    DensityWeight w;
    if (id.empty() || id == "none") {
        w.w = [](double, double) { return 1.0; };
        w.bound = 1.0;
        return w;
    }
    if (id == "angular") {
        // Mean 1 against the hyperbolic area measure; range [1/2, 3/2].
        w.w = [](double, double theta) { return 1.0 + 0.5 * std::sin(2.0 * theta); };
        w.bound = 2.0;
        return w;
    }
    throw ConfigError("unknown weight id: " + id);
}

std::string experiment_hvoronoi_csv(const IdealBoundaryQuad& quad,
                                    const std::vector<double>& lambdas, double r_override,
                                    uint64_t trials, uint64_t seed, double p,
                                    const std::string& weight_id, int workers) {
    const DensityWeight weight = weight_by_id(weight_id);
    const DensityWeight* wptr = (weight_id.empty() || weight_id == "none") ? nullptr : &weight;
    std::ostringstream out;
    out << "lambda,R,eta,trials,successes,estimate,ci_lo,ci_hi,cardy,gap,excluded_trials\n";
    for (double lambda : lambdas) {
        const double R = r_override > 0 ? r_override : default_truncation_radius(lambda);
        const HyperbolicCrossing hc =
            crossing_probability_hyperbolic(quad, lambda, R, trials, seed, p, wptr, workers);
        out << format_csv_double(lambda) << ',' << format_csv_double(R) << ','
            << format_csv_double(hc.eta) << ',' << hc.estimate.trials << ','
            << hc.estimate.successes << ',' << format_csv_double(hc.estimate.estimate) << ','
            << format_csv_double(hc.estimate.ci_lo) << ',' << format_csv_double(hc.estimate.ci_hi)
            << ',' << format_csv_double(hc.cardy_value) << ','
            << format_csv_double(std::fabs(hc.estimate.estimate - hc.cardy_value)) << ','
            << hc.excluded << '\n';
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for write: " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

struct Section {
    std::string name;
    std::map<std::string, std::string> kv;
    int line = 0;
};

std::vector<Section> parse_ini(const std::string& text) {
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#' || line[first] == ';') continue;
        const auto last = line.find_last_not_of(" \t\r");
        std::string body = line.substr(first, last - first + 1);
        if (body.front() == '[') {
            if (body.back() != ']') throw ConfigError("config line " + std::to_string(lineno) +
                                                      ": malformed section header");
            sections.push_back({body.substr(1, body.size() - 2), {}, lineno});
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        if (sections.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": key outside a section");
        std::string key = body.substr(0, eq);
        std::string val = body.substr(eq + 1);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        key = trim(key);
        val = trim(val);
        if (!sections.back().kv.emplace(key, val).second)
            throw ConfigError("config: duplicate key '" + sections.back().name + "." + key + "'");
    }
    return sections;
}

class SectionView {
  public:
    SectionView(const Section& s, std::vector<std::string> allowed)
        : s_(s), allowed_(std::move(allowed)) {
        for (const auto& [k, v] : s_.kv) {
            if (std::find(allowed_.begin(), allowed_.end(), k) == allowed_.end())
                throw ConfigError("config: unknown key '" + s_.name + "." + k + "'");
        }
    }
    bool has(const std::string& k) const { return s_.kv.count(k) > 0; }
    std::string str(const std::string& k, const std::string& fallback = "") const {
        auto it = s_.kv.find(k);
        return it == s_.kv.end() ? fallback : it->second;
    }
    std::string require(const std::string& k) const {
        auto it = s_.kv.find(k);
        if (it == s_.kv.end())
            throw ConfigError("config: missing key '" + s_.name + "." + k + "'");
        return it->second;
    }
    double num(const std::string& k, double fallback) const {
        return has(k) ? parse_num(k, str(k)) : fallback;
    }
    double num_req(const std::string& k) const { return parse_num(k, require(k)); }
    uint64_t u64(const std::string& k, uint64_t fallback) const {
        return has(k) ? static_cast<uint64_t>(std::stoull(require(k))) : fallback;
    }
    std::vector<double> num_list(const std::string& k) const {
        std::vector<double> out;
        std::string v = require(k);
        std::replace(v.begin(), v.end(), ',', ' ');
        std::istringstream in(v);
        double x;
        while (in >> x) out.push_back(x);
        if (out.empty()) throw ConfigError("config: empty list '" + s_.name + "." + k + "'");
        return out;
    }

  private:
    double parse_num(const std::string& k, const std::string& v) const {
        try {
            size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("config: bad number for '" + s_.name + "." + k + "': " + v);
        }
    }
    const Section& s_;
    std::vector<std::string> allowed_;
};

Triangulation load_triangulation(const std::string& path) {
    return triangulation_from_file(load_graph_file(path));
}

}  // namespace

std::vector<std::string> run_config_text(const std::string& text, const std::string& base_dir) {
    namespace fs = std::filesystem;
    auto resolve = [&](const std::string& p) {
        if (p.empty() || fs::path(p).is_absolute() || base_dir.empty()) return p;
        return (fs::path(base_dir) / p).string();
    };

    std::vector<std::string> written;
    for (const Section& sec : parse_ini(text)) {
        if (sec.name == "generate") {
            SectionView v(sec, {"family", "size", "degree", "rows", "cols", "seed", "out"});
            GeneratorSpec spec;
            spec.family = v.require("family");
            spec.size = static_cast<int>(v.num("size", 1));
            spec.degree = static_cast<int>(v.num("degree", 7));
            spec.rows = static_cast<int>(v.num("rows", 1));
            spec.cols = static_cast<int>(v.num("cols", 2));
            spec.seed = v.u64("seed", 0);
            const std::string out = resolve(v.require("out"));
            write_text_file(out, generate_serialized(spec));
            written.push_back(out);
        } else if (sec.name == "resistance") {
            SectionView v(sec, {"graph", "center", "rmax", "out"});
            const Triangulation t = load_triangulation(resolve(v.require("graph")));
            const std::string out = resolve(v.require("out"));
            write_text_file(out, experiment_resistance_csv(t, static_cast<int>(v.num("center", 0)),
                                                           static_cast<int>(v.num_req("rmax"))));
            written.push_back(out);
        } else if (sec.name == "one-arm") {
            SectionView v(sec, {"graph", "center", "r", "p", "trials", "seed", "out"});
            const Triangulation t = load_triangulation(resolve(v.require("graph")));
            std::vector<int> rs;
            for (double r : v.num_list("r")) rs.push_back(static_cast<int>(r));
            const std::string out = resolve(v.require("out"));
            write_text_file(out, experiment_one_arm_csv(t, static_cast<int>(v.num("center", 0)), rs,
                                                        v.num("p", 0.5), v.u64("trials", 1000),
                                                        v.u64("seed", 0)));
            written.push_back(out);
        } else if (sec.name == "arc-cross") {
            SectionView v(sec, {"graph", "p", "trials", "seed", "out"});
            const Triangulation t = load_triangulation(resolve(v.require("graph")));
            const std::string out = resolve(v.require("out"));
            write_text_file(out, experiment_arc_cross_csv(t, v.num("p", 0.5),
                                                          v.u64("trials", 1000), v.u64("seed", 0)));
            written.push_back(out);
        } else if (sec.name == "pc-sweep") {
            SectionView v(sec, {"family", "degree", "sizes", "p-grid", "trials", "seed", "out"});
            std::vector<int> sizes;
            for (double s : v.num_list("sizes")) sizes.push_back(static_cast<int>(s));
            const std::string out = resolve(v.require("out"));
            write_text_file(out, experiment_pc_sweep_csv(
                                     v.require("family"), static_cast<int>(v.num("degree", 7)),
                                     sizes, v.num_list("p-grid"), v.u64("trials", 1000),
                                     v.u64("seed", 0)));
            written.push_back(out);
        } else if (sec.name == "tile") {
            SectionView v(sec, {"graph", "out"});
            const GraphFile g = load_graph_file(resolve(v.require("graph")));
            if (g.source.empty() || g.sink.empty())
                throw ConfigError("config: tile.graph has no source/sink lines");
            const SquareTiling tiling = tile_from_two_terminal(network_from_file(g));
            const std::string out = resolve(v.require("out"));
            write_text_file(out, tiling_to_json(tiling));
            written.push_back(out);
        } else if (sec.name == "cross-tiling") {
            SectionView v(sec, {"tiling", "p", "trials", "seed", "out"});
            const SquareTiling tiling = tiling_from_json(read_text_file(resolve(v.require("tiling"))));
            const std::string out = resolve(v.require("out"));
            write_text_file(out, experiment_cross_tiling_csv(tiling, {v.num("p", 0.5)},
                                                             v.u64("trials", 1000), v.u64("seed", 0)));
            written.push_back(out);
        } else if (sec.name == "pack") {
            SectionView v(sec, {"graph", "out"});
            const Triangulation t = load_triangulation(resolve(v.require("graph")));
            const CirclePacking cp = pack(t, std::vector<double>(t.boundary.size(), 1.0));
            const std::string out = resolve(v.require("out"));
            write_text_file(out, packing_to_json(cp));
            written.push_back(out);
        } else if (sec.name == "hvoronoi") {
            SectionView v(sec, {"a", "b", "c", "d", "lambda-list", "R", "p", "trials", "seed",
                                "weight", "workers", "out"});
            const IdealBoundaryQuad quad =
                make_quad(v.num_req("a"), v.num_req("b"), v.num_req("c"), v.num_req("d"));
            const std::string out = resolve(v.require("out"));
            write_text_file(out, experiment_hvoronoi_csv(
                                     quad, v.num_list("lambda-list"), v.num("R", -1.0),
                                     v.u64("trials", 1000), v.u64("seed", 0), v.num("p", 0.5),
                                     v.str("weight", "none"),
                                     static_cast<int>(v.num("workers", 1))));
            written.push_back(out);
        } else {
            throw ConfigError("config: unknown section [" + sec.name + "]");
        }
    }
    return written;
}

std::vector<std::string> run_config_file(const std::string& path) {
    return run_config_text(read_text_file(path),
                           std::filesystem::path(path).parent_path().string());
}

}  // namespace percolab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/hyperbolic.hpp"
#include "percolab/square_tiling.hpp"

namespace percolab {

// Fixed CSV number format shared by every table, so replays are byte-equal.
std::string format_csv_double(double v);

std::string experiment_resistance_csv(const Triangulation& t, int center, int rmax);

std::string experiment_one_arm_csv(const Triangulation& t, int center, const std::vector<int>& rs,
                                   double p, uint64_t trials, uint64_t seed);

std::string experiment_cross_tiling_csv(const SquareTiling& tiling, const std::vector<double>& ps,
                                        uint64_t trials, uint64_t seed);

std::string experiment_arc_cross_csv(const Triangulation& t, double p, uint64_t trials,
                                     uint64_t seed);

std::string experiment_pc_sweep_csv(const std::string& family, int degree,
                                    const std::vector<int>& sizes,
                                    const std::vector<double>& p_grid, uint64_t trials,
                                    uint64_t seed);

// Named density weights accepted on the command line.
DensityWeight weight_by_id(const std::string& id);

std::string experiment_hvoronoi_csv(const IdealBoundaryQuad& quad,
                                    const std::vector<double>& lambdas, double r_override,
                                    uint64_t trials, uint64_t seed, double p,
                                    const std::string& weight_id, int workers);

// Flat key = value config with one [section] per experiment; unknown keys are
// rejected with their field path. Returns the output files written.
std::vector<std::string> run_config_text(const std::string& text, const std::string& base_dir);
std::vector<std::string> run_config_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace percolab

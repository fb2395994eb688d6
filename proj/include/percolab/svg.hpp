#pragma once

#include <string>
#include <utility>
#include <vector>

#include "percolab/circle_packing.hpp"
#include "percolab/hyperbolic.hpp"
#include "percolab/percolation.hpp"
#include "percolab/square_tiling.hpp"

namespace percolab {

// One <circle> element per vertex; optional per-vertex fill labels (cluster
// ids, -1 = unfilled).
std::string render_packing_svg(const CirclePacking& packing,
                               const std::vector<int>* fill_labels = nullptr);

// One <rect> per tile; colored black/white when a coloring is given.
std::string render_tiling_svg(const SquareTiling& tiling, const TileColoring* coloring = nullptr);

// Unit circle, Delaunay edges, one dot per site (black/white fill).
std::string render_voronoi_svg(const VoronoiTessellation& tess);

// Square tiling of the cylinder for a triangulation with poles at the root
// and the boundary; height is the circumference, tiles wrap mod height.
struct CylinderTiling {
    double width = 1.0;
    double circumference = 0.0;  // total current
    std::vector<Tile> tiles;     // y in [0, circumference)
};

CylinderTiling tile_cylinder_from_root(const Triangulation& t, int root, double tol = 1e-10);

std::string render_cylinder_tiling_svg(const CylinderTiling& tiling);
std::string cylinder_tiling_to_json(const CylinderTiling& tiling);

// Circle packing and cylinder square tiling of the d-regular triangulation,
// the two pictures of Figure 1 shape.
std::pair<std::string, std::string> render_figure1(int d, int r);

}  // namespace percolab

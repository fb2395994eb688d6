#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace percolab {

// Left-face orbit structure of a rotation system. Slot (v, i) denotes the
// directed edge v -> rot[v][i]; faces are traced with
// next(u -> v) = (v, predecessor of u in rot[v]), which walks interior faces
// counterclockwise and the outer face clockwise when rotations are CCW.
struct FaceStructure {
    std::vector<std::vector<int>> face_vertices;  // per face, vertex sequence (edge sources)
    std::vector<long long> rot_offset;            // CSR offsets per vertex into slot table
    std::vector<int> face_of_slot;                // left-face id per directed-edge slot
    int outer_face = -1;                          // filled by callers that know the outer walk

    long long slot(int v, int index_in_rot) const { return rot_offset[v] + index_in_rot; }
};

FaceStructure trace_faces(const std::vector<std::vector<int>>& rot);

// Index of v in rot[u]; degrees are bounded so a linear scan is fine.
int find_rot_index(const std::vector<std::vector<int>>& rot, int u, int v);

// True if cycles a and b are equal up to rotation (not reflection).
bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b);

// Finite bounded-degree planar triangulation of a disk. Construct only via
// build_from_rotation; fields are invariant afterwards.
struct Triangulation {
    int V = 0;
    long long E = 0;
    int degree_bound = 0;
    std::vector<std::vector<int>> rot;       // CCW neighbor lists
    std::vector<int> boundary;               // CCW boundary cycle (simple)
    std::vector<uint8_t> on_boundary;        // per vertex
    std::vector<std::array<int, 3>> faces;   // interior faces, CCW
    std::vector<long long> rot_offset;
    std::vector<int> face_of_slot;           // interior face id per slot, -1 = outer

    int degree(int v) const { return static_cast<int>(rot[v].size()); }
    bool interior(int v) const { return !on_boundary[v]; }
    long long slot(int v, int i) const { return rot_offset[v] + i; }
};

// Validates and builds; throws ValidationError naming the first violated
// invariant. Accepts either orientation and normalizes rotations to CCW.
Triangulation build_from_rotation(std::vector<std::vector<int>> rotation,
                                  std::vector<int> boundary_cycle);

struct BallDecomposition {
    int center = 0;
    std::vector<int> distance;      // per vertex of the extracted ball
    std::vector<int> layer_sizes;   // layer_sizes[r] = |{v : distance == r}|
    std::vector<int> original_id;   // ball vertex -> vertex of the parent graph
    int pinch_splits = 0;           // duplicated vertices during extraction
};

std::vector<int> bfs_distances(const Triangulation& t, int source);

// Face-spanned subcomplex of the masked vertices. Pinch vertices are
// duplicate-split (one copy per face fan); only the face component containing
// `center` is kept. Throws if that component is not a disk.
struct ExtractResult {
    Triangulation t;
    std::vector<int> original_id;
    int center_new_id = -1;
    int pinch_splits = 0;
    int dropped_components = 0;
};

ExtractResult extract_masked_subcomplex(const Triangulation& t, const std::vector<uint8_t>& mask,
                                        int center);

// Subcomplex spanned by faces whose three corners are all at distance <= r.
std::pair<Triangulation, BallDecomposition> ball(const Triangulation& t, int center, int r);

struct GrowthRow {
    int r;
    long long ball_size;
    long long sphere_size;
};

std::vector<GrowthRow> growth_profile(const Triangulation& t, int center);

// Planar two-terminal network: rotation system plus terminal sets lying on
// the outer face. Outer walk is the clockwise outer orbit (vertices may
// repeat, e.g. for trees).
struct PlanarNetwork {
    std::vector<std::vector<int>> rot;
    std::vector<int> outer;
    std::vector<int> source;
    std::vector<int> sink;

    int vertex_count() const { return static_cast<int>(rot.size()); }
    long long edge_count() const;
};

PlanarNetwork network_from_triangulation(const Triangulation& t, std::vector<int> source,
                                         std::vector<int> sink);

// Text format: "V E" header, V neighbor-list lines in rotation order, one
// boundary/outer line, then optional "source ..." / "sink ..." lines.
struct GraphFile {
    std::vector<std::vector<int>> rot;
    std::vector<int> boundary;
    std::vector<int> source;
    std::vector<int> sink;
};

std::string serialize_graph(const std::vector<std::vector<int>>& rot,
                            const std::vector<int>& boundary,
                            const std::vector<int>& source = {},
                            const std::vector<int>& sink = {});
GraphFile parse_graph(const std::string& text);
void save_graph_file(const std::string& path, const std::string& text);
GraphFile load_graph_file(const std::string& path);

Triangulation triangulation_from_file(const GraphFile& f);
PlanarNetwork network_from_file(const GraphFile& f);

}  // namespace percolab

#pragma once

#include "morleyns/geometry.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace morleyns {

using Index = std::int32_t;
inline constexpr Index kNoCell = -1;

struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

struct Vertex {
    Index id = 0;
    Vec2 pos;
    bool on_boundary = false;
};

/// Oriented edge.  The stored direction runs from v[0] to v[1]; the unit
/// tangent follows it and the unit normal is n = (t.y, -t.x), so that
/// t = (-n.y, n.x).  For boundary edges the normal points out of the domain;
/// for interior edges it points from cells[0] into cells[1].
struct Edge {
    Index id = 0;
    std::array<Index, 2> v{0, 0};
    double length = 0.0;
    Vec2 normal;
    Vec2 tangent;
    bool on_boundary = false;
    std::array<Index, 2> cells{kNoCell, kNoCell};
};

/// Simple polygon, counterclockwise vertex loop.  edges[k] joins
/// vertices[k] to vertices[k+1]; edge_sign[k] is +1 when the stored edge
/// direction agrees with the loop (equivalently, when the stored edge
/// normal is outward for this cell).
struct Cell {
    Index id = 0;
    std::vector<Index> vertices;
    std::vector<Index> edges;
    std::vector<int> edge_sign;
    double area = 0.0;
    Vec2 centroid;
    double diameter = 0.0;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
};

struct PolygonalMesh {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Cell> cells;
    double h = 0.0; // max cell diameter

    Index num_vertices() const { return static_cast<Index>(vertices.size()); }
    Index num_edges() const { return static_cast<Index>(edges.size()); }
    Index num_cells() const { return static_cast<Index>(cells.size()); }

    std::vector<Vec2> cell_points(const Cell& c) const {
        std::vector<Vec2> pts(c.vertices.size());
        for (std::size_t k = 0; k < c.vertices.size(); ++k)
            pts[k] = vertices[c.vertices[k]].pos;
        return pts;
    }

    double total_area() const {
        double a = 0.0;
        for (const auto& c : cells) a += c.area;
        return a;
    }
};

/// Builds edges, adjacency, boundary flags and geometric quantities from
/// vertex positions and ccw cell loops.  Throws MeshError on inconsistent
/// input (dangling indices, non-simple cells, zero areas).
PolygonalMesh build_mesh(std::vector<Vec2> points,
                         std::vector<std::vector<Index>> cell_loops);

enum class Domain { UnitSquare, LShaped };

PolygonalMesh generate_square_mesh(int n);
PolygonalMesh generate_triangle_mesh(int n, Domain domain = Domain::UnitSquare);
PolygonalMesh generate_trapezoid_mesh(int n);

/// Clipped Voronoi diagram of the given seeds in [0,1]^2, relaxed by
/// `lloyd_iters` Lloyd iterations.
PolygonalMesh voronoi_mesh_from_seeds(std::vector<Vec2> seeds, int lloyd_iters);

/// Same, with seeds drawn uniformly in [0,1]^2 from a seeded mt19937_64
/// (raw 64-bit output mapped to [0,1) explicitly, so the sequence is
/// identical on every platform).
PolygonalMesh generate_voronoi_mesh(int n_seeds, int lloyd_iters, std::uint64_t rng_seed);

struct ShapeDiagnostics {
    double rho_star = 0.0; // inscribed-ball radius of the cell kernel / h_E
    double rho_edge = 0.0; // min_e h_e / h_E
};

std::vector<ShapeDiagnostics> shape_diagnostics(const PolygonalMesh& mesh);

void save_mesh(const PolygonalMesh& mesh, const std::string& path);
PolygonalMesh load_mesh(const std::string& path);

} // namespace morleyns

#include "morleyns/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace morleyns {

namespace {

double polygon_signed_area(const std::vector<Vec2>& pts) {
    double a = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = pts[k];
        const Vec2& q = pts[(k + 1) % n];
        a += cross(p, q);
    }
    return 0.5 * a;
}

Vec2 polygon_centroid(const std::vector<Vec2>& pts, double area) {
    Vec2 c;
    const std::size_t n = pts.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = pts[k];
        const Vec2& q = pts[(k + 1) % n];
        const double w = cross(p, q);
        c.x += (p.x + q.x) * w;
        c.y += (p.y + q.y) * w;
    }
    return c / (6.0 * area);
}

double polygon_diameter(const std::vector<Vec2>& pts) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Vec2 r = pts[i] - pts[j];
            d2 = std::max(d2, dot(r, r));
        }
    return std::sqrt(d2);
}

bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// O(n^2) simplicity check; cells are small.
bool loop_is_simple(const std::vector<Vec2>& pts) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_properly_intersect(pts[i], pts[(i + 1) % n],
                                            pts[j], pts[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

} // namespace

PolygonalMesh build_mesh(std::vector<Vec2> points,
                         std::vector<std::vector<Index>> cell_loops) {
    PolygonalMesh mesh;
    mesh.vertices.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
            throw MeshError("build_mesh: non-finite vertex coordinate");
        mesh.vertices[i].id = static_cast<Index>(i);
        mesh.vertices[i].pos = points[i];
    }

    const Index nv = mesh.num_vertices();
    std::map<std::pair<Index, Index>, Index> edge_of;

    mesh.cells.resize(cell_loops.size());
    for (std::size_t c = 0; c < cell_loops.size(); ++c) {
        Cell& cell = mesh.cells[c];
        cell.id = static_cast<Index>(c);
        cell.vertices = std::move(cell_loops[c]);
        const std::size_t n = cell.vertices.size();
        if (n < 3) throw MeshError("build_mesh: cell with fewer than 3 vertices");
        for (Index v : cell.vertices)
            if (v < 0 || v >= nv)
                throw MeshError("build_mesh: dangling vertex index " + std::to_string(v));

        std::vector<Vec2> pts(n);
        for (std::size_t k = 0; k < n; ++k) pts[k] = mesh.vertices[cell.vertices[k]].pos;

        const double sa = polygon_signed_area(pts);
        if (!(sa > 0.0))
            throw MeshError("build_mesh: cell " + std::to_string(c) +
                            " is not counterclockwise or has zero area");
        if (!loop_is_simple(pts))
            throw MeshError("build_mesh: cell " + std::to_string(c) + " is self-intersecting");

        cell.area = sa;
        cell.centroid = polygon_centroid(pts, sa);
        cell.diameter = polygon_diameter(pts);

        cell.edges.resize(n);
        cell.edge_sign.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const Index a = cell.vertices[k];
            const Index b = cell.vertices[(k + 1) % n];
            if (a == b) throw MeshError("build_mesh: repeated consecutive vertex in cell");
            const auto key = std::minmax(a, b);
            auto it = edge_of.find({key.first, key.second});
            if (it == edge_of.end()) {
                Edge e;
                e.id = mesh.num_edges();
                e.v = {a, b}; // stored direction = first traversal
                const Vec2 d = mesh.vertices[b].pos - mesh.vertices[a].pos;
                e.length = norm(d);
                if (!(e.length > 0.0)) throw MeshError("build_mesh: zero-length edge");
                e.tangent = d / e.length;
                e.normal = {e.tangent.y, -e.tangent.x};
                e.cells[0] = cell.id;
                edge_of.emplace(std::make_pair(key.first, key.second), e.id);
                mesh.edges.push_back(e);
                cell.edges[k] = e.id;
                cell.edge_sign[k] = 1;
            } else {
                Edge& e = mesh.edges[it->second];
                if (e.cells[1] != kNoCell)
                    throw MeshError("build_mesh: edge shared by more than two cells");
                e.cells[1] = cell.id;
                cell.edges[k] = e.id;
                cell.edge_sign[k] = (e.v[0] == a) ? 1 : -1;
                if (cell.edge_sign[k] == 1)
                    throw MeshError("build_mesh: inconsistent cell orientations across an edge");
            }
        }
    }

    for (auto& e : mesh.edges) {
        e.on_boundary = (e.cells[1] == kNoCell);
        if (e.on_boundary) {
            mesh.vertices[e.v[0]].on_boundary = true;
            mesh.vertices[e.v[1]].on_boundary = true;
        }
    }

    mesh.h = 0.0;
    for (const auto& c : mesh.cells) mesh.h = std::max(mesh.h, c.diameter);
    return mesh;
}

//----------------------------------------------------------------------------
// Structured generators
//----------------------------------------------------------------------------

PolygonalMesh generate_square_mesh(int n) {
    if (n < 1) throw MeshError("generate_square_mesh: n must be >= 1");
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            pts.emplace_back(double(i) / n, double(j) / n);

    auto vid = [n](int i, int j) { return static_cast<Index>(j * (n + 1) + i); };
    std::vector<std::vector<Index>> loops;
    loops.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            loops.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    return build_mesh(std::move(pts), std::move(loops));
}

PolygonalMesh generate_triangle_mesh(int n, Domain domain) {
    if (n < 1) throw MeshError("generate_triangle_mesh: n must be >= 1");

    if (domain == Domain::UnitSquare) {
        std::vector<Vec2> pts;
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                pts.emplace_back(double(i) / n, double(j) / n);
        auto vid = [n](int i, int j) { return static_cast<Index>(j * (n + 1) + i); };
        std::vector<std::vector<Index>> loops;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                loops.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
                loops.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
            }
        return build_mesh(std::move(pts), std::move(loops));
    }

    // L-shaped: [-1,1]^2 minus the quadrant (0,1)x(-1,0), n divisions per
    // side of the big square.  n must be even so that the re-entrant corner
    // (0,0) is a grid vertex.
    if (n % 2 != 0)
        throw MeshError("generate_triangle_mesh: n must be even for the L-shaped domain");

    const double sp = 2.0 / n;
    std::vector<Vec2> pts;
    std::vector<Index> id(static_cast<std::size_t>(n + 1) * (n + 1), -1);
    auto lin = [n](int i, int j) { return static_cast<std::size_t>(j * (n + 1) + i); };
    auto in_domain = [&](int i, int j) {
        const double x = -1.0 + i * sp, y = -1.0 + j * sp;
        return !(x > 0.0 && y < 0.0); // removed quadrant is x in (0,1), y in (-1,0)
    };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            if (in_domain(i, j)) {
                id[lin(i, j)] = static_cast<Index>(pts.size());
                pts.emplace_back(-1.0 + i * sp, -1.0 + j * sp);
            }

    std::vector<std::vector<Index>> loops;
    auto square_kept = [&](int i, int j) {
        // cell (i,j) spans x in (x_i, x_{i+1}); keep unless fully inside the notch
        const double xm = -1.0 + (i + 0.5) * sp, ym = -1.0 + (j + 0.5) * sp;
        return !(xm > 0.0 && ym < 0.0);
    };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (!square_kept(i, j)) continue;
            const Index a = id[lin(i, j)], b = id[lin(i + 1, j)];
            const Index c = id[lin(i + 1, j + 1)], d = id[lin(i, j + 1)];
            loops.push_back({a, b, c});
            loops.push_back({a, c, d});
        }
    return build_mesh(std::move(pts), std::move(loops));
}

PolygonalMesh generate_trapezoid_mesh(int n) {
    if (n < 1) throw MeshError("generate_trapezoid_mesh: n must be >= 1");
    const double delta = 0.25 / n;
    std::vector<Vec2> pts;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            double y = double(j) / n;
            if (j > 0 && j < n) y += delta * ((i + j) % 2 == 0 ? 1.0 : -1.0);
            pts.emplace_back(double(i) / n, y);
        }
    auto vid = [n](int i, int j) { return static_cast<Index>(j * (n + 1) + i); };
    std::vector<std::vector<Index>> loops;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            loops.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    auto mesh = build_mesh(std::move(pts), std::move(loops));
    for (const auto& c : mesh.cells)
        if (!(c.area > 0.0)) throw MeshError("generate_trapezoid_mesh: degenerate cell");
    return mesh;
}

//----------------------------------------------------------------------------
// Voronoi / CVT
//----------------------------------------------------------------------------

namespace {

struct SeedGrid {
    int res;
    double inv_cell;
    std::vector<std::vector<int>> buckets;

    explicit SeedGrid(const std::vector<Vec2>& seeds) {
        res = std::max(1, static_cast<int>(std::floor(std::sqrt(double(seeds.size())))));
        inv_cell = res;
        buckets.assign(static_cast<std::size_t>(res) * res, {});
        for (std::size_t i = 0; i < seeds.size(); ++i) buckets[index_of(seeds[i])].push_back(int(i));
    }

    std::size_t index_of(const Vec2& p) const {
        int ix = std::clamp(int(p.x * inv_cell), 0, res - 1);
        int iy = std::clamp(int(p.y * inv_cell), 0, res - 1);
        return static_cast<std::size_t>(iy) * res + ix;
    }

    // Seeds in the ring of bucket-distance r around the bucket of p.
    void ring(const Vec2& p, int r, std::vector<int>& out) const {
        out.clear();
        int ix = std::clamp(int(p.x * inv_cell), 0, res - 1);
        int iy = std::clamp(int(p.y * inv_cell), 0, res - 1);
        for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx) {
                if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
                const int jx = ix + dx, jy = iy + dy;
                if (jx < 0 || jy < 0 || jx >= res || jy >= res) continue;
                const auto& b = buckets[static_cast<std::size_t>(jy) * res + jx];
                out.insert(out.end(), b.begin(), b.end());
            }
    }
};

// Clip convex polygon by half-plane {p : dot(p - base, dir) <= 0}.
void clip_halfplane(std::vector<Vec2>& poly, const Vec2& base, const Vec2& dir,
                    std::vector<Vec2>& scratch) {
    scratch.clear();
    const std::size_t n = poly.size();
    if (n == 0) return;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = dot(poly[i] - base, dir);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const bool in_i = d[i] <= 0.0, in_j = d[j] <= 0.0;
        if (in_i) scratch.push_back(poly[i]);
        if (in_i != in_j) {
            const double t = d[i] / (d[i] - d[j]);
            scratch.push_back(poly[i] + (poly[j] - poly[i]) * t);
        }
    }
    poly.swap(scratch);
}

std::vector<Vec2> voronoi_cell(const std::vector<Vec2>& seeds, const SeedGrid& grid, int i) {
    std::vector<Vec2> poly = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::vector<Vec2> scratch;
    std::vector<int> cand;
    const Vec2 s = seeds[i];

    auto max_r2 = [&]() {
        double m = 0.0;
        for (const auto& p : poly) { const Vec2 r = p - s; m = std::max(m, dot(r, r)); }
        return m;
    };

    for (int ring = 0; ring < 2 * grid.res + 2; ++ring) {
        const double ring_min = std::max(0.0, (ring - 1) / grid.inv_cell);
        if (ring > 1 && ring_min * ring_min > 4.0 * max_r2()) break; // bisectors can no longer cut
        grid.ring(s, ring, cand);
        for (int j : cand) {
            if (j == i) continue;
            const Vec2 mid = (s + seeds[j]) * 0.5;
            const Vec2 dir = seeds[j] - s;
            clip_halfplane(poly, mid, dir, scratch);
            if (poly.empty()) throw MeshError("voronoi: empty cell (duplicate seeds?)");
        }
    }
    return poly;
}

// Merge nearly identical points across cells into shared vertex ids.
struct PointMerger {
    double tol;
    std::map<std::pair<long long, long long>, std::vector<Index>> grid;
    std::vector<Vec2> points;

    explicit PointMerger(double tol_) : tol(tol_) {}

    Index insert(const Vec2& p) {
        const long long gx = static_cast<long long>(std::floor(p.x / tol));
        const long long gy = static_cast<long long>(std::floor(p.y / tol));
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find({gx + dx, gy + dy});
                if (it == grid.end()) continue;
                for (Index id : it->second)
                    if (norm(points[id] - p) <= tol) return id;
            }
        const Index id = static_cast<Index>(points.size());
        points.push_back(p);
        grid[{gx, gy}].push_back(id);
        return id;
    }
};

void snap_to_unit_box(Vec2& p, double tol) {
    if (std::abs(p.x) < tol) p.x = 0.0;
    if (std::abs(p.x - 1.0) < tol) p.x = 1.0;
    if (std::abs(p.y) < tol) p.y = 0.0;
    if (std::abs(p.y - 1.0) < tol) p.y = 1.0;
}

} // namespace

PolygonalMesh voronoi_mesh_from_seeds(std::vector<Vec2> seeds, int lloyd_iters) {
    if (seeds.empty()) throw MeshError("voronoi: need at least one seed");
    for (const auto& s : seeds)
        if (!(s.x >= 0.0 && s.x <= 1.0 && s.y >= 0.0 && s.y <= 1.0))
            throw MeshError("voronoi: seed outside [0,1]^2");

    std::vector<std::vector<Vec2>> polys(seeds.size());
    for (int it = 0; it <= lloyd_iters; ++it) {
        SeedGrid grid(seeds);
        for (std::size_t i = 0; i < seeds.size(); ++i)
            polys[i] = voronoi_cell(seeds, grid, int(i));
        if (it == lloyd_iters) break;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const double a = polygon_signed_area(polys[i]);
            seeds[i] = polygon_centroid(polys[i], a);
        }
    }

    for (std::size_t i = 0; i < seeds.size(); ++i)
        for (std::size_t j = i + 1; j < seeds.size(); ++j)
            if (norm(seeds[i] - seeds[j]) < 1e-12)
                throw MeshError("voronoi: duplicate seeds after relaxation");

    const double tol = 1e-7;
    PointMerger merger(tol);
    std::vector<std::vector<Index>> loops;
    loops.reserve(polys.size());
    for (auto& poly : polys) {
        std::vector<Index> loop;
        for (auto p : poly) {
            snap_to_unit_box(p, tol);
            const Index id = merger.insert(p);
            if (loop.empty() || loop.back() != id) loop.push_back(id);
        }
        while (loop.size() > 1 && loop.back() == loop.front()) loop.pop_back();
        if (loop.size() < 3) throw MeshError("voronoi: degenerate cell after merging");
        loops.push_back(std::move(loop));
    }
    return build_mesh(std::move(merger.points), std::move(loops));
}

PolygonalMesh generate_voronoi_mesh(int n_seeds, int lloyd_iters, std::uint64_t rng_seed) {
    if (n_seeds < 1) throw MeshError("generate_voronoi_mesh: n_seeds must be >= 1");
    std::mt19937_64 rng(rng_seed);
    auto uniform01 = [&rng]() {
        return double(rng() >> 11) * 0x1.0p-53; // platform-independent mapping
    };
    std::vector<Vec2> seeds(static_cast<std::size_t>(n_seeds));
    for (auto& s : seeds) { s.x = uniform01(); s.y = uniform01(); }
    return voronoi_mesh_from_seeds(std::move(seeds), lloyd_iters);
}

//----------------------------------------------------------------------------
// Shape regularity
//----------------------------------------------------------------------------

namespace {

// Chebyshev radius of the polygon kernel: max r with dist(x, each edge
// line) >= r, x on the inner side of every edge.  Solved by enumerating
// triples of active constraints (cells have few edges).
double kernel_inradius(const std::vector<Vec2>& pts) {
    const std::size_t n = pts.size();
    // constraint per edge: dot(nin_k, x) - b_k >= r, with inward unit normal
    std::vector<Vec2> nin(n);
    std::vector<double> b(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 a = pts[k], c = pts[(k + 1) % n];
        const Vec2 t = (c - a) / norm(c - a);
        nin[k] = {-t.y, t.x}; // inward for ccw loop
        b[k] = dot(nin[k], a);
    }
    auto feasible = [&](const Vec2& x, double r) {
        for (std::size_t k = 0; k < n; ++k)
            if (dot(nin[k], x) - b[k] < r - 1e-12) return false;
        return true;
    };
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                // solve dot(nin,x) - r = b for the three constraints
                const double A[3][3] = {{nin[i].x, nin[i].y, -1.0},
                                        {nin[j].x, nin[j].y, -1.0},
                                        {nin[k].x, nin[k].y, -1.0}};
                const double rhs[3] = {b[i], b[j], b[k]};
                const double det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                                   A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                                   A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
                if (std::abs(det) < 1e-14) continue;
                auto solve_col = [&](int col) {
                    double M[3][3];
                    for (int r_ = 0; r_ < 3; ++r_)
                        for (int c_ = 0; c_ < 3; ++c_) M[r_][c_] = (c_ == col) ? rhs[r_] : A[r_][c_];
                    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                            M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                            M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])) / det;
                };
                const Vec2 x{solve_col(0), solve_col(1)};
                const double r = solve_col(2);
                if (r > best && feasible(x, r)) best = r;
            }
    return best;
}

} // namespace

std::vector<ShapeDiagnostics> shape_diagnostics(const PolygonalMesh& mesh) {
    std::vector<ShapeDiagnostics> out(mesh.cells.size());
    for (const auto& c : mesh.cells) {
        double hmin = std::numeric_limits<double>::max();
        for (Index e : c.edges) hmin = std::min(hmin, mesh.edges[e].length);
        out[c.id].rho_edge = hmin / c.diameter;
        out[c.id].rho_star = kernel_inradius(mesh.cell_points(c)) / c.diameter;
    }
    return out;
}

//----------------------------------------------------------------------------
// Text file I/O
//----------------------------------------------------------------------------

void save_mesh(const PolygonalMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MeshError("save_mesh: cannot open " + path);
    out << mesh.num_vertices() << ' ' << mesh.num_edges() << ' ' << mesh.num_cells() << '\n';
    char buf[80];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %d", v.pos.x, v.pos.y, v.on_boundary ? 1 : 0);
        out << buf << '\n';
    }
    for (const auto& e : mesh.edges)
        out << e.v[0] << ' ' << e.v[1] << ' ' << (e.on_boundary ? 1 : 0) << '\n';
    for (const auto& c : mesh.cells) {
        out << c.vertices.size();
        for (Index v : c.vertices) out << ' ' << v;
        out << '\n';
    }
    if (!out) throw MeshError("save_mesh: write failed for " + path);
}

PolygonalMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("load_mesh: cannot open " + path);

    long long nv = -1, ne = -1, nc = -1;
    if (!(in >> nv >> ne >> nc) || nv < 0 || ne < 0 || nc < 0)
        throw MeshError("load_mesh: malformed counts line");

    std::vector<Vec2> pts(static_cast<std::size_t>(nv));
    std::vector<int> vflags(static_cast<std::size_t>(nv));
    for (long long i = 0; i < nv; ++i) {
        if (!(in >> pts[i].x >> pts[i].y >> vflags[i]))
            throw MeshError("load_mesh: malformed vertex line " + std::to_string(i));
    }

    struct EdgeRec { Index a, b; int flag; };
    std::vector<EdgeRec> erecs(static_cast<std::size_t>(ne));
    for (long long i = 0; i < ne; ++i) {
        long long a, b; int flag;
        if (!(in >> a >> b >> flag))
            throw MeshError("load_mesh: malformed edge line " + std::to_string(i));
        if (a < 0 || a >= nv || b < 0 || b >= nv)
            throw MeshError("load_mesh: dangling index in edge " + std::to_string(i));
        erecs[i] = {static_cast<Index>(a), static_cast<Index>(b), flag};
    }

    std::vector<std::vector<Index>> loops(static_cast<std::size_t>(nc));
    for (long long c = 0; c < nc; ++c) {
        long long k;
        if (!(in >> k) || k < 3)
            throw MeshError("load_mesh: malformed cell line " + std::to_string(c));
        loops[c].resize(static_cast<std::size_t>(k));
        for (long long j = 0; j < k; ++j) {
            long long v;
            if (!(in >> v)) throw MeshError("load_mesh: malformed cell line " + std::to_string(c));
            if (v < 0 || v >= nv)
                throw MeshError("load_mesh: dangling index in cell " + std::to_string(c));
            loops[c][j] = static_cast<Index>(v);
        }
        std::vector<Vec2> loop_pts(loops[c].size());
        for (std::size_t j = 0; j < loops[c].size(); ++j) loop_pts[j] = pts[loops[c][j]];
        if (polygon_signed_area(loop_pts) < 0.0) {
            std::cerr << "load_mesh: cell " << c << " is clockwise, reorienting\n";
            std::reverse(loops[c].begin(), loops[c].end());
        }
    }

    auto mesh = build_mesh(std::move(pts), std::move(loops));

    if (mesh.num_edges() != static_cast<Index>(ne))
        throw MeshError("load_mesh: edge list does not match cells (expected " +
                        std::to_string(mesh.num_edges()) + ", file has " + std::to_string(ne) + ")");

    // Reorder mesh edges to match the file order so that save/load round-trips.
    std::map<std::pair<Index, Index>, Index> pos;
    for (Index i = 0; i < mesh.num_edges(); ++i) {
        const auto& e = mesh.edges[i];
        const auto key = std::minmax(e.v[0], e.v[1]);
        pos[{key.first, key.second}] = i;
    }
    std::vector<Index> perm(static_cast<std::size_t>(ne));   // file slot -> current id
    std::vector<Index> inv(static_cast<std::size_t>(ne), -1); // current id -> file slot
    for (long long i = 0; i < ne; ++i) {
        const auto key = std::minmax(erecs[i].a, erecs[i].b);
        auto it = pos.find({key.first, key.second});
        if (it == pos.end())
            throw MeshError("load_mesh: file edge " + std::to_string(i) +
                            " does not belong to any cell");
        perm[i] = it->second;
        if (inv[it->second] != -1)
            throw MeshError("load_mesh: duplicate edge in file");
        inv[it->second] = static_cast<Index>(i);
    }
    std::vector<Edge> reordered(static_cast<std::size_t>(ne));
    for (long long i = 0; i < ne; ++i) {
        reordered[i] = mesh.edges[perm[i]];
        reordered[i].id = static_cast<Index>(i);
    }
    mesh.edges = std::move(reordered);
    for (auto& c : mesh.cells)
        for (auto& e : c.edges) e = inv[e];

    for (long long i = 0; i < ne; ++i)
        if ((erecs[i].flag != 0) != mesh.edges[i].on_boundary)
            std::cerr << "load_mesh: boundary flag of edge " << i
                      << " disagrees with cell adjacency, using adjacency\n";
    for (long long i = 0; i < nv; ++i)
        if ((vflags[i] != 0) != mesh.vertices[i].on_boundary)
            std::cerr << "load_mesh: boundary flag of vertex " << i
                      << " disagrees with cell adjacency, using adjacency\n";
    return mesh;
}

} // namespace morleyns

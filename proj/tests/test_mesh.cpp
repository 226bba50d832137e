#include "morleyns/mesh.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace morleyns;

namespace {

void check_invariants(const PolygonalMesh& mesh, double domain_area, int holes = 0) {
    CHECK(mesh.total_area() == doctest::Approx(domain_area).epsilon(1e-12));

    // interior edges have two cells, boundary edges one; normals opposite
    for (const auto& e : mesh.edges) {
        if (e.on_boundary) {
            CHECK(e.cells[1] == kNoCell);
        } else {
            CHECK(e.cells[1] != kNoCell);
            const Cell& c0 = mesh.cells[e.cells[0]];
            const Cell& c1 = mesh.cells[e.cells[1]];
            int s0 = 0, s1 = 0;
            for (std::size_t k = 0; k < c0.edges.size(); ++k)
                if (c0.edges[k] == e.id) s0 = c0.edge_sign[k];
            for (std::size_t k = 0; k < c1.edges.size(); ++k)
                if (c1.edges[k] == e.id) s1 = c1.edge_sign[k];
            CHECK(s0 * s1 == -1);
        }
        CHECK(norm(e.normal) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(norm(e.tangent) == doctest::Approx(1.0).epsilon(1e-14));
        // t = (-n2, n1)
        CHECK(e.tangent.x == doctest::Approx(-e.normal.y).epsilon(1e-14));
        CHECK(e.tangent.y == doctest::Approx(e.normal.x).epsilon(1e-14));
        const double d = norm(mesh.vertices[e.v[1]].pos - mesh.vertices[e.v[0]].pos);
        CHECK(e.length == doctest::Approx(d).epsilon(1e-14));
    }

    // Euler's formula
    CHECK(mesh.num_vertices() - mesh.num_edges() + mesh.num_cells() == 1 - holes);

    for (const auto& d : shape_diagnostics(mesh)) CHECK(d.rho_edge > 0.0);
}

} // namespace

TEST_CASE("square mesh generator") {
    const auto m1 = generate_square_mesh(1);
    CHECK(m1.num_cells() == 1);
    CHECK(m1.num_vertices() == 4);
    CHECK(m1.num_edges() == 4);
    CHECK(m1.total_area() == doctest::Approx(1.0));
    check_invariants(m1, 1.0);

    const auto m2 = generate_square_mesh(2);
    CHECK(m2.num_cells() == 4);
    CHECK(m2.num_vertices() == 9);
    CHECK(m2.num_edges() == 12);
    check_invariants(m2, 1.0);

    const auto m32 = generate_square_mesh(32);
    CHECK(m32.h == doctest::Approx(std::sqrt(2.0) / 32.0));
    CHECK(m32.edges[0].length == doctest::Approx(1.0 / 32.0));
    check_invariants(m32, 1.0);

    CHECK_THROWS_AS(generate_square_mesh(0), MeshError);
}

TEST_CASE("triangle mesh generator") {
    const auto m1 = generate_triangle_mesh(1);
    CHECK(m1.num_cells() == 2);
    check_invariants(m1, 1.0);

    const auto ml = generate_triangle_mesh(4, Domain::LShaped);
    CHECK(ml.num_cells() == 24);
    check_invariants(ml, 3.0);

    const auto ml8 = generate_triangle_mesh(8, Domain::LShaped);
    CHECK(ml8.num_cells() == 96);
    check_invariants(ml8, 3.0);
    // the re-entrant corner must be a mesh vertex
    bool corner_found = false;
    for (const auto& v : ml8.vertices)
        if (norm(v.pos) < 1e-14) corner_found = true;
    CHECK(corner_found);

    CHECK_THROWS_AS(generate_triangle_mesh(3, Domain::LShaped), MeshError);
}

TEST_CASE("trapezoid mesh generator") {
    const auto m1 = generate_trapezoid_mesh(1);
    CHECK(m1.num_cells() == 1); // no interior rows to perturb
    check_invariants(m1, 1.0);

    const auto m2 = generate_trapezoid_mesh(2);
    CHECK(m2.num_cells() == 4);
    check_invariants(m2, 1.0);

    const auto m4 = generate_trapezoid_mesh(4);
    check_invariants(m4, 1.0);
    for (const auto& d : shape_diagnostics(m4)) {
        CHECK(d.rho_edge >= 0.1);
        CHECK(d.rho_star >= 0.1);
    }
}

TEST_CASE("voronoi mesh generator") {
    const auto m1 = generate_voronoi_mesh(1, 0, 7);
    CHECK(m1.num_cells() == 1);
    CHECK(m1.total_area() == doctest::Approx(1.0));

    // regular 2x2 grid of seeds, no relaxation: four equal squares
    const auto m4 = voronoi_mesh_from_seeds(
        {{0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75}, {0.75, 0.75}}, 0);
    CHECK(m4.num_cells() == 4);
    for (const auto& c : m4.cells) CHECK(c.area == doctest::Approx(0.25).epsilon(1e-12));
    check_invariants(m4, 1.0);

    const auto m64 = generate_voronoi_mesh(64, 100, 42);
    CHECK(m64.num_cells() == 64);
    CHECK(m64.total_area() == doctest::Approx(1.0).epsilon(1e-10));
    check_invariants(m64, 1.0);

    // determinism across calls
    const auto m64b = generate_voronoi_mesh(64, 100, 42);
    REQUIRE(m64b.num_vertices() == m64.num_vertices());
    for (Index i = 0; i < m64.num_vertices(); ++i) {
        CHECK(m64.vertices[i].pos.x == m64b.vertices[i].pos.x);
        CHECK(m64.vertices[i].pos.y == m64b.vertices[i].pos.y);
    }

    CHECK_THROWS_AS(voronoi_mesh_from_seeds({{0.5, 0.5}, {0.5, 0.5}}, 0), MeshError);
}

TEST_CASE("shape diagnostics reference values") {
    // unit square cell: min edge 1, diameter sqrt(2)
    const auto sq = generate_square_mesh(1);
    const auto dsq = shape_diagnostics(sq);
    CHECK(dsq[0].rho_edge == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(dsq[0].rho_star == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-9));

    // equilateral triangle: all edges equal the diameter
    const auto eq = build_mesh({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}}, {{0, 1, 2}});
    const auto deq = shape_diagnostics(eq);
    CHECK(deq[0].rho_edge == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(deq[0].rho_star == doctest::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-9)); // inradius

    // 2:1 rectangle: min edge 1, diameter sqrt(5)
    const auto rect = build_mesh({{0, 0}, {2, 0}, {2, 1}, {0, 1}}, {{0, 1, 2, 3}});
    const auto drect = shape_diagnostics(rect);
    CHECK(drect[0].rho_edge == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(drect[0].rho_star == doctest::Approx(0.5 / std::sqrt(5.0)).epsilon(1e-9));
}

TEST_CASE("mesh file round trip and parse errors") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "morleyns_mesh_io";
    fs::create_directories(dir);

    const auto mesh = generate_square_mesh(2);
    const std::string path = (dir / "square2.txt").string();
    save_mesh(mesh, path);
    const auto loaded = load_mesh(path);
    REQUIRE(loaded.num_vertices() == mesh.num_vertices());
    REQUIRE(loaded.num_edges() == mesh.num_edges());
    REQUIRE(loaded.num_cells() == mesh.num_cells());
    for (Index i = 0; i < mesh.num_vertices(); ++i) {
        CHECK(loaded.vertices[i].pos.x == mesh.vertices[i].pos.x);
        CHECK(loaded.vertices[i].pos.y == mesh.vertices[i].pos.y);
        CHECK(loaded.vertices[i].on_boundary == mesh.vertices[i].on_boundary);
    }
    for (Index i = 0; i < mesh.num_edges(); ++i) {
        CHECK(loaded.edges[i].v == mesh.edges[i].v);
        CHECK(loaded.edges[i].on_boundary == mesh.edges[i].on_boundary);
    }
    for (Index i = 0; i < mesh.num_cells(); ++i)
        CHECK(loaded.cells[i].vertices == mesh.cells[i].vertices);

    // save(load(.)) is the identity on the canonical form
    const std::string path2 = (dir / "square2b.txt").string();
    save_mesh(loaded, path2);
    std::ifstream f1(path), f2(path2);
    const std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    const std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);

    SUBCASE("dangling vertex index") {
        const std::string bad = (dir / "bad1.txt").string();
        std::ofstream out(bad);
        out << "3 3 1\n0 0 1\n1 0 1\n0 1 1\n0 1 1\n1 2 1\n2 0 1\n3 0 1 99\n";
        out.close();
        CHECK_THROWS_WITH_AS(load_mesh(bad), doctest::Contains("dangling"), MeshError);
    }
    SUBCASE("malformed counts") {
        const std::string bad = (dir / "bad2.txt").string();
        std::ofstream out(bad);
        out << "x y z\n";
        out.close();
        CHECK_THROWS_WITH_AS(load_mesh(bad), doctest::Contains("counts"), MeshError);
    }
    SUBCASE("clockwise cell auto-reorients") {
        const std::string cw = (dir / "cw.txt").string();
        std::ofstream out(cw);
        out << "3 3 1\n0 0 1\n1 0 1\n0 1 1\n0 1 1\n1 2 1\n2 0 1\n3 0 2 1\n";
        out.close();
        const auto tri = load_mesh(cw);
        CHECK(tri.cells[0].area > 0.0);
    }
}

TEST_CASE("random polygon area oracle matches shoelace") {
    oracle::Rng rng(3);
    const auto m = generate_voronoi_mesh(16, 5, 11);
    for (const auto& c : m.cells) {
        const auto pts = m.cell_points(c);
        CHECK(oracle::polygon_moment(pts, 0, 0) == doctest::Approx(c.area).epsilon(1e-12));
    }
}

#include "morleyns/driver.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace morleyns;

int main(int argc, char** argv) {
    CLI::App app{"Stream-function virtual element solver for the steady "
                 "incompressible Navier-Stokes equations on polygonal meshes"};
    app.require_subcommand(1);

    //------------------------------------------------------------------
    // mesh gen
    //------------------------------------------------------------------
    auto* mesh_cmd = app.add_subcommand("mesh", "Mesh utilities");
    auto* gen = mesh_cmd->add_subcommand("gen", "Generate a mesh file");
    std::string family = "square", domain = "unit", mesh_out;
    int n = 8;
    std::uint64_t seed = 1234;
    int lloyd = 100;
    gen->add_option("--family", family, "square|tri|trap|cvt")->required();
    gen->add_option("--n", n, "cells or divisions per side (cvt: n^2 seeds)")->required();
    gen->add_option("--domain", domain, "unit|lshape (tri only)");
    gen->add_option("--seed", seed, "rng seed for cvt");
    gen->add_option("--lloyd", lloyd, "Lloyd iterations for cvt");
    gen->add_option("-o,--output", mesh_out, "output mesh file")->required();

    //------------------------------------------------------------------
    // run
    //------------------------------------------------------------------
    auto* run = app.add_subcommand("run", "Run a benchmark test");
    std::string config_path, test = "kovasznay", run_family = "square", levels = "4,8,16,32,64";
    std::string nus = "1.0", out_dir = "results", load_variant;
    run->add_option("--config", config_path, "key=value config file");
    run->add_option("--test", test, "kovasznay|lshaped|cavity|robustness");
    run->add_option("--family", run_family, "square|tri|trap|cvt");
    run->add_option("--levels", levels, "comma-separated refinement levels");
    run->add_option("--nu", nus, "viscosity (comma-separated list allowed)");
    run->add_option("--load", load_variant, "standard|rotational");
    run->add_option("--out", out_dir, "output directory");

    //------------------------------------------------------------------
    // diag
    //------------------------------------------------------------------
    auto* diag = app.add_subcommand("diag", "Shape-regularity diagnostics of a mesh file");
    std::string diag_path;
    diag->add_option("file", diag_path, "mesh file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            PolygonalMesh mesh;
            const Domain dom = (domain == "lshape") ? Domain::LShaped : Domain::UnitSquare;
            if (family == "square") mesh = generate_square_mesh(n);
            else if (family == "tri") mesh = generate_triangle_mesh(n, dom);
            else if (family == "trap") mesh = generate_trapezoid_mesh(n);
            else if (family == "cvt") mesh = generate_voronoi_mesh(n * n, lloyd, seed);
            else throw std::runtime_error("unknown family: " + family);
            save_mesh(mesh, mesh_out);
            std::cout << "wrote " << mesh_out << ": " << mesh.num_vertices() << " vertices, "
                      << mesh.num_edges() << " edges, " << mesh.num_cells()
                      << " cells, h=" << mesh.h << "\n";
        } else if (run->parsed()) {
            std::map<std::string, std::string> kv;
            if (!config_path.empty()) kv = parse_config_file(config_path);
            auto set_if_absent = [&kv](const std::string& k, const std::string& v) {
                if (!kv.count(k) && !v.empty()) kv[k] = v;
            };
            set_if_absent("test", test);
            set_if_absent("family", run_family);
            set_if_absent("levels", levels);
            set_if_absent("nu", nus);
            set_if_absent("load_variant", load_variant);
            set_if_absent("out", out_dir);
            run_benchmark(BenchmarkConfig::from_key_values(kv));
        } else if (diag->parsed()) {
            const PolygonalMesh mesh = load_mesh(diag_path);
            const auto d = shape_diagnostics(mesh);
            double min_star = 1e300, min_edge = 1e300;
            for (const auto& s : d) {
                min_star = std::min(min_star, s.rho_star);
                min_edge = std::min(min_edge, s.rho_edge);
            }
            std::cout << "cells: " << mesh.num_cells() << ", min rho_star: " << min_star
                      << ", min rho_edge: " << min_edge << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

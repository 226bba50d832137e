#include "morleyns/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace morleyns {

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_config_file: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

} // namespace

BenchmarkConfig BenchmarkConfig::from_key_values(const std::map<std::string, std::string>& kv) {
    BenchmarkConfig cfg;
    auto get = [&kv](const std::string& key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    if (auto* v = get("test")) {
        if (*v == "kovasznay") cfg.test = TestCase::Kovasznay;
        else if (*v == "lshaped") cfg.test = TestCase::Lshaped;
        else if (*v == "cavity") cfg.test = TestCase::Cavity;
        else if (*v == "robustness") cfg.test = TestCase::Robustness;
        else throw std::runtime_error("config: unknown test '" + *v + "'");
    }
    if (auto* v = get("family")) {
        if (*v == "square") cfg.family = MeshFamily::Square;
        else if (*v == "tri") cfg.family = MeshFamily::Triangle;
        else if (*v == "cvt") cfg.family = MeshFamily::Cvt;
        else if (*v == "trap") cfg.family = MeshFamily::Trapezoid;
        else throw std::runtime_error("config: unknown family '" + *v + "'");
    }
    if (auto* v = get("levels")) {
        cfg.levels.clear();
        for (const auto& s : split_list(*v)) cfg.levels.push_back(std::stoi(s));
        for (std::size_t i = 1; i < cfg.levels.size(); ++i)
            if (cfg.levels[i] <= cfg.levels[i - 1])
                throw std::runtime_error("config: levels must be strictly increasing");
    }
    if (auto* v = get("nu")) {
        cfg.nus.clear();
        for (const auto& s : split_list(*v)) cfg.nus.push_back(std::stod(s));
        for (double nu : cfg.nus)
            if (!(nu > 0.0)) throw std::runtime_error("config: nu must be positive");
    }
    if (auto* v = get("load_variant")) {
        if (*v == "standard") cfg.load_variant = LoadVariant::Standard;
        else if (*v == "rotational") cfg.load_variant = LoadVariant::Rotational;
        else throw std::runtime_error("config: unknown load_variant '" + *v + "'");
    }
    if (auto* v = get("out")) cfg.out_dir = *v;
    if (auto* v = get("seed")) cfg.rng_seed = std::stoull(*v);
    if (auto* v = get("lloyd_iters")) cfg.lloyd_iters = std::stoi(*v);
    if (auto* v = get("newton.tol")) cfg.newton.tolerance = std::stod(*v);
    if (auto* v = get("newton.max_iters")) cfg.newton.max_iterations = std::stoi(*v);
    if (auto* v = get("newton.damping")) cfg.newton.damping = (*v == "on" || *v == "1");
    if (auto* v = get("stab_scaling")) {
        if (*v == "paper") cfg.stab_scaling = StabScaling::Paper;
        else if (*v == "homogenized") cfg.stab_scaling = StabScaling::Homogenized;
        else throw std::runtime_error("config: unknown stab_scaling '" + *v + "'");
    }
    if (auto* v = get("pressure_nu")) cfg.pressure_nu = (*v == "on" || *v == "1");
    if (auto* v = get("quad.load_degree")) cfg.quad_load_degree = std::stoi(*v);
    if (auto* v = get("quad.error_degree")) cfg.quad_error_degree = std::stoi(*v);
    if (auto* v = get("with_pressure")) cfg.with_pressure = (*v == "on" || *v == "1");
    return cfg;
}

PolygonalMesh make_family_mesh(MeshFamily family, int n, Domain domain, std::uint64_t seed,
                               int lloyd_iters) {
    switch (family) {
    case MeshFamily::Square: return generate_square_mesh(n);
    case MeshFamily::Triangle: return generate_triangle_mesh(n, domain);
    case MeshFamily::Trapezoid: return generate_trapezoid_mesh(n);
    case MeshFamily::Cvt: return generate_voronoi_mesh(n * n, lloyd_iters, seed);
    }
    throw std::logic_error("make_family_mesh: bad family");
}

std::string family_name(MeshFamily family) {
    switch (family) {
    case MeshFamily::Square: return "square";
    case MeshFamily::Triangle: return "tri";
    case MeshFamily::Cvt: return "cvt";
    case MeshFamily::Trapezoid: return "trap";
    }
    return "?";
}

std::string test_name(TestCase test) {
    switch (test) {
    case TestCase::Kovasznay: return "kovasznay";
    case TestCase::Lshaped: return "lshaped";
    case TestCase::Cavity: return "cavity";
    case TestCase::Robustness: return "robustness";
    }
    return "?";
}

CaseResult solve_exact_case(const PolygonalMesh& mesh, const ExactSolution& exact, double nu,
                            const BenchmarkConfig& cfg,
                            const std::function<int(const Cell&)>& load_degree,
                            const std::function<int(const Cell&)>& error_degree) {
    const MorleyDofLayout layout(mesh);
    const auto ops = build_all_morley_ops(mesh, layout, cfg.stab_scaling);
    const SparseMat A = assemble_A(mesh, layout, ops);

    auto default_load_degree = [&cfg](const Cell&) { return cfg.quad_load_degree; };
    const Eigen::VectorXd F =
        assemble_load(mesh, layout, ops, exact.body_force, cfg.load_variant,
                      exact.rot_body_force, load_degree ? load_degree : default_load_degree);

    const BoundaryData bdata =
        build_boundary_data(mesh, layout, BoundaryCase::Exact, exact.psi, exact.grad_psi);

    CaseResult result;
    std::tie(result.stream, result.newton) =
        newton_solve(mesh, layout, ops, nu, A, F, bdata, cfg.newton);
    if (!result.newton.converged)
        throw std::runtime_error("solve_exact_case: Newton did not converge after " +
                                 std::to_string(result.newton.iterations) + " iterations");

    const Eigen::VectorXd* pcell = nullptr;
    if (cfg.with_pressure) {
        const CRDofLayout clayout(mesh);
        const auto cr_ops = build_all_cr_ops(mesh, clayout);
        result.pressure = solve_pressure(mesh, clayout, cr_ops, ops, result.stream.dofs,
                                         exact.body_force, nu, cfg.pressure_nu,
                                         cfg.quad_load_degree);
        pcell = &result.pressure.pressure;
    }

    auto default_error_degree = [&cfg](const Cell&) { return cfg.quad_error_degree; };
    result.errors = error_norms(mesh, ops, result.stream.dofs, exact, pcell,
                                error_degree ? error_degree : default_error_degree);
    result.errors.newton_iters = result.newton.iterations;
    return result;
}

ErrorReport run_kovasznay(const BenchmarkConfig& cfg, double nu) {
    const ExactSolution exact = kovasznay_solution(nu);
    ErrorReport report;
    for (int n : cfg.levels) {
        const PolygonalMesh mesh =
            make_family_mesh(cfg.family, n, Domain::UnitSquare, cfg.rng_seed, cfg.lloyd_iters);
        CaseResult r = solve_exact_case(mesh, exact, nu, cfg);
        r.errors.h = mesh.h;
        report.push_back(r.errors);
    }
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        std::ostringstream name;
        name << cfg.out_dir << "/errors_kovasznay_" << family_name(cfg.family) << "_nu" << nu
             << ".csv";
        write_error_csv(name.str(), report,
                        "test=kovasznay family=" + family_name(cfg.family) +
                            " nu=" + std::to_string(nu));
    }
    return report;
}

ErrorReport run_lshaped(const BenchmarkConfig& cfg) {
    const ExactSolution exact = lshaped_solution();
    const double nu = 1.0;
    ErrorReport report;
    for (int n : cfg.levels) {
        const PolygonalMesh mesh = generate_triangle_mesh(n, Domain::LShaped);
        const double spacing = 2.0 / n;
        // the corner-cell ring sees the r^(5/3) data; bump the quadrature there
        auto corner_degree = [&](int base) {
            return [base, spacing](const Cell& c) {
                const double d = norm(c.centroid);
                return d < 2.5 * spacing ? std::max(base, 12) : base;
            };
        };
        CaseResult r = solve_exact_case(mesh, exact, nu, cfg, corner_degree(10),
                                        corner_degree(cfg.quad_error_degree));
        r.errors.h = mesh.h;
        report.push_back(r.errors);
    }
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        write_error_csv(cfg.out_dir + "/errors_lshaped_tri.csv", report,
                        "test=lshaped family=tri nu=1");
    }
    return report;
}

CavityResult run_cavity(const BenchmarkConfig& cfg, double nu) {
    const int n = cfg.levels.empty() ? 64 : cfg.levels.back();
    const PolygonalMesh mesh =
        make_family_mesh(cfg.family, n, Domain::UnitSquare, cfg.rng_seed, cfg.lloyd_iters);
    const MorleyDofLayout layout(mesh);
    const auto ops = build_all_morley_ops(mesh, layout, cfg.stab_scaling);
    const SparseMat A = assemble_A(mesh, layout, ops);
    const Eigen::VectorXd F = Eigen::VectorXd::Zero(layout.size()); // no body force
    const BoundaryData bdata = build_boundary_data(mesh, layout, BoundaryCase::Lid);

    auto [stream, rep] = newton_solve(mesh, layout, ops, nu, A, F, bdata, cfg.newton);

    CavityResult out;
    out.newton_iters = rep.iterations;
    out.converged = rep.converged;

    const Eigen::VectorXd* pcell = nullptr;
    PressureSolution press;
    if (cfg.with_pressure) {
        const CRDofLayout clayout(mesh);
        const auto cr_ops = build_all_cr_ops(mesh, clayout);
        auto zero_force = [](const Vec2&) { return Vec2{0.0, 0.0}; };
        press = solve_pressure(mesh, clayout, cr_ops, ops, stream.dofs, zero_force, nu,
                               cfg.pressure_nu, cfg.quad_load_degree);
        pcell = &press.pressure;
    }

    out.fields = sample_fields(mesh, ops, stream.dofs, pcell, cfg.field_grid);
    out.psi_min = 1e300;
    for (const auto& r : out.fields.rows)
        if (r[2] < out.psi_min) {
            out.psi_min = r[2];
            out.psi_min_location = {r[0], r[1]};
        }

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        std::ostringstream name;
        name << cfg.out_dir << "/fields_cavity_" << family_name(cfg.family) << "_nu" << nu
             << ".csv";
        write_field_csv(name.str(), out.fields);
    }
    return out;
}

std::vector<RobustnessRow> run_robustness(const BenchmarkConfig& cfg) {
    std::vector<RobustnessRow> rows;
    for (double nu : cfg.nus) {
        const ExactSolution exact = robustness_solution(nu);
        BenchmarkConfig local = cfg;
        local.load_variant = LoadVariant::Rotational;
        local.with_pressure = false;
        for (int n : cfg.levels) {
            const PolygonalMesh mesh = generate_square_mesh(n);
            CaseResult r = solve_exact_case(mesh, exact, nu, local);
            rows.push_back({nu, n, r.errors.e2_psi, r.newton.iterations});
        }
    }
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        std::ofstream out(cfg.out_dir + "/errors_robustness_square.csv");
        out << "# errors-csv-v1 test=robustness family=square\n";
        out << "nu,n,E2_psi,newton_iters\n";
        for (const auto& r : rows)
            out << r.nu << ',' << r.n << ',' << r.e2_psi << ',' << r.newton_iters << '\n';
    }
    return rows;
}

void run_benchmark(const BenchmarkConfig& cfg) {
    switch (cfg.test) {
    case TestCase::Kovasznay:
        for (double nu : cfg.nus) {
            const ErrorReport rep = run_kovasznay(cfg, nu);
            std::cout << "kovasznay " << family_name(cfg.family) << " nu=" << nu << ": "
                      << rep.size() << " levels, finest E2(psi)=" << rep.back().e2_psi << "\n";
        }
        break;
    case TestCase::Lshaped: {
        const ErrorReport rep = run_lshaped(cfg);
        std::cout << "lshaped tri: " << rep.size() << " levels, finest E2(psi)="
                  << rep.back().e2_psi << "\n";
        break;
    }
    case TestCase::Cavity:
        for (double nu : cfg.nus) {
            const CavityResult r = run_cavity(cfg, nu);
            std::cout << "cavity " << family_name(cfg.family) << " nu=" << nu << ": "
                      << r.newton_iters << " Newton iterations, min psi=" << r.psi_min << " at ("
                      << r.psi_min_location.x << ", " << r.psi_min_location.y << ")\n";
        }
        break;
    case TestCase::Robustness: {
        const auto rows = run_robustness(cfg);
        for (const auto& r : rows)
            std::cout << "robustness nu=" << r.nu << " n=" << r.n << ": E2(psi)=" << r.e2_psi
                      << " iters=" << r.newton_iters << "\n";
        break;
    }
    }
}

} // namespace morleyns

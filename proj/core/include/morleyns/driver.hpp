#pragma once

#include "morleyns/postprocess.hpp"
#include "morleyns/solver.hpp"

#include <map>
#include <string>

namespace morleyns {

enum class MeshFamily { Square, Triangle, Cvt, Trapezoid };
enum class TestCase { Kovasznay, Lshaped, Cavity, Robustness };

struct BenchmarkConfig {
    TestCase test = TestCase::Kovasznay;
    MeshFamily family = MeshFamily::Square;
    std::vector<int> levels = {4, 8, 16, 32, 64}; // n per level, h-label 1/n
    std::vector<double> nus = {1.0};
    LoadVariant load_variant = LoadVariant::Standard;
    std::string out_dir;           // empty: no files written
    std::uint64_t rng_seed = 1234; // CVT meshes
    int lloyd_iters = 100;
    NewtonConfig newton;
    StabScaling stab_scaling = StabScaling::Paper;
    bool pressure_nu = true;       // viscosity factor in the pressure load
    int quad_load_degree = 6;
    int quad_error_degree = 8;
    bool with_pressure = true;
    int field_grid = 101;

    static BenchmarkConfig from_key_values(const std::map<std::string, std::string>& kv);
};

std::map<std::string, std::string> parse_config_file(const std::string& path);

PolygonalMesh make_family_mesh(MeshFamily family, int n, Domain domain, std::uint64_t seed,
                               int lloyd_iters);

std::string family_name(MeshFamily family);
std::string test_name(TestCase test);

/// One full solve on one mesh: Newton, recovery, optional pressure, errors.
struct CaseResult {
    StreamSolution stream;
    SolveReport newton;
    PressureSolution pressure; // empty vectors when not requested
    ErrorRow errors;
};

CaseResult solve_exact_case(const PolygonalMesh& mesh, const ExactSolution& exact, double nu,
                            const BenchmarkConfig& cfg,
                            const std::function<int(const Cell&)>& load_degree = nullptr,
                            const std::function<int(const Cell&)>& error_degree = nullptr);

/// Kovasznay convergence study for one mesh family and one viscosity;
/// h-label of level n is 1/n.
ErrorReport run_kovasznay(const BenchmarkConfig& cfg, double nu);

/// L-shaped convergence study (triangular meshes, nu = 1); level n is the
/// number of divisions per side of [-1,1]^2, labelled h = 1/n.
ErrorReport run_lshaped(const BenchmarkConfig& cfg);

struct CavityResult {
    int newton_iters = 0;
    bool converged = false;
    double psi_min = 0.0;
    Vec2 psi_min_location;
    FieldSamples fields;
};

CavityResult run_cavity(const BenchmarkConfig& cfg, double nu);

struct RobustnessRow {
    double nu = 0.0;
    int n = 0;
    double e2_psi = 0.0;
    int newton_iters = 0;
};

std::vector<RobustnessRow> run_robustness(const BenchmarkConfig& cfg);

/// Executes the configured test, writing CSV outputs when out_dir is set.
void run_benchmark(const BenchmarkConfig& cfg);

} // namespace morleyns

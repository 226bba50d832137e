#include "morleyns/driver.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace morleyns;

TEST_CASE("config parsing") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "morleyns_cfg";
    fs::create_directories(dir);
    const std::string path = (dir / "run.cfg").string();
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "test = lshaped\n"
            << "family = tri\n"
            << "levels = 4, 8\n"
            << "nu = 1.0\n"
            << "newton.tol = 1e-9\n"
            << "newton.max_iters = 20\n"
            << "stab_scaling = homogenized\n"
            << "pressure_nu = off\n"
            << "load_variant = rotational  # trailing comment\n";
    }
    const auto kv = parse_config_file(path);
    const auto cfg = BenchmarkConfig::from_key_values(kv);
    CHECK(cfg.test == TestCase::Lshaped);
    CHECK(cfg.family == MeshFamily::Triangle);
    CHECK(cfg.levels == std::vector<int>{4, 8});
    CHECK(cfg.nus == std::vector<double>{1.0});
    CHECK(cfg.newton.tolerance == 1e-9);
    CHECK(cfg.newton.max_iterations == 20);
    CHECK(cfg.stab_scaling == StabScaling::Homogenized);
    CHECK(cfg.pressure_nu == false);
    CHECK(cfg.load_variant == LoadVariant::Rotational);

    CHECK_THROWS(BenchmarkConfig::from_key_values({{"test", "bogus"}}));
    CHECK_THROWS(BenchmarkConfig::from_key_values({{"levels", "8,4"}}));
    CHECK_THROWS(BenchmarkConfig::from_key_values({{"nu", "-1"}}));
}

TEST_CASE("small kovasznay study runs and writes a csv") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "morleyns_run";
    fs::remove_all(dir);

    BenchmarkConfig cfg;
    cfg.levels = {8, 16};
    cfg.family = MeshFamily::Square;
    cfg.out_dir = dir.string();
    const ErrorReport rep = run_kovasznay(cfg, 1.0);
    REQUIRE(rep.size() == 2);
    CHECK(rep[0].newton_iters <= 4);
    CHECK(rep[1].e2_psi < rep[0].e2_psi);
    // second-order quantities drop by roughly 4, first-order by roughly 2
    CHECK(rep[0].e0_psi / rep[1].e0_psi > 2.5);
    CHECK(rep[0].e2_psi / rep[1].e2_psi > 1.5);
    CHECK(fs::exists(dir / "errors_kovasznay_square_nu1.csv"));
}

TEST_CASE("small robustness study with the rotational load") {
    BenchmarkConfig cfg;
    cfg.levels = {8};
    cfg.nus = {1.0};
    const auto rows = run_robustness(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].e2_psi < 0.03); // smooth polynomial target at n=8
    CHECK(rows[0].newton_iters <= 5);
}

TEST_CASE("small cavity run converges and circulates clockwise") {
    BenchmarkConfig cfg;
    cfg.levels = {8};
    cfg.family = MeshFamily::Cvt;
    cfg.field_grid = 41;
    cfg.with_pressure = false;
    const CavityResult r = run_cavity(cfg, 0.1);
    CHECK(r.converged);
    CHECK(r.newton_iters <= 6);
    CHECK(r.psi_min < 0.0);
    CHECK(r.psi_min_location.y > 0.5);
}

#pragma once

#include "morleyns/exact.hpp"
#include "morleyns/morley.hpp"

#include <limits>
#include <optional>
#include <string>

namespace morleyns {

/// Cellwise polynomial recoveries from the stream-function dofs.
struct RecoveredFields {
    // per cell: P1^2 velocity coefficients, constant vorticity, P2 stream polynomial
    std::vector<Eigen::VectorXd> velocity;
    std::vector<double> vorticity;
    std::vector<Eigen::VectorXd> stream_p2;
};

RecoveredFields recover_fields(const PolygonalMesh& mesh, const std::vector<MorleyLocalOps>& ops,
                               const Eigen::VectorXd& psi);

struct ErrorRow {
    double h = 0.0;
    double e2_psi = 0.0, e1_psi = 0.0, e0_psi = 0.0;
    double e1_u = 0.0, e0_u = 0.0;
    double e0_w = 0.0;
    double e0_p = std::numeric_limits<double>::quiet_NaN(); // NaN: no pressure computed
    int newton_iters = 0;
};

using ErrorReport = std::vector<ErrorRow>;

/// Broken error norms of one solve against the exact bundle.  `cell_degree`
/// selects the quadrature exactness per cell (defaults to 8 everywhere).
ErrorRow error_norms(const PolygonalMesh& mesh, const std::vector<MorleyLocalOps>& ops,
                     const Eigen::VectorXd& psi, const ExactSolution& exact,
                     const Eigen::VectorXd* cell_pressure = nullptr,
                     const std::function<int(const Cell&)>& cell_degree = nullptr);

/// log2-style rate between consecutive rows: log(e1/e2)/log(h1/h2); NaN when
/// either error vanishes.
double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Rates column-by-column for a full report; row 0 has no rates.
struct RateTable {
    std::vector<std::array<double, 7>> rates; // R2psi R1psi R0psi R1u R0u R0w R0p
};
RateTable convergence_rates(const ErrorReport& report);

void write_error_csv(const std::string& path, const ErrorReport& report,
                     const std::string& comment);

/// psi and p sampled on an nx-by-nx uniform grid over the mesh bounding box
/// (cellwise polynomial evaluation).  Points outside the mesh are skipped.
struct FieldSamples {
    std::vector<std::array<double, 4>> rows; // x y psi p
};

FieldSamples sample_fields(const PolygonalMesh& mesh, const std::vector<MorleyLocalOps>& ops,
                           const Eigen::VectorXd& psi, const Eigen::VectorXd* cell_pressure,
                           int nx);

void write_field_csv(const std::string& path, const FieldSamples& samples);

} // namespace morleyns

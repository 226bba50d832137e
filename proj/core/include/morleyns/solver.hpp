#pragma once

#include "morleyns/assembly.hpp"

namespace morleyns {

struct NewtonConfig {
    double tolerance = 1e-8;
    int max_iterations = 50;
    bool damping = true;      // monotone backtracking (halving, <= 10 steps);
                              // full steps are taken whenever they already
                              // decrease the residual
    bool verbose = false;
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history;
    bool converged = false;
};

struct StreamSolution {
    Eigen::VectorXd dofs; // full Morley vector, boundary entries prescribed
};

struct PressureSolution {
    Eigen::VectorXd velocity;  // full CR vector, zero on the boundary
    Eigen::VectorXd pressure;  // one constant per cell, zero mean
    double multiplier = 0.0;
};

enum class SolveKind { Spd, General, Saddle };

/// Direct sparse solve; Cholesky for SPD systems, LU otherwise.  Verifies
/// the residual to 1e-10 relative and throws on failure.
Eigen::VectorXd linear_solve(const SparseMat& matrix, const Eigen::VectorXd& rhs,
                             SolveKind kind = SolveKind::General);

/// Newton iteration for nu A_h psi + B_h(psi; psi, .) = F on the free dofs,
/// starting from the zero vector (plus the Dirichlet lift).  Convergence is
/// declared when the Euclidean norm of the free residual drops below
/// tolerance * max(1, |F|).
std::pair<StreamSolution, SolveReport>
newton_solve(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
             const std::vector<MorleyLocalOps>& ops, double nu, const SparseMat& A,
             const Eigen::VectorXd& load, const BoundaryData& bdata, const NewtonConfig& config);

PressureSolution solve_pressure(const PolygonalMesh& mesh, const CRDofLayout& clayout,
                                const std::vector<CRLocalOps>& cr_ops,
                                const std::vector<MorleyLocalOps>& morley_ops,
                                const Eigen::VectorXd& psi,
                                const std::function<Vec2(const Vec2&)>& f, double nu,
                                bool include_viscosity_factor = true, int quad_degree = 6);

} // namespace morleyns

#include "morleyns/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cmath>
#include <iostream>

namespace morleyns {

Eigen::VectorXd linear_solve(const SparseMat& matrix, const Eigen::VectorXd& rhs,
                             SolveKind kind) {
    Eigen::VectorXd x;
    if (kind == SolveKind::Spd) {
        Eigen::SimplicialLLT<SparseMat> llt(matrix);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("linear_solve: Cholesky factorization failed (matrix not SPD?)");
        x = llt.solve(rhs);
    } else {
        Eigen::SparseLU<SparseMat> lu;
        lu.analyzePattern(matrix);
        lu.factorize(matrix);
        if (lu.info() != Eigen::Success)
            throw std::runtime_error(std::string("linear_solve: LU factorization failed: ") +
                                     lu.lastErrorMessage());
        x = lu.solve(rhs);
    }
    const double scale = std::max(1.0, rhs.norm());
    const double res = (matrix * x - rhs).norm();
    if (!(res <= 1e-10 * scale)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "linear_solve: residual %.3e exceeds tolerance", res / scale);
        throw std::runtime_error(buf);
    }
    return x;
}

std::pair<StreamSolution, SolveReport>
newton_solve(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
             const std::vector<MorleyLocalOps>& ops, double nu, const SparseMat& A,
             const Eigen::VectorXd& load, const BoundaryData& bdata, const NewtonConfig& config) {
    if (!(config.tolerance > 0.0))
        throw std::invalid_argument("newton_solve: tolerance must be positive");

    StreamSolution sol;
    SolveReport report;

    std::vector<Index> free_ids;
    for (Index i = 0; i < layout.size(); ++i)
        if (!bdata.fixed[i]) free_ids.push_back(i);

    auto restrict_free = [&free_ids](const Eigen::VectorXd& v) {
        Eigen::VectorXd r(free_ids.size());
        for (std::size_t i = 0; i < free_ids.size(); ++i) r[i] = v[free_ids[i]];
        return r;
    };

    Eigen::VectorXd load_free = restrict_free(load);
    const double scale = std::max(1.0, load_free.norm());

    auto residual_free = [&](const Eigen::VectorXd& psi) {
        const Eigen::VectorXd r =
            nu * (A * psi) + apply_trilinear(mesh, layout, ops, psi, psi) - load;
        return restrict_free(r).eval();
    };

    // iteration 1: the viscous solve with the boundary lift.  At a zero
    // state the Newton linearization is exactly nu A, so this is the first
    // Newton step of the homogeneous problem; for nonhomogeneous data it
    // replaces the rough zero-interior lift with a smooth extension.
    report.residual_history.push_back(restrict_free(
        nu * (A * bdata.values) + apply_trilinear(mesh, layout, ops, bdata.values, bdata.values)
        - load).norm());
    {
        const ReducedSystem red = reduce_system(SparseMat(nu * A), load, bdata);
        const Eigen::VectorXd x = linear_solve(red.matrix, red.rhs, SolveKind::Spd);
        sol.dofs = red.expand(x, bdata);
        ++report.iterations;
    }

    Eigen::VectorXd res = residual_free(sol.dofs);
    double res_norm = res.norm();
    report.residual_history.push_back(res_norm);

    for (int it = 1; it < config.max_iterations; ++it) {
        if (res_norm <= config.tolerance * scale) {
            report.converged = true;
            break;
        }

        const SparseMat J = assemble_jacobian(mesh, layout, ops, nu, A, sol.dofs);
        BoundaryData zero_bc = bdata;
        zero_bc.values.setZero(); // Newton increments vanish on prescribed dofs
        Eigen::VectorXd neg_res_full = Eigen::VectorXd::Zero(layout.size());
        for (std::size_t i = 0; i < free_ids.size(); ++i) neg_res_full[free_ids[i]] = -res[i];
        const ReducedSystem red = reduce_system(J, neg_res_full, zero_bc);

        Eigen::VectorXd delta;
        try {
            delta = linear_solve(red.matrix, red.rhs, SolveKind::General);
        } catch (const std::exception& e) {
            throw std::runtime_error("newton_solve: singular Jacobian at iteration " +
                                     std::to_string(it + 1) + ": " + e.what());
        }

        double alpha = 1.0;
        Eigen::VectorXd trial = sol.dofs;
        for (int back = 0;; ++back) {
            trial = sol.dofs;
            for (std::size_t i = 0; i < free_ids.size(); ++i)
                trial[free_ids[i]] += alpha * delta[i];
            const Eigen::VectorXd trial_res = residual_free(trial);
            const double trial_norm = trial_res.norm();
            if (!config.damping || trial_norm <= (1.0 - 1e-4 * alpha) * res_norm || back >= 10) {
                sol.dofs = trial;
                res = trial_res;
                res_norm = trial_norm;
                break;
            }
            alpha *= 0.5;
        }
        ++report.iterations;
        report.residual_history.push_back(res_norm);
        if (config.verbose)
            std::cerr << "newton: it " << report.iterations << " residual " << res_norm << "\n";
        if (res_norm <= config.tolerance * scale) {
            report.converged = true;
            break;
        }
    }

    if (report.converged) {
        for (std::size_t k = 2; k < report.residual_history.size(); ++k)
            if (report.residual_history[k] >= report.residual_history[k - 1]) {
                std::cerr << "newton: non-monotone residual at iteration " << k << "\n";
                break;
            }
    }
    return {std::move(sol), std::move(report)};
}

PressureSolution solve_pressure(const PolygonalMesh& mesh, const CRDofLayout& clayout,
                                const std::vector<CRLocalOps>& cr_ops,
                                const std::vector<MorleyLocalOps>& morley_ops,
                                const Eigen::VectorXd& psi,
                                const std::function<Vec2(const Vec2&)>& f, double nu,
                                bool include_viscosity_factor, int quad_degree) {
    const PressureSaddle sys = assemble_pressure_saddle(mesh, clayout, cr_ops, morley_ops, psi,
                                                        f, nu, include_viscosity_factor,
                                                        quad_degree);
    Eigen::VectorXd x;
    try {
        x = linear_solve(sys.matrix, sys.rhs, SolveKind::Saddle);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("solve_pressure: saddle solve failed "
                                             "(inf-sup breakdown?): ") + e.what());
    }

    PressureSolution out;
    out.velocity = Eigen::VectorXd::Zero(clayout.size());
    for (Index i = 0; i < sys.n_free; ++i) out.velocity[sys.free_to_full[i]] = x[i];
    out.pressure = x.segment(sys.n_free, sys.n_cells);
    out.multiplier = x[sys.n_free + sys.n_cells];
    return out;
}

} // namespace morleyns

#include "morleyns/solver.hpp"

#include "morleyns/exact.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace morleyns;

TEST_CASE("linear solve basics") {
    SparseMat I(5, 5);
    I.setIdentity();
    Eigen::VectorXd b(5);
    b << 1, -2, 3, 0, 5;
    CHECK((linear_solve(I, b, SolveKind::Spd) - b).norm() == 0.0);
    CHECK((linear_solve(I, b, SolveKind::General) - b).norm() == 0.0);

    // singular matrix is reported
    SparseMat Z(3, 3);
    CHECK_THROWS(linear_solve(Z, Eigen::VectorXd::Ones(3), SolveKind::General));
}

TEST_CASE("quadratic patch test for the viscous operator") {
    // Stokes-type solve: nu A psi = load built from the exact quadratic via
    // the consistency representation, exact boundary data
    for (int family = 0; family < 3; ++family) {
        const PolygonalMesh mesh = family == 0   ? generate_square_mesh(4)
                                   : family == 1 ? generate_triangle_mesh(4)
                                                 : generate_voronoi_mesh(16, 20, 21);
        const MorleyDofLayout layout(mesh);
        const auto ops = build_all_morley_ops(mesh, layout);
        const SparseMat A = assemble_A(mesh, layout, ops);
        const double nu = 2.5;

        const auto exact = quadratic_solution({0.3, -0.2, 0.8, 1.5, -0.7, 0.9});
        // load: nu * sum_E A^E(chi, Pi_D test), assembled cellwise from the
        // exact Hessian (independent of the assembled matrix)
        Eigen::VectorXd F = Eigen::VectorXd::Zero(layout.size());
        for (const auto& cell : mesh.cells) {
            const auto& o = ops[cell.id];
            const Hess2 hc = exact.hess_psi(cell.centroid);
            Eigen::VectorXd q(6);
            for (int j = 0; j < 6; ++j) {
                const Hess2 hj = o.basis.hessian(j, cell.centroid);
                q[j] = cell.area * (hc.xx * hj.xx + 2.0 * hc.xy * hj.xy + hc.yy * hj.yy);
            }
            const Eigen::VectorXd local = nu * o.proj_d.transpose() * q;
            for (int i = 0; i < o.ndof(); ++i)
                F[o.global_dof[i]] += o.dof_sign[i] * local[i];
        }

        const auto bdata =
            build_boundary_data(mesh, layout, BoundaryCase::Exact, exact.psi, exact.grad_psi);
        const ReducedSystem red = reduce_system(SparseMat(nu * A), F, bdata);
        const Eigen::VectorXd x = linear_solve(red.matrix, red.rhs, SolveKind::Spd);
        const Eigen::VectorXd psi = red.expand(x, bdata);

        const Eigen::VectorXd want = interpolate_function(mesh, layout, exact.psi, exact.grad_psi);
        CHECK((psi - want).lpNorm<Eigen::Infinity>() <= 1e-10);
    }
}

TEST_CASE("newton on zero data returns zero immediately") {
    const auto mesh = generate_trapezoid_mesh(4);
    const MorleyDofLayout layout(mesh);
    const auto ops = build_all_morley_ops(mesh, layout);
    const SparseMat A = assemble_A(mesh, layout, ops);
    const auto bdata = build_boundary_data(mesh, layout, BoundaryCase::Homogeneous);

    const auto [sol, rep] =
        newton_solve(mesh, layout, ops, 1.0, A, Eigen::VectorXd::Zero(layout.size()), bdata,
                     NewtonConfig{});
    CHECK(rep.converged);
    CHECK(rep.iterations <= 1);
    CHECK(sol.dofs.norm() == 0.0);
}

TEST_CASE("newton solves a small Kovasznay case and is deterministic") {
    const auto mesh = generate_square_mesh(8);
    const MorleyDofLayout layout(mesh);
    const auto ops = build_all_morley_ops(mesh, layout);
    const SparseMat A = assemble_A(mesh, layout, ops);
    const double nu = 1.0;
    const auto exact = kovasznay_solution(nu);
    const auto bdata =
        build_boundary_data(mesh, layout, BoundaryCase::Exact, exact.psi, exact.grad_psi);
    auto deg = [](const Cell&) { return 6; };
    const Eigen::VectorXd F =
        assemble_load(mesh, layout, ops, exact.body_force, LoadVariant::Standard, nullptr, deg);

    const auto [sol, rep] = newton_solve(mesh, layout, ops, nu, A, F, bdata, NewtonConfig{});
    CHECK(rep.converged);
    CHECK(rep.iterations <= 4);

    // prescribed dofs equal the boundary data exactly
    for (Index i = 0; i < layout.size(); ++i)
        if (bdata.fixed[i]) CHECK(sol.dofs[i] == bdata.values[i]);

    // residuals decrease after the first step
    for (std::size_t k = 2; k < rep.residual_history.size(); ++k)
        CHECK(rep.residual_history[k] < rep.residual_history[k - 1]);

    // bitwise determinism
    const auto [sol2, rep2] = newton_solve(mesh, layout, ops, nu, A, F, bdata, NewtonConfig{});
    CHECK(rep2.iterations == rep.iterations);
    CHECK((sol.dofs - sol2.dofs).norm() == 0.0);
}

TEST_CASE("pressure solve on zero data is zero") {
    const auto mesh = generate_square_mesh(3);
    const MorleyDofLayout mlayout(mesh);
    const CRDofLayout clayout(mesh);
    const auto mops = build_all_morley_ops(mesh, mlayout);
    const auto cops = build_all_cr_ops(mesh, clayout);
    auto zero_f = [](const Vec2&) { return Vec2{0.0, 0.0}; };

    const PressureSolution p = solve_pressure(mesh, clayout, cops, mops,
                                              Eigen::VectorXd::Zero(mlayout.size()), zero_f, 1.0);
    CHECK(p.velocity.norm() <= 1e-12);
    CHECK(p.pressure.norm() <= 1e-12);
    CHECK(std::abs(p.multiplier) <= 1e-12);
}

TEST_CASE("pressure solve captures gradient forces") {
    // psi = 0 and f = grad(g): the recovered pressure approximates the
    // zero-mean projection of g at first order
    auto run = [](int n) {
        const auto mesh = generate_square_mesh(n);
        const MorleyDofLayout mlayout(mesh);
        const CRDofLayout clayout(mesh);
        const auto mops = build_all_morley_ops(mesh, mlayout);
        const auto cops = build_all_cr_ops(mesh, clayout);
        auto f = [](const Vec2& p) {
            return Vec2{std::cos(p.x) * p.y, std::sin(p.x)}; // grad(y sin x)
        };
        const PressureSolution sol = solve_pressure(
            mesh, clayout, cops, mops, Eigen::VectorXd::Zero(mlayout.size()), f, 0.37);

        // zero-mean constraint
        double mean = 0.0;
        for (const auto& c : mesh.cells) mean += sol.pressure[c.id] * c.area;
        CHECK(std::abs(mean) <= 1e-12 * sol.pressure.cwiseAbs().maxCoeff());

        double err2 = 0.0;
        const double gbar = 0.5 * (1.0 - std::cos(1.0)); // mean of y sin(x) on the square
        for (const auto& c : mesh.cells)
            for (const auto& q : polygon_rule(mesh, c, 6)) {
                const double g = q.p.y * std::sin(q.p.x) - gbar;
                const double d = g - sol.pressure[c.id];
                err2 += q.w * d * d;
            }
        return std::sqrt(err2);
    };
    const double e16 = run(16);
    const double e32 = run(32);
    CHECK(e16 < 0.05);
    CHECK(e32 < 0.65 * e16);
}

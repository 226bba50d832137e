#include "morleyns/assembly.hpp"

#include "morleyns/exact.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/SparseCholesky>

#include <cmath>

using namespace morleyns;

namespace {

struct Setup {
    PolygonalMesh mesh;
    MorleyDofLayout layout;
    std::vector<MorleyLocalOps> ops;
    SparseMat A;

    explicit Setup(PolygonalMesh m)
        : mesh(std::move(m)), layout(mesh), ops(build_all_morley_ops(mesh, layout)),
          A(assemble_A(mesh, layout, ops)) {}
};

} // namespace

TEST_CASE("global stiffness kernel and consistency") {
    const Setup s(generate_trapezoid_mesh(3));

    // kernel before boundary conditions: 1, x, y
    for (const auto& c : {std::array<double, 6>{1, 0, 0, 0, 0, 0},
                          std::array<double, 6>{0, 1, 0, 0, 0, 0},
                          std::array<double, 6>{0, 0, 1, 0, 0, 0}}) {
        const auto exact = quadratic_solution(c);
        const auto d = interpolate_function(s.mesh, s.layout, exact.psi, exact.grad_psi);
        CHECK((s.A * d).norm() <= 1e-11 * s.A.norm() * std::max(1.0, d.norm()));
    }

    // one-cell mesh: global equals local
    const Setup s1(generate_square_mesh(1));
    const Eigen::MatrixXd dense(s1.A);
    const auto& o = s1.ops[0];
    for (int i = 0; i < o.ndof(); ++i)
        for (int j = 0; j < o.ndof(); ++j) {
            const double want = o.dof_sign[i] * o.dof_sign[j] * o.A_loc(i, j);
            CHECK(dense(o.global_dof[i], o.global_dof[j]) ==
                  doctest::Approx(want).epsilon(1e-14));
        }

    // global consistency: dofs(chi)^T A dofs(phi) = sum_E A^E(chi, Pi_D phi)
    oracle::Rng rng(83);
    const auto chi = quadratic_solution({0.1, -0.5, 0.9, 1.2, 0.4, -0.8});
    const auto dchi = interpolate_function(s.mesh, s.layout, chi.psi, chi.grad_psi);
    const Eigen::VectorXd dphi = rng.vector(s.layout.size());
    const double lhs = dchi.transpose() * s.A * dphi;
    double rhs = 0.0;
    for (const auto& cell : s.mesh.cells) {
        const auto& ops = s.ops[cell.id];
        const Eigen::VectorXd sp = ops.proj_d * ops.extract(dphi);
        const Hess2 hc = chi.hess_psi(cell.centroid);
        const Hess2 hp = ops.basis.eval_hessian(sp, cell.centroid);
        rhs += cell.area * (hc.xx * hp.xx + 2.0 * hc.xy * hp.xy + hc.yy * hp.yy);
    }
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(std::max(1.0, std::abs(rhs))));
}

TEST_CASE("trilinear form skew symmetry") {
    oracle::Rng rng(89);
    for (int family = 0; family < 2; ++family) {
        const Setup s(family == 0 ? generate_trapezoid_mesh(4) : generate_voronoi_mesh(16, 20, 7));
        for (int trial = 0; trial < 50; ++trial) {
            const Eigen::VectorXd zeta = rng.vector(s.layout.size());
            const Eigen::VectorXd phi = rng.vector(s.layout.size());
            const Eigen::VectorXd psi = rng.vector(s.layout.size());

            // scale estimate with the same units as B values
            double scale = 0.0;
            for (const auto& cell : s.mesh.cells) {
                const auto& o = s.ops[cell.id];
                const double c = o.proj_p0_lap * o.extract(zeta);
                scale += std::abs(c) * (o.tri_core * o.extract(phi)).norm() *
                         o.extract(psi).norm();
            }
            scale = std::max(scale, 1e-30);

            const Eigen::VectorXd r_phi = apply_trilinear(s.mesh, s.layout, s.ops, zeta, phi);
            CHECK(std::abs(r_phi.dot(phi)) <= 1e-12 * scale);

            const Eigen::VectorXd r_psi = apply_trilinear(s.mesh, s.layout, s.ops, zeta, psi);
            CHECK(std::abs(r_phi.dot(psi) + r_psi.dot(phi)) <= 1e-12 * scale);
        }

        // affine convecting field: the discrete Laplacian projection vanishes
        const auto aff = quadratic_solution({0.4, 1.0, -2.0, 0, 0, 0});
        const auto dz = interpolate_function(s.mesh, s.layout, aff.psi, aff.grad_psi);
        const Eigen::VectorXd r =
            apply_trilinear(s.mesh, s.layout, s.ops, dz, rng.vector(s.layout.size()));
        CHECK(r.norm() <= 1e-12);
    }
}

TEST_CASE("jacobian") {
    const Setup s(generate_square_mesh(3));
    oracle::Rng rng(97);

    // at zero state the Jacobian is the viscous operator
    const double nu = 0.7;
    const SparseMat J0 = assemble_jacobian(s.mesh, s.layout, s.ops, nu, s.A,
                                           Eigen::VectorXd::Zero(s.layout.size()));
    const SparseMat diff0 = J0 - SparseMat(nu * s.A);
    CHECK(Eigen::MatrixXd(diff0).norm() <= 1e-13 * Eigen::MatrixXd(s.A).norm());

    // finite-difference check of the full nonlinear residual derivative
    const Eigen::VectorXd psi = rng.vector(s.layout.size());
    const Eigen::VectorXd delta = rng.vector(s.layout.size());
    const SparseMat J = assemble_jacobian(s.mesh, s.layout, s.ops, nu, s.A, psi);
    auto residual = [&](const Eigen::VectorXd& v) {
        return (nu * (s.A * v) + apply_trilinear(s.mesh, s.layout, s.ops, v, v)).eval();
    };
    const double eps = 1e-7;
    const Eigen::VectorXd fd = (residual(psi + eps * delta) - residual(psi)) / eps;
    const Eigen::VectorXd jd = J * delta;
    CHECK((fd - jd).norm() <= 1e-6 * std::max(1.0, jd.norm()));

    // the Jacobian is genuinely nonsymmetric away from zero
    const Eigen::MatrixXd Jd(J);
    CHECK((Jd - Jd.transpose()).norm() > 1e-8 * Jd.norm());
}

TEST_CASE("load assembly") {
    const Setup s(generate_voronoi_mesh(9, 15, 13));
    auto deg6 = [](const Cell&) { return 6; };

    auto zero_f = [](const Vec2&) { return Vec2{0.0, 0.0}; };
    CHECK(assemble_load(s.mesh, s.layout, s.ops, zero_f, LoadVariant::Standard, nullptr, deg6)
              .norm() == 0.0);

    // rotational variant annihilates gradient fields: f = grad(g)
    auto grad_field = [](const Vec2& p) { return Vec2{2.0 * p.x, 3.0}; }; // grad(x^2 + 3y)
    auto zero_rot = [](const Vec2&) { return 0.0; };
    const Eigen::VectorXd Fr = assemble_load(s.mesh, s.layout, s.ops, grad_field,
                                             LoadVariant::Rotational, zero_rot, deg6);
    CHECK(Fr.norm() == 0.0);
    CHECK_THROWS(assemble_load(s.mesh, s.layout, s.ops, grad_field, LoadVariant::Rotational,
                               nullptr, deg6));

    // constant force against a quadratic test function: the projected curl
    // is exact, so the load functional equals the plain integral
    auto fconst = [](const Vec2&) { return Vec2{0.3, -1.1}; };
    const Eigen::VectorXd F =
        assemble_load(s.mesh, s.layout, s.ops, fconst, LoadVariant::Standard, nullptr, deg6);
    const auto chi = quadratic_solution({0.0, 0.2, -0.4, 0.5, 1.0, -0.6});
    const auto dchi = interpolate_function(s.mesh, s.layout, chi.psi, chi.grad_psi);
    double want = 0.0;
    for (const auto& cell : s.mesh.cells)
        for (const auto& q : polygon_rule(s.mesh, cell, 4)) {
            const Vec2 cu = rot_minus90(chi.grad_psi(q.p));
            want += q.w * (0.3 * cu.x - 1.1 * cu.y);
        }
    CHECK(F.dot(dchi) == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("boundary data") {
    const auto mesh = generate_square_mesh(4);
    const MorleyDofLayout layout(mesh);

    const auto hom = build_boundary_data(mesh, layout, BoundaryCase::Homogeneous);
    CHECK(hom.values.norm() == 0.0);
    Index nfixed = hom.count_fixed();
    Index nbdry = 0;
    for (const auto& v : mesh.vertices) nbdry += v.on_boundary;
    for (const auto& e : mesh.edges) nbdry += e.on_boundary;
    CHECK(nfixed == nbdry);

    const auto lid = build_boundary_data(mesh, layout, BoundaryCase::Lid);
    for (const auto& v : mesh.vertices)
        CHECK(lid.values[layout.vertex_dof(v.id)] == 0.0);
    int top_edges = 0;
    for (const auto& e : mesh.edges) {
        const double val = lid.values[layout.edge_dof(e.id)];
        const bool top = e.on_boundary &&
                         std::abs(mesh.vertices[e.v[0]].pos.y - 1.0) < 1e-12 &&
                         std::abs(mesh.vertices[e.v[1]].pos.y - 1.0) < 1e-12;
        if (top) {
            CHECK(val == doctest::Approx(0.25).epsilon(1e-14));
            ++top_edges;
        } else {
            CHECK(val == 0.0);
        }
    }
    CHECK(top_edges == 4);

    // exact data: vertex samples and quadrature moments of the gradient
    const auto exact = kovasznay_solution(1.0);
    const auto bd = build_boundary_data(mesh, layout, BoundaryCase::Exact, exact.psi,
                                        exact.grad_psi);
    for (const auto& v : mesh.vertices)
        if (v.on_boundary)
            CHECK(bd.values[layout.vertex_dof(v.id)] ==
                  doctest::Approx(exact.psi(v.pos)).epsilon(1e-14));
    for (const auto& e : mesh.edges)
        if (e.on_boundary) {
            double mu = 0.0;
            for (const auto& q :
                 edge_rule(mesh.vertices[e.v[0]].pos, mesh.vertices[e.v[1]].pos, 8))
                mu += q.w * dot(exact.grad_psi(q.p), e.normal);
            CHECK(bd.values[layout.edge_dof(e.id)] == doctest::Approx(mu).epsilon(1e-13));
        }

    // lid data on a non-square domain is rejected
    const auto lmesh = generate_triangle_mesh(4, Domain::LShaped);
    const MorleyDofLayout llayout(lmesh);
    CHECK_THROWS_AS(build_boundary_data(lmesh, llayout, BoundaryCase::Lid), MeshError);
}

TEST_CASE("reduced viscous block is SPD") {
    const Setup s(generate_voronoi_mesh(16, 20, 3));
    const auto bdata = build_boundary_data(s.mesh, s.layout, BoundaryCase::Homogeneous);
    const ReducedSystem red =
        reduce_system(s.A, Eigen::VectorXd::Zero(s.layout.size()), bdata);
    Eigen::SimplicialLLT<SparseMat> llt(red.matrix);
    CHECK(llt.info() == Eigen::Success);
}

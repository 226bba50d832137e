#include "morleyns/crouzeix_raviart.hpp"

#include <cmath>

namespace morleyns {

namespace {

struct EdgeGauss {
    std::array<double, 2> s;
    std::array<Vec2, 2> x;
    std::array<double, 2> w;

    EdgeGauss(const Vec2& a, const Vec2& b, double h) {
        const double g = 0.5 / std::sqrt(3.0);
        const double t0 = 0.5 - g, t1 = 0.5 + g;
        s = {t0 * h, t1 * h};
        x = {a + (b - a) * t0, a + (b - a) * t1};
        w = {0.5 * h, 0.5 * h};
    }
};

} // namespace

CRLocalOps build_cr_local_ops(const PolygonalMesh& mesh, const Cell& cell,
                              const CRDofLayout& layout) {
    CRLocalOps ops{CellFrame(mesh, cell),
                   ScaledMonomialBasis(cell.centroid, cell.diameter, 2)};
    const CellFrame& fr = ops.frame;
    const int nv = fr.nv;
    const int nd = 2 * nv;

    const auto mom = monomial_moments(fr.pts, ops.basis);
    const Eigen::Matrix3d g3 = mom.gram_h1.topLeftCorner<3, 3>();
    ops.gram_h1v = Eigen::MatrixXd::Zero(6, 6);
    ops.gram_h1v.topLeftCorner<3, 3>() = g3;
    ops.gram_h1v.bottomRightCorner<3, 3>() = g3;
    ops.integrals_p1 = mom.integrals.head(3);

    Eigen::Vector3d bdry_int = Eigen::Vector3d::Zero();
    for (int k = 0; k < nv; ++k) {
        const EdgeGauss eg(fr.pts[k], fr.pts[(k + 1) % nv], fr.h_e[k]);
        for (int g = 0; g < 2; ++g)
            for (int j = 0; j < 3; ++j) bdry_int[j] += eg.w[g] * ops.basis.value(j, eg.x[g]);
    }

    auto dofcol = [&](int e, int c) { return 2 * e + c; };

    //------------------------------------------------------------------
    // H1 projection onto P1^2
    //------------------------------------------------------------------
    {
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(6, 6);
        Eigen::MatrixXd R = Eigen::MatrixXd::Zero(6, nd);
        for (int comp = 0; comp < 2; ++comp) {
            for (int k = 1; k < 3; ++k) {
                const int j = comp * 3 + k;
                K.row(j) = ops.gram_h1v.row(j);
                for (int e = 0; e < nv; ++e) {
                    const Vec2 gm = ops.basis.gradient(k, fr.centroid);
                    const double cn = dot(gm, fr.n_out[e]);
                    // (grad chi) n has only the comp entry; dot with the edge
                    // average m_e picks the matching dof component
                    R(j, dofcol(e, comp)) += fr.h_e[e] * cn;
                }
            }
            const int j0 = comp * 3;
            for (int k = 0; k < 3; ++k) K(j0, comp * 3 + k) = bdry_int[k];
            for (int e = 0; e < nv; ++e) R(j0, dofcol(e, comp)) += fr.h_e[e];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
        if (!lu.isInvertible())
            throw MeshError("crouzeix_raviart: singular H1-projection system");
        ops.proj_grad = lu.solve(R);
    }

    //------------------------------------------------------------------
    // divergence and pressure coupling
    //------------------------------------------------------------------
    ops.div_row = Eigen::RowVectorXd::Zero(nd);
    for (int e = 0; e < nv; ++e) {
        ops.div_row(dofcol(e, 0)) = fr.h_e[e] * fr.n_out[e].x / fr.area;
        ops.div_row(dofcol(e, 1)) = fr.h_e[e] * fr.n_out[e].y / fr.area;
    }
    ops.b_row = fr.area * ops.div_row;

    //------------------------------------------------------------------
    // exact constant projection via the divergence identity
    //------------------------------------------------------------------
    {
        ops.proj_const = Eigen::MatrixXd::Zero(2, nd);
        for (int e = 0; e < nv; ++e) {
            const double h = fr.h_e[e];
            const Vec2 a = fr.pts[e], b = fr.pts[(e + 1) % nv];
            const EdgeGauss eg(a, b, h);

            // normal trace v.n on the edge: linear, average from the dofs,
            // first moment matched to the H1 projection
            Eigen::RowVectorXd alpha = Eigen::RowVectorXd::Zero(nd);
            alpha(dofcol(e, 0)) = fr.n_out[e].x;
            alpha(dofcol(e, 1)) = fr.n_out[e].y;
            Eigen::RowVectorXd mom1 = Eigen::RowVectorXd::Zero(nd);
            for (int g = 0; g < 2; ++g) {
                Eigen::RowVectorXd pn = Eigen::RowVectorXd::Zero(nd);
                for (int k = 0; k < 3; ++k) {
                    const double mval = ops.basis.value(k, eg.x[g]);
                    pn += mval * (fr.n_out[e].x * ops.proj_grad.row(k) +
                                  fr.n_out[e].y * ops.proj_grad.row(3 + k));
                }
                mom1 += eg.w[g] * (eg.s[g] - 0.5 * h) * pn;
            }
            const Eigen::RowVectorXd beta = (12.0 / (h * h * h)) * mom1;

            for (int g = 0; g < 2; ++g) {
                const Eigen::RowVectorXd q = alpha + (eg.s[g] - 0.5 * h) * beta;
                const Vec2 xg = eg.x[g];
                ops.proj_const.row(0) += eg.w[g] * xg.x * q;
                ops.proj_const.row(1) += eg.w[g] * xg.y * q;
            }
        }
        ops.proj_const.row(0) -= fr.area * fr.centroid.x * ops.div_row;
        ops.proj_const.row(1) -= fr.area * fr.centroid.y * ops.div_row;
        ops.proj_const /= fr.area;
    }

    //------------------------------------------------------------------
    // dof matrix, local Stokes form
    //------------------------------------------------------------------
    ops.dof_of_poly = Eigen::MatrixXd::Zero(nd, 6);
    for (int e = 0; e < nv; ++e) {
        const EdgeGauss eg(fr.pts[e], fr.pts[(e + 1) % nv], fr.h_e[e]);
        for (int k = 0; k < 3; ++k) {
            double avg = 0.0;
            for (int g = 0; g < 2; ++g) avg += eg.w[g] * ops.basis.value(k, eg.x[g]);
            avg /= fr.h_e[e];
            ops.dof_of_poly(dofcol(e, 0), k) = avg;
            ops.dof_of_poly(dofcol(e, 1), 3 + k) = avg;
        }
    }
    const Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(nd, nd) -
                                     ops.dof_of_poly * ops.proj_grad;
    ops.A_loc = ops.proj_grad.transpose() * ops.gram_h1v * ops.proj_grad +
                residual.transpose() * residual;

    ops.global_dof.resize(nd);
    for (int e = 0; e < nv; ++e) {
        ops.global_dof[dofcol(e, 0)] = layout.dof(cell.edges[e], 0);
        ops.global_dof[dofcol(e, 1)] = layout.dof(cell.edges[e], 1);
    }
    return ops;
}

std::vector<CRLocalOps> build_all_cr_ops(const PolygonalMesh& mesh, const CRDofLayout& layout) {
    std::vector<CRLocalOps> all;
    all.reserve(mesh.cells.size());
    for (const auto& cell : mesh.cells) all.push_back(build_cr_local_ops(mesh, cell, layout));
    return all;
}

Eigen::VectorXd stokes_complex_map(const PolygonalMesh& mesh, const MorleyDofLayout& mlayout,
                                   const CRDofLayout& clayout, const Eigen::VectorXd& morley_dofs) {
    Eigen::VectorXd cr = Eigen::VectorXd::Zero(clayout.size());
    for (const auto& e : mesh.edges) {
        const double dpsi = morley_dofs[mlayout.vertex_dof(e.v[1])] -
                            morley_dofs[mlayout.vertex_dof(e.v[0])];
        const double mu = morley_dofs[mlayout.edge_dof(e.id)];
        // curl(psi) = (dt psi) n - (dn psi) t in the stored edge frame
        cr[clayout.dof(e.id, 0)] = (dpsi * e.normal.x - mu * e.tangent.x) / e.length;
        cr[clayout.dof(e.id, 1)] = (dpsi * e.normal.y - mu * e.tangent.y) / e.length;
    }
    return cr;
}

Eigen::VectorXd pressure_load(const CRLocalOps& cr, const MorleyLocalOps& morley,
                              const Eigen::VectorXd& morley_local_dofs,
                              const std::function<Vec2(const Vec2&)>& f,
                              double nu_eff, int quad_degree) {
    const Eigen::VectorXd s_h1 = morley.proj_grad_curl * morley_local_dofs;
    Eigen::VectorXd load = nu_eff * cr.proj_grad.transpose() * (cr.gram_h1v * s_h1);

    // convective part: g linear, grad(g) constant
    const Eigen::VectorXd g = morley.proj_p1_curl * morley_local_dofs;
    const double invh = 1.0 / morley.frame.diameter;
    const Mat2 grad_g{g[1] * invh, g[2] * invh, g[4] * invh, g[5] * invh};
    const Vec2 int_g{g[0] * cr.integrals_p1[0] + g[1] * cr.integrals_p1[1] + g[2] * cr.integrals_p1[2],
                     g[3] * cr.integrals_p1[0] + g[4] * cr.integrals_p1[1] + g[5] * cr.integrals_p1[2]};
    Vec2 rhs = grad_g.apply(int_g);

    for (const auto& q : polygon_rule(cr.frame.pts, quad_degree)) {
        const Vec2 fv = f(q.p);
        rhs.x -= q.w * fv.x;
        rhs.y -= q.w * fv.y;
    }
    load += cr.proj_const.row(0).transpose() * rhs.x + cr.proj_const.row(1).transpose() * rhs.y;
    return load;
}

} // namespace morleyns

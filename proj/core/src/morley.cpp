#include "morleyns/morley.hpp"

#include <cmath>

namespace morleyns {

CellFrame::CellFrame(const PolygonalMesh& mesh, const Cell& cell) {
    nv = cell.num_vertices();
    pts = mesh.cell_points(cell);
    n_out.resize(nv);
    t_ccw.resize(nv);
    h_e.resize(nv);
    sign.resize(nv);
    centroid = cell.centroid;
    area = cell.area;
    diameter = cell.diameter;
    for (int k = 0; k < nv; ++k) {
        const Edge& e = mesh.edges[cell.edges[k]];
        sign[k] = cell.edge_sign[k];
        h_e[k] = e.length;
        t_ccw[k] = e.tangent * double(sign[k]);
        n_out[k] = e.normal * double(sign[k]);
    }
}

Eigen::VectorXd MorleyLocalOps::extract(const Eigen::VectorXd& global) const {
    Eigen::VectorXd d(ndof());
    for (int i = 0; i < ndof(); ++i) d[i] = dof_sign[i] * global[global_dof[i]];
    return d;
}

namespace {

// 2-point Gauss integral of f(s) over an edge of length h, f given at the
// physical points; exact for cubics in s.
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

MorleyLocalOps build_morley_local_ops(const PolygonalMesh& mesh, const Cell& cell,
                                      const MorleyDofLayout& layout, StabScaling scaling) {
    MorleyLocalOps ops{CellFrame(mesh, cell),
                       ScaledMonomialBasis(cell.centroid, cell.diameter, 2)};
    const CellFrame& fr = ops.frame;
    const int nv = fr.nv;
    const int nd = 2 * nv;
    const double hE = fr.diameter;

    const auto mom = monomial_moments(fr.pts, ops.basis);
    ops.mass_p2 = mom.mass;
    ops.gram_hess = mom.gram_h2;
    ops.integrals = mom.integrals;

    // vector P1 blocks (components do not couple)
    const Eigen::Matrix3d m3 = mom.mass.topLeftCorner<3, 3>();
    const Eigen::Matrix3d g3 = mom.gram_h1.topLeftCorner<3, 3>();
    ops.mass_p1v = Eigen::MatrixXd::Zero(6, 6);
    ops.gram_h1v = Eigen::MatrixXd::Zero(6, 6);
    ops.mass_p1v.topLeftCorner<3, 3>() = m3;
    ops.mass_p1v.bottomRightCorner<3, 3>() = m3;
    ops.gram_h1v.topLeftCorner<3, 3>() = g3;
    ops.gram_h1v.bottomRightCorner<3, 3>() = g3;

    // boundary integrals of the scalar P1 monomials
    Eigen::Vector3d bdry_int = Eigen::Vector3d::Zero();
    for (int k = 0; k < nv; ++k) {
        const EdgeGauss eg(fr.pts[k], fr.pts[(k + 1) % nv], fr.h_e[k]);
        for (int g = 0; g < 2; ++g)
            for (int j = 0; j < 3; ++j) bdry_int[j] += eg.w[g] * ops.basis.value(j, eg.x[g]);
    }

    auto vcol = [&](int k) { return k % nv; };            // vertex dof column
    auto ecol = [&](int k) { return nv + k; };            // edge dof column

    //------------------------------------------------------------------
    // H1 projection of curl(phi) onto P1^2
    //------------------------------------------------------------------
    {
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(6, 6);
        Eigen::MatrixXd R = Eigen::MatrixXd::Zero(6, nd);
        for (int comp = 0; comp < 2; ++comp) {
            for (int k = 1; k < 3; ++k) {
                const int j = comp * 3 + k;
                K.row(j) = ops.gram_h1v.row(j);
                // (grad chi_j) n_e is constant per edge
                for (int e = 0; e < nv; ++e) {
                    const Vec2 gm = ops.basis.gradient(k, fr.centroid); // constant for P1
                    Vec2 c{0.0, 0.0};
                    (comp == 0 ? c.x : c.y) = dot(gm, fr.n_out[e]);
                    const double cn = dot(c, fr.n_out[e]);
                    const double ct = dot(c, fr.t_ccw[e]);
                    R(j, vcol(e + 1)) += cn;
                    R(j, vcol(e)) -= cn;
                    R(j, ecol(e)) -= ct;
                }
            }
            // boundary-average row pins the constant mode of this component
            const int j0 = comp * 3;
            for (int k = 0; k < 3; ++k) K(j0, comp * 3 + k) = bdry_int[k];
            for (int e = 0; e < nv; ++e) {
                const double nc = (comp == 0) ? fr.n_out[e].x : fr.n_out[e].y;
                const double tc = (comp == 0) ? fr.t_ccw[e].x : fr.t_ccw[e].y;
                R(j0, vcol(e + 1)) += nc;
                R(j0, vcol(e)) -= nc;
                R(j0, ecol(e)) -= tc;
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
        if (!lu.isInvertible())
            throw MeshError("morley: singular H1-projection system (degenerate cell)");
        ops.proj_grad_curl = lu.solve(R);
    }

    //------------------------------------------------------------------
    // Edge traces: tangential derivative in P1(e), trace in P2(e)
    //------------------------------------------------------------------
    ops.trace.resize(nv);
    ops.dt_trace.resize(nv);
    for (int e = 0; e < nv; ++e) {
        const double h = fr.h_e[e];
        Eigen::RowVectorXd a_row = Eigen::RowVectorXd::Zero(nd);
        a_row(vcol(e + 1)) = 1.0 / h;
        a_row(vcol(e)) = -1.0 / h;

        // first moment of (H1-projected curl).n along the edge
        const EdgeGauss eg(fr.pts[e], fr.pts[(e + 1) % nv], h);
        Eigen::RowVectorXd mom1 = Eigen::RowVectorXd::Zero(nd);
        for (int g = 0; g < 2; ++g) {
            Eigen::RowVectorXd gn = Eigen::RowVectorXd::Zero(nd);
            for (int k = 0; k < 3; ++k) {
                const double mval = ops.basis.value(k, eg.x[g]);
                gn += mval * (fr.n_out[e].x * ops.proj_grad_curl.row(k) +
                              fr.n_out[e].y * ops.proj_grad_curl.row(3 + k));
            }
            mom1 += eg.w[g] * (eg.s[g] - 0.5 * h) * gn;
        }
        const Eigen::RowVectorXd b_row = (12.0 / (h * h * h)) * mom1;

        ops.dt_trace[e] = Eigen::MatrixXd::Zero(2, nd);
        ops.dt_trace[e].row(0) = a_row - 0.5 * h * b_row;
        ops.dt_trace[e].row(1) = b_row;

        ops.trace[e] = Eigen::MatrixXd::Zero(3, nd);
        ops.trace[e](0, vcol(e)) = 1.0;
        ops.trace[e].row(1) = a_row - 0.5 * h * b_row;
        ops.trace[e].row(2) = 0.5 * b_row;
    }

    //------------------------------------------------------------------
    // Energy projection onto P2
    //------------------------------------------------------------------
    {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(6, 6);
        Eigen::MatrixXd R = Eigen::MatrixXd::Zero(6, nd);
        // vertex-sum conditions against P1
        for (int j = 0; j < 3; ++j) {
            for (int i = 0; i < nv; ++i) {
                const double mj = ops.basis.value(j, fr.pts[i]);
                for (int l = 0; l < 6; ++l) M(j, l) += mj * ops.basis.value(l, fr.pts[i]);
                R(j, vcol(i)) += mj;
            }
        }
        // Hessian-energy conditions against the second-order monomials
        for (int j = 3; j < 6; ++j) {
            M.row(j) = ops.gram_hess.row(j);
            const Hess2 H = ops.basis.hessian(j, fr.centroid); // constant
            for (int e = 0; e < nv; ++e) {
                const Vec2 n = fr.n_out[e];
                const Vec2 t = fr.t_ccw[e];
                const Vec2 Hn{H.xx * n.x + H.xy * n.y, H.xy * n.x + H.yy * n.y};
                const double nHn = dot(n, Hn);
                const double tHn = dot(t, Hn);
                R(j, ecol(e)) += nHn;
                R(j, vcol(e + 1)) += tHn;
                R(j, vcol(e)) -= tHn;
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (!lu.isInvertible())
            throw MeshError("morley: singular energy-projection system (degenerate cell)");
        ops.proj_d = lu.solve(R);
    }

    //------------------------------------------------------------------
    // Constant projection of the Laplacian
    //------------------------------------------------------------------
    ops.proj_p0_lap = Eigen::RowVectorXd::Zero(nd);
    for (int e = 0; e < nv; ++e) ops.proj_p0_lap(ecol(e)) = 1.0 / fr.area;

    //------------------------------------------------------------------
    // L2 projections of curl(phi) and grad(phi) onto P1^2
    //------------------------------------------------------------------
    {
        // row over dofs of \int_E Pi2(phi)  (the enhancement makes Pi2 = Pi_D)
        const Eigen::RowVectorXd int_phi = ops.integrals.transpose() * ops.proj_d;

        Eigen::MatrixXd Rc = Eigen::MatrixXd::Zero(6, nd);
        Eigen::MatrixXd Rg = Eigen::MatrixXd::Zero(6, nd);
        const double invh = 1.0 / hE;
        for (int comp = 0; comp < 2; ++comp) {
            for (int k = 0; k < 3; ++k) {
                const int j = comp * 3 + k;
                // rot chi, div chi are constants
                double rot = 0.0, div = 0.0;
                if (comp == 0 && k == 2) rot = -invh; // -d/dy of eta-monomial
                if (comp == 1 && k == 1) rot = invh;  //  d/dx of xi-monomial
                if (comp == 0 && k == 1) div = invh;
                if (comp == 1 && k == 2) div = invh;
                if (rot != 0.0) Rc.row(j) += rot * int_phi;
                if (div != 0.0) Rg.row(j) -= div * int_phi;

                for (int e = 0; e < nv; ++e) {
                    const EdgeGauss eg(fr.pts[e], fr.pts[(e + 1) % nv], fr.h_e[e]);
                    const double tc = (comp == 0) ? fr.t_ccw[e].x : fr.t_ccw[e].y;
                    const double nc = (comp == 0) ? fr.n_out[e].x : fr.n_out[e].y;
                    for (int g = 0; g < 2; ++g) {
                        const double mval = ops.basis.value(k, eg.x[g]);
                        const Eigen::RowVectorXd tr = ops.trace[e].row(0) +
                                                      eg.s[g] * ops.trace[e].row(1) +
                                                      eg.s[g] * eg.s[g] * ops.trace[e].row(2);
                        Rc.row(j) -= eg.w[g] * mval * tc * tr;
                        Rg.row(j) += eg.w[g] * mval * nc * tr;
                    }
                }
            }
        }
        Eigen::LLT<Eigen::MatrixXd> llt(ops.mass_p1v);
        if (llt.info() != Eigen::Success)
            throw MeshError("morley: singular P1 mass matrix (degenerate cell)");
        ops.proj_p1_curl = llt.solve(Rc);
        ops.proj_p1_grad = llt.solve(Rg);
    }

    //------------------------------------------------------------------
    // dof matrix of P2 polynomials, stiffness, stabilization
    //------------------------------------------------------------------
    ops.dof_of_poly = Eigen::MatrixXd::Zero(nd, 6);
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < 6; ++j) ops.dof_of_poly(i, j) = ops.basis.value(j, fr.pts[i]);
    for (int e = 0; e < nv; ++e) {
        const EdgeGauss eg(fr.pts[e], fr.pts[(e + 1) % nv], fr.h_e[e]);
        for (int j = 0; j < 6; ++j)
            for (int g = 0; g < 2; ++g)
                ops.dof_of_poly(nv + e, j) += eg.w[g] * dot(ops.basis.gradient(j, eg.x[g]), fr.n_out[e]);
    }

    const Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(nd, nd) -
                                     ops.dof_of_poly * ops.proj_d;
    Eigen::VectorXd wdiag = Eigen::VectorXd::Ones(nd);
    if (scaling == StabScaling::Homogenized)
        for (int e = 0; e < nv; ++e) wdiag[nv + e] = 1.0 / (fr.h_e[e] * fr.h_e[e]);
    ops.S_loc = (1.0 / (hE * hE)) * residual.transpose() * wdiag.asDiagonal() * residual;
    ops.A_loc = ops.proj_d.transpose() * ops.gram_hess * ops.proj_d + ops.S_loc;

    ops.tri_core = ops.proj_p1_grad.transpose() * ops.mass_p1v * ops.proj_p1_curl;

    //------------------------------------------------------------------
    // scatter data
    //------------------------------------------------------------------
    ops.global_dof.resize(nd);
    ops.dof_sign.resize(nd);
    for (int i = 0; i < nv; ++i) {
        ops.global_dof[i] = layout.vertex_dof(cell.vertices[i]);
        ops.dof_sign[i] = 1.0;
    }
    for (int e = 0; e < nv; ++e) {
        ops.global_dof[nv + e] = layout.edge_dof(cell.edges[e]);
        ops.dof_sign[nv + e] = double(fr.sign[e]);
    }
    return ops;
}

std::vector<MorleyLocalOps> build_all_morley_ops(const PolygonalMesh& mesh,
                                                 const MorleyDofLayout& layout,
                                                 StabScaling scaling) {
    std::vector<MorleyLocalOps> all;
    all.reserve(mesh.cells.size());
    for (const auto& cell : mesh.cells)
        all.push_back(build_morley_local_ops(mesh, cell, layout, scaling));
    return all;
}

Eigen::VectorXd interpolate_function(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                                     const std::function<double(const Vec2&)>& f,
                                     const std::function<Vec2(const Vec2&)>& grad_f,
                                     int edge_quad_degree) {
    Eigen::VectorXd dofs = Eigen::VectorXd::Zero(layout.size());
    for (const auto& v : mesh.vertices) dofs[layout.vertex_dof(v.id)] = f(v.pos);
    for (const auto& e : mesh.edges) {
        double mu = 0.0;
        for (const auto& q : edge_rule(mesh.vertices[e.v[0]].pos, mesh.vertices[e.v[1]].pos,
                                       edge_quad_degree))
            mu += q.w * dot(grad_f(q.p), e.normal);
        dofs[layout.edge_dof(e.id)] = mu;
    }
    return dofs;
}

Eigen::VectorXd local_dofs_of_polynomial(const MorleyLocalOps& ops, const Eigen::VectorXd& p2_coeffs) {
    return ops.dof_of_poly * p2_coeffs;
}

} // namespace morleyns

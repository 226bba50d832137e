#pragma once

#include "morleyns/morley.hpp"

#include <Eigen/Dense>

namespace morleyns {

/// Crouzeix-Raviart-type vector dofs: per edge, the two components of the
/// scaled edge average h_e^{-1} \int_e v.  Orientation-free.
struct CRDofLayout {
    Index n_edges = 0;

    explicit CRDofLayout(const PolygonalMesh& mesh) : n_edges(mesh.num_edges()) {}

    Index size() const { return 2 * n_edges; }
    Index dof(Index edge, int comp) const { return 2 * edge + comp; }
};

struct CRLocalOps {
    CellFrame frame;
    ScaledMonomialBasis basis; // degree 1 would suffice; degree 2 kept for symmetry with tests

    CRLocalOps(CellFrame f, ScaledMonomialBasis b)
        : frame(std::move(f)), basis(std::move(b)) {}

    Eigen::MatrixXd proj_grad;    // 6 x 2nv, P1^2 coeffs of the H1 projection
    Eigen::RowVectorXd div_row;   // 1 x 2nv, constant divergence
    Eigen::MatrixXd proj_const;   // 2 x 2nv, exact constant L2 projection
    Eigen::MatrixXd A_loc;        // H1 consistency + stabilization
    Eigen::RowVectorXd b_row;     // |E| * div_row  (pressure coupling per unit q)
    Eigen::MatrixXd dof_of_poly;  // 2nv x 6
    Eigen::MatrixXd gram_h1v;     // 6x6
    Eigen::VectorXd integrals_p1; // 3, \int m_j for j < 3

    std::vector<Index> global_dof; // 2nv

    int ndof() const { return 2 * frame.nv; }

    Eigen::VectorXd extract(const Eigen::VectorXd& global) const {
        Eigen::VectorXd d(ndof());
        for (int i = 0; i < ndof(); ++i) d[i] = global[global_dof[i]];
        return d;
    }
};

CRLocalOps build_cr_local_ops(const PolygonalMesh& mesh, const Cell& cell,
                              const CRDofLayout& layout);

std::vector<CRLocalOps> build_all_cr_ops(const PolygonalMesh& mesh, const CRDofLayout& layout);

/// CR dof vector of curl(psi_h): exact, shared-dof data only.  The image is
/// divergence-free cell by cell.
Eigen::VectorXd stokes_complex_map(const PolygonalMesh& mesh, const MorleyDofLayout& mlayout,
                                   const CRDofLayout& clayout, const Eigen::VectorXd& morley_dofs);

/// Local load vector of the pressure-recovery problem for one cell:
///   nu_eff a^E(P_grad curl psi, P_grad v) + ((grad g) g - f, P0 v)_E,
/// with g the cellwise linear velocity recovery of psi.  `nu_eff` is the
/// viscosity, or 1 when the viscosity factor is disabled.
Eigen::VectorXd pressure_load(const CRLocalOps& cr, const MorleyLocalOps& morley,
                              const Eigen::VectorXd& morley_local_dofs,
                              const std::function<Vec2(const Vec2&)>& f,
                              double nu_eff, int quad_degree);

} // namespace morleyns

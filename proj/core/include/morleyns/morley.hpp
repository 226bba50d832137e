#pragma once

#include "morleyns/mesh.hpp"
#include "morleyns/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace morleyns {

/// Global layout of the Morley-type degrees of freedom: one function value
/// per vertex followed by one normal-derivative moment per edge.  The edge
/// moment is the unscaled integral of d_n(phi) over the edge, taken with the
/// stored (global) edge normal.
struct MorleyDofLayout {
    Index n_vertices = 0;
    Index n_edges = 0;

    explicit MorleyDofLayout(const PolygonalMesh& mesh)
        : n_vertices(mesh.num_vertices()), n_edges(mesh.num_edges()) {}

    Index size() const { return n_vertices + n_edges; }
    Index vertex_dof(Index v) const { return v; }
    Index edge_dof(Index e) const { return n_vertices + e; }
};

enum class StabScaling {
    Paper,       // h_E^{-2} sum_i dof_i dof_i with dofs as stored
    Homogenized, // edge dofs additionally scaled by 1/h_e inside the stabilizer
};

/// Per-cell edge geometry in the cell's own (ccw, outward) frame.
struct CellFrame {
    int nv = 0;
    std::vector<Vec2> pts;      // ccw vertex positions
    std::vector<Vec2> n_out;    // outward unit normal of local edge k
    std::vector<Vec2> t_ccw;    // ccw unit tangent, t = (-n.y, n.x)
    std::vector<double> h_e;
    std::vector<int> sign;      // +1 when stored edge normal is outward here
    Vec2 centroid;
    double area = 0.0;
    double diameter = 0.0;

    CellFrame(const PolygonalMesh& mesh, const Cell& cell);
};

/// All local projector and form matrices of one Morley-type virtual cell.
/// Every matrix acts on the local dof vector (nv vertex values followed by
/// nv outward edge moments); extraction from a global vector flips the sign
/// of edge dofs where the stored normal points inward.
struct MorleyLocalOps {
    CellFrame frame;
    ScaledMonomialBasis basis; // degree 2, centroid-scaled

    MorleyLocalOps(CellFrame f, ScaledMonomialBasis b)
        : frame(std::move(f)), basis(std::move(b)) {}

    // dof -> polynomial coefficient maps
    Eigen::MatrixXd proj_grad_curl; // 6 x 2nv, P1^2 coeffs of the H1 projection of curl(phi)
    Eigen::MatrixXd proj_d;         // 6 x 2nv, P2 coeffs of the energy projection
    Eigen::MatrixXd proj_p1_curl;   // 6 x 2nv, P1^2 coeffs of the L2 projection of curl(phi)
    Eigen::MatrixXd proj_p1_grad;   // 6 x 2nv, P1^2 coeffs of the L2 projection of grad(phi)
    Eigen::RowVectorXd proj_p0_lap; // 1 x 2nv, constant L2 projection of lap(phi)

    // reconstructed edge polynomials, arclength s in [0, h_e] from the ccw
    // start vertex: trace[k] rows are the {1, s, s^2} coefficients of
    // phi|_e, dt_trace[k] the {1, s} coefficients of the tangential
    // derivative
    std::vector<Eigen::MatrixXd> trace;
    std::vector<Eigen::MatrixXd> dt_trace;

    // local forms
    Eigen::MatrixXd A_loc;   // consistency + stabilization, 2nv x 2nv
    Eigen::MatrixXd S_loc;   // stabilization part alone
    Eigen::MatrixXd dof_of_poly;  // 2nv x 6, dof_i(m_j)
    Eigen::MatrixXd tri_core;     // proj_p1_grad^T M6 proj_p1_curl (trilinear kernel)

    // cached polynomial moment matrices
    Eigen::MatrixXd mass_p2;   // 6x6
    Eigen::MatrixXd gram_hess; // 6x6
    Eigen::MatrixXd mass_p1v;  // 6x6 vector P1 mass
    Eigen::MatrixXd gram_h1v;  // 6x6 vector P1 H1 Gram
    Eigen::VectorXd integrals; // 6, \int m_j

    // scatter data
    std::vector<Index> global_dof;  // 2nv entries
    std::vector<double> dof_sign;   // +-1 per local dof (vertices: +1)

    int ndof() const { return 2 * frame.nv; }

    /// Local (outward-signed) dof vector of a cell from a global vector.
    Eigen::VectorXd extract(const Eigen::VectorXd& global) const;
};

MorleyLocalOps build_morley_local_ops(const PolygonalMesh& mesh, const Cell& cell,
                                      const MorleyDofLayout& layout,
                                      StabScaling scaling = StabScaling::Paper);

std::vector<MorleyLocalOps> build_all_morley_ops(const PolygonalMesh& mesh,
                                                 const MorleyDofLayout& layout,
                                                 StabScaling scaling = StabScaling::Paper);

/// Degree-of-freedom interpolant: vertex values of f and edge moments of
/// grad(f).n by Gauss quadrature of the given degree.
Eigen::VectorXd interpolate_function(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                                     const std::function<double(const Vec2&)>& f,
                                     const std::function<Vec2(const Vec2&)>& grad_f,
                                     int edge_quad_degree = 8);

/// Local dof vector of a polynomial given by P2 coefficients in the cell's
/// scaled basis (exact; used by tests and the patch test).
Eigen::VectorXd local_dofs_of_polynomial(const MorleyLocalOps& ops, const Eigen::VectorXd& p2_coeffs);

} // namespace morleyns

#pragma once

#include "morleyns/crouzeix_raviart.hpp"
#include "morleyns/morley.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <optional>

namespace morleyns {

using SparseMat = Eigen::SparseMatrix<double>;

/// Square sparse operator with Dirichlet bookkeeping.
struct SparseSystem {
    SparseMat matrix;
    Eigen::VectorXd rhs;
    std::vector<Index> constrained;     // dof ids with prescribed values
    Eigen::VectorXd constrained_values; // aligned with `constrained`
};

struct BoundaryData {
    std::vector<char> fixed;   // one flag per dof
    Eigen::VectorXd values;    // full-size, zero on free dofs

    Index count_fixed() const {
        Index n = 0;
        for (char f : fixed) n += (f != 0);
        return n;
    }
};

enum class LoadVariant { Standard, Rotational };

enum class BoundaryCase { Homogeneous, Exact, Lid };

/// Viscosity-free stiffness: scatter of the local Morley forms.
SparseMat assemble_A(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                     const std::vector<MorleyLocalOps>& ops);

/// Vector r with r . dofs(test) = B_h(zeta; phi, test).
Eigen::VectorXd apply_trilinear(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                                const std::vector<MorleyLocalOps>& ops,
                                const Eigen::VectorXd& zeta, const Eigen::VectorXd& phi);

/// Linearization of psi -> nu A psi + B_h(psi; psi, .) at the given state.
SparseMat assemble_jacobian(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                            const std::vector<MorleyLocalOps>& ops, double nu,
                            const SparseMat& A, const Eigen::VectorXd& psi);

/// Load functional.  Standard variant tests f against the recovered
/// velocity; the rotational variant tests rot(f) against the P2 projection
/// and requires `rot_f`.  `cell_degree` picks the quadrature exactness per
/// cell.
Eigen::VectorXd assemble_load(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                              const std::vector<MorleyLocalOps>& ops,
                              const std::function<Vec2(const Vec2&)>& f, LoadVariant variant,
                              const std::function<double(const Vec2&)>& rot_f,
                              const std::function<int(const Cell&)>& cell_degree);

BoundaryData build_boundary_data(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                                 BoundaryCase bc,
                                 const std::function<double(const Vec2&)>& psi = nullptr,
                                 const std::function<Vec2(const Vec2&)>& grad_psi = nullptr,
                                 int edge_quad_degree = 8);

/// Reduced system on free dofs with the Dirichlet lift moved to the rhs:
/// returns (matrix_ff, rhs_f - matrix_fc x_c) plus the free-dof index map.
struct ReducedSystem {
    SparseMat matrix;
    Eigen::VectorXd rhs;
    std::vector<Index> free_to_full;
    std::vector<Index> full_to_free; // -1 when constrained

    Eigen::VectorXd expand(const Eigen::VectorXd& reduced, const BoundaryData& bdata) const;
};

ReducedSystem reduce_system(const SparseMat& matrix, const Eigen::VectorXd& rhs,
                            const BoundaryData& bdata);

/// Saddle problem of the pressure recovery: blocks
///   [ a_h   B^T  0 ] [w]   [F]
///   [ B     0    m ] [p] = [0]
///   [ 0     m^T  0 ] [l]   [0]
/// on free CR dofs (homogeneous Dirichlet boundary), cellwise constant
/// pressures, and the zero-mean multiplier.
struct PressureSaddle {
    SparseMat matrix;
    Eigen::VectorXd rhs;
    std::vector<Index> free_to_full; // CR dofs
    Index n_free = 0;
    Index n_cells = 0;
};

PressureSaddle assemble_pressure_saddle(const PolygonalMesh& mesh, const CRDofLayout& clayout,
                                        const std::vector<CRLocalOps>& cr_ops,
                                        const std::vector<MorleyLocalOps>& morley_ops,
                                        const Eigen::VectorXd& psi,
                                        const std::function<Vec2(const Vec2&)>& f, double nu,
                                        bool include_viscosity_factor, int quad_degree);

} // namespace morleyns

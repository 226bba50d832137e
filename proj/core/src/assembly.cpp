#include "morleyns/assembly.hpp"

#include <cmath>

namespace morleyns {

namespace {

void scatter_symmetric(std::vector<Eigen::Triplet<double>>& trips, const MorleyLocalOps& ops,
                       const Eigen::MatrixXd& local) {
    const int nd = ops.ndof();
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j)
            trips.emplace_back(ops.global_dof[i], ops.global_dof[j],
                               ops.dof_sign[i] * ops.dof_sign[j] * local(i, j));
}

} // namespace

SparseMat assemble_A(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                     const std::vector<MorleyLocalOps>& ops) {
    std::vector<Eigen::Triplet<double>> trips;
    std::size_t nnz = 0;
    for (const auto& o : ops) nnz += std::size_t(o.ndof()) * o.ndof();
    trips.reserve(nnz);
    for (const auto& cell : mesh.cells) scatter_symmetric(trips, ops[cell.id], ops[cell.id].A_loc);
    SparseMat A(layout.size(), layout.size());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

Eigen::VectorXd apply_trilinear(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                                const std::vector<MorleyLocalOps>& ops,
                                const Eigen::VectorXd& zeta, const Eigen::VectorXd& phi) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(layout.size());
    for (const auto& cell : mesh.cells) {
        const MorleyLocalOps& o = ops[cell.id];
        const Eigen::VectorXd dz = o.extract(zeta);
        const Eigen::VectorXd dp = o.extract(phi);
        const double c = o.proj_p0_lap * dz;
        const Eigen::VectorXd rl = c * (o.tri_core * dp);
        for (int i = 0; i < o.ndof(); ++i)
            r[o.global_dof[i]] += o.dof_sign[i] * rl[i];
    }
    return r;
}

SparseMat assemble_jacobian(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                            const std::vector<MorleyLocalOps>& ops, double nu,
                            const SparseMat& A, const Eigen::VectorXd& psi) {
    std::vector<Eigen::Triplet<double>> trips;
    std::size_t nnz = 0;
    for (const auto& o : ops) nnz += std::size_t(o.ndof()) * o.ndof();
    trips.reserve(nnz);
    for (const auto& cell : mesh.cells) {
        const MorleyLocalOps& o = ops[cell.id];
        const Eigen::VectorXd d = o.extract(psi);
        const double c = o.proj_p0_lap * d;
        const Eigen::VectorXd td = o.tri_core * d;
        // B(delta; psi, .) + B(psi; delta, .)
        Eigen::MatrixXd J = td * o.proj_p0_lap + c * o.tri_core;
        scatter_symmetric(trips, o, J); // not symmetric, but same scatter pattern
    }
    SparseMat JB(layout.size(), layout.size());
    JB.setFromTriplets(trips.begin(), trips.end());
    return nu * A + JB;
}

Eigen::VectorXd assemble_load(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                              const std::vector<MorleyLocalOps>& ops,
                              const std::function<Vec2(const Vec2&)>& f, LoadVariant variant,
                              const std::function<double(const Vec2&)>& rot_f,
                              const std::function<int(const Cell&)>& cell_degree) {
    if (variant == LoadVariant::Rotational && !rot_f)
        throw std::invalid_argument("assemble_load: rotational variant requires rot(f)");

    Eigen::VectorXd F = Eigen::VectorXd::Zero(layout.size());
    for (const auto& cell : mesh.cells) {
        const MorleyLocalOps& o = ops[cell.id];
        const int degree = cell_degree ? cell_degree(cell) : 6;
        const auto rule = polygon_rule(o.frame.pts, degree);
        Eigen::VectorXd local;
        if (variant == LoadVariant::Standard) {
            Eigen::VectorXd q = Eigen::VectorXd::Zero(6);
            for (const auto& qp : rule) {
                const Vec2 fv = f(qp.p);
                for (int k = 0; k < 3; ++k) {
                    const double m = o.basis.value(k, qp.p);
                    q[k] += qp.w * fv.x * m;
                    q[3 + k] += qp.w * fv.y * m;
                }
            }
            local = o.proj_p1_curl.transpose() * q;
        } else {
            Eigen::VectorXd q = Eigen::VectorXd::Zero(6);
            for (const auto& qp : rule) {
                const double rv = rot_f(qp.p);
                for (int k = 0; k < 6; ++k) q[k] += qp.w * rv * o.basis.value(k, qp.p);
            }
            local = o.proj_d.transpose() * q;
        }
        for (int i = 0; i < o.ndof(); ++i)
            F[o.global_dof[i]] += o.dof_sign[i] * local[i];
    }
    return F;
}

BoundaryData build_boundary_data(const PolygonalMesh& mesh, const MorleyDofLayout& layout,
                                 BoundaryCase bc,
                                 const std::function<double(const Vec2&)>& psi,
                                 const std::function<Vec2(const Vec2&)>& grad_psi,
                                 int edge_quad_degree) {
    BoundaryData out;
    out.fixed.assign(static_cast<std::size_t>(layout.size()), 0);
    out.values = Eigen::VectorXd::Zero(layout.size());

    if (bc == BoundaryCase::Lid) {
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& v : mesh.vertices) {
            xmin = std::min(xmin, v.pos.x);
            xmax = std::max(xmax, v.pos.x);
            ymin = std::min(ymin, v.pos.y);
            ymax = std::max(ymax, v.pos.y);
        }
        if (std::abs(xmin) > 1e-9 || std::abs(ymin) > 1e-9 ||
            std::abs(xmax - 1.0) > 1e-9 || std::abs(ymax - 1.0) > 1e-9)
            throw MeshError("build_boundary_data: lid case requires the unit square");
    }

    for (const auto& v : mesh.vertices) {
        if (!v.on_boundary) continue;
        const Index d = layout.vertex_dof(v.id);
        out.fixed[d] = 1;
        if (bc == BoundaryCase::Exact) out.values[d] = psi(v.pos);
    }
    for (const auto& e : mesh.edges) {
        if (!e.on_boundary) continue;
        const Index d = layout.edge_dof(e.id);
        out.fixed[d] = 1;
        if (bc == BoundaryCase::Exact) {
            double mu = 0.0;
            for (const auto& q : edge_rule(mesh.vertices[e.v[0]].pos, mesh.vertices[e.v[1]].pos,
                                           edge_quad_degree))
                mu += q.w * dot(grad_psi(q.p), e.normal);
            out.values[d] = mu;
        } else if (bc == BoundaryCase::Lid) {
            const Vec2& a = mesh.vertices[e.v[0]].pos;
            const Vec2& b = mesh.vertices[e.v[1]].pos;
            const bool on_lid = std::abs(a.y - 1.0) < 1e-12 && std::abs(b.y - 1.0) < 1e-12;
            // moving lid: dn(psi) = dy(psi) = 1 with the outward normal (0,1)
            if (on_lid) out.values[d] = e.length;
        }
    }
    return out;
}

Eigen::VectorXd ReducedSystem::expand(const Eigen::VectorXd& reduced,
                                      const BoundaryData& bdata) const {
    Eigen::VectorXd full = bdata.values;
    for (std::size_t i = 0; i < free_to_full.size(); ++i) full[free_to_full[i]] = reduced[i];
    return full;
}

ReducedSystem reduce_system(const SparseMat& matrix, const Eigen::VectorXd& rhs,
                            const BoundaryData& bdata) {
    ReducedSystem red;
    const Index n = static_cast<Index>(matrix.rows());
    red.full_to_free.assign(static_cast<std::size_t>(n), -1);
    for (Index i = 0; i < n; ++i)
        if (!bdata.fixed[i]) {
            red.full_to_free[i] = static_cast<Index>(red.free_to_full.size());
            red.free_to_full.push_back(i);
        }
    const Index nf = static_cast<Index>(red.free_to_full.size());

    red.rhs.resize(nf);
    for (Index i = 0; i < nf; ++i) red.rhs[i] = rhs[red.free_to_full[i]];

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(matrix.nonZeros()));
    for (int k = 0; k < matrix.outerSize(); ++k)
        for (SparseMat::InnerIterator it(matrix, k); it; ++it) {
            const Index i = static_cast<Index>(it.row());
            const Index j = static_cast<Index>(it.col());
            if (bdata.fixed[i]) continue;
            if (bdata.fixed[j]) {
                red.rhs[red.full_to_free[i]] -= it.value() * bdata.values[j];
            } else {
                trips.emplace_back(red.full_to_free[i], red.full_to_free[j], it.value());
            }
        }
    red.matrix.resize(nf, nf);
    red.matrix.setFromTriplets(trips.begin(), trips.end());
    return red;
}

PressureSaddle assemble_pressure_saddle(const PolygonalMesh& mesh, const CRDofLayout& clayout,
                                        const std::vector<CRLocalOps>& cr_ops,
                                        const std::vector<MorleyLocalOps>& morley_ops,
                                        const Eigen::VectorXd& psi,
                                        const std::function<Vec2(const Vec2&)>& f, double nu,
                                        bool include_viscosity_factor, int quad_degree) {
    PressureSaddle sys;
    std::vector<Index> full_to_free(static_cast<std::size_t>(clayout.size()), -1);
    for (const auto& e : mesh.edges)
        if (!e.on_boundary)
            for (int c = 0; c < 2; ++c) {
                full_to_free[clayout.dof(e.id, c)] = static_cast<Index>(sys.free_to_full.size());
                sys.free_to_full.push_back(clayout.dof(e.id, c));
            }
    sys.n_free = static_cast<Index>(sys.free_to_full.size());
    sys.n_cells = mesh.num_cells();
    const Index dim = sys.n_free + sys.n_cells + 1;

    std::vector<Eigen::Triplet<double>> trips;
    sys.rhs = Eigen::VectorXd::Zero(dim);
    const double nu_eff = include_viscosity_factor ? nu : 1.0;

    for (const auto& cell : mesh.cells) {
        const CRLocalOps& cr = cr_ops[cell.id];
        const MorleyLocalOps& mo = morley_ops[cell.id];
        const Eigen::VectorXd load =
            pressure_load(cr, mo, mo.extract(psi), f, nu_eff, quad_degree);
        const int nd = cr.ndof();
        for (int i = 0; i < nd; ++i) {
            const Index gi = full_to_free[cr.global_dof[i]];
            if (gi < 0) continue;
            sys.rhs[gi] += load[i];
            for (int j = 0; j < nd; ++j) {
                const Index gj = full_to_free[cr.global_dof[j]];
                if (gj < 0) continue;
                trips.emplace_back(gi, gj, cr.A_loc(i, j));
            }
            // divergence coupling, symmetric blocks
            trips.emplace_back(sys.n_free + cell.id, gi, cr.b_row(i));
            trips.emplace_back(gi, sys.n_free + cell.id, cr.b_row(i));
        }
        // zero-mean multiplier
        trips.emplace_back(sys.n_free + cell.id, dim - 1, cell.area);
        trips.emplace_back(dim - 1, sys.n_free + cell.id, cell.area);
    }
    sys.matrix.resize(dim, dim);
    sys.matrix.setFromTriplets(trips.begin(), trips.end());
    return sys;
}

} // namespace morleyns

#include "morleyns/postprocess.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace morleyns {

RecoveredFields recover_fields(const PolygonalMesh& mesh, const std::vector<MorleyLocalOps>& ops,
                               const Eigen::VectorXd& psi) {
    RecoveredFields out;
    out.velocity.reserve(mesh.cells.size());
    out.vorticity.reserve(mesh.cells.size());
    out.stream_p2.reserve(mesh.cells.size());
    for (const auto& cell : mesh.cells) {
        const MorleyLocalOps& o = ops[cell.id];
        const Eigen::VectorXd d = o.extract(psi);
        out.velocity.push_back(o.proj_p1_curl * d);
        out.vorticity.push_back(-(o.proj_p0_lap * d).value());
        out.stream_p2.push_back(o.proj_d * d);
    }
    return out;
}

ErrorRow error_norms(const PolygonalMesh& mesh, const std::vector<MorleyLocalOps>& ops,
                     const Eigen::VectorXd& psi, const ExactSolution& exact,
                     const Eigen::VectorXd* cell_pressure,
                     const std::function<int(const Cell&)>& cell_degree) {
    if (!exact.psi || !exact.grad_psi || !exact.hess_psi || !exact.velocity ||
        !exact.grad_velocity || !exact.vorticity)
        throw std::invalid_argument("error_norms: missing exact-solution callbacks");

    ErrorRow row;
    row.h = mesh.h;
    double e2 = 0, e1 = 0, e0 = 0, eu1 = 0, eu0 = 0, ew = 0, ep = 0;

    for (const auto& cell : mesh.cells) {
        const MorleyLocalOps& o = ops[cell.id];
        const Eigen::VectorXd d = o.extract(psi);
        const Eigen::VectorXd ppoly = o.proj_d * d;
        const Eigen::VectorXd vpoly = o.proj_p1_curl * d;
        const double wval = -(o.proj_p0_lap * d).value();
        const double invh = 1.0 / o.frame.diameter;
        const Mat2 grad_v{vpoly[1] * invh, vpoly[2] * invh, vpoly[4] * invh, vpoly[5] * invh};
        const Hess2 hess_p = o.basis.eval_hessian(ppoly, cell.centroid); // constant

        const int degree = cell_degree ? cell_degree(cell) : 8;
        for (const auto& q : polygon_rule(o.frame.pts, degree)) {
            const double dpsi = exact.psi(q.p) - o.basis.eval(ppoly, q.p);
            e0 += q.w * dpsi * dpsi;

            const Vec2 g_ex = exact.grad_psi(q.p);
            const Vec2 g_ap = o.basis.eval_gradient(ppoly, q.p);
            const Vec2 dg = g_ex - g_ap;
            e1 += q.w * dot(dg, dg);

            const Hess2 h_ex = exact.hess_psi(q.p);
            const Hess2 dh{h_ex.xx - hess_p.xx, h_ex.xy - hess_p.xy, h_ex.yy - hess_p.yy};
            e2 += q.w * dh.frobenius2();

            const Vec2 u_ex = exact.velocity(q.p);
            const Vec2 u_ap{o.basis.value(0, q.p) * vpoly[0] + o.basis.value(1, q.p) * vpoly[1] +
                                o.basis.value(2, q.p) * vpoly[2],
                            o.basis.value(0, q.p) * vpoly[3] + o.basis.value(1, q.p) * vpoly[4] +
                                o.basis.value(2, q.p) * vpoly[5]};
            const Vec2 du = u_ex - u_ap;
            eu0 += q.w * dot(du, du);

            const Mat2 gu_ex = exact.grad_velocity(q.p);
            const double d11 = gu_ex.a11 - grad_v.a11, d12 = gu_ex.a12 - grad_v.a12;
            const double d21 = gu_ex.a21 - grad_v.a21, d22 = gu_ex.a22 - grad_v.a22;
            eu1 += q.w * (d11 * d11 + d12 * d12 + d21 * d21 + d22 * d22);

            const double dw = exact.vorticity(q.p) - wval;
            ew += q.w * dw * dw;

            if (cell_pressure) {
                const double dp = exact.pressure(q.p) - (*cell_pressure)[cell.id];
                ep += q.w * dp * dp;
            }
        }
    }

    row.e2_psi = std::sqrt(e2);
    row.e1_psi = std::sqrt(e1);
    row.e0_psi = std::sqrt(e0);
    row.e1_u = std::sqrt(eu1);
    row.e0_u = std::sqrt(eu0);
    row.e0_w = std::sqrt(ew);
    if (cell_pressure) row.e0_p = std::sqrt(ep);
    return row;
}

double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !(h_coarse > h_fine))
        return std::numeric_limits<double>::quiet_NaN();
    return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

RateTable convergence_rates(const ErrorReport& report) {
    RateTable t;
    t.rates.resize(report.size());
    for (std::size_t i = 0; i < report.size(); ++i) {
        auto& r = t.rates[i];
        r.fill(std::numeric_limits<double>::quiet_NaN());
        if (i == 0) continue;
        const ErrorRow& c = report[i - 1];
        const ErrorRow& f = report[i];
        r[0] = convergence_rate(c.e2_psi, f.e2_psi, c.h, f.h);
        r[1] = convergence_rate(c.e1_psi, f.e1_psi, c.h, f.h);
        r[2] = convergence_rate(c.e0_psi, f.e0_psi, c.h, f.h);
        r[3] = convergence_rate(c.e1_u, f.e1_u, c.h, f.h);
        r[4] = convergence_rate(c.e0_u, f.e0_u, c.h, f.h);
        r[5] = convergence_rate(c.e0_w, f.e0_w, c.h, f.h);
        r[6] = convergence_rate(c.e0_p, f.e0_p, c.h, f.h);
    }
    return t;
}

namespace {

std::string fmt_err(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

std::string fmt_rate(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace

void write_error_csv(const std::string& path, const ErrorReport& report,
                     const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_error_csv: cannot open " + path);
    out << "# errors-csv-v1";
    if (!comment.empty()) out << ' ' << comment;
    out << '\n';
    out << "h,E2_psi,R2_psi,E1_psi,R1_psi,E0_psi,R0_psi,E1_u,R1_u,E0_u,R0_u,"
           "E0_w,R0_w,E0_p,R0_p,newton_iters\n";
    const RateTable rates = convergence_rates(report);
    for (std::size_t i = 0; i < report.size(); ++i) {
        const ErrorRow& r = report[i];
        const auto& rt = rates.rates[i];
        char hbuf[32];
        std::snprintf(hbuf, sizeof hbuf, "%.8g", r.h);
        out << hbuf << ',' << fmt_err(r.e2_psi) << ',' << fmt_rate(rt[0]) << ','
            << fmt_err(r.e1_psi) << ',' << fmt_rate(rt[1]) << ',' << fmt_err(r.e0_psi) << ','
            << fmt_rate(rt[2]) << ',' << fmt_err(r.e1_u) << ',' << fmt_rate(rt[3]) << ','
            << fmt_err(r.e0_u) << ',' << fmt_rate(rt[4]) << ',' << fmt_err(r.e0_w) << ','
            << fmt_rate(rt[5]) << ',' << fmt_err(r.e0_p) << ',' << fmt_rate(rt[6]) << ','
            << r.newton_iters << '\n';
    }
}

FieldSamples sample_fields(const PolygonalMesh& mesh, const std::vector<MorleyLocalOps>& ops,
                           const Eigen::VectorXd& psi, const Eigen::VectorXd* cell_pressure,
                           int nx) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& v : mesh.vertices) {
        xmin = std::min(xmin, v.pos.x);
        xmax = std::max(xmax, v.pos.x);
        ymin = std::min(ymin, v.pos.y);
        ymax = std::max(ymax, v.pos.y);
    }

    // uniform bucket grid over cell bounding boxes
    const int nb = std::max(1, int(std::sqrt(double(mesh.cells.size()))));
    std::vector<std::vector<Index>> buckets(static_cast<std::size_t>(nb) * nb);
    auto bx = [&](double x) { return std::clamp(int((x - xmin) / (xmax - xmin) * nb), 0, nb - 1); };
    auto by = [&](double y) { return std::clamp(int((y - ymin) / (ymax - ymin) * nb), 0, nb - 1); };
    for (const auto& cell : mesh.cells) {
        double cxmin = 1e300, cxmax = -1e300, cymin = 1e300, cymax = -1e300;
        for (Index v : cell.vertices) {
            cxmin = std::min(cxmin, mesh.vertices[v].pos.x);
            cxmax = std::max(cxmax, mesh.vertices[v].pos.x);
            cymin = std::min(cymin, mesh.vertices[v].pos.y);
            cymax = std::max(cymax, mesh.vertices[v].pos.y);
        }
        for (int j = by(cymin); j <= by(cymax); ++j)
            for (int i = bx(cxmin); i <= bx(cxmax); ++i)
                buckets[std::size_t(j) * nb + i].push_back(cell.id);
    }

    auto inside = [&](const Cell& cell, const Vec2& p) {
        const int n = cell.num_vertices();
        for (int k = 0; k < n; ++k) {
            const Vec2& a = mesh.vertices[cell.vertices[k]].pos;
            const Vec2& b = mesh.vertices[cell.vertices[(k + 1) % n]].pos;
            if (cross(b - a, p - a) < -1e-12 * cell.diameter) return false;
        }
        return true;
    };

    const RecoveredFields fields = recover_fields(mesh, ops, psi);
    FieldSamples out;
    out.rows.reserve(std::size_t(nx) * nx);
    for (int j = 0; j < nx; ++j)
        for (int i = 0; i < nx; ++i) {
            const Vec2 p{xmin + (xmax - xmin) * i / (nx - 1.0),
                         ymin + (ymax - ymin) * j / (nx - 1.0)};
            Index found = -1;
            for (Index c : buckets[std::size_t(by(p.y)) * nb + bx(p.x)])
                if (inside(mesh.cells[c], p)) {
                    found = c;
                    break;
                }
            if (found < 0) continue; // outside (non-convex domains)
            const double psival = ops[found].basis.eval(fields.stream_p2[found], p);
            const double pval = cell_pressure ? (*cell_pressure)[found] : 0.0;
            out.rows.push_back({p.x, p.y, psival, pval});
        }
    return out;
}

void write_field_csv(const std::string& path, const FieldSamples& samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_field_csv: cannot open " + path);
    out << "x,y,psi,p\n";
    char buf[160];
    for (const auto& r : samples.rows) {
        std::snprintf(buf, sizeof buf, "%.8g,%.8g,%.10e,%.10e", r[0], r[1], r[2], r[3]);
        out << buf << '\n';
    }
}

} // namespace morleyns

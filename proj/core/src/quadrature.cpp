#include "morleyns/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace morleyns {

//----------------------------------------------------------------------------
// Gauss-Legendre
//----------------------------------------------------------------------------

namespace {

std::vector<QuadPoint> compute_gauss_legendre_01(int n) {
    // Newton iteration on P_n, nodes on [-1,1], then mapped to [0,1].
    std::vector<QuadPoint> rule(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[n - 1 - i] = {{0.5 * (x + 1.0), 0.0}, 0.5 * w};
    }
    return rule;
}

} // namespace

const std::vector<QuadPoint>& gauss_legendre_01(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_01: n >= 1 required");
    static std::map<int, std::vector<QuadPoint>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre_01(n)).first;
    return it->second;
}

std::vector<QuadPoint> edge_rule(const Vec2& a, const Vec2& b, int degree) {
    const int n = std::max(1, (degree + 2) / 2); // ceil((degree+1)/2)
    const auto& gl = gauss_legendre_01(n);
    const double len = norm(b - a);
    std::vector<QuadPoint> rule(gl.size());
    for (std::size_t i = 0; i < gl.size(); ++i) {
        const double t = gl[i].p.x;
        rule[i].p = a + (b - a) * t;
        rule[i].w = gl[i].w * len;
    }
    return rule;
}

//----------------------------------------------------------------------------
// Polygon rules (centroid fan with ear-clipping fallback)
//----------------------------------------------------------------------------

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * cross(b - a, c - a);
}

// Collapsed product rule on the triangle (a,b,c), exact for degree d.
void append_triangle_rule(std::vector<QuadPoint>& out, const Vec2& a, const Vec2& b,
                          const Vec2& c, int degree) {
    // map (u,v) in [0,1]^2 -> xi = u, eta = v(1-u); area element 2|T|(1-u)
    const int nu = std::max(1, (degree + 3) / 2); // ceil((d+2)/2): extra factor (1-u)
    const int nv = std::max(1, (degree + 2) / 2);
    const auto& gu = gauss_legendre_01(nu);
    const auto& gv = gauss_legendre_01(nv);
    const double jac = 2.0 * signed_area(a, b, c);
    for (const auto& qu : gu)
        for (const auto& qv : gv) {
            const double u = qu.p.x, v = qv.p.x;
            const double xi = u, eta = v * (1.0 - u);
            const Vec2 p = a + (b - a) * xi + (c - a) * eta;
            out.push_back({p, qu.w * qv.w * (1.0 - u) * jac});
        }
}

std::vector<std::array<Vec2, 3>> ear_clip(std::vector<Vec2> poly) {
    std::vector<std::array<Vec2, 3>> tris;
    auto is_ear = [&poly](std::size_t i) {
        const std::size_t n = poly.size();
        const Vec2& a = poly[(i + n - 1) % n];
        const Vec2& b = poly[i];
        const Vec2& c = poly[(i + 1) % n];
        if (signed_area(a, b, c) <= 1e-16) return false;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == (i + n - 1) % n || k == i || k == (i + 1) % n) continue;
            const Vec2& p = poly[k];
            if (signed_area(a, b, p) >= 0 && signed_area(b, c, p) >= 0 &&
                signed_area(c, a, p) >= 0)
                return false;
        }
        return true;
    };
    while (poly.size() > 3) {
        bool clipped = false;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            if (!is_ear(i)) continue;
            const std::size_t n = poly.size();
            tris.push_back({poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]});
            poly.erase(poly.begin() + static_cast<long>(i));
            clipped = true;
            break;
        }
        if (!clipped) throw MeshError("polygon_rule: ear clipping failed (degenerate polygon)");
    }
    tris.push_back({poly[0], poly[1], poly[2]});
    return tris;
}

} // namespace

std::vector<QuadPoint> polygon_rule(std::span<const Vec2> loop, int degree) {
    const std::size_t n = loop.size();
    if (n < 3) throw MeshError("polygon_rule: fewer than 3 vertices");
    std::vector<QuadPoint> rule;

    if (n == 3) {
        append_triangle_rule(rule, loop[0], loop[1], loop[2], degree);
        return rule;
    }

    double area = 0.0;
    Vec2 centroid;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = loop[k];
        const Vec2& q = loop[(k + 1) % n];
        const double w = cross(p, q);
        area += 0.5 * w;
        centroid.x += (p.x + q.x) * w;
        centroid.y += (p.y + q.y) * w;
    }
    centroid = centroid / (6.0 * area);

    bool fan_ok = true;
    for (std::size_t k = 0; k < n; ++k)
        if (signed_area(centroid, loop[k], loop[(k + 1) % n]) <= 1e-14 * area) {
            fan_ok = false;
            break;
        }

    if (fan_ok) {
        for (std::size_t k = 0; k < n; ++k)
            append_triangle_rule(rule, centroid, loop[k], loop[(k + 1) % n], degree);
    } else {
        for (const auto& t : ear_clip(std::vector<Vec2>(loop.begin(), loop.end())))
            append_triangle_rule(rule, t[0], t[1], t[2], degree);
    }
    return rule;
}

std::vector<QuadPoint> polygon_rule(const PolygonalMesh& mesh, const Cell& cell, int degree) {
    const auto pts = mesh.cell_points(cell);
    return polygon_rule(pts, degree);
}

//----------------------------------------------------------------------------
// Scaled monomials
//----------------------------------------------------------------------------

namespace {
constexpr int kExp[10][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                             {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}
} // namespace

std::pair<int, int> monomial_exponents(int k) { return {kExp[k][0], kExp[k][1]}; }

ScaledMonomialBasis::ScaledMonomialBasis(Vec2 center, double diameter, int degree)
    : center_(center), diameter_(diameter), degree_(degree),
      size_(monomial_space_dim(degree)) {
    if (degree < 0 || degree > 3)
        throw std::invalid_argument("ScaledMonomialBasis: degree must be in [0,3]");
    if (!(diameter > 0.0)) throw std::invalid_argument("ScaledMonomialBasis: diameter <= 0");
}

double ScaledMonomialBasis::value(int k, const Vec2& p) const {
    const double xi = (p.x - center_.x) / diameter_;
    const double eta = (p.y - center_.y) / diameter_;
    return ipow(xi, kExp[k][0]) * ipow(eta, kExp[k][1]);
}

Vec2 ScaledMonomialBasis::gradient(int k, const Vec2& p) const {
    const double xi = (p.x - center_.x) / diameter_;
    const double eta = (p.y - center_.y) / diameter_;
    const int a = kExp[k][0], b = kExp[k][1];
    Vec2 g;
    if (a > 0) g.x = a * ipow(xi, a - 1) * ipow(eta, b) / diameter_;
    if (b > 0) g.y = b * ipow(xi, a) * ipow(eta, b - 1) / diameter_;
    return g;
}

Hess2 ScaledMonomialBasis::hessian(int k, const Vec2& p) const {
    const double xi = (p.x - center_.x) / diameter_;
    const double eta = (p.y - center_.y) / diameter_;
    const int a = kExp[k][0], b = kExp[k][1];
    const double h2 = diameter_ * diameter_;
    Hess2 h;
    if (a > 1) h.xx = a * (a - 1) * ipow(xi, a - 2) * ipow(eta, b) / h2;
    if (b > 1) h.yy = b * (b - 1) * ipow(xi, a) * ipow(eta, b - 2) / h2;
    if (a > 0 && b > 0) h.xy = a * b * ipow(xi, a - 1) * ipow(eta, b - 1) / h2;
    return h;
}

double ScaledMonomialBasis::eval(const Eigen::VectorXd& coeffs, const Vec2& p) const {
    double s = 0.0;
    for (int k = 0; k < size_; ++k) s += coeffs[k] * value(k, p);
    return s;
}

Vec2 ScaledMonomialBasis::eval_gradient(const Eigen::VectorXd& coeffs, const Vec2& p) const {
    Vec2 g;
    for (int k = 0; k < size_; ++k) {
        const Vec2 gk = gradient(k, p);
        g.x += coeffs[k] * gk.x;
        g.y += coeffs[k] * gk.y;
    }
    return g;
}

Hess2 ScaledMonomialBasis::eval_hessian(const Eigen::VectorXd& coeffs, const Vec2& p) const {
    Hess2 h;
    for (int k = 0; k < size_; ++k) {
        const Hess2 hk = hessian(k, p);
        h.xx += coeffs[k] * hk.xx;
        h.xy += coeffs[k] * hk.xy;
        h.yy += coeffs[k] * hk.yy;
    }
    return h;
}

MonomialMoments monomial_moments(std::span<const Vec2> loop, const ScaledMonomialBasis& basis) {
    const int m = basis.size();
    const auto rule = polygon_rule(loop, 2 * basis.degree());
    MonomialMoments mom;
    mom.mass = Eigen::MatrixXd::Zero(m, m);
    mom.integrals = Eigen::VectorXd::Zero(m);
    mom.gram_h1 = Eigen::MatrixXd::Zero(m, m);
    mom.gram_h2 = Eigen::MatrixXd::Zero(m, m);

    std::vector<double> vals(static_cast<std::size_t>(m));
    std::vector<Vec2> grads(static_cast<std::size_t>(m));
    std::vector<Hess2> hess(static_cast<std::size_t>(m));
    for (const auto& q : rule) {
        for (int k = 0; k < m; ++k) {
            vals[k] = basis.value(k, q.p);
            grads[k] = basis.gradient(k, q.p);
            hess[k] = basis.hessian(k, q.p);
        }
        for (int a = 0; a < m; ++a) {
            mom.integrals[a] += q.w * vals[a];
            for (int b = a; b < m; ++b) {
                mom.mass(a, b) += q.w * vals[a] * vals[b];
                mom.gram_h1(a, b) += q.w * dot(grads[a], grads[b]);
                mom.gram_h2(a, b) += q.w * (hess[a].xx * hess[b].xx +
                                            2.0 * hess[a].xy * hess[b].xy +
                                            hess[a].yy * hess[b].yy);
            }
        }
    }
    mom.mass = mom.mass.selfadjointView<Eigen::Upper>();
    mom.gram_h1 = mom.gram_h1.selfadjointView<Eigen::Upper>();
    mom.gram_h2 = mom.gram_h2.selfadjointView<Eigen::Upper>();

    Eigen::LLT<Eigen::MatrixXd> llt(mom.mass);
    if (llt.info() != Eigen::Success)
        throw MeshError("monomial_moments: singular mass matrix (degenerate cell)");
    return mom;
}

} // namespace morleyns

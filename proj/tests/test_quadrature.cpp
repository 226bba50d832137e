#include "morleyns/quadrature.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace morleyns;

TEST_CASE("edge rule") {
    const Vec2 a{0, 0}, b{1, 0};
    SUBCASE("constant") {
        double s = 0.0;
        for (const auto& q : edge_rule(a, b, 0)) s += q.w;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("arclength squared") {
        double s = 0.0;
        for (const auto& q : edge_rule(a, b, 2)) s += q.w * q.p.x * q.p.x;
        CHECK(s == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("normal derivative of a quadratic") {
        // f = x^2 + 3 x y + y^2 along the edge y = 0, normal (0,-1):
        // dn f = -(3x); integral over [0,1] is -3/2
        double s = 0.0;
        for (const auto& q : edge_rule(a, b, 3)) s += q.w * (-(3.0 * q.p.x));
        CHECK(s == doctest::Approx(-1.5).epsilon(1e-14));
    }
    SUBCASE("weights sum to length on a slanted edge") {
        const Vec2 c{0.3, -0.2}, d{1.1, 0.7};
        double s = 0.0;
        for (const auto& q : edge_rule(c, d, 7)) s += q.w;
        CHECK(s == doctest::Approx(norm(d - c)).epsilon(1e-14));
    }
}

TEST_CASE("polygon rule exactness") {
    const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    SUBCASE("constant") {
        double s = 0.0;
        for (const auto& q : polygon_rule(square, 2)) s += q.w;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("x^2 y^2 over the unit square") {
        double s = 0.0;
        for (const auto& q : polygon_rule(square, 4)) s += q.w * q.p.x * q.p.x * q.p.y * q.p.y;
        CHECK(s == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    }
    SUBCASE("all monomials up to degree 6 on a convex pentagon") {
        const std::vector<Vec2> pent{{0.1, 0.0}, {1.0, 0.2}, {0.9, 0.9}, {0.4, 1.1}, {-0.1, 0.5}};
        const auto rule = polygon_rule(pent, 6);
        double wsum = 0.0;
        for (const auto& q : rule) wsum += q.w;
        CHECK(wsum == doctest::Approx(oracle::polygon_moment(pent, 0, 0)).epsilon(1e-13));
        for (int a = 0; a + 0 <= 6; ++a)
            for (int b = 0; a + b <= 6; ++b) {
                double s = 0.0;
                for (const auto& q : rule)
                    s += q.w * std::pow(q.p.x, a) * std::pow(q.p.y, b);
                const double ref = oracle::polygon_moment(pent, a, b);
                CHECK(s == doctest::Approx(ref).epsilon(1e-12));
            }
    }
    SUBCASE("non-convex polygon falls back to ear clipping") {
        const std::vector<Vec2> arrow{{0, 0}, {2, 0}, {2, 2}, {1, 0.3}, {0, 2}};
        const auto rule = polygon_rule(arrow, 4);
        for (int a = 0; a + 0 <= 4; ++a)
            for (int b = 0; a + b <= 4; ++b) {
                double s = 0.0;
                for (const auto& q : rule)
                    s += q.w * std::pow(q.p.x, a) * std::pow(q.p.y, b);
                CHECK(s == doctest::Approx(oracle::polygon_moment(arrow, a, b)).epsilon(1e-12));
            }
        for (const auto& q : rule) CHECK(q.w > 0.0);
    }
}

TEST_CASE("scaled monomial basis") {
    const Vec2 c{0.4, 0.7};
    const double h = 0.5;
    const ScaledMonomialBasis basis(c, h, 2);
    CHECK(basis.size() == 6);
    CHECK(basis.value(0, {0.9, 0.1}) == 1.0);
    for (int k = 1; k < 6; ++k) CHECK(basis.value(k, c) == 0.0);

    SUBCASE("gradient and Hessian match finite differences") {
        oracle::Rng rng(5);
        const double eps = 1e-6;
        for (int trial = 0; trial < 10; ++trial) {
            const Vec2 p{c.x + 0.3 * rng.uniform(), c.y + 0.3 * rng.uniform()};
            for (int k = 0; k < 6; ++k) {
                const Vec2 g = basis.gradient(k, p);
                const double fdx = (basis.value(k, {p.x + eps, p.y}) -
                                    basis.value(k, {p.x - eps, p.y})) / (2 * eps);
                const double fdy = (basis.value(k, {p.x, p.y + eps}) -
                                    basis.value(k, {p.x, p.y - eps})) / (2 * eps);
                CHECK(g.x == doctest::Approx(fdx).epsilon(1e-6));
                CHECK(g.y == doctest::Approx(fdy).epsilon(1e-6));

                const Hess2 hs = basis.hessian(k, p);
                const Vec2 gxp = basis.gradient(k, {p.x + eps, p.y});
                const Vec2 gxm = basis.gradient(k, {p.x - eps, p.y});
                const Vec2 gyp = basis.gradient(k, {p.x, p.y + eps});
                const Vec2 gym = basis.gradient(k, {p.x, p.y - eps});
                CHECK(hs.xx == doctest::Approx((gxp.x - gxm.x) / (2 * eps)).epsilon(1e-6));
                CHECK(hs.xy == doctest::Approx((gyp.x - gym.x) / (2 * eps)).epsilon(1e-6));
                CHECK(hs.yy == doctest::Approx((gyp.y - gym.y) / (2 * eps)).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("monomial moments") {
    SUBCASE("unit square centered basis") {
        const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        const ScaledMonomialBasis basis({0.5, 0.5}, std::sqrt(2.0), 2);
        const auto mom = monomial_moments(square, basis);
        CHECK(mom.mass(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(mom.mass(1, 2) == doctest::Approx(0.0).epsilon(1e-15)); // odd symmetry
        CHECK(mom.integrals[0] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("random polygon mass matrix matches boundary-moment oracle") {
        const auto m = generate_voronoi_mesh(9, 10, 3);
        for (const auto& cell : m.cells) {
            const auto pts = m.cell_points(cell);
            const ScaledMonomialBasis basis(cell.centroid, cell.diameter, 2);
            const auto mom = monomial_moments(pts, basis);
            for (int a = 0; a < 6; ++a)
                for (int b = a; b < 6; ++b) {
                    const double ref = oracle::scaled_moment(pts, basis, a, b);
                    CHECK(mom.mass(a, b) == doctest::Approx(ref).epsilon(1e-12));
                }
        }
    }
    SUBCASE("mass matrices stay well conditioned under refinement") {
        std::vector<double> conds;
        for (int n : {2, 8, 32}) {
            const auto m = generate_square_mesh(n);
            const auto& cell = m.cells[0];
            const ScaledMonomialBasis basis(cell.centroid, cell.diameter, 2);
            const auto mom = monomial_moments(m.cell_points(cell), basis);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mom.mass / cell.area);
            conds.push_back(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff());
        }
        for (double c : conds) {
            CHECK(c < 1e4);
            CHECK(c == doctest::Approx(conds.front()).epsilon(1e-8)); // h-independent
        }
    }
}

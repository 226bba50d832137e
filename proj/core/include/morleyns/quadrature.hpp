#pragma once

#include "morleyns/geometry.hpp"
#include "morleyns/mesh.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace morleyns {

struct QuadPoint {
    Vec2 p;
    double w = 0.0;
};

/// Gauss-Legendre nodes and weights on [0,1], exact for degree 2n-1.
const std::vector<QuadPoint>& gauss_legendre_01(int n);

/// Rule on the segment a-b exact for polynomials of the given degree along
/// the arclength.  Weights sum to |b-a|.
std::vector<QuadPoint> edge_rule(const Vec2& a, const Vec2& b, int degree);

/// Rule over a ccw simple polygon, exact for bivariate polynomials of the
/// given total degree.  Fans around the centroid; falls back to ear clipping
/// when the polygon is not star-shaped with respect to its centroid.
std::vector<QuadPoint> polygon_rule(std::span<const Vec2> loop, int degree);
std::vector<QuadPoint> polygon_rule(const PolygonalMesh& mesh, const Cell& cell, int degree);

/// Monomials m_k(x) = ((x - x_E)/h_E)^alpha, |alpha| <= degree, ordered
/// 1, xi, eta, xi^2, xi*eta, eta^2, xi^3, ...  (degree <= 3).
class ScaledMonomialBasis {
public:
    ScaledMonomialBasis(Vec2 center, double diameter, int degree);

    int size() const { return size_; }
    int degree() const { return degree_; }
    Vec2 center() const { return center_; }
    double diameter() const { return diameter_; }

    double value(int k, const Vec2& p) const;
    Vec2 gradient(int k, const Vec2& p) const;
    Hess2 hessian(int k, const Vec2& p) const;

    /// Value/derivative of the polynomial with the given coefficients.
    double eval(const Eigen::VectorXd& coeffs, const Vec2& p) const;
    Vec2 eval_gradient(const Eigen::VectorXd& coeffs, const Vec2& p) const;
    Hess2 eval_hessian(const Eigen::VectorXd& coeffs, const Vec2& p) const;

private:
    Vec2 center_;
    double diameter_;
    int degree_;
    int size_;
};

inline int monomial_space_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Exponents (a, b) of monomial k in the fixed ordering.
std::pair<int, int> monomial_exponents(int k);

struct MonomialMoments {
    Eigen::MatrixXd mass;      // \int m_a m_b
    Eigen::VectorXd integrals; // \int m_a
    Eigen::MatrixXd gram_h1;   // \int grad m_a . grad m_b
    Eigen::MatrixXd gram_h2;   // \int D2 m_a : D2 m_b
};

/// Moment matrices over a cell for the scaled basis of the given degree
/// (degree <= 3).  Throws MeshError if the mass matrix is numerically
/// singular, which signals a degenerate cell.
MonomialMoments monomial_moments(std::span<const Vec2> loop, const ScaledMonomialBasis& basis);

} // namespace morleyns

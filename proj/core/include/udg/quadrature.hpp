#ifndef UDG_QUADRATURE_HPP_
#define UDG_QUADRATURE_HPP_

#include <array>
#include <span>
#include <vector>

#include "udg/vec2.hpp"

namespace udg {

struct QuadraturePoint {
  Vec2 x;
  double w{0.0};
};

using QuadratureRule = std::vector<QuadraturePoint>;

struct Triangle {
  std::array<Vec2, 3> v;
  double area{0.0};
};

// Unsigned area of the triangle spanned by a, b, c.
double triangle_area(Vec2 a, Vec2 b, Vec2 c);

// Rule exact for bivariate polynomials of total degree <= order, order in
// {1, 2, 3}, summed over all triangles. Throws std::invalid_argument for
// other orders.
QuadratureRule triangle_quadrature(Triangle const &tri, int order);
QuadratureRule polygon_quadrature(std::span<Triangle const> triangles, int order);

// Gauss-Legendre rule with npoints in [1, 4] on the segment a-b, exact for
// polynomials of degree <= 2 npoints - 1 along the segment.
QuadratureRule segment_quadrature(Vec2 a, Vec2 b, int npoints);

}  // namespace udg

#endif  // UDG_QUADRATURE_HPP_

#include "udg/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace udg {

namespace {

struct Barycentric {
  double l0, l1, l2, weight;  // weight relative to the triangle area
};

// Order 1: centroid. Order 2: interior three-point rule. Order 3: the
// four-point rule with a negative centroid weight.
std::vector<Barycentric> const &reference_rule(int order) {
  static std::vector<Barycentric> const order1{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0}};
  static std::vector<Barycentric> const order2{{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0},
                                               {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0},
                                               {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0}};
  static std::vector<Barycentric> const order3{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, -27.0 / 48.0},
                                               {0.6, 0.2, 0.2, 25.0 / 48.0},
                                               {0.2, 0.6, 0.2, 25.0 / 48.0},
                                               {0.2, 0.2, 0.6, 25.0 / 48.0}};
  switch (order) {
    case 1:
      return order1;
    case 2:
      return order2;
    case 3:
      return order3;
    default:
      throw std::invalid_argument("triangle quadrature: unsupported order " +
                                  std::to_string(order));
  }
}

}  // namespace

double triangle_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * std::abs(cross(b - a, c - a)); }

QuadratureRule triangle_quadrature(Triangle const &tri, int order) {
  auto const &ref = reference_rule(order);
  QuadratureRule rule;
  rule.reserve(ref.size());
  for (auto const &p : ref) {
    Vec2 const x = p.l0 * tri.v[0] + p.l1 * tri.v[1] + p.l2 * tri.v[2];
    rule.push_back({x, p.weight * tri.area});
  }
  return rule;
}

QuadratureRule polygon_quadrature(std::span<Triangle const> triangles, int order) {
  auto const &ref = reference_rule(order);
  QuadratureRule rule;
  rule.reserve(ref.size() * triangles.size());
  for (auto const &tri : triangles) {
    for (auto const &q : triangle_quadrature(tri, order)) rule.push_back(q);
  }
  return rule;
}

QuadratureRule segment_quadrature(Vec2 a, Vec2 b, int npoints) {
  // Nodes on [-1, 1] and weights summing to 2.
  static double const s35 = std::sqrt(3.0 / 5.0);
  static double const s65 = 2.0 / 7.0 * std::sqrt(6.0 / 5.0);
  static double const n4a = std::sqrt(3.0 / 7.0 - s65);
  static double const n4b = std::sqrt(3.0 / 7.0 + s65);
  static double const w4a = (18.0 + std::sqrt(30.0)) / 36.0;
  static double const w4b = (18.0 - std::sqrt(30.0)) / 36.0;
  std::vector<std::pair<double, double>> nodes;
  switch (npoints) {
    case 1:
      nodes = {{0.0, 2.0}};
      break;
    case 2:
      nodes = {{-1.0 / std::sqrt(3.0), 1.0}, {1.0 / std::sqrt(3.0), 1.0}};
      break;
    case 3:
      nodes = {{-s35, 5.0 / 9.0}, {0.0, 8.0 / 9.0}, {s35, 5.0 / 9.0}};
      break;
    case 4:
      nodes = {{-n4b, w4b}, {-n4a, w4a}, {n4a, w4a}, {n4b, w4b}};
      break;
    default:
      throw std::invalid_argument("segment quadrature: unsupported point count " +
                                  std::to_string(npoints));
  }
  double const length = norm(b - a);
  QuadratureRule rule;
  rule.reserve(nodes.size());
  for (auto const &[s, w] : nodes) {
    rule.push_back({lerp(a, b, 0.5 * (s + 1.0)), 0.5 * w * length});
  }
  return rule;
}

}  // namespace udg

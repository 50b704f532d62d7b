#ifndef UDG_TEST_SUPPORT_HPP_
#define UDG_TEST_SUPPORT_HPP_

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "udg/cutgeom.hpp"

namespace udg::test_support {

// Value of the centroid-split piecewise affine interpolant of vertex data v
// (counter-clockwise from lower left) at x inside cell c.
inline double split_value(CartesianGrid const &grid, std::array<double, 4> const &v, CellIndex c, Vec2 x) {
  auto const p = grid.cell_vertices(c);
  Vec2 const m = grid.cell_center(c);
  double const vm = 0.25 * (v[0] + v[1] + v[2] + v[3]);
  for (int k = 0; k < 4; ++k) {
    Vec2 const a = p[k], b = p[(k + 1) % 4];
    double const total = cross(b - a, m - a);
    double const la = cross(b - x, m - x) / total;
    double const lb = cross(m - x, a - x) / total;
    double const lm = 1.0 - la - lb;
    if (la >= -1e-13 && lb >= -1e-13 && lm >= -1e-13) return la * v[k] + lb * v[(k + 1) % 4] + lm * vm;
  }
  throw std::logic_error("split_value: point outside cell");
}

struct MonteCarloArea {
  double reconstructed{0.0};
  double sampled{0.0};
  double standard_error{0.0};
};

// Compares the reconstructed D_h area of one unit cell with random node
// values against rejection sampling of the same piecewise affine levels.
// Samples are jittered on a sqrt(samples)^2 lattice; the reported standard
// error is the binomial one of independent uniform sampling, which bounds
// the stratified estimator's.
inline MonteCarloArea random_cell_area(std::mt19937_64 &rng, int samples) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), unit(0.0, 1.0);
  CartesianGrid const grid({0, 0}, {1, 1}, 1, 1);
  CellIndex const c{0, 0};
  std::vector<double> a(4), b(4);
  for (auto &v : a) v = u(rng);
  for (auto &v : b) v = u(rng);
  DiscreteLevelSet const dls(grid, a, b, 1.0, 0.0);
  auto const vn = dls.cell_values_new(c), vo = dls.cell_values_old(c);
  auto const rec = reconstruct_cell(dls, c);
  MonteCarloArea r;
  r.reconstructed = rec.empty ? 0.0 : rec.cell.total_area;
  int const side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(samples))));
  if (side * side != samples) throw std::invalid_argument("random_cell_area: samples must be a square");
  int hits = 0;
  for (int sj = 0; sj < side; ++sj) {
    for (int si = 0; si < side; ++si) {
      Vec2 const x{(si + unit(rng)) / side, (sj + unit(rng)) / side};
      if (split_value(grid, vn, c, x) * split_value(grid, vo, c, x) <= 0.0) ++hits;
    }
  }
  double const p = r.reconstructed / grid.cell_area();
  r.sampled = static_cast<double>(hits) / samples * grid.cell_area();
  r.standard_error = std::sqrt(std::max(p * (1.0 - p), 0.0) / samples) * grid.cell_area();
  return r;
}

// Sampling resolution floor used when the area fraction is 0 or 1.
inline bool within_three_se(MonteCarloArea const &m, int samples) {
  return std::abs(m.sampled - m.reconstructed) <= std::max(3.0 * m.standard_error, 2.0 / samples);
}

}  // namespace udg::test_support

#endif  // UDG_TEST_SUPPORT_HPP_

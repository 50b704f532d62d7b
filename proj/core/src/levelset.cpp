#include "udg/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace udg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

LevelSetSample radial(Vec2 offset, double radius, double dt_without_gradient_term,
                      Vec2 center_velocity, double scale) {
  double const d = norm(offset);
  if (!(d > 1e-12 * scale)) {
    throw std::domain_error("level set gradient undefined at the circle centre");
  }
  Vec2 const grad = offset * (1.0 / d);
  return {d - radius, grad, dt_without_gradient_term - dot(grad, center_velocity)};
}

}  // namespace

std::string LevelSetField::name() const {
  return std::visit(Overloaded{[](ShrinkingCircle const &) { return std::string("shrinking_circle"); },
                               [](TranslatingCircle const &) { return std::string("translating_circle"); },
                               [](Affine1d const &) { return std::string("affine_1d"); }},
                    case_);
}

LevelSetSample LevelSetField::evaluate(Vec2 x, double t) const {
  return std::visit(
      Overloaded{
          [&](ShrinkingCircle const &c) {
            return radial(x - c.center, c.r0 - c.speed * t, c.speed, {0.0, 0.0}, c.r0);
          },
          [&](TranslatingCircle const &c) {
            Vec2 const center = c.center0 + t * c.velocity;
            return radial(x - center, c.radius, 0.0, c.velocity, c.radius);
          },
          [&](Affine1d const &c) {
            return LevelSetSample{x.x - c.speed * t, {1.0, 0.0}, -c.speed};
          }},
      case_);
}

double LevelSetField::value(Vec2 x, double t) const {
  return std::visit(
      Overloaded{[&](ShrinkingCircle const &c) { return norm(x - c.center) - (c.r0 - c.speed * t); },
                 [&](TranslatingCircle const &c) {
                   return norm(x - (c.center0 + t * c.velocity)) - c.radius;
                 },
                 [&](Affine1d const &c) { return x.x - c.speed * t; }},
      case_);
}

double LevelSetField::normal_velocity(Vec2 x, double t) const {
  auto const s = evaluate(x, t);
  return -s.dt / norm(s.gradient);
}

Vec2 LevelSetField::velocity(Vec2 x, double t) const {
  auto const s = evaluate(x, t);
  double const g = norm(s.gradient);
  return (-s.dt / g) * (s.gradient * (1.0 / g));
}

DiscreteLevelSet::DiscreteLevelSet(CartesianGrid grid, std::vector<double> node_values_new,
                                   std::vector<double> node_values_old, double t_new,
                                   double t_old)
    : grid_(std::move(grid)),
      new_(std::move(node_values_new)),
      old_(std::move(node_values_old)),
      t_new_(t_new),
      t_old_(t_old) {
  if (new_.size() != grid_.vertex_count() || old_.size() != grid_.vertex_count()) {
    throw std::invalid_argument("DiscreteLevelSet: node value count does not match the grid");
  }
}

std::array<double, 4> DiscreteLevelSet::cell_values_new(CellIndex c) const {
  auto const ids = grid_.cell_vertex_ids(c);
  return {new_[ids[0]], new_[ids[1]], new_[ids[2]], new_[ids[3]]};
}

std::array<double, 4> DiscreteLevelSet::cell_values_old(CellIndex c) const {
  auto const ids = grid_.cell_vertex_ids(c);
  return {old_[ids[0]], old_[ids[1]], old_[ids[2]], old_[ids[3]]};
}

double DiscreteLevelSet::bilinear(std::array<double, 4> const &v, CellIndex c, Vec2 x) const {
  Vec2 const lo = grid_.vertex(c.i, c.j);
  Vec2 const hi = grid_.vertex(c.i + 1, c.j + 1);
  double const s = (x.x - lo.x) / (hi.x - lo.x);
  double const r = (x.y - lo.y) / (hi.y - lo.y);
  return (1.0 - s) * (1.0 - r) * v[0] + s * (1.0 - r) * v[1] + s * r * v[2] +
         (1.0 - s) * r * v[3];
}

double DiscreteLevelSet::value_new(CellIndex cell, Vec2 x) const {
  return bilinear(cell_values_new(cell), cell, x);
}

double DiscreteLevelSet::value_old(CellIndex cell, Vec2 x) const {
  return bilinear(cell_values_old(cell), cell, x);
}

Vec2 DiscreteLevelSet::gradient_new(CellIndex cell, Vec2 x) const {
  auto const v = cell_values_new(cell);
  Vec2 const lo = grid_.vertex(cell.i, cell.j);
  Vec2 const hi = grid_.vertex(cell.i + 1, cell.j + 1);
  double const hx = hi.x - lo.x;
  double const hy = hi.y - lo.y;
  double const s = (x.x - lo.x) / hx;
  double const r = (x.y - lo.y) / hy;
  double const ds = (1.0 - r) * (v[1] - v[0]) + r * (v[2] - v[3]);
  double const dr = (1.0 - s) * (v[3] - v[0]) + s * (v[2] - v[1]);
  return {ds / hx, dr / hy};
}

DiscreteLevelSet interpolate(LevelSetField const &field, CartesianGrid const &grid,
                             double t_new, double t_old) {
  std::vector<double> vn(grid.vertex_count());
  std::vector<double> vo(grid.vertex_count());
  for (int j = 0; j <= grid.ny(); ++j) {
    for (int i = 0; i <= grid.nx(); ++i) {
      Vec2 const x = grid.vertex(i, j);
      auto const id = grid.vertex_id(i, j);
      vn[id] = field.value(x, t_new);
      vo[id] = field.value(x, t_old);
    }
  }
  return {grid, std::move(vn), std::move(vo), t_new, t_old};
}

VelocityWeight::VelocityWeight(DiscreteLevelSet const &dls, LevelSetField const &field,
                               VelocityMode mode, double tau)
    : dls_(&dls), field_(field), mode_(mode), tau_(tau) {
  if (mode == VelocityMode::levelset_backward_difference && !(tau > 0.0)) {
    throw std::invalid_argument("VelocityWeight: backward difference needs tau > 0");
  }
  double scale = 0.0;
  for (double v : dls.node_values_new()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  gradient_floor_ = 1e-12 * scale / dls.grid().diameter();
}

Vec2 VelocityWeight::operator()(CellIndex cell, Vec2 x) const {
  Vec2 const grad = dls_->gradient_new(cell, x);
  double const g = norm(grad);
  if (!(g >= gradient_floor_)) {
    throw std::domain_error("discrete level set gradient vanishes; velocity undefined");
  }
  if (mode_ == VelocityMode::analytic_normal) {
    return field_.normal_velocity(x, dls_->t_new()) * grad;
  }
  double const diff = dls_->value_new(cell, x) - dls_->value_old(cell, x);
  return (-diff / (tau_ * g)) * grad;
}

Vec2 discrete_velocity_weight(DiscreteLevelSet const &dls, LevelSetField const &field,
                              VelocityMode mode, Vec2 x, double tau) {
  return VelocityWeight(dls, field, mode, tau)(x);
}

}  // namespace udg

#ifndef UDG_LEVELSET_HPP_
#define UDG_LEVELSET_HPP_

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "udg/grid.hpp"
#include "udg/vec2.hpp"

namespace udg {

// Φ(x, t) = |x - center| - (r0 - speed t).
struct ShrinkingCircle {
  Vec2 center{0.0, 0.0};
  double r0{1.0};
  double speed{1.0};
};

// Φ(x, t) = |x - (center0 + t velocity)| - radius.
struct TranslatingCircle {
  Vec2 center0{0.0, 0.0};
  double radius{1.0};
  Vec2 velocity{1.0, 0.0};
};

// Φ(x, t) = x - speed t, a point moving along the x axis. The y coordinate
// is ignored, so the same field serves 1D and strip embeddings.
struct Affine1d {
  double speed{1.0};
};

struct LevelSetSample {
  double value{0.0};
  Vec2 gradient;
  double dt{0.0};
};

// Analytic space-time level set. Immutable.
class LevelSetField {
 public:
  using Case = std::variant<ShrinkingCircle, TranslatingCircle, Affine1d>;

  explicit LevelSetField(Case c) : case_(c) {}

  [[nodiscard]] Case const &description() const { return case_; }
  [[nodiscard]] std::string name() const;

  // Throws std::domain_error where the gradient is undefined (circle centre).
  [[nodiscard]] LevelSetSample evaluate(Vec2 x, double t) const;
  [[nodiscard]] double value(Vec2 x, double t) const;

  // w·ν = -Φ_t / |∇Φ|.
  [[nodiscard]] double normal_velocity(Vec2 x, double t) const;
  // (w·ν) ν, the velocity without tangential part.
  [[nodiscard]] Vec2 velocity(Vec2 x, double t) const;

 private:
  Case case_;
};

enum class VelocityMode { analytic_normal, levelset_backward_difference };

// Nodal interpolants Φ_h(·, t_new) and Φ_h(·, t_old) on a Cartesian grid,
// evaluated bilinearly inside each cell.
class DiscreteLevelSet {
 public:
  DiscreteLevelSet(CartesianGrid grid, std::vector<double> node_values_new,
                   std::vector<double> node_values_old, double t_new, double t_old);

  [[nodiscard]] CartesianGrid const &grid() const { return grid_; }
  [[nodiscard]] double t_new() const { return t_new_; }
  [[nodiscard]] double t_old() const { return t_old_; }
  [[nodiscard]] double tau() const { return t_new_ - t_old_; }
  [[nodiscard]] std::vector<double> const &node_values_new() const { return new_; }
  [[nodiscard]] std::vector<double> const &node_values_old() const { return old_; }
  [[nodiscard]] double node_new(int i, int j) const { return new_[grid_.vertex_id(i, j)]; }
  [[nodiscard]] double node_old(int i, int j) const { return old_[grid_.vertex_id(i, j)]; }

  // Vertex values of a cell in counter-clockwise order (see CartesianGrid).
  [[nodiscard]] std::array<double, 4> cell_values_new(CellIndex c) const;
  [[nodiscard]] std::array<double, 4> cell_values_old(CellIndex c) const;

  // Bilinear evaluation using the data of `cell` (x may lie on its boundary).
  [[nodiscard]] double value_new(CellIndex cell, Vec2 x) const;
  [[nodiscard]] double value_old(CellIndex cell, Vec2 x) const;
  [[nodiscard]] Vec2 gradient_new(CellIndex cell, Vec2 x) const;
  // Convenience overloads locating the cell first.
  [[nodiscard]] double value_new(Vec2 x) const { return value_new(grid_.locate(x), x); }
  [[nodiscard]] double value_old(Vec2 x) const { return value_old(grid_.locate(x), x); }

 private:
  [[nodiscard]] double bilinear(std::array<double, 4> const &v, CellIndex c, Vec2 x) const;

  CartesianGrid grid_;
  std::vector<double> new_;
  std::vector<double> old_;
  double t_new_;
  double t_old_;
};

// Samples Φ at all grid vertices at both time levels.
DiscreteLevelSet interpolate(LevelSetField const &field, CartesianGrid const &grid,
                             double t_new, double t_old);

// Produces the product w_h |∇Φ_h(·, t_new)| consumed by the scheme. The
// per-cell overload uses the bilinear data of the given cell, which matters
// on faces where ∇Φ_h jumps.
class VelocityWeight {
 public:
  VelocityWeight(DiscreteLevelSet const &dls, LevelSetField const &field, VelocityMode mode)
      : VelocityWeight(dls, field, mode, dls.tau()) {}
  VelocityWeight(DiscreteLevelSet const &dls, LevelSetField const &field, VelocityMode mode,
                 double tau);

  [[nodiscard]] Vec2 operator()(CellIndex cell, Vec2 x) const;
  [[nodiscard]] Vec2 operator()(Vec2 x) const { return (*this)(dls_->grid().locate(x), x); }
  [[nodiscard]] VelocityMode mode() const { return mode_; }

 private:
  DiscreteLevelSet const *dls_;
  LevelSetField field_;
  VelocityMode mode_;
  double tau_;
  double gradient_floor_;
};

// One-shot form of VelocityWeight for a single point; τ is the step used by
// the backward difference.
Vec2 discrete_velocity_weight(DiscreteLevelSet const &dls, LevelSetField const &field,
                              VelocityMode mode, Vec2 x, double tau);

}  // namespace udg

#endif  // UDG_LEVELSET_HPP_

#ifndef UDG_GRID_HPP_
#define UDG_GRID_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <vector>

#include "udg/vec2.hpp"

namespace udg {

struct CellIndex {
  int i{0};
  int j{0};
  friend constexpr auto operator<=>(CellIndex const &, CellIndex const &) = default;
};

enum class Axis { x, y };

// A face normal to `axis`. For Axis::x the face is the vertical segment at
// vertex column i spanning rows j..j+1; for Axis::y the horizontal segment at
// vertex row j spanning columns i..i+1. The face normal always points along
// the positive axis.
struct FaceIndex {
  Axis axis{Axis::x};
  int i{0};
  int j{0};
  friend constexpr bool operator==(FaceIndex const &, FaceIndex const &) = default;
};

// Interior face with its two neighbours. `plus` lies on the negative side of
// the face (left or below), so the fixed face normal is the outward normal of
// `plus` and the inward normal of `minus`.
struct InteriorFace {
  FaceIndex face;
  CellIndex plus;
  CellIndex minus;
};

// Structured Cartesian quadrilateral mesh of the box
// [origin, origin + extent] with nx x ny cells.
class CartesianGrid {
 public:
  CartesianGrid(Vec2 origin, Vec2 extent, int nx, int ny);

  [[nodiscard]] Vec2 origin() const { return origin_; }
  [[nodiscard]] Vec2 extent() const { return extent_; }
  [[nodiscard]] int nx() const { return nx_; }
  [[nodiscard]] int ny() const { return ny_; }
  [[nodiscard]] double hx() const { return extent_.x / nx_; }
  [[nodiscard]] double hy() const { return extent_.y / ny_; }
  // Maximum element size.
  [[nodiscard]] double h() const;
  [[nodiscard]] double cell_area() const { return hx() * hy(); }
  [[nodiscard]] double diameter() const { return norm(extent_); }
  [[nodiscard]] std::size_t cell_count() const {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  }
  [[nodiscard]] std::size_t vertex_count() const {
    return static_cast<std::size_t>(nx_ + 1) * static_cast<std::size_t>(ny_ + 1);
  }

  // Vertex (i, j), 0 <= i <= nx, 0 <= j <= ny. Computed from the integer
  // indices on every call; the far corner equals origin + extent exactly.
  [[nodiscard]] Vec2 vertex(int i, int j) const;
  [[nodiscard]] std::size_t vertex_id(int i, int j) const;

  [[nodiscard]] bool contains(CellIndex c) const {
    return c.i >= 0 && c.i < nx_ && c.j >= 0 && c.j < ny_;
  }
  [[nodiscard]] std::size_t cell_id(CellIndex c) const;
  [[nodiscard]] CellIndex cell_from_id(std::size_t id) const;

  // Counter-clockwise, starting at the lower-left vertex.
  [[nodiscard]] std::array<Vec2, 4> cell_vertices(CellIndex c) const;
  [[nodiscard]] std::array<std::size_t, 4> cell_vertex_ids(CellIndex c) const;
  [[nodiscard]] Vec2 cell_center(CellIndex c) const;
  // Cells sharing a face with c, in the order left, right, below, above.
  [[nodiscard]] std::vector<CellIndex> cell_neighbors(CellIndex c) const;

  [[nodiscard]] std::vector<InteriorFace> interior_faces() const;
  [[nodiscard]] std::array<Vec2, 2> face_endpoints(FaceIndex f) const;
  [[nodiscard]] static Vec2 face_normal(FaceIndex f);

  // Cell containing x; points on shared faces go to the upper/right cell,
  // points on the outer boundary are clamped into the grid.
  [[nodiscard]] CellIndex locate(Vec2 x) const;

 private:
  Vec2 origin_;
  Vec2 extent_;
  int nx_;
  int ny_;
};

}  // namespace udg

#endif  // UDG_GRID_HPP_

#include "udg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace udg {

namespace {

// Exact at t = 0 and t = 1.
double blend(double a, double b, int k, int n) {
  if (k == n) return b;
  double const t = static_cast<double>(k) / static_cast<double>(n);
  return std::lerp(a, b, t);
}

}  // namespace

CartesianGrid::CartesianGrid(Vec2 origin, Vec2 extent, int nx, int ny)
    : origin_(origin), extent_(extent), nx_(nx), ny_(ny) {
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("CartesianGrid: nx and ny must be >= 1");
  }
  if (!(extent.x > 0.0) || !(extent.y > 0.0)) {
    throw std::invalid_argument("CartesianGrid: extents must be positive");
  }
}

double CartesianGrid::h() const { return std::max(hx(), hy()); }

Vec2 CartesianGrid::vertex(int i, int j) const {
  if (i < 0 || i > nx_ || j < 0 || j > ny_) {
    throw std::out_of_range("CartesianGrid::vertex: index (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") out of range");
  }
  return {blend(origin_.x, origin_.x + extent_.x, i, nx_),
          blend(origin_.y, origin_.y + extent_.y, j, ny_)};
}

std::size_t CartesianGrid::vertex_id(int i, int j) const {
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_ + 1) +
         static_cast<std::size_t>(i);
}

std::size_t CartesianGrid::cell_id(CellIndex c) const {
  if (!contains(c)) {
    throw std::out_of_range("CartesianGrid: cell (" + std::to_string(c.i) + ", " +
                            std::to_string(c.j) + ") out of range");
  }
  return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(nx_) +
         static_cast<std::size_t>(c.i);
}

CellIndex CartesianGrid::cell_from_id(std::size_t id) const {
  if (id >= cell_count()) throw std::out_of_range("CartesianGrid: cell id out of range");
  auto const n = static_cast<std::size_t>(nx_);
  return {static_cast<int>(id % n), static_cast<int>(id / n)};
}

std::array<Vec2, 4> CartesianGrid::cell_vertices(CellIndex c) const {
  if (!contains(c)) (void)cell_id(c);
  return {vertex(c.i, c.j), vertex(c.i + 1, c.j), vertex(c.i + 1, c.j + 1),
          vertex(c.i, c.j + 1)};
}

std::array<std::size_t, 4> CartesianGrid::cell_vertex_ids(CellIndex c) const {
  if (!contains(c)) (void)cell_id(c);
  return {vertex_id(c.i, c.j), vertex_id(c.i + 1, c.j), vertex_id(c.i + 1, c.j + 1),
          vertex_id(c.i, c.j + 1)};
}

Vec2 CartesianGrid::cell_center(CellIndex c) const {
  auto const v = cell_vertices(c);
  return {0.5 * (v[0].x + v[2].x), 0.5 * (v[0].y + v[2].y)};
}

std::vector<CellIndex> CartesianGrid::cell_neighbors(CellIndex c) const {
  if (!contains(c)) (void)cell_id(c);
  std::vector<CellIndex> out;
  out.reserve(4);
  for (CellIndex const n : {CellIndex{c.i - 1, c.j}, CellIndex{c.i + 1, c.j},
                            CellIndex{c.i, c.j - 1}, CellIndex{c.i, c.j + 1}}) {
    if (contains(n)) out.push_back(n);
  }
  return out;
}

std::vector<InteriorFace> CartesianGrid::interior_faces() const {
  std::vector<InteriorFace> faces;
  faces.reserve(2 * cell_count());
  for (int j = 0; j < ny_; ++j) {
    for (int i = 1; i < nx_; ++i) {
      faces.push_back({{Axis::x, i, j}, {i - 1, j}, {i, j}});
    }
  }
  for (int j = 1; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      faces.push_back({{Axis::y, i, j}, {i, j - 1}, {i, j}});
    }
  }
  return faces;
}

std::array<Vec2, 2> CartesianGrid::face_endpoints(FaceIndex f) const {
  if (f.axis == Axis::x) return {vertex(f.i, f.j), vertex(f.i, f.j + 1)};
  return {vertex(f.i, f.j), vertex(f.i + 1, f.j)};
}

Vec2 CartesianGrid::face_normal(FaceIndex f) {
  return f.axis == Axis::x ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
}

CellIndex CartesianGrid::locate(Vec2 x) const {
  auto const fi = std::floor((x.x - origin_.x) / hx());
  auto const fj = std::floor((x.y - origin_.y) / hy());
  int const i = static_cast<int>(std::clamp(fi, 0.0, static_cast<double>(nx_ - 1)));
  int const j = static_cast<int>(std::clamp(fj, 0.0, static_cast<double>(ny_ - 1)));
  return {i, j};
}

}  // namespace udg

#ifndef UDG_CUTGEOM_HPP_
#define UDG_CUTGEOM_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "udg/grid.hpp"
#include "udg/levelset.hpp"
#include "udg/quadrature.hpp"

namespace udg {

// Reconstruction of the discrete swept domain
//   D_h = { x : Φ_h(x, t_new) Φ_h(x, t_old) <= 0 },
// valid when every point is swept at most once during the step. Each
// background cell is split into four triangles through its centroid, with
// the centroid value taken as the mean of the vertex values, so both levels
// are affine per triangle and D_h ∩ triangle is a union of at most two
// convex polygons obtained by half-plane clipping:
//   {Φ_new >= 0, Φ_old <= 0}  and  {Φ_new <= 0, Φ_old >= 0}.

enum class CellClass { outside, inside, cut };
enum class Interface { gamma_new, gamma_old };

struct LevelPoint {
  Vec2 x;
  double phi_new{0.0};
  double phi_old{0.0};
};

using LevelPolygon = std::vector<LevelPoint>;

struct InterfaceSegment {
  std::array<Vec2, 2> endpoints;
  Interface which{Interface::gamma_new};
  CellIndex owner;
  QuadratureRule quadrature;
  double length{0.0};
};

// K ∩ D_h for one background cell, as a triangle soup.
struct CutCell {
  CellIndex owner;
  std::vector<Triangle> triangles;
  QuadratureRule volume_quadrature;
  double total_area{0.0};
};

// Portion of an interior grid face inside D_h.
struct CutFace {
  FaceIndex face;
  std::array<Vec2, 2> endpoints;
  QuadratureRule quadrature;
  double length{0.0};
  CellIndex plus;
  CellIndex minus;
};

struct GeometryOptions {
  int volume_order{2};
  int segment_points{2};
};

// Result of clipping one affine triangle.
struct TriangleClip {
  std::vector<LevelPolygon> polygons;  // non-degenerate pieces only
  std::vector<std::array<Vec2, 2>> gamma_new;
  std::vector<std::array<Vec2, 2>> gamma_old;
  double area{0.0};
};

// Interface pieces are the edges of surviving polygons on which the level
// vanishes to within zero_tol; a zero line shared by two triangles is thus
// emitted only by the triangle on the D_h side. Polygons with area <=
// area_tol are discarded.
TriangleClip clip_triangle(std::array<LevelPoint, 3> const &tri, double zero_tol,
                           double area_tol);

// Keeps the part of the polygon where sign * level >= 0; new vertices get
// the clipped level set to exactly zero.
LevelPolygon clip_half_plane(LevelPolygon const &poly, Interface level, double sign);

double polygon_area(LevelPolygon const &poly);

inline double area_threshold(CartesianGrid const &grid) { return 1e-12 * grid.cell_area(); }

CellClass classify_cell(DiscreteLevelSet const &dls, CellIndex cell);

struct CellReconstruction {
  CutCell cell;
  std::vector<InterfaceSegment> segments;
  // Range of the affine Φ_h(·, t_new) over the polygon vertices.
  double phi_new_min{0.0};
  double phi_new_max{0.0};
  // True when nothing above the area threshold survived the clip.
  bool empty{true};
};

CellReconstruction reconstruct_cell(DiscreteLevelSet const &dls, CellIndex cell,
                                    GeometryOptions const &options = {});

struct DomainReconstruction {
  explicit DomainReconstruction(CartesianGrid g) : grid(g) {}

  CartesianGrid grid;
  std::vector<CellIndex> active_cells;  // ordered by cell id
  std::vector<CutCell> cut_cells;       // parallel to active_cells
  std::vector<CutFace> skeleton;
  std::vector<InterfaceSegment> gamma_new;
  std::vector<InterfaceSegment> gamma_old;
  double gamma_minus{0.0};
  double gamma_plus{0.0};
  // Face pieces inside D_h dropped because a neighbour was not active.
  std::size_t dropped_faces{0};
  std::vector<int> active_lookup;  // cell id -> position in active_cells or -1

  [[nodiscard]] double gamma() const { return gamma_minus + gamma_plus; }
  [[nodiscard]] std::optional<std::size_t> active_index(CellIndex c) const;
  [[nodiscard]] bool is_active(CellIndex c) const { return active_index(c).has_value(); }
  [[nodiscard]] double total_area() const;
  [[nodiscard]] double interface_length(Interface which) const;
  [[nodiscard]] std::vector<InterfaceSegment> const &segments(Interface which) const {
    return which == Interface::gamma_new ? gamma_new : gamma_old;
  }
};

// Throws std::runtime_error if no cell is active.
DomainReconstruction build_domain(DiscreteLevelSet const &dls, GeometryOptions const &options = {});

// Line records `cutcell i j area x y ...` (three vertices per triangle) and
// `segment new|old x0 y0 x1 y1`.
void write_geometry(DomainReconstruction const &domain, std::ostream &out);
void write_geometry(DomainReconstruction const &domain, std::filesystem::path const &path);

}  // namespace udg

#endif  // UDG_CUTGEOM_HPP_

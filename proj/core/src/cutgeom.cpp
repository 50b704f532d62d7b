#include "udg/cutgeom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace udg {

namespace {

double level_of(LevelPoint const &p, Interface level) {
  return level == Interface::gamma_new ? p.phi_new : p.phi_old;
}

bool strictly(std::array<double, 4> const &v, double sign) {
  return std::all_of(v.begin(), v.end(), [sign](double x) { return sign * x > 0.0; });
}

// Sub-interval of [lo, hi] on which f0 + s (f1 - f0) >= 0.
void clip_interval(double &lo, double &hi, double f0, double f1) {
  if (f0 >= 0.0 && f1 >= 0.0) return;
  if (f0 < 0.0 && f1 < 0.0) {
    hi = lo - 1.0;
    return;
  }
  double const root = f0 / (f0 - f1);
  if (f0 < 0.0) {
    lo = std::max(lo, root);
  } else {
    hi = std::min(hi, root);
  }
}

void append_fan(LevelPolygon const &poly, std::vector<Triangle> &out) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
    Triangle tri{{poly[0].x, poly[k].x, poly[k + 1].x}, 0.0};
    tri.area = triangle_area(tri.v[0], tri.v[1], tri.v[2]);
    if (tri.area > 0.0) out.push_back(tri);
  }
}

InterfaceSegment make_segment(std::array<Vec2, 2> const &ends, Interface which, CellIndex owner,
                              int npoints) {
  return {ends, which, owner, segment_quadrature(ends[0], ends[1], npoints),
          norm(ends[1] - ends[0])};
}

}  // namespace

LevelPolygon clip_half_plane(LevelPolygon const &poly, Interface level, double sign) {
  LevelPolygon out;
  auto const n = poly.size();
  out.reserve(n + 2);
  for (std::size_t k = 0; k < n; ++k) {
    LevelPoint const &a = poly[k];
    LevelPoint const &b = poly[(k + 1) % n];
    double const fa = sign * level_of(a, level);
    double const fb = sign * level_of(b, level);
    if (fa >= 0.0) out.push_back(a);
    if ((fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0)) {
      double const t = fa / (fa - fb);
      LevelPoint p{lerp(a.x, b.x, t), std::lerp(a.phi_new, b.phi_new, t),
                   std::lerp(a.phi_old, b.phi_old, t)};
      (level == Interface::gamma_new ? p.phi_new : p.phi_old) = 0.0;
      out.push_back(p);
    }
  }
  return out;
}

double polygon_area(LevelPolygon const &poly) {
  double twice = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    twice += cross(poly[k].x, poly[(k + 1) % poly.size()].x);
  }
  return 0.5 * std::abs(twice);
}

TriangleClip clip_triangle(std::array<LevelPoint, 3> const &tri, double zero_tol,
                           double area_tol) {
  TriangleClip result;
  LevelPolygon const base(tri.begin(), tri.end());
  // Characteristic length, for discarding zero-length edges.
  double const length_tol =
      1e-12 * std::max({norm(tri[1].x - tri[0].x), norm(tri[2].x - tri[1].x),
                        norm(tri[0].x - tri[2].x)});
  for (double const sweep : {1.0, -1.0}) {
    auto poly = clip_half_plane(base, Interface::gamma_new, sweep);
    if (poly.size() < 3) continue;
    poly = clip_half_plane(poly, Interface::gamma_old, -sweep);
    if (poly.size() < 3) continue;
    double const area = polygon_area(poly);
    if (!(area > area_tol)) continue;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      LevelPoint const &a = poly[k];
      LevelPoint const &b = poly[(k + 1) % poly.size()];
      if (!(norm(b.x - a.x) > length_tol)) continue;
      bool const on_new = std::abs(a.phi_new) <= zero_tol && std::abs(b.phi_new) <= zero_tol;
      bool const on_old = std::abs(a.phi_old) <= zero_tol && std::abs(b.phi_old) <= zero_tol;
      // An edge on both zero sets does not move during the step.
      if (on_new && !on_old) result.gamma_new.push_back({a.x, b.x});
      if (on_old && !on_new) result.gamma_old.push_back({a.x, b.x});
    }
    result.area += area;
    result.polygons.push_back(std::move(poly));
  }
  return result;
}

CellClass classify_cell(DiscreteLevelSet const &dls, CellIndex cell) {
  auto const vn = dls.cell_values_new(cell);
  auto const vo = dls.cell_values_old(cell);
  if ((strictly(vn, 1.0) && strictly(vo, -1.0)) || (strictly(vn, -1.0) && strictly(vo, 1.0))) {
    return CellClass::inside;
  }
  if ((strictly(vn, 1.0) && strictly(vo, 1.0)) || (strictly(vn, -1.0) && strictly(vo, -1.0))) {
    return CellClass::outside;
  }
  return CellClass::cut;
}

CellReconstruction reconstruct_cell(DiscreteLevelSet const &dls, CellIndex cell,
                                    GeometryOptions const &options) {
  auto const &grid = dls.grid();
  auto const kind = classify_cell(dls, cell);
  CellReconstruction rec;
  rec.cell.owner = cell;
  rec.phi_new_min = std::numeric_limits<double>::infinity();
  rec.phi_new_max = -std::numeric_limits<double>::infinity();
  if (kind == CellClass::outside) return rec;

  auto const xs = grid.cell_vertices(cell);
  auto const vn = dls.cell_values_new(cell);
  auto const vo = dls.cell_values_old(cell);
  std::array<LevelPoint, 4> corners;
  LevelPoint centroid{{0.0, 0.0}, 0.0, 0.0};
  double scale = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    corners[k] = {xs[k], vn[k], vo[k]};
    scale = std::max({scale, std::abs(vn[k]), std::abs(vo[k])});
  }
  centroid.x = grid.cell_center(cell);
  centroid.phi_new = 0.25 * (vn[0] + vn[1] + vn[2] + vn[3]);
  centroid.phi_old = 0.25 * (vo[0] + vo[1] + vo[2] + vo[3]);

  double const zero_tol = 1e-10 * scale;
  double const area_tol = 1e-14 * grid.cell_area();
  std::vector<std::array<Vec2, 2>> seg_new;
  std::vector<std::array<Vec2, 2>> seg_old;
  for (std::size_t k = 0; k < 4; ++k) {
    std::array<LevelPoint, 3> const tri{corners[k], corners[(k + 1) % 4], centroid};
    if (kind == CellClass::inside) {
      LevelPolygon const poly(tri.begin(), tri.end());
      append_fan(poly, rec.cell.triangles);
      for (auto const &p : poly) {
        rec.phi_new_min = std::min(rec.phi_new_min, p.phi_new);
        rec.phi_new_max = std::max(rec.phi_new_max, p.phi_new);
      }
      continue;
    }
    auto clip = clip_triangle(tri, zero_tol, area_tol);
    for (auto const &poly : clip.polygons) {
      append_fan(poly, rec.cell.triangles);
      for (auto const &p : poly) {
        rec.phi_new_min = std::min(rec.phi_new_min, p.phi_new);
        rec.phi_new_max = std::max(rec.phi_new_max, p.phi_new);
      }
    }
    seg_new.insert(seg_new.end(), clip.gamma_new.begin(), clip.gamma_new.end());
    seg_old.insert(seg_old.end(), clip.gamma_old.begin(), clip.gamma_old.end());
  }

  for (auto const &t : rec.cell.triangles) rec.cell.total_area += t.area;
  if (!(rec.cell.total_area > area_threshold(grid))) {
    rec.cell.triangles.clear();
    rec.cell.total_area = 0.0;
    return rec;
  }
  rec.empty = false;
  rec.cell.volume_quadrature = polygon_quadrature(rec.cell.triangles, options.volume_order);
  for (auto const &s : seg_new) {
    rec.segments.push_back(make_segment(s, Interface::gamma_new, cell, options.segment_points));
  }
  for (auto const &s : seg_old) {
    rec.segments.push_back(make_segment(s, Interface::gamma_old, cell, options.segment_points));
  }
  return rec;
}

std::optional<std::size_t> DomainReconstruction::active_index(CellIndex c) const {
  if (!grid.contains(c) || active_lookup.empty()) return std::nullopt;
  int const k = active_lookup[grid.cell_id(c)];
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

double DomainReconstruction::total_area() const {
  double a = 0.0;
  for (auto const &c : cut_cells) a += c.total_area;
  return a;
}

double DomainReconstruction::interface_length(Interface which) const {
  double l = 0.0;
  for (auto const &s : segments(which)) l += s.length;
  return l;
}

DomainReconstruction build_domain(DiscreteLevelSet const &dls, GeometryOptions const &options) {
  auto const &grid = dls.grid();
  DomainReconstruction dom{grid};
  dom.active_lookup.assign(grid.cell_count(), -1);
  double phi_min = std::numeric_limits<double>::infinity();
  double phi_max = -std::numeric_limits<double>::infinity();

  for (std::size_t id = 0; id < grid.cell_count(); ++id) {
    CellIndex const cell = grid.cell_from_id(id);
    if (classify_cell(dls, cell) == CellClass::outside) continue;
    auto rec = reconstruct_cell(dls, cell, options);
    if (rec.empty) continue;
    dom.active_lookup[id] = static_cast<int>(dom.active_cells.size());
    dom.active_cells.push_back(cell);
    dom.cut_cells.push_back(std::move(rec.cell));
    phi_min = std::min(phi_min, rec.phi_new_min);
    phi_max = std::max(phi_max, rec.phi_new_max);
    for (auto &s : rec.segments) {
      (s.which == Interface::gamma_new ? dom.gamma_new : dom.gamma_old).push_back(std::move(s));
    }
  }
  if (dom.active_cells.empty()) {
    throw std::runtime_error("build_domain: the swept domain D_h contains no active cell");
  }
  dom.gamma_minus = -phi_min;
  dom.gamma_plus = phi_max;

  double const length_tol = 1e-12 * grid.h();
  for (auto const &f : grid.interior_faces()) {
    bool const plus_active = dom.is_active(f.plus);
    bool const minus_active = dom.is_active(f.minus);
    if (!plus_active && !minus_active) continue;
    auto const ends = grid.face_endpoints(f.face);
    auto const i0 = f.face.i;
    auto const j0 = f.face.j;
    auto const i1 = f.face.axis == Axis::x ? i0 : i0 + 1;
    auto const j1 = f.face.axis == Axis::x ? j0 + 1 : j0;
    double const n0 = dls.node_new(i0, j0);
    double const n1 = dls.node_new(i1, j1);
    double const o0 = dls.node_old(i0, j0);
    double const o1 = dls.node_old(i1, j1);
    double const zero_tol =
        1e-10 * std::max({std::abs(n0), std::abs(n1), std::abs(o0), std::abs(o1)});
    // A face lying on Γ_h or Γ_h^old bounds D_h and is not part of the skeleton.
    if (std::abs(n0) <= zero_tol && std::abs(n1) <= zero_tol) continue;
    if (std::abs(o0) <= zero_tol && std::abs(o1) <= zero_tol) continue;
    for (double const sweep : {1.0, -1.0}) {
      double lo = 0.0;
      double hi = 1.0;
      clip_interval(lo, hi, sweep * n0, sweep * n1);
      clip_interval(lo, hi, -sweep * o0, -sweep * o1);
      if (!(hi > lo)) continue;
      std::array<Vec2, 2> const piece{lerp(ends[0], ends[1], lo), lerp(ends[0], ends[1], hi)};
      double const length = norm(piece[1] - piece[0]);
      if (!(length > length_tol)) continue;
      if (!plus_active || !minus_active) {
        ++dom.dropped_faces;
        continue;
      }
      dom.skeleton.push_back({f.face, piece,
                              segment_quadrature(piece[0], piece[1], options.segment_points),
                              length, f.plus, f.minus});
    }
  }
  return dom;
}

void write_geometry(DomainReconstruction const &domain, std::ostream &out) {
  for (auto const &c : domain.cut_cells) {
    fmt::print(out, "cutcell {} {} {:.17g}", c.owner.i, c.owner.j, c.total_area);
    for (auto const &t : c.triangles) {
      for (auto const &v : t.v) fmt::print(out, " {:.17g} {:.17g}", v.x, v.y);
    }
    out << '\n';
  }
  for (Interface const which : {Interface::gamma_new, Interface::gamma_old}) {
    char const *tag = which == Interface::gamma_new ? "new" : "old";
    for (auto const &s : domain.segments(which)) {
      fmt::print(out, "segment {} {:.17g} {:.17g} {:.17g} {:.17g}\n", tag, s.endpoints[0].x,
                 s.endpoints[0].y, s.endpoints[1].x, s.endpoints[1].y);
    }
  }
}

void write_geometry(DomainReconstruction const &domain, std::filesystem::path const &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open geometry dump '" + path.string() + "'");
  write_geometry(domain, out);
  if (!out) throw std::runtime_error("failed writing geometry dump '" + path.string() + "'");
}

}  // namespace udg

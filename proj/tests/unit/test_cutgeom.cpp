#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "udg/cutgeom.hpp"
#include "udg_test_support.hpp"

namespace udg {
namespace {

CartesianGrid window_grid(int n) { return CartesianGrid({-1.5, -1.5}, {3.5, 3.0}, n, n); }

DiscreteLevelSet shrinking(int n) {
  LevelSetField const f(ShrinkingCircle{{0, 0}, 1.0, 1.0});
  return interpolate(f, window_grid(n), 0.5, 0.0);
}

// Level sets given by callables, sampled at the nodes.
template <class F, class G>
DiscreteLevelSet sampled(CartesianGrid const &grid, F phi_new, G phi_old) {
  std::vector<double> a(grid.vertex_count()), b(grid.vertex_count());
  for (int j = 0; j <= grid.ny(); ++j) {
    for (int i = 0; i <= grid.nx(); ++i) {
      a[grid.vertex_id(i, j)] = phi_new(grid.vertex(i, j));
      b[grid.vertex_id(i, j)] = phi_old(grid.vertex(i, j));
    }
  }
  return {grid, a, b, 1.0, 0.0};
}

using test_support::split_value;

TEST(ClipTriangle, OneNegativeVertexAgainstMonteCarlo) {
  std::array<LevelPoint, 3> const tri{LevelPoint{{0, 0}, -1.0, -1.0}, LevelPoint{{1, 0}, 1.0, -1.0},
                                      LevelPoint{{0, 1}, 1.0, -1.0}};
  auto const clip = clip_triangle(tri, 1e-12, 1e-14);
  // Φ_new = -1 + 2x + 2y, so D_h ∩ T = {x + y >= 1/2}.
  EXPECT_NEAR(clip.area, 0.375, 1e-15);
  ASSERT_EQ(clip.gamma_new.size(), 1u);
  EXPECT_TRUE(clip.gamma_old.empty());
  EXPECT_NEAR(norm(clip.gamma_new[0][1] - clip.gamma_new[0][0]), std::sqrt(0.5), 1e-15);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int const samples = 1'000'000;
  int hits = 0;
  for (int s = 0; s < samples; ++s) {
    double x = u(rng), y = u(rng);
    if (x + y > 1.0) {
      x = 1.0 - x;
      y = 1.0 - y;
    }
    if (-1.0 + 2.0 * x + 2.0 * y >= 0.0) ++hits;
  }
  double const mc_area = 0.5 * hits / samples;
  EXPECT_NEAR(clip.area / mc_area, 1.0, 1e-3);
}

TEST(ClipTriangle, OutsideTriangleIsEmpty) {
  std::array<LevelPoint, 3> const tri{LevelPoint{{0, 0}, 1.0, 2.0}, LevelPoint{{1, 0}, 1.0, 3.0},
                                      LevelPoint{{0, 1}, 0.5, 0.1}};
  auto const clip = clip_triangle(tri, 1e-12, 1e-14);
  EXPECT_EQ(clip.area, 0.0);
  EXPECT_TRUE(clip.polygons.empty());
  EXPECT_TRUE(clip.gamma_new.empty());
}

TEST(ClipHalfPlane, NewVerticesLieOnTheLevel) {
  LevelPolygon const square{{{0, 0}, -1.0, 0.0}, {{1, 0}, 1.0, 0.0}, {{1, 1}, 1.0, 0.0}, {{0, 1}, -1.0, 0.0}};
  auto const right = clip_half_plane(square, Interface::gamma_new, 1.0);
  EXPECT_NEAR(polygon_area(right), 0.5, 1e-15);
  int on_line = 0;
  for (auto const &p : right) {
    if (p.phi_new == 0.0) {
      ++on_line;
      EXPECT_NEAR(p.x.x, 0.5, 1e-15);
    }
  }
  EXPECT_EQ(on_line, 2);
  EXPECT_NEAR(polygon_area(clip_half_plane(square, Interface::gamma_new, -1.0)), 0.5, 1e-15);
}

TEST(ReconstructCell, AffineStripInUnitSquare) {
  CartesianGrid const grid({0, 0}, {1, 1}, 1, 1);
  auto const dls = sampled(grid, [](Vec2 x) { return x.x - 0.5; }, [](Vec2 x) { return x.x - 0.25; });
  auto const rec = reconstruct_cell(dls, {0, 0});
  ASSERT_FALSE(rec.empty);
  EXPECT_NEAR(rec.cell.total_area, 0.25, 1e-14);
  double len_new = 0.0, len_old = 0.0;
  for (auto const &s : rec.segments) {
    if (s.which == Interface::gamma_new) {
      len_new += s.length;
      EXPECT_NEAR(s.endpoints[0].x, 0.5, 1e-14);
      EXPECT_NEAR(s.endpoints[1].x, 0.5, 1e-14);
    } else {
      len_old += s.length;
      EXPECT_NEAR(s.endpoints[0].x, 0.25, 1e-14);
    }
  }
  EXPECT_NEAR(len_new, 1.0, 1e-14);
  EXPECT_NEAR(len_old, 1.0, 1e-14);
  EXPECT_EQ(classify_cell(dls, {0, 0}), CellClass::cut);
}

TEST(ReconstructCell, QuadratureMatchesArea) {
  auto const dls = shrinking(40);
  auto const &grid = dls.grid();
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      auto const rec = reconstruct_cell(dls, {i, j});
      if (rec.empty) continue;
      auto const &cc = rec.cell;
      double tri = 0.0, w = 0.0;
      for (auto const &t : cc.triangles) tri += t.area;
      auto const v = grid.cell_vertices({i, j});
      for (auto const &q : cc.volume_quadrature) {
        w += q.w;
        EXPECT_GE(q.x.x, v[0].x - 1e-14);
        EXPECT_LE(q.x.x, v[2].x + 1e-14);
        EXPECT_GE(q.x.y, v[0].y - 1e-14);
        EXPECT_LE(q.x.y, v[2].y + 1e-14);
      }
      EXPECT_NEAR(tri, cc.total_area, 1e-15);
      EXPECT_NEAR(w, cc.total_area, 1e-15);
      EXPECT_LE(cc.total_area, grid.cell_area() + 1e-12);
      EXPECT_GE(cc.total_area, 0.0);
    }
  }
}

TEST(ReconstructCell, SegmentEndpointsOnZeroLevel) {
  auto const dls = shrinking(20);
  auto const &grid = dls.grid();
  double scale = 0.0;
  for (double v : dls.node_values_new()) scale = std::max(scale, std::abs(v));
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      CellIndex const c{i, j};
      for (auto const &s : reconstruct_cell(dls, c).segments) {
        auto const vals = s.which == Interface::gamma_new ? dls.cell_values_new(c) : dls.cell_values_old(c);
        for (auto const &e : s.endpoints) EXPECT_NEAR(split_value(grid, vals, c, e), 0.0, 1e-10 * scale);
      }
    }
  }
}

TEST(ClassifyCell, ShrinkingCircleExamples) {
  auto const dls = shrinking(40);
  auto const &grid = dls.grid();
  auto radii = [&](CellIndex c) {
    std::array<double, 4> r{};
    auto const v = grid.cell_vertices(c);
    for (int k = 0; k < 4; ++k) r[k] = norm(v[k]);
    return r;
  };
  CellIndex const in = grid.locate({0.75, 0.0});
  for (double r : radii(in)) {
    EXPECT_GT(r, 0.5);
    EXPECT_LT(r, 1.0);
  }
  EXPECT_EQ(classify_cell(dls, in), CellClass::inside);
  auto const rin = reconstruct_cell(dls, in);
  EXPECT_NEAR(rin.cell.total_area, grid.cell_area(), 1e-15);
  EXPECT_TRUE(rin.segments.empty());

  CellIndex const out{0, 0};
  for (double r : radii(out)) EXPECT_GT(r, 1.0);
  EXPECT_EQ(classify_cell(dls, out), CellClass::outside);
  EXPECT_TRUE(reconstruct_cell(dls, out).empty);

  CellIndex const cut = grid.locate({0.5, 0.01});
  auto const r = radii(cut);
  EXPECT_LT(*std::min_element(r.begin(), r.end()), 0.5);
  EXPECT_GT(*std::max_element(r.begin(), r.end()), 0.5);
  EXPECT_EQ(classify_cell(dls, cut), CellClass::cut);

  // Inner disc: both levels negative.
  EXPECT_EQ(classify_cell(dls, grid.locate({0.05, 0.05})), CellClass::outside);
}

TEST(BuildDomain, ShrinkingCircleInvariants) {
  auto const dls = shrinking(40);
  auto const dom = build_domain(dls);
  EXPECT_NEAR(dom.gamma(), 0.5, 1e-12);
  EXPECT_GE(dom.gamma_minus, -1e-12);
  EXPECT_NEAR(dom.gamma_minus, 0.0, 1e-12);
  EXPECT_EQ(dom.gamma(), dom.gamma_minus + dom.gamma_plus);
  ASSERT_EQ(dom.active_cells.size(), dom.cut_cells.size());
  double const thr = area_threshold(dom.grid);
  for (std::size_t k = 0; k < dom.active_cells.size(); ++k) {
    EXPECT_EQ(dom.cut_cells[k].owner, dom.active_cells[k]);
    EXPECT_GT(dom.cut_cells[k].total_area, thr);
    if (k > 0) EXPECT_LT(dom.grid.cell_id(dom.active_cells[k - 1]), dom.grid.cell_id(dom.active_cells[k]));
  }
  for (auto which : {Interface::gamma_new, Interface::gamma_old}) {
    for (auto const &s : dom.segments(which)) {
      EXPECT_TRUE(dom.is_active(s.owner));
      EXPECT_EQ(s.which, which);
    }
  }
  EXPECT_EQ(dom.dropped_faces, 0u);
  for (auto const &f : dom.skeleton) {
    EXPECT_TRUE(dom.is_active(f.plus));
    EXPECT_TRUE(dom.is_active(f.minus));
    auto const e = dom.grid.face_endpoints(f.face);
    EXPECT_LE(f.length, norm(e[1] - e[0]) + 1e-15);
  }
}

TEST(BuildDomain, GeometryConvergesToAnnulus) {
  double prev_area = 1.0, prev_new = 1.0, prev_old = 1.0;
  for (int n : {20, 80}) {
    auto const dom = build_domain(shrinking(n));
    double const ea = std::abs(dom.total_area() - 0.75 * std::numbers::pi);
    double const en = std::abs(dom.interface_length(Interface::gamma_new) - std::numbers::pi);
    double const eo = std::abs(dom.interface_length(Interface::gamma_old) - 2.0 * std::numbers::pi);
    EXPECT_LT(en, prev_new);
    EXPECT_LT(eo, prev_old);
    EXPECT_LT(ea, std::max(prev_area, 1e-2));
    prev_area = ea;
    prev_new = en;
    prev_old = eo;
  }
  EXPECT_LT(prev_area / (0.75 * std::numbers::pi), 5e-3);
  EXPECT_LT(prev_new / std::numbers::pi, 5e-3);
  EXPECT_LT(prev_old / (2.0 * std::numbers::pi), 5e-3);
}

TEST(BuildDomain, EmptySweepThrows) {
  CartesianGrid const grid({0, 0}, {1, 1}, 3, 3);
  auto const dls = sampled(grid, [](Vec2) { return 1.0; }, [](Vec2) { return 2.0; });
  EXPECT_THROW((void)build_domain(dls), std::runtime_error);
}

// Area of D_h for globally affine levels, from clipping the whole box.
double affine_oracle(CartesianGrid const &grid, auto phi_new, auto phi_old) {
  LevelPolygon box;
  for (Vec2 x : {grid.vertex(0, 0), grid.vertex(grid.nx(), 0), grid.vertex(grid.nx(), grid.ny()),
                 grid.vertex(0, grid.ny())}) {
    box.push_back({x, phi_new(x), phi_old(x)});
  }
  auto const a = clip_half_plane(clip_half_plane(box, Interface::gamma_new, 1.0), Interface::gamma_old, -1.0);
  auto const b = clip_half_plane(clip_half_plane(box, Interface::gamma_new, -1.0), Interface::gamma_old, 1.0);
  return polygon_area(a) + polygon_area(b);
}

TEST(BuildDomain, CutCellsTileAffineSweeps) {
  CartesianGrid const grid({0, 0}, {1, 1}, 4, 3);
  auto const strip = build_domain(
      sampled(grid, [](Vec2 x) { return x.x - 0.6; }, [](Vec2 x) { return x.x - 0.2; }));
  EXPECT_NEAR(strip.total_area(), 0.4, 1e-12);
  EXPECT_NEAR(strip.interface_length(Interface::gamma_new), 1.0, 1e-12);
  EXPECT_NEAR(strip.interface_length(Interface::gamma_old), 1.0, 1e-12);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0), off(0.1, 0.5);
  for (int s = 0; s < 20; ++s) {
    double const th = std::numbers::pi * u(rng);
    Vec2 const n{std::cos(th), std::sin(th)};
    double const c = 0.5 * u(rng), d = off(rng);
    auto pn = [=](Vec2 x) { return dot(n, x - Vec2{0.5, 0.5}) - c; };
    auto po = [=](Vec2 x) { return dot(n, x - Vec2{0.5, 0.5}) - c + d; };
    CartesianGrid const g({0, 0}, {1, 1}, 5 + s % 4, 4 + s % 3);
    auto const dls = sampled(g, pn, po);
    double const expected = affine_oracle(g, pn, po);
    if (expected < 1e-6) continue;
    EXPECT_NEAR(build_domain(dls).total_area(), expected, 1e-12) << "sample " << s;
  }
}

// Union of the triangle edges of a cut cell lying on a grid face, as a
// parameter interval along the face.
std::pair<double, double> edge_cover(CutCell const &cc, std::array<Vec2, 2> const &face) {
  Vec2 const t = face[1] - face[0];
  double const len = norm(t);
  double lo = 1e300, hi = -1e300;
  for (auto const &tri : cc.triangles) {
    for (int k = 0; k < 3; ++k) {
      Vec2 const a = tri.v[k], b = tri.v[(k + 1) % 3];
      if (std::abs(cross(t, a - face[0])) > 1e-12 * len || std::abs(cross(t, b - face[0])) > 1e-12 * len) continue;
      if (norm(b - a) < 1e-14) continue;
      for (Vec2 p : {a, b}) {
        double const s = dot(p - face[0], t) / len;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
    }
  }
  return {lo, hi};
}

TEST(BuildDomain, SkeletonMatchesCellBoundaries) {
  CartesianGrid const g({0, 0}, {1, 1}, 6, 5);
  Vec2 const n{std::cos(0.4), std::sin(0.4)};
  auto pn = [=](Vec2 x) { return dot(n, x) - 0.8; };
  auto po = [=](Vec2 x) { return dot(n, x) - 0.45; };
  auto const dom = build_domain(sampled(g, pn, po));
  ASSERT_FALSE(dom.skeleton.empty());
  for (auto const &f : dom.skeleton) {
    auto const face = g.face_endpoints(f.face);
    Vec2 const t = face[1] - face[0];
    double const len = norm(t);
    double s0 = dot(f.endpoints[0] - face[0], t) / len, s1 = dot(f.endpoints[1] - face[0], t) / len;
    if (s0 > s1) std::swap(s0, s1);
    for (CellIndex c : {f.plus, f.minus}) {
      auto const [lo, hi] = edge_cover(dom.cut_cells[*dom.active_index(c)], face);
      EXPECT_NEAR(lo, s0, 1e-10);
      EXPECT_NEAR(hi, s1, 1e-10);
    }
  }
}

TEST(BuildDomain, RandomBilinearCellsAgainstMonteCarlo) {
  std::mt19937_64 rng(2026);
  int const samples = 1'000'000;
  for (int k = 0; k < 50; ++k) {
    auto const m = test_support::random_cell_area(rng, samples);
    EXPECT_TRUE(test_support::within_three_se(m, samples))
        << "configuration " << k << ": " << m.reconstructed << " vs " << m.sampled << " (se " << m.standard_error << ")";
  }
}

TEST(WriteGeometry, RecordsMatchDomain) {
  auto const dom = build_domain(shrinking(10));
  std::ostringstream out;
  write_geometry(dom, out);
  std::istringstream in(out.str());
  std::string line;
  std::size_t cells = 0, segs_new = 0, segs_old = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "cutcell") {
      ++cells;
    } else if (tag == "segment") {
      std::string which;
      ls >> which;
      (which == "new" ? segs_new : segs_old)++;
    }
  }
  EXPECT_EQ(cells, dom.cut_cells.size());
  EXPECT_EQ(segs_new, dom.gamma_new.size());
  EXPECT_EQ(segs_old, dom.gamma_old.size());
}

}  // namespace
}  // namespace udg

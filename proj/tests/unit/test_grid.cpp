#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "udg/grid.hpp"

namespace udg {
namespace {

TEST(CartesianGrid, UnitCellVertices) {
  CartesianGrid const g({0, 0}, {1, 1}, 1, 1);
  auto const v = g.cell_vertices({0, 0});
  EXPECT_EQ(v[0], (Vec2{0, 0}));
  EXPECT_EQ(v[1], (Vec2{1, 0}));
  EXPECT_EQ(v[2], (Vec2{1, 1}));
  EXPECT_EQ(v[3], (Vec2{0, 1}));
}

TEST(CartesianGrid, TwoCellsShareOneFace) {
  CartesianGrid const g({0, 0}, {2, 1}, 2, 1);
  auto const faces = g.interior_faces();
  ASSERT_EQ(faces.size(), 1u);
  EXPECT_EQ(CartesianGrid::face_normal(faces[0].face), (Vec2{1, 0}));
  EXPECT_EQ(faces[0].plus, (CellIndex{0, 0}));
  EXPECT_EQ(faces[0].minus, (CellIndex{1, 0}));
}

TEST(CartesianGrid, StudyWindowSpacing) {
  CartesianGrid const g({-1.5, -1.5}, {3.5, 3.0}, 10, 10);
  EXPECT_DOUBLE_EQ(g.hx(), 0.35);
  EXPECT_DOUBLE_EQ(g.hy(), 0.3);
  EXPECT_DOUBLE_EQ(g.h(), 0.35);
  EXPECT_EQ(g.vertex(10, 10), (Vec2{2.0, 1.5}));
  EXPECT_EQ(g.vertex(0, 0), (Vec2{-1.5, -1.5}));
}

TEST(CartesianGrid, RejectsInvalidShapes) {
  EXPECT_THROW(CartesianGrid({0, 0}, {1, 1}, 0, 1), std::invalid_argument);
  EXPECT_THROW(CartesianGrid({0, 0}, {1, -1}, 1, 1), std::invalid_argument);
  CartesianGrid const g({0, 0}, {1, 1}, 2, 2);
  EXPECT_THROW((void)g.cell_id({2, 0}), std::out_of_range);
  EXPECT_THROW((void)g.vertex(3, 0), std::out_of_range);
}

TEST(CartesianGrid, CellIdRoundTrip) {
  CartesianGrid const g({0, 0}, {1, 1}, 5, 3);
  for (std::size_t id = 0; id < g.cell_count(); ++id) EXPECT_EQ(g.cell_id(g.cell_from_id(id)), id);
}

TEST(CartesianGrid, NeighborsOfCornerAndInterior) {
  CartesianGrid const g({0, 0}, {1, 1}, 3, 3);
  EXPECT_EQ(g.cell_neighbors({0, 0}).size(), 2u);
  EXPECT_EQ(g.cell_neighbors({1, 1}).size(), 4u);
  EXPECT_EQ(g.cell_neighbors({1, 0}).size(), 3u);
}

TEST(CartesianGrid, Locate) {
  CartesianGrid const g({0, 0}, {1, 1}, 4, 4);
  EXPECT_EQ(g.locate({0.3, 0.6}), (CellIndex{1, 2}));
  EXPECT_EQ(g.locate({1.0, 1.0}), (CellIndex{3, 3}));
  EXPECT_EQ(g.locate({-5.0, 0.1}), (CellIndex{0, 0}));
}

class GridShapes : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(GridShapes, FaceCountAndConsistency) {
  auto const [nx, ny] = GetParam();
  CartesianGrid const g({-1, 2}, {3.0, 0.5}, nx, ny);
  auto const faces = g.interior_faces();
  EXPECT_EQ(faces.size(), static_cast<std::size_t>(2 * nx * ny - nx - ny));
  std::set<std::tuple<int, int, int>> seen;
  for (auto const &f : faces) {
    EXPECT_TRUE(seen.insert({static_cast<int>(f.face.axis), f.face.i, f.face.j}).second);
    auto const n = CartesianGrid::face_normal(f.face);
    // plus lies on the negative side, minus on the positive side.
    auto const d = g.cell_center(f.minus) - g.cell_center(f.plus);
    EXPECT_GT(dot(d, n), 0.0);
    EXPECT_NEAR(norm(d), f.face.axis == Axis::x ? g.hx() : g.hy(), 1e-14);
    auto const e = g.face_endpoints(f.face);
    auto const mid = lerp(e[0], e[1], 0.5);
    EXPECT_NEAR(norm(mid - g.cell_center(f.plus)), norm(mid - g.cell_center(f.minus)), 1e-14);
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, GridShapes,
                         ::testing::Values(std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 7},
                                           std::pair{4, 4}, std::pair{10, 3}, std::pair{17, 9}));

}  // namespace
}  // namespace udg

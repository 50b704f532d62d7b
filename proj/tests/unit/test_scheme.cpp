#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "udg/oned.hpp"
#include "udg/scheme.hpp"

namespace udg {
namespace {

struct StepFixture {
  LevelSetField field;
  DiscreteLevelSet levels;
  DomainReconstruction domain;
  DGSpace space;
  SchemeParams params;
  VelocityWeight weight;

  StepFixture(LevelSetField f, CartesianGrid grid, double t_new, double tau, int k = 0,
        VelocityMode mode = VelocityMode::analytic_normal, double eps = 0.0)
      : field(std::move(f)),
        levels(interpolate(field, grid, t_new, t_new - tau)),
        domain(build_domain(levels)),
        space(domain, k),
        params(make_params(domain, tau, eps)),
        weight(levels, field, mode, tau) {}
  StepFixture(StepFixture const &) = delete;
};

StepFixture circle(int n, int k = 0, VelocityMode mode = VelocityMode::analytic_normal) {
  return {LevelSetField(ShrinkingCircle{{0, 0}, 1.0, 1.0}),
          CartesianGrid({-1.5, -1.5}, {3.5, 3.0}, n, n), 0.5, 0.5, k, mode};
}

double relative_mass_defect(StepFixture const &s, OldSolutionField const &u_old, std::vector<double> const &u) {
  double const m_old = interface_mass(s.domain, u_old);
  return std::abs(interface_mass(s.space, u) - m_old) / std::abs(m_old);
}

TEST(UpwindSide, TiesGoToPlus) {
  EXPECT_EQ(upwind_side(0.3), Side::plus);
  EXPECT_EQ(upwind_side(-0.3), Side::minus);
  EXPECT_EQ(upwind_side(0.0), Side::plus);
}

TEST(DGSpace, BasisLayout) {
  auto const s = circle(10, 1);
  EXPECT_EQ(s.space.dofs_per_cell(), 3u);
  EXPECT_EQ(s.space.dof_count(), 3 * s.domain.active_cells.size());
  CellIndex const c = s.domain.active_cells.front();
  auto const phi = s.space.basis(c, s.domain.grid.cell_center(c));
  EXPECT_EQ(phi, (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_THROW((void)s.space.first_dof({0, 0}), std::out_of_range);
  auto const v = s.domain.grid.cell_vertices(c);
  auto const g = s.space.basis_gradients(c, v[0]);
  EXPECT_EQ(g[0], (Vec2{0.0, 0.0}));
  EXPECT_DOUBLE_EQ(g[1].x, 1.0 / s.domain.grid.hx());
  EXPECT_DOUBLE_EQ(g[2].y, 1.0 / s.domain.grid.hy());
}

TEST(Assemble, ZeroDataGivesZeroRhsAndSolution) {
  auto const s = circle(20);
  auto const sys = assemble(s.domain, s.space, s.params, constant_profile(0.0), s.weight);
  for (double v : sys.rhs) EXPECT_EQ(v, 0.0);
  auto const sol = solve_system(sys, 0.0);
  for (double v : sol.solution) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(interface_mass(s.space, sol.solution), 0.0);
}

TEST(Assemble, FaceBlockTelescopes) {
  for (int n : {10, 40}) {
    auto const s = circle(n);
    auto const sys = assemble(s.domain, s.space, s.params, constant_profile(1.0), s.weight);
    std::vector<double> const ones(sys.dof_count(), 1.0);
    auto const col = sys.face_block.transpose_multiply(ones);
    double worst = 0.0;
    for (double v : col) worst = std::max(worst, std::abs(v));
    EXPECT_LE(worst, 1e-12) << "n = " << n;
    EXPECT_EQ(sys.volume_block.nonzeros(), 0u);
    EXPECT_EQ(sys.regularization_block.nonzeros(), 0u);
  }
}

TEST(Assemble, BlocksSumToMatrix) {
  auto const s = circle(10, 1);
  auto const sys = assemble(s.domain, s.space, s.params, constant_profile(1.0), s.weight);
  std::vector<double> x(sys.dof_count());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(static_cast<double>(i));
  auto const a = sys.matrix.multiply(x);
  auto const b1 = sys.interface_block.multiply(x), b2 = sys.face_block.multiply(x),
             b3 = sys.volume_block.multiply(x), b4 = sys.regularization_block.multiply(x);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(a[i], b1[i] + b2[i] + b3[i] + b4[i], 1e-13);
}

TEST(Assemble, StripReproducesOneDimensionalRows) {
  double const w = 0.8, t_new = 0.75, tau = 0.5;
  int const n = 8;
  double const x0 = w * (t_new - tau), x1 = w * t_new;
  StepFixture const s(LevelSetField(Affine1d{w}), CartesianGrid({x0, 0.0}, {x1 - x0, 1.0}, n, 1), t_new, tau);
  ASSERT_EQ(s.space.dof_count(), static_cast<std::size_t>(n));
  EXPECT_NEAR(s.params.gamma, w * tau, 1e-14);
  auto const sys = assemble(s.domain, s.space, s.params, constant_profile(1.3), s.weight);

  oned::OneDConfig c;
  c.n = n;
  c.w = w;
  c.tau = tau;
  c.gamma = s.params.gamma;
  c.u_old = 1.3;
  auto const ref = oned::aligned_system(c);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
      EXPECT_NEAR(sys.matrix.at(i, j), tau * ref.matrix.at(i, j), 1e-13) << i << "," << j;
    }
    EXPECT_NEAR(sys.rhs[i], tau * ref.rhs[i], 1e-13);
  }
  auto const u = solve_system(sys, 0.0).solution;
  EXPECT_NEAR(u.back(), 1.3, 1e-13);
}

TEST(SolveStep, ConservesMass) {
  for (int n : {10, 20, 40}) {
    for (auto mode : {VelocityMode::analytic_normal, VelocityMode::levelset_backward_difference}) {
      auto const s = circle(n, 0, mode);
      auto const u_old = constant_profile(1.0);
      auto const r = solve_step(s.domain, s.space, s.params, u_old, s.weight);
      EXPECT_LE(relative_mass_defect(s, u_old, r.solution), 1e-10) << "n = " << n;
    }
  }
}

TEST(SolveStep, ConservesMassForLinearElements) {
  auto const s = circle(20, 1);
  auto const u_old = angular_binary_profile(0.2 * std::numbers::pi, 0.4 * std::numbers::pi, 1.0);
  auto const r = solve_step(s.domain, s.space, s.params, u_old, s.weight);
  EXPECT_LE(relative_mass_defect(s, u_old, r.solution), 1e-10);
}

TEST(SolveStep, IterativeAndDirectAgree) {
  auto const s = circle(20);
  auto const sys = assemble(s.domain, s.space, s.params, constant_profile(1.0), s.weight);
  StepSolverOptions direct, iterative;
  direct.method = StepSolverOptions::Method::direct;
  iterative.method = StepSolverOptions::Method::iterative;
  auto const a = solve_system(sys, 0.0, direct);
  auto const b = solve_system(sys, 0.0, iterative);
  EXPECT_EQ(a.report.method, SolveMethod::direct);
  EXPECT_EQ(b.report.method, SolveMethod::iterative);
  for (std::size_t i = 0; i < a.solution.size(); ++i) EXPECT_NEAR(a.solution[i], b.solution[i], 1e-9);
}

TEST(SolveStep, LinearInOldData) {
  auto const s = circle(20);
  auto const base = angular_binary_profile(0.2 * std::numbers::pi, 0.4 * std::numbers::pi, 1.0);
  double const alpha = -3.7;
  OldSolutionField const scaled = [&](Vec2 x) { return alpha * base(x); };
  auto const u = solve_step(s.domain, s.space, s.params, base, s.weight).solution;
  auto const v = solve_step(s.domain, s.space, s.params, scaled, s.weight).solution;
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(v[i], alpha * u[i], 1e-10);
}

TEST(SolveStep, PiecewiseConstantsStayNonnegative) {
  for (int n : {10, 20, 40}) {
    auto const s = circle(n);
    for (auto const &u_old :
         {constant_profile(1.0), angular_binary_profile(0.2 * std::numbers::pi, 0.4 * std::numbers::pi, 1.0)}) {
      auto const u = solve_step(s.domain, s.space, s.params, u_old, s.weight).solution;
      EXPECT_GE(*std::min_element(u.begin(), u.end()), -1e-8) << "n = " << n;
    }
  }
}

TEST(SolveStep, ApproachesAnalyticValue) {
  auto const s = circle(80);
  auto const r = solve_step(s.domain, s.space, s.params, constant_profile(1.0), s.weight);
  double const mean = interface_mass(s.space, r.solution) / s.domain.interface_length(Interface::gamma_new);
  EXPECT_NEAR(mean, 2.0, 1e-2);
  auto const coarse = circle(10);
  auto const rc = solve_step(coarse.domain, coarse.space, coarse.params, constant_profile(1.0), coarse.weight);
  auto const two = [](Vec2) { return 2.0; };
  auto const ec = error_norms(coarse.space, rc.solution, two);
  auto const ef = error_norms(s.space, r.solution, two);
  EXPECT_LT(ef.l1, ec.l1);
  EXPECT_LT(ef.l2, ec.l2);
  EXPECT_LT(ef.linf, ec.linf);
}

TEST(InterfaceMass, LengthsOfUnitData) {
  auto const s = circle(160);
  std::vector<double> ones(s.space.dof_count(), 1.0);
  EXPECT_NEAR(interface_mass(s.space, ones), std::numbers::pi, 5e-3 * std::numbers::pi);
  EXPECT_NEAR(interface_mass(s.domain, constant_profile(1.0)), 2.0 * std::numbers::pi, 5e-3 * 2.0 * std::numbers::pi);
}

TEST(ErrorNorms, ExactAndConstantOffset) {
  auto const s = circle(20);
  std::vector<double> u(s.space.dof_count(), 2.0);
  auto const zero = error_norms(s.space, u, [](Vec2) { return 2.0; });
  EXPECT_EQ(zero.l1, 0.0);
  EXPECT_EQ(zero.l2, 0.0);
  EXPECT_EQ(zero.linf, 0.0);
  double const c = 0.25;
  double const len = s.domain.interface_length(Interface::gamma_new);
  auto const e = error_norms(s.space, u, [&](Vec2) { return 2.0 + c; });
  EXPECT_NEAR(e.l1, c * len, 1e-13);
  EXPECT_NEAR(e.l2, c * std::sqrt(len), 1e-13);
  EXPECT_NEAR(e.linf, c, 1e-15);
}

TEST(Regularisation, EpsilonAddsMassOnCutCells) {
  auto const plain = circle(10);
  StepFixture const reg(LevelSetField(ShrinkingCircle{{0, 0}, 1.0, 1.0}),
                  CartesianGrid({-1.5, -1.5}, {3.5, 3.0}, 10, 10), 0.5, 0.5, 0,
                  VelocityMode::analytic_normal, 1e-3);
  auto const a = assemble(plain.domain, plain.space, plain.params, constant_profile(1.0), plain.weight);
  auto const b = assemble(reg.domain, reg.space, reg.params, constant_profile(1.0), reg.weight);
  EXPECT_EQ(a.regularization_block.nonzeros(), 0u);
  EXPECT_GT(b.regularization_block.nonzeros(), 0u);
  for (std::size_t k = 0; k < b.dof_count(); ++k) EXPECT_GE(b.regularization_block.at(k, k), 0.0);
}

}  // namespace
}  // namespace udg

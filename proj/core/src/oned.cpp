#include "udg/oned.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace udg::oned {

namespace {

void validate(OneDConfig const &cfg, int min_cells) {
  if (cfg.n < min_cells) {
    throw std::invalid_argument("oned: need at least " + std::to_string(min_cells) + " cells");
  }
  if (!(cfg.w > 0.0) || !(cfg.tau > 0.0) || !(cfg.gamma > 0.0)) {
    throw std::invalid_argument("oned: w, tau and gamma must be positive");
  }
  if (cfg.eps < 0.0) throw std::invalid_argument("oned: eps must be >= 0");
}

}  // namespace

LinearSystem aligned_system(OneDConfig const &cfg) {
  validate(cfg, 3);
  auto const n = static_cast<std::size_t>(cfg.n);
  double const a = cfg.w / cfg.gamma;
  std::vector<Triplet> t;
  t.push_back({0, 0, a});
  for (std::size_t j = 1; j + 1 < n; ++j) {
    t.push_back({j, j, a});
    t.push_back({j, j - 1, -a});
  }
  t.push_back({n - 1, n - 1, 1.0 / cfg.tau});
  t.push_back({n - 1, n - 2, -a});
  std::vector<double> rhs(n, 0.0);
  rhs[0] = cfg.u_old / cfg.tau;
  return {SparseMatrix::from_triplets(n, t), std::move(rhs)};
}

std::vector<double> solve_aligned(OneDConfig const &cfg) {
  auto const sys = aligned_system(cfg);
  return solve_direct(sys.matrix, sys.rhs);
}

std::vector<double> aligned_closed_form(OneDConfig const &cfg) {
  validate(cfg, 3);
  std::vector<double> u(static_cast<std::size_t>(cfg.n), cfg.gamma / (cfg.tau * cfg.w) * cfg.u_old);
  u.back() = cfg.u_old;
  return u;
}

LinearSystem extended_system(OneDConfig const &cfg) {
  validate(cfg, 5);
  if (!(cfg.eps > 0.0)) {
    throw std::invalid_argument("oned: the extended system needs eps > 0 (it is singular otherwise)");
  }
  auto const n = static_cast<std::size_t>(cfg.n);
  double const a = cfg.w / cfg.gamma;
  std::vector<Triplet> t;
  t.push_back({0, 0, a});
  for (std::size_t j = 1; j + 2 < n; ++j) {
    t.push_back({j, j, a});
    t.push_back({j, j - 1, -a});
  }
  t.push_back({n - 2, n - 2, 1.0 / cfg.tau + a});
  t.push_back({n - 2, n - 3, -a});
  t.push_back({n - 1, n - 2, -a});
  for (std::size_t j = 0; j < n; ++j) t.push_back({j, j, cfg.eps});
  std::vector<double> rhs(n, 0.0);
  rhs[1] = cfg.u_old / cfg.tau;
  return {SparseMatrix::from_triplets(n, t), std::move(rhs)};
}

std::vector<double> solve_extended(OneDConfig const &cfg) {
  auto const sys = extended_system(cfg);
  return solve_direct(sys.matrix, sys.rhs);
}

std::vector<double> extended_limit(OneDConfig const &cfg) {
  validate(cfg, 5);
  auto const n = static_cast<std::size_t>(cfg.n);
  std::vector<double> u(n, cfg.gamma / (cfg.tau * cfg.w) * cfg.u_old);
  u[0] = 0.0;
  u[n - 2] = cfg.gamma / (cfg.tau * cfg.w + cfg.gamma) * cfg.u_old;
  u[n - 1] = cfg.u_old == 0.0 ? 0.0
                              : std::copysign(std::numeric_limits<double>::infinity(), cfg.u_old);
  return u;
}

}  // namespace udg::oned

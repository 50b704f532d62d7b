#include "udg/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace udg {

DGSpace::DGSpace(DomainReconstruction const &domain, int degree)
    : domain_(&domain), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("DGSpace: degree must be >= 0");
  for (int total = 0; total <= degree; ++total) {
    for (int a = total; a >= 0; --a) exponents_.emplace_back(a, total - a);
  }
  per_cell_ = exponents_.size();
}

std::size_t DGSpace::first_dof(CellIndex cell) const {
  auto const k = domain_->active_index(cell);
  if (!k) {
    throw std::out_of_range(fmt::format("DGSpace: cell ({}, {}) is not active", cell.i, cell.j));
  }
  return *k * per_cell_;
}

std::vector<double> DGSpace::basis(CellIndex cell, Vec2 x) const {
  auto const &g = domain_->grid;
  Vec2 const c = g.cell_center(cell);
  double const sx = (x.x - c.x) / g.hx();
  double const sy = (x.y - c.y) / g.hy();
  std::vector<double> out(per_cell_);
  for (std::size_t k = 0; k < per_cell_; ++k) {
    auto const [a, b] = exponents_[k];
    out[k] = std::pow(sx, a) * std::pow(sy, b);
  }
  return out;
}

std::vector<Vec2> DGSpace::basis_gradients(CellIndex cell, Vec2 x) const {
  auto const &g = domain_->grid;
  Vec2 const c = g.cell_center(cell);
  double const sx = (x.x - c.x) / g.hx();
  double const sy = (x.y - c.y) / g.hy();
  std::vector<Vec2> out(per_cell_);
  for (std::size_t k = 0; k < per_cell_; ++k) {
    auto const [a, b] = exponents_[k];
    double const dx = a > 0 ? a * std::pow(sx, a - 1) * std::pow(sy, b) / g.hx() : 0.0;
    double const dy = b > 0 ? b * std::pow(sx, a) * std::pow(sy, b - 1) / g.hy() : 0.0;
    out[k] = {dx, dy};
  }
  return out;
}

double DGSpace::evaluate(std::span<double const> solution, CellIndex cell, Vec2 x) const {
  std::size_t const first = first_dof(cell);
  if (per_cell_ == 1) return solution[first];
  auto const phi = basis(cell, x);
  double u = 0.0;
  for (std::size_t k = 0; k < per_cell_; ++k) u += solution[first + k] * phi[k];
  return u;
}

OldSolutionField constant_profile(double value) {
  return [value](Vec2) { return value; };
}

OldSolutionField angular_binary_profile(double lo, double hi, double value, Vec2 center) {
  return [=](Vec2 x) {
    double angle = std::atan2(x.y - center.y, x.x - center.x);
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    return (angle > lo && angle < hi) ? value : 0.0;
  };
}

OldSolutionField traced_profile(DGSpace const &space, std::vector<double> solution) {
  return [&space, u = std::move(solution)](Vec2 x) {
    auto const &dom = space.domain();
    CellIndex const c = dom.grid.locate(x);
    if (dom.is_active(c)) return space.evaluate(u, c, x);
    for (auto const n : dom.grid.cell_neighbors(c)) {
      if (dom.is_active(n)) return space.evaluate(u, n, x);
    }
    return 0.0;
  };
}

SchemeParams make_params(DomainReconstruction const &domain, double tau, double eps_reg) {
  return {tau, domain.gamma(), eps_reg, 2};
}

AssembledSystem assemble(DomainReconstruction const &domain, DGSpace const &space,
                         SchemeParams const &params, OldSolutionField const &u_old,
                         VelocityWeight const &weight) {
  if (!(params.tau > 0.0)) throw std::invalid_argument("assemble: tau must be positive");
  if (!(params.gamma > 0.0)) throw std::invalid_argument("assemble: gamma must be positive");
  if (params.eps_reg < 0.0) throw std::invalid_argument("assemble: eps_reg must be >= 0");
  if (domain.active_cells.empty()) throw std::invalid_argument("assemble: empty domain");

  std::size_t const n = space.dof_count();
  std::size_t const nb = space.dofs_per_cell();
  double const scale = params.tau / params.gamma;
  AssembledSystem sys;
  sys.rhs.assign(n, 0.0);

  std::vector<Triplet> interface_entries;
  for (auto const &seg : domain.gamma_new) {
    std::size_t const first = space.first_dof(seg.owner);
    for (auto const &q : seg.quadrature) {
      auto const phi = space.basis(seg.owner, q.x);
      for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
          interface_entries.push_back({first + i, first + j, q.w * phi[i] * phi[j]});
        }
      }
    }
  }
  for (auto const &seg : domain.gamma_old) {
    std::size_t const first = space.first_dof(seg.owner);
    for (auto const &q : seg.quadrature) {
      auto const phi = space.basis(seg.owner, q.x);
      double const u = u_old(q.x);
      for (std::size_t i = 0; i < nb; ++i) sys.rhs[first + i] += q.w * u * phi[i];
    }
  }

  std::vector<Triplet> face_entries;
  for (auto const &face : domain.skeleton) {
    if (!domain.is_active(face.plus) || !domain.is_active(face.minus)) {
      throw std::logic_error(fmt::format(
          "assemble: skeleton face between ({}, {}) and ({}, {}) has an inactive neighbour",
          face.plus.i, face.plus.j, face.minus.i, face.minus.j));
    }
    Vec2 const normal = CartesianGrid::face_normal(face.face);
    std::vector<double> normal_weight(face.quadrature.size());
    double mean = 0.0;
    for (std::size_t q = 0; q < face.quadrature.size(); ++q) {
      Vec2 const x = face.quadrature[q].x;
      Vec2 const avg = 0.5 * (weight(face.plus, x) + weight(face.minus, x));
      normal_weight[q] = dot(avg, normal);
      mean += face.quadrature[q].w * normal_weight[q];
    }
    bool has_pos = false;
    bool has_neg = false;
    for (double v : normal_weight) {
      has_pos |= v > 0.0;
      has_neg |= v < 0.0;
    }
    if (has_pos && has_neg) ++sys.sign_varying_faces;

    CellIndex const up = upwind_side(mean) == Side::plus ? face.plus : face.minus;
    std::size_t const up_first = space.first_dof(up);
    std::size_t const plus_first = space.first_dof(face.plus);
    std::size_t const minus_first = space.first_dof(face.minus);
    for (std::size_t q = 0; q < face.quadrature.size(); ++q) {
      Vec2 const x = face.quadrature[q].x;
      double const c = scale * face.quadrature[q].w * normal_weight[q];
      auto const phi_up = space.basis(up, x);
      auto const phi_plus = space.basis(face.plus, x);
      auto const phi_minus = space.basis(face.minus, x);
      for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
          face_entries.push_back({plus_first + i, up_first + j, c * phi_plus[i] * phi_up[j]});
          face_entries.push_back({minus_first + i, up_first + j, -c * phi_minus[i] * phi_up[j]});
        }
      }
    }
  }

  std::vector<Triplet> volume_entries;
  std::vector<Triplet> reg_entries;
  for (std::size_t k = 0; k < domain.cut_cells.size(); ++k) {
    auto const &cc = domain.cut_cells[k];
    std::size_t const first = k * nb;
    bool const need_volume = space.degree() > 0;
    if (!need_volume && params.eps_reg == 0.0) continue;
    QuadratureRule const rule = polygon_quadrature(cc.triangles, params.volume_order);
    for (auto const &q : rule) {
      auto const phi = space.basis(cc.owner, q.x);
      if (params.eps_reg > 0.0) {
        for (std::size_t i = 0; i < nb; ++i) {
          for (std::size_t j = 0; j < nb; ++j) {
            reg_entries.push_back({first + i, first + j, params.eps_reg * q.w * phi[i] * phi[j]});
          }
        }
      }
      if (need_volume) {
        auto const grad = space.basis_gradients(cc.owner, q.x);
        Vec2 const wq = weight(cc.owner, q.x);
        for (std::size_t i = 0; i < nb; ++i) {
          double const wg = dot(wq, grad[i]);
          if (wg == 0.0) continue;
          for (std::size_t j = 0; j < nb; ++j) {
            volume_entries.push_back({first + i, first + j, -scale * q.w * phi[j] * wg});
          }
        }
      }
    }
  }

  sys.interface_block = SparseMatrix::from_triplets(n, interface_entries);
  sys.face_block = SparseMatrix::from_triplets(n, face_entries);
  sys.volume_block = SparseMatrix::from_triplets(n, volume_entries);
  sys.regularization_block = SparseMatrix::from_triplets(n, reg_entries);
  std::vector<Triplet> all;
  all.reserve(interface_entries.size() + face_entries.size() + volume_entries.size() +
              reg_entries.size());
  for (auto const *part : {&interface_entries, &face_entries, &volume_entries, &reg_entries}) {
    all.insert(all.end(), part->begin(), part->end());
  }
  sys.matrix = SparseMatrix::from_triplets(n, all);
  return sys;
}

StepResult solve_system(AssembledSystem const &system, double eps_reg,
                        StepSolverOptions const &options) {
  auto const n = system.dof_count();
  std::string const hint =
      eps_reg > 0.0 ? std::string()
                    : std::string("; the system may be underdetermined, retry with eps_reg > 0");
  bool const direct =
      options.method == StepSolverOptions::Method::direct ||
      (options.method == StepSolverOptions::Method::automatic && n <= options.direct_limit);
  StepResult out;
  if (direct) {
    try {
      out.solution = solve_direct(system.matrix, system.rhs);
    } catch (SingularMatrixError const &e) {
      throw SingularMatrixError(e.what() + hint);
    }
    out.report = {SolveMethod::direct, 1,
                  relative_residual(system.matrix, out.solution, system.rhs), eps_reg};
  } else {
    try {
      auto res = solve_iterative(system.matrix, system.rhs, options.iterative);
      out.solution = std::move(res.x);
      out.report = res.report;
    } catch (ConvergenceError const &e) {
      throw SingularMatrixError(e.what() + hint);
    }
    out.report.regularization = eps_reg;
  }
  if (!std::isfinite(out.report.relative_residual)) {
    throw SingularMatrixError("solve: non-finite residual" + hint);
  }
  return out;
}

StepResult solve_step(DomainReconstruction const &domain, DGSpace const &space,
                      SchemeParams const &params, OldSolutionField const &u_old,
                      VelocityWeight const &weight, StepSolverOptions const &options) {
  auto const system = assemble(domain, space, params, u_old, weight);
  return solve_system(system, params.eps_reg, options);
}

double interface_mass(DGSpace const &space, std::span<double const> solution) {
  double m = 0.0;
  for (auto const &seg : space.domain().gamma_new) {
    for (auto const &q : seg.quadrature) m += q.w * space.evaluate(solution, seg.owner, q.x);
  }
  return m;
}

double interface_mass(DomainReconstruction const &domain, OldSolutionField const &u_old) {
  double m = 0.0;
  for (auto const &seg : domain.gamma_old) {
    for (auto const &q : seg.quadrature) m += q.w * u_old(q.x);
  }
  return m;
}

ErrorNorms error_norms(DGSpace const &space, std::span<double const> solution,
                       std::function<double(Vec2)> const &exact) {
  ErrorNorms e;
  double l2sq = 0.0;
  for (auto const &seg : space.domain().gamma_new) {
    for (auto const &q : seg.quadrature) {
      double const d = std::abs(exact(q.x) - space.evaluate(solution, seg.owner, q.x));
      e.l1 += q.w * d;
      l2sq += q.w * d * d;
      e.linf = std::max(e.linf, d);
    }
  }
  e.l2 = std::sqrt(l2sq);
  return e;
}

}  // namespace udg

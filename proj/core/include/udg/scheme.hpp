#ifndef UDG_SCHEME_HPP_
#define UDG_SCHEME_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "udg/cutgeom.hpp"
#include "udg/levelset.hpp"
#include "udg/linalg.hpp"

namespace udg {

// Discontinuous P^k space over the active cells. On each background cell K
// the basis consists of the scaled monomials
//   ((x - x_c) / h_x)^a ((y - y_c) / h_y)^b,   a + b <= k,
// ordered by total degree and then by decreasing a.
class DGSpace {
 public:
  DGSpace(DomainReconstruction const &domain, int degree);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] std::size_t dofs_per_cell() const { return per_cell_; }
  [[nodiscard]] std::size_t dof_count() const { return per_cell_ * domain_->active_cells.size(); }
  [[nodiscard]] DomainReconstruction const &domain() const { return *domain_; }

  // First degree of freedom of an active cell; throws std::out_of_range for
  // inactive cells.
  [[nodiscard]] std::size_t first_dof(CellIndex cell) const;
  [[nodiscard]] std::vector<double> basis(CellIndex cell, Vec2 x) const;
  [[nodiscard]] std::vector<Vec2> basis_gradients(CellIndex cell, Vec2 x) const;
  // Σ_j u_j φ_j(x) using the basis of `cell`.
  [[nodiscard]] double evaluate(std::span<double const> solution, CellIndex cell, Vec2 x) const;

 private:
  DomainReconstruction const *domain_;
  int degree_;
  std::size_t per_cell_;
  std::vector<std::pair<int, int>> exponents_;
};

// u_h^old on Γ_h^old.
using OldSolutionField = std::function<double(Vec2)>;

OldSolutionField constant_profile(double value);
// value for lo < angle(x - center) < hi (angle in [0, 2π)), 0 otherwise.
OldSolutionField angular_binary_profile(double lo, double hi, double value, Vec2 center = {});
// Trace of an earlier DG solution; the space must outlive the field.
OldSolutionField traced_profile(DGSpace const &space, std::vector<double> solution);

struct SchemeParams {
  double tau{0.0};
  double gamma{0.0};
  double eps_reg{0.0};
  int volume_order{2};
};

// Scheme parameters for a reconstructed domain: γ is taken from it.
SchemeParams make_params(DomainReconstruction const &domain, double tau, double eps_reg = 0.0);

struct AssembledSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
  // The individual contributions; matrix is their sum.
  SparseMatrix interface_block;
  SparseMatrix face_block;
  SparseMatrix volume_block;
  SparseMatrix regularization_block;
  // Faces whose averaged normal weight changes sign along the face.
  std::size_t sign_varying_faces{0};

  [[nodiscard]] std::size_t dof_count() const { return rhs.size(); }
};

enum class Side { plus, minus };

// Upwind cell for an averaged normal weight {w_h |∇Φ_h|}·ν_E; ties go to K⁺.
constexpr Side upwind_side(double averaged_normal_weight) {
  return averaged_normal_weight >= 0.0 ? Side::plus : Side::minus;
}

AssembledSystem assemble(DomainReconstruction const &domain, DGSpace const &space,
                         SchemeParams const &params, OldSolutionField const &u_old,
                         VelocityWeight const &weight);

struct StepSolverOptions {
  enum class Method { automatic, direct, iterative };
  Method method{Method::automatic};
  // automatic picks the dense solve up to this many unknowns.
  std::size_t direct_limit{1500};
  IterativeOptions iterative{};
};

struct StepResult {
  std::vector<double> solution;
  SolveReport report;
};

// Solves an assembled system. A singular system or a stalled Krylov solve
// raises SingularMatrixError with a hint to use eps_reg > 0.
StepResult solve_system(AssembledSystem const &system, double eps_reg,
                        StepSolverOptions const &options = {});

StepResult solve_step(DomainReconstruction const &domain, DGSpace const &space,
                      SchemeParams const &params, OldSolutionField const &u_old,
                      VelocityWeight const &weight, StepSolverOptions const &options = {});

// ∫_{Γ_h} u_h dσ.
double interface_mass(DGSpace const &space, std::span<double const> solution);
// ∫_{Γ_h^old} u_old dσ.
double interface_mass(DomainReconstruction const &domain, OldSolutionField const &u_old);

struct ErrorNorms {
  double l1{0.0};
  double l2{0.0};
  double linf{0.0};
};

// Norms of u - u_h on Γ_h, evaluated with the segment quadrature.
ErrorNorms error_norms(DGSpace const &space, std::span<double const> solution,
                       std::function<double(Vec2)> const &exact);

}  // namespace udg

#endif  // UDG_SCHEME_HPP_

#ifndef UDG_ONED_HPP_
#define UDG_ONED_HPP_

#include <vector>

#include "udg/linalg.hpp"

namespace udg::oned {

// Piecewise-constant scheme for a point moving with speed w along
// [x_0, x_N], discretised by N cells. Unknowns u_1..u_N are stored at
// indices 0..N-1.
struct OneDConfig {
  int n{10};
  double w{1.0};
  double tau{1.0};
  double gamma{1.0};
  double u_old{1.0};
  double eps{0.0};  // extended system only
};

struct LinearSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
};

// Γ_h^old = x_0 and Γ_h = x_N:
//   w/γ u_1 = u_old/τ,   w/γ (u_j - u_{j-1}) = 0,   u_N/τ - w/γ u_{N-1} = 0.
// Requires n >= 3 and w, τ, γ > 0.
LinearSystem aligned_system(OneDConfig const &cfg);
std::vector<double> solve_aligned(OneDConfig const &cfg);
// u_j = γ/(τw) u_old for j < N and u_N = u_old.
std::vector<double> aligned_closed_form(OneDConfig const &cfg);

// Domain extended by 3h/2 on both sides, so Γ_h^old lies inside cell 2 and
// Γ_h inside cell N-1, regularised with eps u_j on every row:
//   w/γ u_1                            = 0
//   w/γ (u_2 - u_1)                    = u_old/τ
//   w/γ (u_j - u_{j-1})                = 0          j = 3..N-2
//   u_{N-1}/τ + w/γ (u_{N-1} - u_{N-2}) = 0
//   -w/γ u_{N-1}                        = 0
// Requires n >= 5 and eps > 0.
LinearSystem extended_system(OneDConfig const &cfg);
std::vector<double> solve_extended(OneDConfig const &cfg);
// Limit eps -> 0: u_1 = 0, u_j = γ/(τw) u_old for 2 <= j <= N-2,
// u_{N-1} = γ/(τw + γ) u_old and u_N = +inf (sign of u_old).
std::vector<double> extended_limit(OneDConfig const &cfg);

}  // namespace udg::oned

#endif  // UDG_ONED_HPP_

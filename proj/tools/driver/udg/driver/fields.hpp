#ifndef UDG_DRIVER_FIELDS_HPP_
#define UDG_DRIVER_FIELDS_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>

#include "udg/scheme.hpp"

namespace udg::driver {

// Text dump of a solved step:
//   # udg-field v1
//   cell i j k nverts x0 y0 ... u0 u1 ...
//   iface new|old x0 y0 x1 y1 u
// Cell vertices are the triangle soup of K ∩ D_h (three per triangle).
// Interface values are u_h at the midpoint of Γ_h pieces and u_old at the
// midpoint of Γ_h^old pieces.
void export_fields(DGSpace const &space, std::span<double const> solution,
                   OldSolutionField const &u_old, std::ostream &out);
void export_fields(DGSpace const &space, std::span<double const> solution,
                   OldSolutionField const &u_old, std::filesystem::path const &path);

}  // namespace udg::driver

#endif  // UDG_DRIVER_FIELDS_HPP_

#include "udg/driver/fields.hpp"

#include <fmt/ostream.h>

#include <fstream>
#include <stdexcept>

namespace udg::driver {

void export_fields(DGSpace const &space, std::span<double const> solution,
                   OldSolutionField const &u_old, std::ostream &out) {
  auto const &domain = space.domain();
  if (solution.size() != space.dof_count()) {
    throw std::invalid_argument("export_fields: solution size does not match the space");
  }
  fmt::print(out, "# udg-field v1\n");
  for (std::size_t c = 0; c < domain.cut_cells.size(); ++c) {
    auto const &cc = domain.cut_cells[c];
    fmt::print(out, "cell {} {} {} {}", cc.owner.i, cc.owner.j, space.degree(),
               3 * cc.triangles.size());
    for (auto const &t : cc.triangles) {
      for (auto const &v : t.v) fmt::print(out, " {:.17g} {:.17g}", v.x, v.y);
    }
    std::size_t const first = space.first_dof(cc.owner);
    for (std::size_t d = 0; d < space.dofs_per_cell(); ++d) {
      fmt::print(out, " {:.17g}", solution[first + d]);
    }
    fmt::print(out, "\n");
  }
  auto segment = [&](InterfaceSegment const &s, char const *tag, double u) {
    fmt::print(out, "iface {} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g}\n", tag, s.endpoints[0].x,
               s.endpoints[0].y, s.endpoints[1].x, s.endpoints[1].y, u);
  };
  for (auto const &s : domain.gamma_new) {
    segment(s, "new", space.evaluate(solution, s.owner, lerp(s.endpoints[0], s.endpoints[1], 0.5)));
  }
  for (auto const &s : domain.gamma_old) {
    segment(s, "old", u_old(lerp(s.endpoints[0], s.endpoints[1], 0.5)));
  }
}

void export_fields(DGSpace const &space, std::span<double const> solution,
                   OldSolutionField const &u_old, std::filesystem::path const &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  export_fields(space, solution, u_old, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace udg::driver

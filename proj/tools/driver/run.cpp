#include "udg/driver/run.hpp"

#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "udg/driver/fields.hpp"

namespace udg::driver {

namespace {

OldSolutionField make_profile(UOldProfile const &p, Vec2 center) {
  if (p.kind == UOldProfile::Kind::constant) return constant_profile(p.value);
  return angular_binary_profile(p.lo, p.hi, p.value, center);
}

template <class F>
auto stage(char const *name, F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (StageError const &) {
    throw;
  } catch (std::exception const &e) {
    throw StageError(name, e.what());
  }
}

// The strip embedding has a single row of cells; its mesh size is hx.
double mesh_size(RunConfig const &cfg, CartesianGrid const &grid) {
  return cfg.kind == CaseKind::oned_aligned ? grid.hx() : grid.h();
}

}  // namespace

CaseSetup make_case(RunConfig const &cfg, int n) {
  double const t_old = cfg.t_star - cfg.tau;
  switch (cfg.kind) {
    case CaseKind::shrinking_circle: {
      ShrinkingCircle const c{{0.0, 0.0}, 1.0, 1.0};
      double const r_old = c.r0 - c.speed * t_old;
      double const r_new = c.r0 - c.speed * cfg.t_star;
      auto u_old = make_profile(cfg.u_old, c.center);
      // Normal motion keeps the angle, so the profile is only rescaled by
      // the length ratio.
      auto exact = [u_old, ratio = r_old / r_new](Vec2 x) { return ratio * u_old(x); };
      return {LevelSetField(c), CartesianGrid({-1.5, -1.5}, {3.5, 3.0}, n, n), u_old, exact};
    }
    case CaseKind::translating_circle: {
      TranslatingCircle const c{{-0.25, 0.0}, 0.75, {0.5, 0.0}};
      Vec2 const center_old = c.center0 + t_old * c.velocity;
      return {LevelSetField(c), CartesianGrid({-1.5, -1.5}, {3.5, 3.0}, n, n),
              make_profile(cfg.u_old, center_old), {}};
    }
    case CaseKind::oned_aligned: {
      // Strip whose left and right edges are the old and new positions of
      // the moving point, so both interfaces lie on grid lines.
      Affine1d const a{cfg.speed};
      double const x0 = a.speed * t_old;
      double const x1 = a.speed * cfg.t_star;
      auto u_old = make_profile(cfg.u_old, {});
      return {LevelSetField(a), CartesianGrid({x0, 0.0}, {x1 - x0, 1.0}, n, 1), u_old, u_old};
    }
    case CaseKind::oned_extended:
      break;
  }
  throw ConfigError("case " + to_string(cfg.kind) +
                    " has no two-dimensional pipeline (use the oned-extended subcommand)");
}

std::unique_ptr<Pipeline> run_pipeline(RunConfig const &cfg, int n) {
  auto p = std::make_unique<Pipeline>();
  p->setup.emplace(make_case(cfg, n));
  auto const &setup = *p->setup;
  double const t_old = cfg.t_star - cfg.tau;

  stage("levelset", [&] { p->levels.emplace(interpolate(setup.field, setup.grid, cfg.t_star, t_old)); });
  stage("cutgeom", [&] { p->domain.emplace(build_domain(*p->levels)); });
  if (cfg.dump_geometry) {
    stage("dump_geometry", [&] { write_geometry(*p->domain, *cfg.dump_geometry); });
  }
  stage("scheme", [&] {
    p->space.emplace(*p->domain, cfg.k);
    p->params = make_params(*p->domain, cfg.tau, cfg.eps_reg);
    VelocityWeight const weight(*p->levels, setup.field, cfg.velocity, cfg.tau);
    p->system = assemble(*p->domain, *p->space, p->params, setup.u_old, weight);
  });
  if (cfg.dump_matrix) {
    stage("dump_matrix", [&] { write_coordinate(p->system.matrix, *cfg.dump_matrix); });
  }
  stage("linalg", [&] { p->result = solve_system(p->system, cfg.eps_reg); });
  stage("postprocess", [&] {
    p->mass_old = interface_mass(*p->domain, setup.u_old);
    p->mass_new = interface_mass(*p->space, p->result.solution);
    if (setup.exact) p->errors = error_norms(*p->space, p->result.solution, setup.exact);
  });
  if (cfg.dump_fields) {
    stage("dump_fields", [&] {
      export_fields(*p->space, p->result.solution, setup.u_old, *cfg.dump_fields);
    });
  }
  return p;
}

RunSummary summarize(RunConfig const &cfg, Pipeline const &p) {
  RunSummary s;
  s.case_name = to_string(cfg.kind);
  s.n = p.domain->grid.nx();
  s.h = mesh_size(cfg, p.domain->grid);
  s.dofs = p.space->dof_count();
  s.active_cells = p.domain->active_cells.size();
  s.gamma = p.params.gamma;
  s.mass_old = p.mass_old;
  s.mass_new = p.mass_new;
  s.errors = p.errors;
  s.report = p.result.report;
  return s;
}

RunSummary run_single(RunConfig const &cfg, std::ostream &out) {
  auto const p = run_pipeline(cfg, cfg.ncells);
  auto s = summarize(cfg, *p);
  print_summary(s, out);
  return s;
}

void print_summary(RunSummary const &s, std::ostream &out) {
  fmt::print(out, "case = {}\n", s.case_name);
  fmt::print(out, "ncells = {}\n", s.n);
  fmt::print(out, "h = {:.17g}\n", s.h);
  fmt::print(out, "active_cells = {}\n", s.active_cells);
  fmt::print(out, "dofs = {}\n", s.dofs);
  fmt::print(out, "gamma = {:.17g}\n", s.gamma);
  fmt::print(out, "mass_old = {:.17g}\n", s.mass_old);
  fmt::print(out, "mass_new = {:.17g}\n", s.mass_new);
  double const rel = s.mass_old != 0.0 ? std::abs(s.mass_new - s.mass_old) / std::abs(s.mass_old)
                                       : std::abs(s.mass_new);
  fmt::print(out, "mass_rel_diff = {:.3e}\n", rel);
  if (s.errors) {
    fmt::print(out, "l1 = {:.17g}\nl2 = {:.17g}\nlinf = {:.17g}\n", s.errors->l1, s.errors->l2,
               s.errors->linf);
  }
  fmt::print(out, "solver = {}\n", s.report.method == SolveMethod::direct ? "direct" : "iterative");
  fmt::print(out, "iterations = {}\n", s.report.iterations);
  fmt::print(out, "relative_residual = {:.3e}\n", s.report.relative_residual);
  fmt::print(out, "regularization = {:.3e}\n", s.report.regularization);
}

std::optional<double> eoc(double e_prev, double e_cur, double h_prev, double h_cur) {
  if (!(e_prev > 0.0) || !(e_cur > 0.0) || h_prev == h_cur) return std::nullopt;
  return std::log(e_prev / e_cur) / std::log(h_prev / h_cur);
}

std::vector<ConvergenceRecord> run_convergence(RunConfig const &cfg,
                                               std::vector<int> const &resolutions,
                                               std::ostream *csv) {
  if (resolutions.size() < 2) throw ConfigError("a convergence study needs at least 2 resolutions");
  for (std::size_t i = 1; i < resolutions.size(); ++i) {
    if (resolutions[i] <= resolutions[i - 1]) throw ConfigError("resolutions must be strictly increasing");
  }
  RunConfig base = cfg;
  base.dump_geometry.reset();
  base.dump_fields.reset();
  base.dump_matrix.reset();
  validate(base);
  if (!make_case(base, resolutions.front()).exact) {
    throw ConfigError("case " + to_string(cfg.kind) + " has no analytic solution to compare with");
  }
  if (csv) {
    fmt::print(*csv, "{}\n", kCsvHeader);
    csv->flush();
  }
  std::vector<ConvergenceRecord> records;
  for (int n : resolutions) {
    std::unique_ptr<Pipeline> p;
    try {
      p = run_pipeline(base, n);
    } catch (std::exception const &e) {
      throw StageError(fmt::format("resolution {}", n), e.what());
    }
    ConvergenceRecord r;
    r.ncells = static_cast<long long>(p->domain->grid.cell_count());
    r.h = mesh_size(base, p->domain->grid);
    r.dofs = p->space->dof_count();
    r.mass = p->mass_new;
    r.l1 = p->errors->l1;
    r.l2 = p->errors->l2;
    r.linf = p->errors->linf;
    if (!records.empty()) {
      auto const &q = records.back();
      r.eoc1 = eoc(q.l1, r.l1, q.h, r.h);
      r.eoc2 = eoc(q.l2, r.l2, q.h, r.h);
      r.eocinf = eoc(q.linf, r.linf, q.h, r.h);
    }
    records.push_back(r);
    if (csv) {
      fmt::print(*csv, "{}\n", format_csv_row(r));
      csv->flush();
    }
  }
  return records;
}

std::string format_csv_row(ConvergenceRecord const &r) {
  auto opt = [](std::optional<double> v) { return v ? fmt::format("{:.17g}", *v) : std::string(); };
  return fmt::format("{},{:.17g},{},{:.17g},{:.17g},{},{:.17g},{},{:.17g},{}", r.ncells, r.h, r.dofs,
                     r.mass, r.l1, opt(r.eoc1), r.l2, opt(r.eoc2), r.linf, opt(r.eocinf));
}

void write_csv(std::vector<ConvergenceRecord> const &records, std::ostream &out) {
  fmt::print(out, "{}\n", kCsvHeader);
  for (auto const &r : records) fmt::print(out, "{}\n", format_csv_row(r));
}

std::vector<ConvergenceRecord> read_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("read_csv: missing or unexpected header");
  }
  std::vector<ConvergenceRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() == 9 && line.back() == ',') f.emplace_back();
    if (f.size() != 10) throw std::runtime_error("read_csv: expected 10 fields in '" + line + "'");
    auto opt = [](std::string const &s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return std::stod(s);
    };
    ConvergenceRecord r;
    r.ncells = std::stoll(f[0]);
    r.h = std::stod(f[1]);
    r.dofs = std::stoull(f[2]);
    r.mass = std::stod(f[3]);
    r.l1 = std::stod(f[4]);
    r.eoc1 = opt(f[5]);
    r.l2 = std::stod(f[6]);
    r.eoc2 = opt(f[7]);
    r.linf = std::stod(f[8]);
    r.eocinf = opt(f[9]);
    records.push_back(r);
  }
  return records;
}

}  // namespace udg::driver

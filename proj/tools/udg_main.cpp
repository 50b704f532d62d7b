#include <CLI11.hpp>
#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "udg/driver/config.hpp"
#include "udg/driver/run.hpp"
#include "udg/oned.hpp"

namespace {

using udg::driver::KeyValues;
using udg::driver::RunConfig;

struct Flags {
  std::optional<std::string> config_file;
  std::map<std::string, std::string> values;
  bool deep{false};
};

void add_common(CLI::App &cmd, Flags &flags) {
  cmd.add_option("--config", flags.config_file, "configuration file with key = value lines");
  static char const *const keys[] = {"case",          "ncells",       "t-star",       "tau",
                                     "k",             "velocity",     "eps-reg",      "u-old",
                                     "speed",         "gamma",        "resolutions",  "out",
                                     "dump-geometry", "dump-fields",  "dump-matrix"};
  for (char const *key : keys) {
    std::string name = key;
    std::string config_key = name;
    for (char &c : config_key) {
      if (c == '-') c = '_';
    }
    cmd.add_option_function<std::string>(
        "--" + name, [&flags, config_key](std::string const &v) { flags.values[config_key] = v; });
  }
  cmd.add_flag("--deep", flags.deep, "append the 640 x 640 resolution to the study");
}

RunConfig resolve(Flags const &flags) {
  KeyValues kv(flags.values.begin(), flags.values.end());
  if (flags.deep) kv.emplace_back("deep", "true");
  std::optional<std::filesystem::path> file;
  if (flags.config_file) file = *flags.config_file;
  return udg::driver::parse_config(kv, file);
}

udg::oned::OneDConfig oned_config(RunConfig const &cfg) {
  udg::oned::OneDConfig c;
  c.n = cfg.ncells;
  c.w = cfg.speed;
  c.tau = cfg.tau;
  c.gamma = cfg.gamma.value_or(cfg.tau * cfg.speed);
  c.u_old = cfg.u_old.value;
  c.eps = cfg.eps_reg;
  return c;
}

void print_table(udg::oned::OneDConfig const &c, std::vector<double> const &u,
                 std::vector<double> const &reference, char const *name) {
  fmt::print("# {} N={} w={:.17g} tau={:.17g} gamma={:.17g} u_old={:.17g} eps={:.17g}\n", name, c.n,
             c.w, c.tau, c.gamma, c.u_old, c.eps);
  fmt::print("# u_h closed_form\n");
  for (std::size_t j = 0; j < u.size(); ++j) fmt::print("{:.17g} {:.17g}\n", u[j], reference[j]);
}

int run_converge(RunConfig const &cfg) {
  auto const resolutions = udg::driver::effective_resolutions(cfg);
  if (!cfg.out) {
    udg::driver::run_convergence(cfg, resolutions, &std::cout);
    return 0;
  }
  std::ofstream file(*cfg.out);
  if (!file) throw std::runtime_error("cannot open '" + cfg.out->string() + "' for writing");
  auto const records = udg::driver::run_convergence(cfg, resolutions, &file);
  udg::driver::write_csv(records, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Unfitted DG solver for advection on an evolving curve"};
  app.require_subcommand(1);

  Flags solve_flags, converge_flags, aligned_flags, extended_flags;
  auto *solve = app.add_subcommand("solve", "single time step with summary output");
  auto *converge = app.add_subcommand("converge", "h-refinement study written as CSV");
  auto *aligned = app.add_subcommand("oned-aligned", "1D grid-aligned system vs closed form");
  auto *extended = app.add_subcommand("oned-extended", "1D extended-domain system vs its eps -> 0 limit");
  add_common(*solve, solve_flags);
  add_common(*converge, converge_flags);
  add_common(*aligned, aligned_flags);
  add_common(*extended, extended_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      auto const cfg = resolve(solve_flags);
      udg::driver::run_single(cfg, std::cout);
    } else if (converge->parsed()) {
      return run_converge(resolve(converge_flags));
    } else if (aligned->parsed()) {
      auto const c = oned_config(resolve(aligned_flags));
      print_table(c, udg::oned::solve_aligned(c), udg::oned::aligned_closed_form(c), "oned-aligned");
    } else if (extended->parsed()) {
      auto const c = oned_config(resolve(extended_flags));
      print_table(c, udg::oned::solve_extended(c), udg::oned::extended_limit(c), "oned-extended");
    }
  } catch (std::exception const &e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}

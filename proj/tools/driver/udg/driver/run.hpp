#ifndef UDG_DRIVER_RUN_HPP_
#define UDG_DRIVER_RUN_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "udg/cutgeom.hpp"
#include "udg/driver/config.hpp"
#include "udg/grid.hpp"
#include "udg/levelset.hpp"
#include "udg/scheme.hpp"

namespace udg::driver {

// A failure inside one stage of the pipeline; what() is "<stage>: <cause>".
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, std::string const &cause)
      : std::runtime_error(stage + ": " + cause), stage_(std::move(stage)) {}
  [[nodiscard]] std::string const &stage() const { return stage_; }

 private:
  std::string stage_;
};

struct CaseSetup {
  LevelSetField field;
  CartesianGrid grid;
  OldSolutionField u_old;
  // Analytic solution on Γ(t*) where one is known.
  std::function<double(Vec2)> exact;
};

// Background grid with n cells per axis (n x 1 for the strip embedding of
// the one-dimensional aligned case).
CaseSetup make_case(RunConfig const &cfg, int n);

// Every intermediate of one time step. Not copyable: later stages keep
// pointers into earlier ones.
struct Pipeline {
  Pipeline() = default;
  Pipeline(Pipeline const &) = delete;
  Pipeline &operator=(Pipeline const &) = delete;

  std::optional<CaseSetup> setup;
  std::optional<DiscreteLevelSet> levels;
  std::optional<DomainReconstruction> domain;
  std::optional<DGSpace> space;
  SchemeParams params;
  AssembledSystem system;
  StepResult result;
  double mass_old{0.0};
  double mass_new{0.0};
  std::optional<ErrorNorms> errors;
};

std::unique_ptr<Pipeline> run_pipeline(RunConfig const &cfg, int n);

struct RunSummary {
  std::string case_name;
  int n{0};
  double h{0.0};
  std::size_t dofs{0};
  std::size_t active_cells{0};
  double gamma{0.0};
  double mass_old{0.0};
  double mass_new{0.0};
  std::optional<ErrorNorms> errors;
  SolveReport report;
};

RunSummary summarize(RunConfig const &cfg, Pipeline const &p);

// Runs one step at cfg.ncells, writes the requested dumps and prints the
// summary as `key = value` lines.
RunSummary run_single(RunConfig const &cfg, std::ostream &out);
void print_summary(RunSummary const &s, std::ostream &out);

struct ConvergenceRecord {
  long long ncells{0};
  double h{0.0};
  std::size_t dofs{0};
  double mass{0.0};
  double l1{0.0};
  std::optional<double> eoc1;
  double l2{0.0};
  std::optional<double> eoc2;
  double linf{0.0};
  std::optional<double> eocinf;

  bool operator==(ConvergenceRecord const &) const = default;
};

inline constexpr char const *kCsvHeader = "ncells,h,dofs,mass,l1,eoc1,l2,eoc2,linf,eocinf";

// log(e_prev / e_cur) / log(h_prev / h_cur); empty unless both errors are
// positive.
std::optional<double> eoc(double e_prev, double e_cur, double h_prev, double h_cur);

// Runs the resolutions in order. When csv is given, the header and each
// row are written and flushed as soon as they are known, so a failure
// leaves the completed rows behind before the error propagates.
std::vector<ConvergenceRecord> run_convergence(RunConfig const &cfg,
                                               std::vector<int> const &resolutions,
                                               std::ostream *csv = nullptr);

std::string format_csv_row(ConvergenceRecord const &r);
void write_csv(std::vector<ConvergenceRecord> const &records, std::ostream &out);
std::vector<ConvergenceRecord> read_csv(std::istream &in);

}  // namespace udg::driver

#endif  // UDG_DRIVER_RUN_HPP_

#ifndef UDG_DRIVER_CONFIG_HPP_
#define UDG_DRIVER_CONFIG_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "udg/levelset.hpp"

namespace udg::driver {

enum class CaseKind { shrinking_circle, translating_circle, oned_aligned, oned_extended };

struct UOldProfile {
  enum class Kind { constant, angular_binary };
  Kind kind{Kind::constant};
  double lo{0.0};
  double hi{0.0};
  double value{1.0};
};

struct RunConfig {
  CaseKind kind{CaseKind::shrinking_circle};
  int ncells{40};  // per axis
  double t_star{0.5};
  double tau{0.5};
  int k{0};
  VelocityMode velocity{VelocityMode::analytic_normal};
  double eps_reg{0.0};
  UOldProfile u_old{};
  double speed{1.0};              // oned cases
  std::optional<double> gamma{};  // pure 1D systems; defaults to tau * speed
  std::vector<int> resolutions{10, 20, 40, 80, 160, 320};
  bool deep{false};  // append 640 to the resolutions
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> dump_geometry;
  std::optional<std::filesystem::path> dump_fields;
  std::optional<std::filesystem::path> dump_matrix;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Applies `key = value` lines from `file` (if given) and then `overrides`
// to the defaults, and validates the result. Keys use underscores
// (t_star, eps_reg, dump_geometry, ...); '#' starts a comment. Unknown keys,
// malformed values and inconsistent combinations raise ConfigError.
RunConfig parse_config(KeyValues const &overrides,
                       std::optional<std::filesystem::path> const &file = std::nullopt);

// Single key assignment without validation.
void set_key(RunConfig &cfg, std::string const &key, std::string const &value);
void validate(RunConfig const &cfg);

// `const:<v>` or `binary:<lo>:<hi>:<v>`.
UOldProfile parse_profile(std::string const &text);
std::string to_string(CaseKind kind);
std::vector<int> effective_resolutions(RunConfig const &cfg);

}  // namespace udg::driver

#endif  // UDG_DRIVER_CONFIG_HPP_

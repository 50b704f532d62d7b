#include "udg/driver/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace udg::driver {

namespace {

std::string trim(std::string const &s) {
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string const &key, std::string const &text) {
  double v = 0.0;
  auto const *end = text.data() + text.size();
  auto const [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("malformed number for '" + key + "': '" + text + "'");
  }
  return v;
}

int to_int(std::string const &key, std::string const &text) {
  int v = 0;
  auto const *end = text.data() + text.size();
  auto const [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("malformed integer for '" + key + "': '" + text + "'");
  }
  return v;
}

bool to_bool(std::string const &key, std::string const &text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("malformed boolean for '" + key + "': '" + text + "'");
}

std::vector<std::string> split(std::string const &text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

}  // namespace

std::string to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::shrinking_circle:
      return "shrinking_circle";
    case CaseKind::translating_circle:
      return "translating_circle";
    case CaseKind::oned_aligned:
      return "oned_aligned";
    case CaseKind::oned_extended:
      return "oned_extended";
  }
  return "?";
}

UOldProfile parse_profile(std::string const &text) {
  auto const parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "const") {
    return {UOldProfile::Kind::constant, 0.0, 0.0, to_double("u_old", parts[1])};
  }
  if (parts.size() == 4 && parts[0] == "binary") {
    UOldProfile p{UOldProfile::Kind::angular_binary, to_double("u_old", parts[1]),
                  to_double("u_old", parts[2]), to_double("u_old", parts[3])};
    if (!(p.lo < p.hi)) throw ConfigError("u_old: binary profile needs lo < hi");
    return p;
  }
  throw ConfigError("malformed u_old profile '" + text +
                    "' (expected const:<v> or binary:<lo>:<hi>:<v>)");
}

void set_key(RunConfig &cfg, std::string const &key, std::string const &value) {
  if (key == "case") {
    static std::vector<std::pair<std::string, CaseKind>> const names{
        {"shrinking_circle", CaseKind::shrinking_circle},
        {"translating_circle", CaseKind::translating_circle},
        {"oned_aligned", CaseKind::oned_aligned},
        {"oned_extended", CaseKind::oned_extended}};
    auto const it = std::find_if(names.begin(), names.end(),
                                 [&](auto const &p) { return p.first == value; });
    if (it == names.end()) throw ConfigError("unknown case '" + value + "'");
    cfg.kind = it->second;
  } else if (key == "ncells") {
    cfg.ncells = to_int(key, value);
  } else if (key == "t_star") {
    cfg.t_star = to_double(key, value);
  } else if (key == "tau") {
    cfg.tau = to_double(key, value);
  } else if (key == "k") {
    cfg.k = to_int(key, value);
  } else if (key == "velocity") {
    if (value == "analytic") {
      cfg.velocity = VelocityMode::analytic_normal;
    } else if (value == "lsdiff") {
      cfg.velocity = VelocityMode::levelset_backward_difference;
    } else {
      throw ConfigError("unknown velocity mode '" + value + "' (expected analytic or lsdiff)");
    }
  } else if (key == "eps_reg") {
    cfg.eps_reg = to_double(key, value);
  } else if (key == "u_old") {
    cfg.u_old = parse_profile(value);
  } else if (key == "speed") {
    cfg.speed = to_double(key, value);
  } else if (key == "gamma") {
    cfg.gamma = to_double(key, value);
  } else if (key == "resolutions") {
    cfg.resolutions.clear();
    for (auto const &p : split(value, ',')) cfg.resolutions.push_back(to_int(key, p));
  } else if (key == "deep") {
    cfg.deep = to_bool(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "dump_geometry") {
    cfg.dump_geometry = value;
  } else if (key == "dump_fields") {
    cfg.dump_fields = value;
  } else if (key == "dump_matrix") {
    cfg.dump_matrix = value;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void validate(RunConfig const &cfg) {
  if (!(cfg.tau > 0.0)) throw ConfigError("tau must be positive");
  if (cfg.t_star - cfg.tau < 0.0) throw ConfigError("t_star - tau must be >= 0");
  if (cfg.kind == CaseKind::shrinking_circle && !(cfg.t_star < 1.0)) {
    throw ConfigError("shrinking_circle needs t_star < 1 (the circle vanishes at t = 1)");
  }
  if (cfg.ncells < 1) throw ConfigError("ncells must be >= 1");
  if (cfg.k < 0) throw ConfigError("k must be >= 0");
  if (cfg.eps_reg < 0.0) throw ConfigError("eps_reg must be >= 0");
  if (!(cfg.speed > 0.0)) throw ConfigError("speed must be positive");
  if (cfg.gamma && !(*cfg.gamma > 0.0)) throw ConfigError("gamma must be positive");
  bool const oned = cfg.kind == CaseKind::oned_aligned || cfg.kind == CaseKind::oned_extended;
  if (oned && cfg.u_old.kind != UOldProfile::Kind::constant) {
    throw ConfigError("one-dimensional cases need a constant u_old");
  }
  for (int r : cfg.resolutions) {
    if (r < 1) throw ConfigError("resolutions must be >= 1");
  }
  if (!std::is_sorted(cfg.resolutions.begin(), cfg.resolutions.end()) ||
      std::adjacent_find(cfg.resolutions.begin(), cfg.resolutions.end()) != cfg.resolutions.end()) {
    throw ConfigError("resolutions must be strictly increasing");
  }
}

RunConfig parse_config(KeyValues const &overrides,
                       std::optional<std::filesystem::path> const &file) {
  RunConfig cfg;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot open config file '" + file->string() + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto const hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      auto const eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(file->string() + ":" + std::to_string(lineno) + ": expected key = value");
      }
      try {
        set_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
      } catch (ConfigError const &e) {
        throw ConfigError(file->string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  for (auto const &[key, value] : overrides) set_key(cfg, key, value);
  validate(cfg);
  return cfg;
}

std::vector<int> effective_resolutions(RunConfig const &cfg) {
  auto r = cfg.resolutions;
  if (cfg.deep && (r.empty() || r.back() < 640)) r.push_back(640);
  return r;
}

}  // namespace udg::driver

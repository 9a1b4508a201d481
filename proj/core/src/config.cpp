#include "bogospec/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bogospec {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg, 2); }

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') bad("config: " + key + ": not a number: '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') bad("config: " + key + ": not an integer: '" + v + "'");
  return static_cast<int>(x);
}

std::vector<int> to_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_int(key, item));
  }
  if (out.empty()) bad("config: " + key + ": empty list");
  return out;
}

}  // namespace

int RunConfig::resolved_m_modes() const {
  if (spectrum_m_modes > 0) return spectrum_m_modes;
  return model_kind == "torus" ? 2 * modes_K + 1 : 32;
}

GridSpec RunConfig::make_grid() const {
  return model_kind == "torus" ? make_torus_grid(grid_n) : make_box_grid(grid_L, grid_n);
}

ModeBasis RunConfig::make_modes() const { return make_mode_basis(modes_d, modes_K); }

Interaction RunConfig::make_interaction() const {
  if (interaction_kind == "zero") return make_zero_interaction();
  if (interaction_kind == "gaussian") return make_gaussian_interaction(interaction_g, interaction_s);
  if (interaction_kind == "cosine") return make_cosine_interaction(interaction_g);
  throw ConfigError("config: interaction.kind: unknown kind '" + interaction_kind + "'", 2);
}

ExternalPotential RunConfig::make_potential() const {
  if (potential_kind == "none") return {PotentialKind::none, 0.0};
  if (potential_kind == "harmonic") return {PotentialKind::harmonic, potential_omega};
  if (potential_kind == "quartic") return {PotentialKind::quartic, potential_kappa};
  throw ConfigError("config: potential.kind: unknown kind '" + potential_kind + "'", 2);
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool potential_set = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string::npos) bad("config: line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) bad("config: line " + std::to_string(lineno) + ": empty key or value");

    if (key == "model.kind") {
      cfg.model_kind = val;
    } else if (key == "grid.L") {
      cfg.grid_L = to_double(key, val);
    } else if (key == "grid.n") {
      cfg.grid_n = to_int(key, val);
    } else if (key == "modes.d") {
      cfg.modes_d = to_int(key, val);
    } else if (key == "modes.K") {
      cfg.modes_K = to_int(key, val);
    } else if (key == "potential.kind") {
      cfg.potential_kind = val;
      potential_set = true;
    } else if (key == "potential.omega") {
      cfg.potential_omega = to_double(key, val);
    } else if (key == "potential.kappa") {
      cfg.potential_kappa = to_double(key, val);
    } else if (key == "interaction.kind") {
      cfg.interaction_kind = val;
    } else if (key == "interaction.g") {
      cfg.interaction_g = to_double(key, val);
    } else if (key == "interaction.s") {
      cfg.interaction_s = to_double(key, val);
    } else if (key == "scf.eta") {
      cfg.scf.mixing = to_double(key, val);
    } else if (key == "scf.tol") {
      cfg.scf.tol = to_double(key, val);
    } else if (key == "scf.max_iter") {
      cfg.scf.max_iter = to_int(key, val);
    } else if (key == "spectrum.m_modes") {
      cfg.spectrum_m_modes = to_int(key, val);
    } else if (key == "spectrum.xi") {
      cfg.spectrum_xi = to_double(key, val);
    } else if (key == "ed.M") {
      cfg.ed_M = to_int(key, val);
    } else if (key == "ed.N_list") {
      cfg.ed_N_list = to_int_list(key, val);
    } else if (key == "ed.k_states") {
      cfg.ed_k_states = to_int(key, val);
    } else if (key == "ed.cap") {
      cfg.ed_cap = static_cast<std::size_t>(to_double(key, val));
    } else if (key == "output.dir") {
      cfg.output_dir = val;
    } else if (key == "output.format") {
      if (val == "csv")
        cfg.output_format = OutputFormat::csv;
      else if (val == "json")
        cfg.output_format = OutputFormat::json;
      else if (val == "both")
        cfg.output_format = OutputFormat::both;
      else
        bad("config: output.format: expected csv|json|both, got '" + val + "'");
    } else {
      bad("config: unknown key '" + key + "'");
    }
  }

  // validation with defaults filled
  if (cfg.model_kind != "trap" && cfg.model_kind != "torus")
    bad("config: model.kind: expected trap|torus, got '" + cfg.model_kind + "'");
  if (!potential_set) cfg.potential_kind = cfg.model_kind == "trap" ? "harmonic" : "none";
  if (cfg.interaction_kind.empty()) bad("config: interaction.kind is required");
  if (cfg.interaction_kind != "zero" && cfg.interaction_kind != "gaussian" &&
      cfg.interaction_kind != "cosine")
    bad("config: interaction.kind: expected zero|gaussian|cosine, got '" + cfg.interaction_kind + "'");
  if (cfg.potential_kind != "none" && cfg.potential_kind != "harmonic" && cfg.potential_kind != "quartic")
    bad("config: potential.kind: expected none|harmonic|quartic, got '" + cfg.potential_kind + "'");

  if (cfg.grid_L <= 0.0) bad("config: grid.L must be positive");
  if (cfg.grid_n < 8) bad("config: grid.n must be >= 8");
  if (cfg.modes_d < 1 || cfg.modes_d > 3) bad("config: modes.d must be 1, 2 or 3");
  if (cfg.modes_K < 1) bad("config: modes.K must be >= 1");
  if (cfg.interaction_g < 0.0) bad("config: interaction.g must be >= 0");
  if (cfg.interaction_s <= 0.0) bad("config: interaction.s must be positive");
  if (cfg.potential_omega <= 0.0) bad("config: potential.omega must be positive");
  if (cfg.potential_kappa <= 0.0) bad("config: potential.kappa must be positive");
  if (cfg.scf.mixing <= 0.0 || cfg.scf.mixing > 1.0) bad("config: scf.eta must be in (0, 1]");
  if (cfg.scf.tol <= 0.0) bad("config: scf.tol must be positive");
  if (cfg.scf.max_iter < 1) bad("config: scf.max_iter must be >= 1");
  if (cfg.spectrum_m_modes < 0) bad("config: spectrum.m_modes must be >= 0");
  if (cfg.spectrum_xi < 0.0) bad("config: spectrum.xi must be >= 0");
  if (cfg.ed_M < 1) bad("config: ed.M must be >= 1");
  if (cfg.ed_k_states < 1) bad("config: ed.k_states must be >= 1");
  if (cfg.ed_cap < 1) bad("config: ed.cap must be >= 1");
  for (int n : cfg.ed_N_list)
    if (n < 2) bad("config: ed.N_list entries must be >= 2");
  if (!std::is_sorted(cfg.ed_N_list.begin(), cfg.ed_N_list.end()) ||
      std::adjacent_find(cfg.ed_N_list.begin(), cfg.ed_N_list.end()) != cfg.ed_N_list.end())
    bad("config: ed.N_list must be strictly ascending");
  if (cfg.model_kind == "torus" && cfg.interaction_kind == "gaussian" && cfg.interaction_s > 0.25)
    bad("config: interaction.s too wide for the unit torus (need s <= 0.25)");

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'", 66);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace bogospec

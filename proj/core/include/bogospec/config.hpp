#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bogospec/domain.hpp"
#include "bogospec/hartree.hpp"

namespace bogospec {

/// Config problems carry the CLI exit code: 2 for bad content, 66 for a
/// missing input file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, int exit_code)
      : std::runtime_error(std::move(message)), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

enum class OutputFormat { csv, json, both };

struct RunConfig {
  std::string model_kind;  // "trap" | "torus"

  double grid_L = 8.0;
  int grid_n = 256;
  int modes_d = 1;
  int modes_K = 2;

  std::string potential_kind;  // defaulted per model: trap -> harmonic, torus -> none
  double potential_omega = 1.0;
  double potential_kappa = 1.0;

  std::string interaction_kind;  // "gaussian" | "cosine" | "zero"
  double interaction_g = 0.0;
  double interaction_s = 0.5;

  ScfParams scf;

  int spectrum_m_modes = 0;  // 0 -> default: 32 (trap) or 2K+1 (torus)
  double spectrum_xi = 0.0;  // 0 -> skip excitation enumeration

  int ed_M = 4;
  std::vector<int> ed_N_list = {4, 8, 16, 32};
  int ed_k_states = 6;
  std::size_t ed_cap = 500000;

  std::string output_dir = "out";
  OutputFormat output_format = OutputFormat::csv;

  // resolved helpers
  int resolved_m_modes() const;
  GridSpec make_grid() const;
  ModeBasis make_modes() const;
  Interaction make_interaction() const;
  ExternalPotential make_potential() const;
};

/// Parse and validate a flat `section.key = value` file ('#' comments).
/// Unknown keys and out-of-range values throw ConfigError(2); a missing file
/// throws ConfigError(66).
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

}  // namespace bogospec

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "smsec/beamformers.hpp"
#include "smsec/channel_model.hpp"

namespace smsec {

/// Sweep axes and Monte-Carlo budgets for one experiment.
struct SweepSpec {
  std::vector<double> snr_grid_db;
  std::vector<double> p_m_list{1.0, 10.0};
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  int n_channel_realizations = 200;
  int n_noise = 500;
  long long n_ber_trials = 20000;
  AnMode an_mode = AnMode::NullSpace;
  std::string output_dir = "results";

  SweepSpec();
  void validate() const;
  bool operator==(const SweepSpec&) const = default;
};

struct ExperimentConfig {
  SystemConfig system;
  SweepSpec sweep;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses `key = value` lines; `#` starts a comment, lists are comma
/// separated. Keys not present keep their defaults. Errors are ConfigError
/// messages of the form "line N: key: reason".
ExperimentConfig parse_config(std::string_view text);

/// Canonical document for a configuration; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& cfg);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

}  // namespace smsec

#pragma once

#include <string>
#include <vector>

#include "fefetsim/config.hpp"

namespace fefet {

inline constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { csv, json };

struct ExperimentResult {
  std::string id;
  std::string summary;             // key scalar results; no timing (caller adds)
  std::vector<std::string> files;  // artifact paths written
};

/// Figure-level experiment ids, in canonical order.
const std::vector<std::string>& experiment_ids();
bool is_experiment_id(const std::string& id);

/// Run one experiment and write its artifacts (plus a .meta.json sidecar per
/// artifact). Throws ConfigError for an unknown id (message lists valid ids)
/// and propagates solver/extraction failures.
ExperimentResult run_experiment(const SimConfig& cfg, const std::string& id,
                                const std::string& out_dir, OutputFormat format);

struct CalibrationResult {
  SimConfig config;   // tuned kinetics, everything else unchanged
  std::size_t moves = 0;
  bool success = false;
  std::string failing_target;  // empty on success
  double flip_time = 0.0;      // s, at calib.flip_v
  double safe_dvth = 0.0;      // V, after calib.safe_dwell at calib.safe_v
  double saturation = 0.0;     // min grain alignment after +/- write pulses
  double residual = 0.0;
};

/// Coordinate search on (Ea median, sigma, tau0, field exponent) until the
/// flip-time, no-flip, and write-saturation targets hold. Re-running from a
/// satisfying config converges in zero moves.
CalibrationResult calibrate(const SimConfig& base);

}  // namespace fefet

#pragma once

#include <stdexcept>
#include <string>

namespace fefet {

/// Charge-balance root finder could not bracket a solution. Carries the last
/// bracket tried so callers can report where the search ended.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double bracket_lo, double bracket_hi)
      : std::runtime_error(what), bracket_lo_(bracket_lo), bracket_hi_(bracket_hi) {}
  double bracket_lo() const { return bracket_lo_; }
  double bracket_hi() const { return bracket_hi_; }

 private:
  double bracket_lo_;
  double bracket_hi_;
};

/// Constant-current threshold extraction found no crossing. Carries the
/// current bounds of the curve that was searched.
class ExtractionError : public std::runtime_error {
 public:
  ExtractionError(const std::string& what, double i_min, double i_max)
      : std::runtime_error(what), i_min_(i_min), i_max_(i_max) {}
  double i_min() const { return i_min_; }
  double i_max() const { return i_max_; }

 private:
  double i_min_;
  double i_max_;
};

/// Configuration schema violation; carries the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace fefet

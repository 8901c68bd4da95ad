#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fefet {

/// Field- and time-dependence of polarization switching. The per-grain
/// switching time follows a Merz-type law
///     tau(E) = tau0 * exp((Ea / |E|)^n)
/// and switching progress under a (possibly varying) field accumulates as
/// h = integral dt / tau(E), with flip probability 1 - exp(-h^beta).
struct SwitchingKinetics {
  double attempt_time = 2.2e-9;      // tau0, s
  double field_exponent = 2.0;       // n, >= 1
  double stretch_exponent = 2.0;     // beta, > 0
  double ea_median = 3.8e8;          // log-normal median of activation fields, V/m
  double ea_sigma = 0.05;            // log-normal sigma, >= 0

  void check() const;  // throws std::invalid_argument on a bad parameter
};

/// tau(E) for one grain; +infinity at E = 0. Strictly decreasing in |E|.
double switching_time(double field, double activation_field, const SwitchingKinetics& kin);

struct Grain {
  double activation_field = 0.0;  // V/m, > 0
  double progress = 0.0;          // accumulated dt/tau toward a flip
  std::int8_t orientation = +1;   // -1 or +1
};

/// Multi-grain ferroelectric polarization state. Net polarization is
/// Ps * mean(orientation). Value semantics; evolve() is deterministic given
/// (seed, inputs) via counter-based per-grain substreams.
class GrainEnsemble {
 public:
  GrainEnsemble() = default;

  /// Draw n_grains activation fields from the configured log-normal
  /// distribution; all orientations start at +1. Deterministic for a fixed
  /// seed. Throws std::invalid_argument when n_grains == 0.
  static GrainEnsemble sample(std::size_t n_grains, const SwitchingKinetics& kin,
                              std::uint64_t seed, double saturation_polarization);

  /// Advance every grain under a signed field for dt seconds. Grains aligned
  /// with sign(field) never flip and their progress resets; opposing grains
  /// accumulate progress and flip with the conditional stretched-exponential
  /// probability. field == 0 or dt == 0 leaves the ensemble unchanged.
  void evolve(double field, double dt, const SwitchingKinetics& kin);

  /// Ps * mean(orientation), C/m^2.
  double net_polarization() const;

  /// Fraction of grains with the given orientation sign.
  double aligned_fraction(int orientation_sign) const;

  /// Reset all orientations (write helper); clears switching progress.
  void set_all(int orientation_sign);
  /// Force one grain's orientation; clears its switching progress.
  void set_orientation(std::size_t index, int orientation_sign);

  std::span<const Grain> grains() const { return grains_; }
  std::size_t size() const { return grains_.size(); }
  double saturation_polarization() const { return saturation_polarization_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t step() const { return step_; }

 private:
  std::vector<Grain> grains_;
  double saturation_polarization_ = 0.0;  // Ps, C/m^2
  std::uint64_t seed_ = 0;
  std::uint64_t step_ = 0;  // evolve() call counter; part of the RNG state
};

}  // namespace fefet

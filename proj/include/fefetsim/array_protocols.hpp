#pragma once

#include <cstdint>
#include <vector>

#include "fefetsim/cell.hpp"

namespace fefet {

/// Global self-boosting program-inhibit scheme parameters.
struct InhibitScheme {
  double v_cc = 3.3;            // inhibit bit-line level, V
  double v_pgm = 6.0;           // program word-line level, V
  double pulse_duration = 10e-6;  // s
  double coupling_ratio = 0.8;  // r_c in (0, 1]
  double vth_ssl = 0.5;         // string-select threshold, V
  std::size_t n_wls = 8;

  void check() const;  // throws std::invalid_argument
};

enum class PortMode { single, dual };

/// Per-cell-class threshold shifts of one program pulse.
struct DisturbReport {
  double dvth_programmed = 0.0;        // selected string, selected WL
  double dvth_pass_disturbed = 0.0;    // selected string, unselected WLs
  double dvth_program_disturbed = 0.0; // inhibited string, selected WL
  double dvth_boosted_idle = 0.0;      // inhibited string, unselected WLs
  double boosted_channel_potential = 0.0;
  std::size_t n_programmed = 0;
  std::size_t n_inhibited = 0;
};

/// Floating-channel potential of an inhibited string:
///   V_boost = max(0, V_CC - VTH_SSL) + r_c * ((n-1) * V_PASS + V_PGM) / n.
/// Strictly increasing in V_PASS.
double boosted_channel_potential(const InhibitScheme& scheme, double v_pass);

/// Array prototype: every cell starts from this erased (HVT) template.
struct ArrayConfig {
  Cell prototype;  // erased state is applied internally per class
};

/// One program pulse on the selected word line. Single mode stresses the
/// selected string's unselected cells at WG = V_PASS; dual mode keeps their
/// write gates grounded and passes through the global PG at V_PASS.
/// Stresses run through the cell-model pulse loop for the scheme duration.
DisturbReport program_page(const ArrayConfig& array, std::size_t selected_wl,
                           const std::vector<bool>& bit_pattern, const InhibitScheme& scheme,
                           double v_pass, PortMode mode);

struct TradeoffPoint {
  double v_pass = 0.0;
  double dvth_pass = 0.0;     // |shift| of the pass-disturbed class
  double dvth_program = 0.0;  // |shift| of the program-disturbed class
};

struct TradeoffSweep {
  std::vector<TradeoffPoint> points;
  bool window_found = false;
  double window_lo = 0.0;  // V_PASS range where both classes stay under the
  double window_hi = 0.0;  // disturb threshold
  double threshold = 0.1;  // V
};

/// Pass-vs-program disturb tradeoff across a V_PASS range; reports the
/// window where both stay below `threshold`.
TradeoffSweep disturb_tradeoff_sweep(const ArrayConfig& array, const InhibitScheme& scheme,
                                     double v_lo, double v_hi, std::size_t n_points, PortMode mode,
                                     double threshold = 0.1);

struct VariabilityModel {
  double sigma_vth0 = 0.030;     // V
  double sigma_ea_median = 0.03; // relative log-normal spread of Ea median
};

struct VthDistribution {
  std::vector<double> vth_pre;   // sorted
  std::vector<double> vth_post;  // sorted
};

/// Monte Carlo over per-cell parameter draws: each cell is erased, its
/// pre-disturb VTH recorded, then stressed as the pass-disturbed class of
/// program_page and re-read. Deterministic per (seed, cell index); the cell
/// range [first, first+n) allows split runs that merge into one full run.
VthDistribution vth_distribution(const ArrayConfig& array, std::size_t n_cells,
                                 const VariabilityModel& variability, const InhibitScheme& scheme,
                                 double v_pass, PortMode mode, std::uint64_t seed,
                                 std::size_t first_cell = 0);

}  // namespace fefet

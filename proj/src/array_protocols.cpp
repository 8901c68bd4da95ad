#include "fefetsim/array_protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fefetsim/rng.hpp"

namespace fefet {

void InhibitScheme::check() const {
  if (!(v_pgm > v_cc && v_cc > 0.0))
    throw std::invalid_argument("inhibit scheme: require V_PGM > V_CC > 0");
  if (!(coupling_ratio > 0.0 && coupling_ratio <= 1.0))
    throw std::invalid_argument("inhibit scheme: coupling ratio must be in (0, 1]");
  if (n_wls == 0) throw std::invalid_argument("inhibit scheme: need at least one word line");
  if (!(pulse_duration > 0.0)) throw std::invalid_argument("inhibit scheme: pulse duration must be > 0");
}

double boosted_channel_potential(const InhibitScheme& scheme, double v_pass) {
  const double precharge = std::max(0.0, scheme.v_cc - scheme.vth_ssl);
  const double n = static_cast<double>(scheme.n_wls);
  const double mean_swing = ((n - 1.0) * v_pass + scheme.v_pgm) / n;
  return precharge + scheme.coupling_ratio * mean_swing;
}

namespace {

// Boost of an inhibited string in dual mode: the word lines stay grounded
// except the programmed one, and the global pass gate couples to the whole
// floating channel with the same ratio.
double boosted_channel_potential_dual(const InhibitScheme& scheme, double v_pass_pg) {
  const double precharge = std::max(0.0, scheme.v_cc - scheme.vth_ssl);
  const double n = static_cast<double>(scheme.n_wls);
  return precharge + scheme.coupling_ratio * (scheme.v_pgm / n + v_pass_pg);
}

Cell erased(const Cell& prototype) {
  Cell c = prototype;
  c.ensemble.set_all(-1);
  return c;
}

// Front-gate stress of an erased cell; returns the front VTH shift.
double class_shift_front(const Cell& prototype, double v_wg, double duration) {
  Cell c = erased(prototype);
  const double before = c.vth(Port::front, 0.0);
  c = stress_bias(std::move(c), v_wg, 0.0, duration);
  return c.vth(Port::front, 0.0) - before;
}

double class_shift_back(const Cell& prototype, double v_pg, double duration) {
  Cell c = erased(prototype);
  const double before = c.vth(Port::front, 0.0);
  c = stress_bias(std::move(c), 0.0, v_pg, duration);
  return c.vth(Port::front, 0.0) - before;
}

}  // namespace

DisturbReport program_page(const ArrayConfig& array, std::size_t selected_wl,
                           const std::vector<bool>& bit_pattern, const InhibitScheme& scheme,
                           double v_pass, PortMode mode) {
  scheme.check();
  if (selected_wl >= scheme.n_wls) throw std::invalid_argument("program_page: selected WL out of range");

  DisturbReport report;
  for (bool program : bit_pattern) (program ? report.n_programmed : report.n_inhibited)++;

  const double t = scheme.pulse_duration;
  report.dvth_programmed = class_shift_front(array.prototype, scheme.v_pgm, t);

  if (mode == PortMode::single) {
    const double v_boost = boosted_channel_potential(scheme, v_pass);
    report.boosted_channel_potential = v_boost;
    report.dvth_pass_disturbed = class_shift_front(array.prototype, v_pass, t);
    report.dvth_program_disturbed = class_shift_front(array.prototype, scheme.v_pgm - v_boost, t);
    report.dvth_boosted_idle = class_shift_front(array.prototype, v_pass - v_boost, t);
  } else {
    const double v_boost = boosted_channel_potential_dual(scheme, v_pass);
    report.boosted_channel_potential = v_boost;
    report.dvth_pass_disturbed = class_shift_back(array.prototype, v_pass, t);
    report.dvth_program_disturbed = class_shift_front(array.prototype, scheme.v_pgm - v_boost, t);
    report.dvth_boosted_idle = class_shift_front(array.prototype, 0.0 - v_boost, t);
  }
  return report;
}

TradeoffSweep disturb_tradeoff_sweep(const ArrayConfig& array, const InhibitScheme& scheme,
                                     double v_lo, double v_hi, std::size_t n_points, PortMode mode,
                                     double threshold) {
  if (!(v_hi > v_lo) || n_points < 2)
    throw std::invalid_argument("tradeoff sweep: need a positive range and >= 2 points");

  TradeoffSweep sweep;
  sweep.threshold = threshold;
  const std::vector<bool> pattern{true, false};
  for (std::size_t i = 0; i < n_points; ++i) {
    const double v =
        v_lo + (v_hi - v_lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    const DisturbReport r = program_page(array, 0, pattern, scheme, v, mode);
    sweep.points.push_back({v, std::abs(r.dvth_pass_disturbed), std::abs(r.dvth_program_disturbed)});
  }

  // dvth_pass is non-decreasing and dvth_program non-increasing in V_PASS, so
  // the admissible region is a single interval (possibly empty).
  for (const TradeoffPoint& p : sweep.points) {
    if (p.dvth_pass < threshold && p.dvth_program < threshold) {
      if (!sweep.window_found) {
        sweep.window_found = true;
        sweep.window_lo = p.v_pass;
      }
      sweep.window_hi = p.v_pass;
    }
  }
  return sweep;
}

VthDistribution vth_distribution(const ArrayConfig& array, std::size_t n_cells,
                                 const VariabilityModel& variability, const InhibitScheme& scheme,
                                 double v_pass, PortMode mode, std::uint64_t seed,
                                 std::size_t first_cell) {
  if (n_cells == 0) throw std::invalid_argument("vth_distribution: need at least one cell");
  scheme.check();

  VthDistribution dist;
  dist.vth_pre.reserve(n_cells);
  dist.vth_post.reserve(n_cells);

  constexpr std::uint64_t kVth0Stream = 0x56544830ull;
  constexpr std::uint64_t kEaStream = 0x4541ull;

  for (std::size_t c = 0; c < n_cells; ++c) {
    const std::uint64_t cell_id = first_cell + c;
    Cell cell = array.prototype;
    const double dvth0 = variability.sigma_vth0 * standard_normal(seed, kVth0Stream, cell_id);
    cell.params.vth0_front += dvth0;
    cell.params.vth0_back += dvth0 * cell.params.coupling_back;
    cell.kinetics.ea_median *=
        std::exp(variability.sigma_ea_median * standard_normal(seed, kEaStream, cell_id));
    cell.ensemble = GrainEnsemble::sample(cell.ensemble.size(), cell.kinetics,
                                          hash_mix(seed, 0x47524149ull, cell_id),
                                          cell.ensemble.saturation_polarization());
    cell.ensemble.set_all(-1);

    dist.vth_pre.push_back(cell.vth(Port::front, 0.0));
    cell = mode == PortMode::single ? stress_bias(std::move(cell), v_pass, 0.0, scheme.pulse_duration)
                                    : stress_bias(std::move(cell), 0.0, v_pass, scheme.pulse_duration);
    dist.vth_post.push_back(cell.vth(Port::front, 0.0));
  }

  std::sort(dist.vth_pre.begin(), dist.vth_pre.end());
  std::sort(dist.vth_post.begin(), dist.vth_post.end());
  return dist;
}

}  // namespace fefet

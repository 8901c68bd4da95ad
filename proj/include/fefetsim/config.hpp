#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fefetsim/array_protocols.hpp"
#include "fefetsim/cell.hpp"

namespace fefet {

/// All tunables of the simulator, SI units internally. The file format is
/// `key = value` with explicit unit suffixes on physical quantities, e.g.
///     stack.t_fe = "10 nm"
///     kinetics.field_exponent = 2
/// Unknown keys are rejected; serialization round-trips losslessly.
struct SimConfig {
  double seed = 1;

  // Layer geometry: front stack shared by both variants, back dielectric per
  // variant (planar FDSOI vs vertical dual-port cell).
  double stack_t_fe = 10e-9;
  double stack_eps_fe = 30.0;
  double stack_t_interfacial = 1e-9;
  double stack_eps_interfacial = 3.9;
  double stack_t_channel = 7e-9;
  double stack_eps_channel = 11.7;
  double stack_t_back = 20e-9;
  double stack_eps_back = 3.9;
  double stack_t_back_dual = 8e-9;
  double stack_eps_back_dual = 3.9;
  double stack_flatband_front = 0.0;
  double stack_flatband_back = 0.0;

  double channel_thermal_voltage = 0.02585;
  double channel_turn_on = 0.5;
  double channel_accumulation = -0.5;
  double channel_sheet_capacitance = 1.0;
  double channel_fixed_charge = 0.0;

  double kinetics_tau0 = 5e-10;
  double kinetics_field_exponent = 2.0;
  double kinetics_stretch_exponent = 2.0;
  double kinetics_ea_median = 3.8e8;
  double kinetics_ea_sigma = 0.04;

  double ferro_ps = 1.8e-2;
  double ferro_n_grains = 2000;

  double cell_width = 1e-6;
  double cell_length = 1e-6;
  double cell_transconductance = 2e-4;
  double cell_subthreshold_swing = 0.080;
  // NaN means "derive from the stack"; explicit values override.
  double cell_vth0_front = kDerived;
  double cell_vth0_back = kDerived;
  double cell_gamma_front = kDerived;
  double cell_gamma_back = kDerived;
  double cell_coupling_front = kDerived;
  double cell_coupling_back = kDerived;

  double string_n_cells = 3;
  double string_n_wls = 8;

  double read_v_pass = 2.0;
  double read_v_ds = 0.050;
  double read_v_lo = -0.5;
  double read_v_hi = 2.5;
  double read_n_points = 61;

  double scheme_v_cc = 3.3;
  double scheme_vth_ssl = 0.5;
  double scheme_r_c = 0.8;
  double scheme_v_pgm = 6.0;
  double scheme_pulse_duration = 10e-6;

  double fig2_v_pass_max = 4.0;
  double fig2_n_points = 41;
  double fig2k_v_pass_lo = 1.7;
  double fig2k_v_pass_hi = 2.5;
  double fig2k_n_v = 5;
  double fig2l_v_pass_lo = 5.0;
  double fig2l_v_pass_hi = 15.0;
  double fig2l_n_v = 3;
  double fig3d_v_pass_lo = 0.9;
  double fig3d_v_pass_hi = 2.5;
  double fig3d_n_v = 9;
  double fig3d_dwell_lo = 1e-6;
  double fig3d_dwell_hi = 1.0;
  double fig3d_dwells_per_decade = 2;
  double fig3i_v_pass_lo = 5.0;
  double fig3i_v_pass_hi = 15.0;
  double fig3i_n_v = 3;
  double fig4c_v_pass_pg = 6.0;
  double fig4c_sample_rate = 4e7;
  double fig1f_v_lo_single = 1.2;
  double fig1f_v_hi_single = 4.0;
  double fig1f_v_lo_dual = 11.0;
  double fig1f_v_hi_dual = 15.0;
  double fig1f_n_points = 15;
  double fig1f_threshold = 0.100;
  double dist_n_cells = 2000;
  double dist_n_grains = 400;
  double dist_sigma_vth0 = 0.030;
  double dist_sigma_ea = 0.03;
  double dist_v_pass = 12.0;

  double calib_flip_v = 2.3;
  double calib_flip_target = 1e-4;
  double calib_safe_v = 0.9;
  double calib_safe_dwell = 1.0;
  double calib_write_amplitude = 4.0;
  double calib_write_duration = 1e-6;
  double calib_saturation_min = 0.95;
  double calib_max_iterations = 60;

  static constexpr double kDerived = __builtin_nan("");

  std::uint64_t seed_u64() const { return static_cast<std::uint64_t>(seed); }
};

enum class StackVariant { single_port, dual_port };

struct Diagnostic {
  std::string key;
  std::string message;
};

/// Parse a config file body. Throws ConfigError for unknown keys, bad
/// values, missing/invalid units, or duplicate keys.
SimConfig parse_config(const std::string& text);
SimConfig load_config_file(const std::string& path);

/// Canonical serialization: every key, effective values, explicit units.
std::string serialize_config(const SimConfig& cfg);

/// FNV-1a 64 over the canonical serialization.
std::uint64_t config_hash(const SimConfig& cfg);

/// Apply one `key = value` override (value syntax identical to file values).
void apply_override(SimConfig& cfg, const std::string& key, const std::string& value);

/// Schema + physics sanity checks, no simulation. Empty result means valid.
std::vector<Diagnostic> validate_config(const SimConfig& cfg);

// Factories for the simulated objects.
GateStack make_stack(const SimConfig& cfg, StackVariant variant);
ChannelChargeModel make_channel(const SimConfig& cfg);
SwitchingKinetics make_kinetics(const SimConfig& cfg);
CellParams make_cell_params(const SimConfig& cfg, StackVariant variant);
Cell make_cell(const SimConfig& cfg, StackVariant variant, std::uint64_t seed_salt = 0,
               MemState state = MemState::hvt);
InhibitScheme make_scheme(const SimConfig& cfg);

}  // namespace fefet

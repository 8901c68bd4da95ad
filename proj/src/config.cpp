#include "fefetsim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fefetsim/errors.hpp"
#include "fefetsim/rng.hpp"

namespace fefet {

namespace {

enum class Quantity {
  dimensionless,
  count,
  length,
  time,
  voltage,
  field,
  sheet_charge,
  sheet_capacitance,
  transconductance,
  voltage_per_decade,
  frequency,
  polarization_coupling,  // V per C/m^2
};

struct UnitDef {
  const char* name;
  double factor;
};

const std::map<Quantity, std::vector<UnitDef>>& unit_table() {
  static const std::map<Quantity, std::vector<UnitDef>> table{
      {Quantity::length, {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}}},
      {Quantity::time, {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}}},
      {Quantity::voltage, {{"V", 1.0}, {"mV", 1e-3}, {"kV", 1e3}}},
      {Quantity::field, {{"V/m", 1.0}, {"MV/m", 1e6}, {"kV/cm", 1e5}, {"MV/cm", 1e8}}},
      {Quantity::sheet_charge, {{"C/m^2", 1.0}, {"uC/cm^2", 1e-2}}},
      {Quantity::sheet_capacitance, {{"F/m^2", 1.0}, {"uF/cm^2", 1e-2}}},
      {Quantity::transconductance, {{"A/V^2", 1.0}, {"mA/V^2", 1e-3}, {"uA/V^2", 1e-6}}},
      {Quantity::voltage_per_decade, {{"V/dec", 1.0}, {"mV/dec", 1e-3}}},
      {Quantity::frequency, {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}}},
      {Quantity::polarization_coupling, {{"V.m^2/C", 1.0}, {"V/(uC/cm^2)", 1e2}}},
  };
  return table;
}

const char* canonical_unit(Quantity q) {
  switch (q) {
    case Quantity::length: return "m";
    case Quantity::time: return "s";
    case Quantity::voltage: return "V";
    case Quantity::field: return "V/m";
    case Quantity::sheet_charge: return "C/m^2";
    case Quantity::sheet_capacitance: return "F/m^2";
    case Quantity::transconductance: return "A/V^2";
    case Quantity::voltage_per_decade: return "V/dec";
    case Quantity::frequency: return "Hz";
    case Quantity::polarization_coupling: return "V.m^2/C";
    default: return "";
  }
}

struct KeySpec {
  const char* key;
  Quantity quantity;
  double SimConfig::* member;
  bool derived_default = false;
};

const std::vector<KeySpec>& key_registry() {
  using Q = Quantity;
  static const std::vector<KeySpec> keys{
      {"seed", Q::count, &SimConfig::seed},
      {"stack.t_fe", Q::length, &SimConfig::stack_t_fe},
      {"stack.eps_fe", Q::dimensionless, &SimConfig::stack_eps_fe},
      {"stack.t_interfacial", Q::length, &SimConfig::stack_t_interfacial},
      {"stack.eps_interfacial", Q::dimensionless, &SimConfig::stack_eps_interfacial},
      {"stack.t_channel", Q::length, &SimConfig::stack_t_channel},
      {"stack.eps_channel", Q::dimensionless, &SimConfig::stack_eps_channel},
      {"stack.t_back", Q::length, &SimConfig::stack_t_back},
      {"stack.eps_back", Q::dimensionless, &SimConfig::stack_eps_back},
      {"stack.t_back_dual", Q::length, &SimConfig::stack_t_back_dual},
      {"stack.eps_back_dual", Q::dimensionless, &SimConfig::stack_eps_back_dual},
      {"stack.flatband_front", Q::voltage, &SimConfig::stack_flatband_front},
      {"stack.flatband_back", Q::voltage, &SimConfig::stack_flatband_back},
      {"channel.thermal_voltage", Q::voltage, &SimConfig::channel_thermal_voltage},
      {"channel.turn_on", Q::voltage, &SimConfig::channel_turn_on},
      {"channel.accumulation", Q::voltage, &SimConfig::channel_accumulation},
      {"channel.sheet_capacitance", Q::sheet_capacitance, &SimConfig::channel_sheet_capacitance},
      {"channel.fixed_charge", Q::sheet_charge, &SimConfig::channel_fixed_charge},
      {"kinetics.tau0", Q::time, &SimConfig::kinetics_tau0},
      {"kinetics.field_exponent", Q::dimensionless, &SimConfig::kinetics_field_exponent},
      {"kinetics.stretch_exponent", Q::dimensionless, &SimConfig::kinetics_stretch_exponent},
      {"kinetics.ea_median", Q::field, &SimConfig::kinetics_ea_median},
      {"kinetics.ea_sigma", Q::dimensionless, &SimConfig::kinetics_ea_sigma},
      {"ferro.ps", Q::sheet_charge, &SimConfig::ferro_ps},
      {"ferro.n_grains", Q::count, &SimConfig::ferro_n_grains},
      {"cell.width", Q::length, &SimConfig::cell_width},
      {"cell.length", Q::length, &SimConfig::cell_length},
      {"cell.transconductance", Q::transconductance, &SimConfig::cell_transconductance},
      {"cell.subthreshold_swing", Q::voltage_per_decade, &SimConfig::cell_subthreshold_swing},
      {"cell.vth0_front", Q::voltage, &SimConfig::cell_vth0_front, true},
      {"cell.vth0_back", Q::voltage, &SimConfig::cell_vth0_back, true},
      {"cell.gamma_front", Q::polarization_coupling, &SimConfig::cell_gamma_front, true},
      {"cell.gamma_back", Q::polarization_coupling, &SimConfig::cell_gamma_back, true},
      {"cell.coupling_front", Q::dimensionless, &SimConfig::cell_coupling_front, true},
      {"cell.coupling_back", Q::dimensionless, &SimConfig::cell_coupling_back, true},
      {"string.n_cells", Q::count, &SimConfig::string_n_cells},
      {"string.n_wls", Q::count, &SimConfig::string_n_wls},
      {"read.v_pass", Q::voltage, &SimConfig::read_v_pass},
      {"read.v_ds", Q::voltage, &SimConfig::read_v_ds},
      {"read.v_lo", Q::voltage, &SimConfig::read_v_lo},
      {"read.v_hi", Q::voltage, &SimConfig::read_v_hi},
      {"read.n_points", Q::count, &SimConfig::read_n_points},
      {"scheme.v_cc", Q::voltage, &SimConfig::scheme_v_cc},
      {"scheme.vth_ssl", Q::voltage, &SimConfig::scheme_vth_ssl},
      {"scheme.r_c", Q::dimensionless, &SimConfig::scheme_r_c},
      {"scheme.v_pgm", Q::voltage, &SimConfig::scheme_v_pgm},
      {"scheme.pulse_duration", Q::time, &SimConfig::scheme_pulse_duration},
      {"fig2.v_pass_max", Q::voltage, &SimConfig::fig2_v_pass_max},
      {"fig2.n_points", Q::count, &SimConfig::fig2_n_points},
      {"fig2k.v_pass_lo", Q::voltage, &SimConfig::fig2k_v_pass_lo},
      {"fig2k.v_pass_hi", Q::voltage, &SimConfig::fig2k_v_pass_hi},
      {"fig2k.n_v", Q::count, &SimConfig::fig2k_n_v},
      {"fig2l.v_pass_lo", Q::voltage, &SimConfig::fig2l_v_pass_lo},
      {"fig2l.v_pass_hi", Q::voltage, &SimConfig::fig2l_v_pass_hi},
      {"fig2l.n_v", Q::count, &SimConfig::fig2l_n_v},
      {"fig3d.v_pass_lo", Q::voltage, &SimConfig::fig3d_v_pass_lo},
      {"fig3d.v_pass_hi", Q::voltage, &SimConfig::fig3d_v_pass_hi},
      {"fig3d.n_v", Q::count, &SimConfig::fig3d_n_v},
      {"fig3d.dwell_lo", Q::time, &SimConfig::fig3d_dwell_lo},
      {"fig3d.dwell_hi", Q::time, &SimConfig::fig3d_dwell_hi},
      {"fig3d.dwells_per_decade", Q::count, &SimConfig::fig3d_dwells_per_decade},
      {"fig3i.v_pass_lo", Q::voltage, &SimConfig::fig3i_v_pass_lo},
      {"fig3i.v_pass_hi", Q::voltage, &SimConfig::fig3i_v_pass_hi},
      {"fig3i.n_v", Q::count, &SimConfig::fig3i_n_v},
      {"fig4c.v_pass_pg", Q::voltage, &SimConfig::fig4c_v_pass_pg},
      {"fig4c.sample_rate", Q::frequency, &SimConfig::fig4c_sample_rate},
      {"fig1f.v_lo_single", Q::voltage, &SimConfig::fig1f_v_lo_single},
      {"fig1f.v_hi_single", Q::voltage, &SimConfig::fig1f_v_hi_single},
      {"fig1f.v_lo_dual", Q::voltage, &SimConfig::fig1f_v_lo_dual},
      {"fig1f.v_hi_dual", Q::voltage, &SimConfig::fig1f_v_hi_dual},
      {"fig1f.n_points", Q::count, &SimConfig::fig1f_n_points},
      {"fig1f.threshold", Q::voltage, &SimConfig::fig1f_threshold},
      {"dist.n_cells", Q::count, &SimConfig::dist_n_cells},
      {"dist.n_grains", Q::count, &SimConfig::dist_n_grains},
      {"dist.sigma_vth0", Q::voltage, &SimConfig::dist_sigma_vth0},
      {"dist.sigma_ea", Q::dimensionless, &SimConfig::dist_sigma_ea},
      {"dist.v_pass", Q::voltage, &SimConfig::dist_v_pass},
      {"calib.flip_v", Q::voltage, &SimConfig::calib_flip_v},
      {"calib.flip_target", Q::time, &SimConfig::calib_flip_target},
      {"calib.safe_v", Q::voltage, &SimConfig::calib_safe_v},
      {"calib.safe_dwell", Q::time, &SimConfig::calib_safe_dwell},
      {"calib.write_amplitude", Q::voltage, &SimConfig::calib_write_amplitude},
      {"calib.write_duration", Q::time, &SimConfig::calib_write_duration},
      {"calib.saturation_min", Q::dimensionless, &SimConfig::calib_saturation_min},
      {"calib.max_iterations", Q::count, &SimConfig::calib_max_iterations},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(key, "not a number: '" + t + "'");
  return v;
}

double parse_value(const KeySpec& spec, const std::string& raw) {
  std::string value = trim(raw);
  const bool quoted = value.size() >= 2 && value.front() == '"' && value.back() == '"';
  if (quoted) value = trim(value.substr(1, value.size() - 2));

  if (spec.quantity == Quantity::dimensionless) {
    return parse_number(spec.key, value);
  }
  if (spec.quantity == Quantity::count) {
    const double v = parse_number(spec.key, value);
    if (!(v >= 0.0) || v != std::floor(v))
      throw ConfigError(spec.key, "expected a non-negative integer");
    return v;
  }

  const auto space = value.find_last_of(" \t");
  if (space == std::string::npos)
    throw ConfigError(spec.key, "physical value needs a unit, e.g. \"10 nm\"");
  const std::string num = trim(value.substr(0, space));
  const std::string unit = trim(value.substr(space + 1));
  const double v = parse_number(spec.key, num);
  for (const UnitDef& u : unit_table().at(spec.quantity)) {
    if (unit == u.name) return v * u.factor;
  }
  throw ConfigError(spec.key, "unknown unit '" + unit + "'");
}

std::string double_to_string(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const KeySpec* find_key(const std::string& key) {
  for (const KeySpec& spec : key_registry())
    if (key == spec.key) return &spec;
  return nullptr;
}

// Effective cell parameter values with derived defaults filled in.
SimConfig with_effective_cell_params(const SimConfig& cfg) {
  SimConfig out = cfg;
  const CellParams derived =
      CellParams::derived_from(make_stack(cfg, StackVariant::single_port), make_channel(cfg));
  if (std::isnan(out.cell_vth0_front)) out.cell_vth0_front = derived.vth0_front;
  if (std::isnan(out.cell_vth0_back)) out.cell_vth0_back = derived.vth0_back;
  if (std::isnan(out.cell_gamma_front)) out.cell_gamma_front = derived.gamma_front;
  if (std::isnan(out.cell_gamma_back)) out.cell_gamma_back = derived.gamma_back;
  if (std::isnan(out.cell_coupling_front)) out.cell_coupling_front = derived.coupling_front;
  if (std::isnan(out.cell_coupling_back)) out.cell_coupling_back = derived.coupling_back;
  return out;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
  SimConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = line.substr(eq + 1);
    const KeySpec* spec = find_key(key);
    if (!spec) throw ConfigError(key, "unknown key");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    cfg.*(spec->member) = parse_value(*spec, value);
  }
  return cfg;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_override(SimConfig& cfg, const std::string& key, const std::string& value) {
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError(key, "unknown key");
  cfg.*(spec->member) = parse_value(*spec, value);
}

std::string serialize_config(const SimConfig& cfg) {
  const SimConfig eff = with_effective_cell_params(cfg);
  std::ostringstream os;
  os << "# fefetsim configuration (canonical form; SI units)\n";
  for (const KeySpec& spec : key_registry()) {
    const double v = eff.*(spec.member);
    os << spec.key << " = ";
    if (spec.quantity == Quantity::dimensionless || spec.quantity == Quantity::count) {
      os << double_to_string(v);
    } else {
      os << '"' << double_to_string(v) << ' ' << canonical_unit(spec.quantity) << '"';
    }
    os << "\n";
  }
  return os.str();
}

std::uint64_t config_hash(const SimConfig& cfg) {
  const std::string text = serialize_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<Diagnostic> validate_config(const SimConfig& cfg) {
  std::vector<Diagnostic> out;
  auto require = [&](bool ok, const char* key, const std::string& msg) {
    if (!ok) out.push_back({key, msg});
  };

  require(cfg.stack_t_fe > 0, "stack.t_fe", "thickness must be > 0");
  require(cfg.stack_t_interfacial > 0, "stack.t_interfacial", "thickness must be > 0");
  require(cfg.stack_t_channel > 0, "stack.t_channel", "thickness must be > 0");
  require(cfg.stack_t_back > 0, "stack.t_back", "thickness must be > 0");
  require(cfg.stack_t_back_dual > 0, "stack.t_back_dual", "thickness must be > 0");
  for (const auto& [key, v] : std::initializer_list<std::pair<const char*, double>>{
           {"stack.eps_fe", cfg.stack_eps_fe},
           {"stack.eps_interfacial", cfg.stack_eps_interfacial},
           {"stack.eps_channel", cfg.stack_eps_channel},
           {"stack.eps_back", cfg.stack_eps_back},
           {"stack.eps_back_dual", cfg.stack_eps_back_dual}})
    require(v >= 1.0, key, "relative permittivity must be >= 1");

  require(cfg.channel_thermal_voltage > 0, "channel.thermal_voltage", "must be > 0");
  require(cfg.channel_sheet_capacitance > 0, "channel.sheet_capacitance", "must be > 0");
  require(cfg.channel_turn_on > cfg.channel_accumulation, "channel.turn_on",
          "turn-on potential must exceed the accumulation potential");

  require(cfg.kinetics_tau0 > 0, "kinetics.tau0", "must be > 0");
  require(cfg.kinetics_field_exponent >= 1, "kinetics.field_exponent", "must be >= 1");
  require(cfg.kinetics_stretch_exponent > 0, "kinetics.stretch_exponent", "must be > 0");
  require(cfg.kinetics_ea_median > 0, "kinetics.ea_median", "must be > 0");
  require(cfg.kinetics_ea_sigma >= 0, "kinetics.ea_sigma", "must be >= 0");

  require(cfg.ferro_ps > 0, "ferro.ps", "must be > 0");
  require(cfg.ferro_n_grains >= 1, "ferro.n_grains", "need at least one grain");

  require(cfg.cell_width > 0, "cell.width", "must be > 0");
  require(cfg.cell_length > 0, "cell.length", "must be > 0");
  require(cfg.cell_transconductance > 0, "cell.transconductance", "must be > 0");
  require(cfg.cell_subthreshold_swing >= 0.060, "cell.subthreshold_swing",
          "must be >= 60 mV/dec at 300 K");

  require(cfg.string_n_cells >= 1, "string.n_cells", "need at least one cell");
  require(cfg.string_n_wls >= 1, "string.n_wls", "need at least one word line");

  require(cfg.scheme_v_pgm > cfg.scheme_v_cc && cfg.scheme_v_cc > 0, "scheme.v_pgm",
          "require V_PGM > V_CC > 0");
  require(cfg.scheme_r_c > 0 && cfg.scheme_r_c <= 1, "scheme.r_c", "must be in (0, 1]");
  require(cfg.scheme_pulse_duration > 0, "scheme.pulse_duration", "must be > 0");

  require(cfg.read_n_points >= 2, "read.n_points", "need at least 2 points");
  require(cfg.read_v_hi > cfg.read_v_lo, "read.v_hi", "sweep range must be positive");
  require(cfg.read_v_ds > 0, "read.v_ds", "must be > 0");
  require(cfg.fig2_n_points >= 2, "fig2.n_points", "need at least 2 points");
  require(cfg.fig3d_v_pass_hi > cfg.fig3d_v_pass_lo, "fig3d.v_pass_hi", "range must be positive");
  require(cfg.fig3d_dwell_hi >= cfg.fig3d_dwell_lo && cfg.fig3d_dwell_lo > 0, "fig3d.dwell_lo",
          "dwell range must be positive");
  require(cfg.fig1f_v_hi_single > cfg.fig1f_v_lo_single, "fig1f.v_hi_single",
          "range must be positive");
  require(cfg.fig1f_v_hi_dual > cfg.fig1f_v_lo_dual, "fig1f.v_hi_dual", "range must be positive");
  require(cfg.fig1f_threshold > 0, "fig1f.threshold", "must be > 0");
  require(cfg.fig4c_sample_rate > 0, "fig4c.sample_rate", "must be > 0");
  require(cfg.dist_n_cells >= 1, "dist.n_cells", "need at least one cell");
  require(cfg.dist_n_grains >= 1, "dist.n_grains", "need at least one grain");
  require(cfg.calib_saturation_min > 0 && cfg.calib_saturation_min <= 1, "calib.saturation_min",
          "must be in (0, 1]");

  if (out.empty()) {
    const SimConfig eff = with_effective_cell_params(cfg);
    require(eff.cell_gamma_back / eff.cell_gamma_front > 1.0, "cell.gamma_back",
            "gamma_back/gamma_front must exceed 1 for this geometry");
  }
  return out;
}

GateStack make_stack(const SimConfig& cfg, StackVariant variant) {
  const double t_back = variant == StackVariant::single_port ? cfg.stack_t_back : cfg.stack_t_back_dual;
  const double eps_back =
      variant == StackVariant::single_port ? cfg.stack_eps_back : cfg.stack_eps_back_dual;
  std::vector<Layer> layers{
      {LayerRole::metal, 0.0, 1.0},
      {LayerRole::ferroelectric, cfg.stack_t_fe, cfg.stack_eps_fe},
      {LayerRole::dielectric, cfg.stack_t_interfacial, cfg.stack_eps_interfacial},
      {LayerRole::channel, cfg.stack_t_channel, cfg.stack_eps_channel},
      {LayerRole::dielectric, t_back, eps_back},
      {LayerRole::metal, 0.0, 1.0},
  };
  return GateStack(std::move(layers), cfg.stack_flatband_front, cfg.stack_flatband_back);
}

ChannelChargeModel make_channel(const SimConfig& cfg) {
  ChannelChargeModel ch;
  ch.thermal_voltage = cfg.channel_thermal_voltage;
  ch.turn_on_potential = cfg.channel_turn_on;
  ch.accumulation_potential = cfg.channel_accumulation;
  ch.sheet_capacitance = cfg.channel_sheet_capacitance;
  ch.fixed_sheet_charge = cfg.channel_fixed_charge;
  return ch;
}

SwitchingKinetics make_kinetics(const SimConfig& cfg) {
  SwitchingKinetics kin;
  kin.attempt_time = cfg.kinetics_tau0;
  kin.field_exponent = cfg.kinetics_field_exponent;
  kin.stretch_exponent = cfg.kinetics_stretch_exponent;
  kin.ea_median = cfg.kinetics_ea_median;
  kin.ea_sigma = cfg.kinetics_ea_sigma;
  return kin;
}

CellParams make_cell_params(const SimConfig& cfg, StackVariant variant) {
  CellParams p = CellParams::derived_from(make_stack(cfg, variant), make_channel(cfg));
  p.width = cfg.cell_width;
  p.length = cfg.cell_length;
  p.transconductance = cfg.cell_transconductance;
  p.subthreshold_swing = cfg.cell_subthreshold_swing;
  p.thermal_voltage = cfg.channel_thermal_voltage;
  if (variant == StackVariant::single_port) {
    if (!std::isnan(cfg.cell_vth0_front)) p.vth0_front = cfg.cell_vth0_front;
    if (!std::isnan(cfg.cell_vth0_back)) p.vth0_back = cfg.cell_vth0_back;
    if (!std::isnan(cfg.cell_gamma_front)) p.gamma_front = cfg.cell_gamma_front;
    if (!std::isnan(cfg.cell_gamma_back)) p.gamma_back = cfg.cell_gamma_back;
    if (!std::isnan(cfg.cell_coupling_front)) p.coupling_front = cfg.cell_coupling_front;
    if (!std::isnan(cfg.cell_coupling_back)) p.coupling_back = cfg.cell_coupling_back;
  }
  return p;
}

Cell make_cell(const SimConfig& cfg, StackVariant variant, std::uint64_t seed_salt, MemState state) {
  Cell c{GrainEnsemble{}, make_stack(cfg, variant), make_channel(cfg),
         make_cell_params(cfg, variant), make_kinetics(cfg)};
  c.ensemble = GrainEnsemble::sample(static_cast<std::size_t>(cfg.ferro_n_grains), c.kinetics,
                                     hash_mix(cfg.seed_u64(), seed_salt), cfg.ferro_ps);
  c.ensemble.set_all(state == MemState::lvt ? +1 : -1);
  return c;
}

InhibitScheme make_scheme(const SimConfig& cfg) {
  InhibitScheme s;
  s.v_cc = cfg.scheme_v_cc;
  s.vth_ssl = cfg.scheme_vth_ssl;
  s.coupling_ratio = cfg.scheme_r_c;
  s.v_pgm = cfg.scheme_v_pgm;
  s.pulse_duration = cfg.scheme_pulse_duration;
  s.n_wls = static_cast<std::size_t>(cfg.string_n_wls);
  return s;
}

}  // namespace fefet

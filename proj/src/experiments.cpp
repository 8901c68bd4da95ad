#include "fefetsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "fefetsim/array_protocols.hpp"
#include "fefetsim/errors.hpp"
#include "fefetsim/rng.hpp"
#include "fefetsim/string_sim.hpp"

namespace fefet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

using CellValue = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<CellValue>> rows;

  void add_row(std::vector<CellValue> row) { rows.push_back(std::move(row)); }
};

struct ArtifactWriter {
  const SimConfig& cfg;
  const std::string& id;
  fs::path dir;
  OutputFormat format;
  std::vector<std::string> files;

  void write_meta(const fs::path& artifact, const std::vector<std::string>& columns,
                  std::size_t n_rows) {
    json meta;
    meta["experiment"] = id;
    meta["version"] = kVersion;
    meta["seed"] = cfg.seed_u64();
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    meta["config_fnv1a"] = hash;
    meta["columns"] = columns;
    meta["rows"] = n_rows;
    const fs::path path = artifact.string() + ".meta.json";
    std::ofstream os(path);
    os << meta.dump(2) << "\n";
    files.push_back(path.string());
  }

  void write_table(const std::string& name, const Table& table) {
    const fs::path base = dir / name;
    if (format == OutputFormat::csv) {
      const fs::path path = base.string() + ".csv";
      std::ofstream os(path);
      for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
      os << "\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) os << ',';
          if (std::holds_alternative<double>(row[i]))
            os << fmt(std::get<double>(row[i]));
          else
            os << std::get<std::string>(row[i]);
        }
        os << "\n";
      }
      files.push_back(path.string());
      write_meta(path, table.columns, table.rows.size());
    } else {
      const fs::path path = base.string() + ".json";
      json doc;
      doc["columns"] = table.columns;
      json rows = json::array();
      for (const auto& row : table.rows) {
        json r = json::array();
        for (const auto& cell : row) {
          if (std::holds_alternative<double>(cell))
            r.push_back(std::get<double>(cell));
          else
            r.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(r));
      }
      doc["rows"] = std::move(rows);
      std::ofstream os(path);
      os << doc.dump(2) << "\n";
      files.push_back(path.string());
      write_meta(path, table.columns, table.rows.size());
    }
  }

  void write_json(const std::string& name, const json& doc,
                  const std::vector<std::string>& keys) {
    const fs::path path = dir / (name + ".json");
    std::ofstream os(path);
    os << doc.dump(2) << "\n";
    files.push_back(path.string());
    write_meta(path, keys, 1);
  }
};

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1) : lo;
  return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t per_decade) {
  std::vector<double> v;
  const double decades = std::log10(hi / lo);
  const std::size_t n = std::max<std::size_t>(2, static_cast<std::size_t>(
                                                     std::round(decades * per_decade)) + 1);
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(lo * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(n - 1)));
  return v;
}

// --- experiments ---------------------------------------------------------

void run_fig2_curves(const SimConfig& cfg, MemState state, ArtifactWriter& w, std::string& summary) {
  const auto channel = make_channel(cfg);
  const auto single = make_stack(cfg, StackVariant::single_port);
  const auto dual = make_stack(cfg, StackVariant::dual_port);
  const std::size_t n = static_cast<std::size_t>(cfg.fig2_n_points);

  const auto c_single = efe_vs_vpass_curve(single, state, PassPort::write_gate, 0.0,
                                           cfg.fig2_v_pass_max, n, cfg.ferro_ps, channel);
  const auto c_dual = efe_vs_vpass_curve(dual, state, PassPort::pass_gate, 0.0,
                                         cfg.fig2_v_pass_max, n, cfg.ferro_ps, channel);

  Table t;
  t.columns = {"v_pass_v", "efe_single_vpm", "efe_dual_vpm"};
  for (std::size_t i = 0; i < n; ++i)
    t.add_row({c_single[i].first, c_single[i].second, c_dual[i].second});
  w.write_table(w.id, t);

  const double slope_single = c_single.back().second - c_single.front().second;
  const double slope_dual = c_dual.back().second - c_dual.front().second;
  summary = "efe_single_swing_vpm=" + fmt(slope_single) + " efe_dual_swing_vpm=" + fmt(slope_dual);
}

void run_cell_disturb_map(const SimConfig& cfg, Port port, double v_lo, double v_hi, std::size_t n_v,
                          ArtifactWriter& w, std::string& summary) {
  Table t;
  t.columns = {"state", "v_pass_v", "dwell_s", "dvth_v"};
  const auto dwells = logspace(cfg.fig3d_dwell_lo, cfg.fig3d_dwell_hi,
                               static_cast<std::size_t>(cfg.fig3d_dwells_per_decade));
  double worst_lvt = 0.0, worst_hvt = 0.0;
  for (MemState state : {MemState::hvt, MemState::lvt}) {
    const char* label = state == MemState::hvt ? "HVT" : "LVT";
    for (double v : linspace(v_lo, v_hi, n_v)) {
      for (double dwell : dwells) {
        Cell cell = make_cell(cfg, StackVariant::single_port, 0, state);
        const auto res = pass_stress(std::move(cell), port, v, dwell);
        t.add_row({std::string(label), v, dwell, res.dvth_front});
        double& worst = state == MemState::hvt ? worst_hvt : worst_lvt;
        worst = std::max(worst, std::abs(res.dvth_front));
      }
    }
  }
  w.write_table(w.id, t);
  summary = "max_abs_dvth_hvt_v=" + fmt(worst_hvt) + " max_abs_dvth_lvt_v=" + fmt(worst_lvt);
}

NandString make_string(const SimConfig& cfg, StackVariant variant, std::size_t n_cells,
                       const std::vector<MemState>& states, bool selects) {
  std::vector<Cell> cells;
  cells.reserve(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i)
    cells.push_back(make_cell(cfg, variant, i + 1,
                              i < states.size() ? states[i] : MemState::lvt));
  std::optional<SelectTransistor> ssl, gsl;
  if (selects) {
    ssl = SelectTransistor{cfg.scheme_vth_ssl};
    gsl = SelectTransistor{cfg.scheme_vth_ssl};
  }
  return NandString(std::move(cells), variant == StackVariant::dual_port, ssl, gsl);
}

void run_fig3b(const SimConfig& cfg, ArtifactWriter& w, std::string& summary) {
  Table curves;
  curves.columns = {"neighbors", "v_g_v", "i_string_a"};
  Table vths;
  vths.columns = {"neighbors", "vth_sensed_v"};

  const std::size_t n_pts = static_cast<std::size_t>(cfg.read_n_points);

  // Isolated reference: the target cell alone.
  Cell isolated = make_cell(cfg, StackVariant::single_port, 2, MemState::lvt);
  const IvCurve ref = isolated.id_vg(Port::front, cfg.read_v_lo, cfg.read_v_hi, n_pts, cfg.read_v_ds);
  const double vth_isolated =
      extract_vth_constant_current(ref, isolated.params.width, isolated.params.length);
  vths.add_row({std::string("isolated"), vth_isolated});

  double vth_min = vth_isolated, vth_max = vth_isolated;
  for (const std::string combo : {"LL", "LH", "HL", "HH"}) {
    const MemState t1 = combo[0] == 'L' ? MemState::lvt : MemState::hvt;
    const MemState t3 = combo[1] == 'L' ? MemState::lvt : MemState::hvt;
    NandString s = make_string(cfg, StackVariant::single_port, 3, {t1, MemState::lvt, t3}, false);
    const ReadOutcome out = read_target(s, 1, cfg.read_v_lo, cfg.read_v_hi, n_pts, cfg.read_v_pass,
                                        PassPort::write_gate, cfg.read_v_ds);
    for (const IvPoint& p : out.curve) curves.add_row({combo, p.v_gate, p.i_drain});
    if (out.vth_sensed) {
      vths.add_row({combo, *out.vth_sensed});
      vth_min = std::min(vth_min, *out.vth_sensed);
      vth_max = std::max(vth_max, *out.vth_sensed);
    } else {
      vths.add_row({combo, std::string("under-pass")});
    }
  }
  w.write_table(w.id, curves);
  w.write_table(w.id + "_vth", vths);
  summary = "vth_spread_v=" + fmt(vth_max - vth_min);
}

void run_fig3d(const SimConfig& cfg, ArtifactWriter& w, std::string& summary) {
  NandString s = make_string(cfg, StackVariant::single_port, 3,
                             {MemState::lvt, MemState::hvt, MemState::lvt}, false);
  const auto grid = pass_disturb_experiment(
      s, 1, linspace(cfg.fig3d_v_pass_lo, cfg.fig3d_v_pass_hi, static_cast<std::size_t>(cfg.fig3d_n_v)),
      logspace(cfg.fig3d_dwell_lo, cfg.fig3d_dwell_hi,
               static_cast<std::size_t>(cfg.fig3d_dwells_per_decade)),
      PassPort::write_gate);
  Table t;
  t.columns = {"v_pass_v", "dwell_s", "dvth_v"};
  for (const DisturbPoint& p : grid) t.add_row({p.v_pass, p.dwell, p.dvth});
  w.write_table(w.id, t);

  Cell probe = make_cell(cfg, StackVariant::single_port, 1, MemState::hvt);
  const double t_flip = flip_time(probe, cfg.calib_flip_v, 10.0);
  summary = "flip_time_at_" + fmt(cfg.calib_flip_v) + "V_s=" + fmt(t_flip);
}

void run_fig3i(const SimConfig& cfg, ArtifactWriter& w, std::string& summary) {
  Table t;
  t.columns = {"state", "v_pass_v", "dwell_s", "dvth_v"};
  const auto v_values =
      linspace(cfg.fig3i_v_pass_lo, cfg.fig3i_v_pass_hi, static_cast<std::size_t>(cfg.fig3i_n_v));
  const auto dwells = logspace(cfg.fig3d_dwell_lo, cfg.fig3d_dwell_hi,
                               static_cast<std::size_t>(cfg.fig3d_dwells_per_decade));
  double worst = 0.0;
  for (MemState state : {MemState::hvt, MemState::lvt}) {
    const char* label = state == MemState::hvt ? "HVT" : "LVT";
    for (double v : v_values) {
      for (double dwell : dwells) {
        Cell cell = make_cell(cfg, StackVariant::single_port, 1, state);
        const double before = cell.vth(Port::front, 0.0);
        cell = stress_bias(std::move(cell), 0.0, v, dwell);
        const double dvth = cell.vth(Port::front, 0.0) - before;
        t.add_row({std::string(label), v, dwell, dvth});
        worst = std::max(worst, std::abs(dvth));
      }
    }
  }
  w.write_table(w.id, t);
  summary = "max_abs_dvth_v=" + fmt(worst);
}

void hold_all(BiasWaveform& wf, const std::vector<std::string>& terminals,
              const std::map<std::string, double>& levels, double duration) {
  for (const std::string& t : terminals) {
    const auto it = levels.find(t);
    const double v = it == levels.end() ? 0.0 : it->second;
    wf.append(t, v, v, duration);
  }
}

struct Fig4cOutcome {
  StringTrace trace;
  double i_erased_read = 0.0;
  double i_programmed_read = 0.0;
  double read_level = 0.0;
};

Fig4cOutcome run_fig4c_scenario(const SimConfig& cfg, double sample_rate) {
  const std::size_t n = static_cast<std::size_t>(cfg.string_n_wls);
  NandString s = make_string(cfg, StackVariant::dual_port, n,
                             std::vector<MemState>(n, MemState::lvt), true);

  const CellParams& p = s.cells()[0].params;
  const double v_pg = cfg.fig4c_v_pass_pg;
  // Read level centered between the PG-shifted HVT and LVT thresholds.
  const double read_level = p.vth0_front - p.coupling_front * v_pg;

  std::vector<std::string> terminals{"BL", "SL", "PG", "SSL", "GSL"};
  for (std::size_t i = 0; i < n; ++i) terminals.push_back("WL" + std::to_string(i));

  const double t_write = cfg.calib_write_duration;
  const double t_settle = 0.2e-6;
  const double t_read = 0.5e-6;
  const double v_write = cfg.calib_write_amplitude;
  const double v_sel = cfg.scheme_v_cc;

  BiasWaveform wf;
  std::map<std::string, double> erase{{"SSL", v_sel}, {"GSL", v_sel}};
  for (std::size_t i = 0; i < n; ++i) erase["WL" + std::to_string(i)] = -v_write;
  hold_all(wf, terminals, erase, t_write);
  hold_all(wf, terminals, {{"SSL", v_sel}, {"GSL", v_sel}}, t_settle);

  std::map<std::string, double> read{{"BL", cfg.read_v_ds}, {"PG", v_pg}, {"SSL", v_sel},
                                     {"GSL", v_sel}, {"WL3", read_level}};
  hold_all(wf, terminals, read, t_read);
  hold_all(wf, terminals, {{"SSL", v_sel}, {"GSL", v_sel}}, t_settle);

  std::map<std::string, double> program{{"WL3", v_write}, {"SSL", v_sel}, {"GSL", v_sel}};
  hold_all(wf, terminals, program, t_write);
  hold_all(wf, terminals, {{"SSL", v_sel}, {"GSL", v_sel}}, t_settle);

  hold_all(wf, terminals, read, t_read);

  Fig4cOutcome out;
  out.read_level = read_level;
  out.trace = apply_waveform(s, wf, sample_rate);

  const double t_read1_end = t_write + t_settle + t_read;
  const double t_read2_end = wf.total_duration();
  auto current_at = [&](double t_end) {
    double i = 0.0;
    for (const TraceRow& r : out.trace.rows)
      if (r.t <= t_end * (1.0 + 1e-9)) i = r.i_string;
    return i;
  };
  out.i_erased_read = current_at(t_read1_end);
  out.i_programmed_read = current_at(t_read2_end);
  return out;
}

void run_fig4c(const SimConfig& cfg, ArtifactWriter& w, std::string& summary) {
  const Fig4cOutcome out = run_fig4c_scenario(cfg, cfg.fig4c_sample_rate);
  const fs::path path = w.dir / (w.id + ".csv");
  std::ofstream os(path);
  out.trace.write_csv(os);
  os.close();
  w.files.push_back(path.string());
  std::vector<std::string> columns{"t_s", "I_string_A", "node_V_i", "vth_cell_i_V", "efe_cell_i_Vpm"};
  w.write_meta(path, columns, out.trace.rows.size());

  json doc;
  doc["i_erased_read_a"] = out.i_erased_read;
  doc["i_programmed_read_a"] = out.i_programmed_read;
  doc["read_ratio"] = out.i_programmed_read / std::max(out.i_erased_read, 1e-300);
  doc["wl3_read_level_v"] = out.read_level;
  w.write_json(w.id + "_summary", doc,
               {"i_erased_read_a", "i_programmed_read_a", "read_ratio", "wl3_read_level_v"});
  summary = "read_ratio=" + fmt(doc["read_ratio"].get<double>());
}

void run_figs2(const SimConfig& cfg, ArtifactWriter& w, std::string& summary) {
  const std::size_t n = static_cast<std::size_t>(cfg.string_n_wls);
  std::vector<MemState> states(n, MemState::lvt);
  states[std::min<std::size_t>(6, n - 1)] = MemState::hvt;

  Table t;
  t.columns = {"port_mode", "v_pass_v", "cell_index", "p_cpm2", "efe_vpm"};
  double e_single_1 = 0.0, e_single_2 = 0.0, e_dual_0 = 0.0, e_dual_2 = 0.0;
  const std::size_t victim = std::min<std::size_t>(6, n - 1);

  for (const double v_pass : {1.0, 2.0}) {
    NandString s = make_string(cfg, StackVariant::single_port, n, states, false);
    StringBias bias;
    bias.v_bl = cfg.read_v_ds;
    bias.wl.assign(n, v_pass);
    s.set_bias(bias);
    for (std::size_t i = 0; i < n; ++i) {
      const auto sol = field_report(s, i);
      t.add_row({std::string("single"), v_pass, static_cast<double>(i),
                 s.cells()[i].polarization(), sol.fe_field});
      if (i == victim && v_pass == 1.0) e_single_1 = sol.fe_field;
      if (i == victim && v_pass == 2.0) e_single_2 = sol.fe_field;
    }
  }
  for (const double v_pass : {0.0, 1.0, 2.0}) {
    NandString s = make_string(cfg, StackVariant::dual_port, n, states, false);
    StringBias bias;
    bias.v_bl = cfg.read_v_ds;
    bias.wl.assign(n, 0.0);
    bias.v_pg = v_pass;
    s.set_bias(bias);
    for (std::size_t i = 0; i < n; ++i) {
      const auto sol = field_report(s, i);
      t.add_row({std::string("dual"), v_pass, static_cast<double>(i),
                 s.cells()[i].polarization(), sol.fe_field});
      if (i == victim && v_pass == 0.0) e_dual_0 = sol.fe_field;
      if (i == victim && v_pass == 2.0) e_dual_2 = sol.fe_field;
    }
  }
  w.write_table(w.id, t);
  summary = "single_efe_1v_vpm=" + fmt(e_single_1) + " single_efe_2v_vpm=" + fmt(e_single_2) +
            " dual_efe_0v_vpm=" + fmt(e_dual_0) + " dual_efe_2v_vpm=" + fmt(e_dual_2);
}

void run_fig1f(const SimConfig& cfg, ArtifactWriter& w, std::string& summary) {
  const InhibitScheme scheme = make_scheme(cfg);
  const std::size_t n = static_cast<std::size_t>(cfg.fig1f_n_points);

  Table t;
  t.columns = {"mode", "v_pass", "dvth_pass_v", "dvth_prog_v"};
  json report;
  for (PortMode mode : {PortMode::single, PortMode::dual}) {
    const bool single = mode == PortMode::single;
    const ArrayConfig array{make_cell(cfg, single ? StackVariant::single_port : StackVariant::dual_port,
                                      0, MemState::hvt)};
    const double lo = single ? cfg.fig1f_v_lo_single : cfg.fig1f_v_lo_dual;
    const double hi = single ? cfg.fig1f_v_hi_single : cfg.fig1f_v_hi_dual;
    const TradeoffSweep sweep =
        disturb_tradeoff_sweep(array, scheme, lo, hi, n, mode, cfg.fig1f_threshold);

    const char* label = single ? "single" : "dual";
    json points = json::array();
    for (const TradeoffPoint& p : sweep.points) {
      t.add_row({std::string(label), p.v_pass, p.dvth_pass, p.dvth_program});
      points.push_back({{"v_pass", p.v_pass}, {"dvth_pass_v", p.dvth_pass},
                        {"dvth_prog_v", p.dvth_program}});
    }
    report[label] = {{"points", std::move(points)},
                     {"window_lo_v", sweep.window_found ? sweep.window_lo : 0.0},
                     {"window_hi_v", sweep.window_found ? sweep.window_hi : 0.0},
                     {"window_found", sweep.window_found},
                     {"threshold_v", sweep.threshold}};
  }
  w.write_table(w.id, t);
  w.write_json(w.id + "_window", report,
               {"v_pass", "dvth_pass_v", "dvth_prog_v", "window_lo_v", "window_hi_v"});
  summary = "single_window=[" + fmt(report["single"]["window_lo_v"].get<double>()) + "," +
            fmt(report["single"]["window_hi_v"].get<double>()) + "]V dual_window=[" +
            fmt(report["dual"]["window_lo_v"].get<double>()) + "," +
            fmt(report["dual"]["window_hi_v"].get<double>()) + "]V";
}

void run_fig1i(const SimConfig& cfg, ArtifactWriter& w, std::string& summary) {
  SimConfig mc = cfg;
  mc.ferro_n_grains = cfg.dist_n_grains;
  const ArrayConfig array{make_cell(mc, StackVariant::dual_port, 0, MemState::hvt)};
  const VariabilityModel var{cfg.dist_sigma_vth0, cfg.dist_sigma_ea};
  const VthDistribution dist =
      vth_distribution(array, static_cast<std::size_t>(cfg.dist_n_cells), var, make_scheme(cfg),
                       cfg.dist_v_pass, PortMode::dual, cfg.seed_u64());

  Table t;
  t.columns = {"quantile", "vth_pre_v", "vth_post_v"};
  double worst = 0.0;
  const std::size_t n = dist.vth_pre.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    t.add_row({q, dist.vth_pre[i], dist.vth_post[i]});
    worst = std::max(worst, std::abs(dist.vth_post[i] - dist.vth_pre[i]));
  }
  w.write_table(w.id, t);
  summary = "max_quantile_shift_v=" + fmt(worst);
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{
      "fig2g", "fig2h", "fig2k", "fig2l", "fig3b", "fig3d",
      "fig3i", "fig4c", "figS2", "fig1f-tradeoff", "fig1i-dist",
  };
  return ids;
}

bool is_experiment_id(const std::string& id) {
  const auto& ids = experiment_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

ExperimentResult run_experiment(const SimConfig& cfg, const std::string& id,
                                const std::string& out_dir, OutputFormat format) {
  if (!is_experiment_id(id)) {
    std::string valid;
    for (const std::string& s : experiment_ids()) valid += (valid.empty() ? "" : ", ") + s;
    throw ConfigError(id, "unknown experiment id; valid ids: " + valid);
  }
  const auto issues = validate_config(cfg);
  if (!issues.empty())
    throw ConfigError(issues.front().key, issues.front().message);

  fs::create_directories(out_dir);
  ArtifactWriter w{cfg, id, fs::path(out_dir), format, {}};
  std::string summary;

  if (id == "fig2g") run_fig2_curves(cfg, MemState::hvt, w, summary);
  else if (id == "fig2h") run_fig2_curves(cfg, MemState::lvt, w, summary);
  else if (id == "fig2k")
    run_cell_disturb_map(cfg, Port::front, cfg.fig2k_v_pass_lo, cfg.fig2k_v_pass_hi,
                         static_cast<std::size_t>(cfg.fig2k_n_v), w, summary);
  else if (id == "fig2l")
    run_cell_disturb_map(cfg, Port::back, cfg.fig2l_v_pass_lo, cfg.fig2l_v_pass_hi,
                         static_cast<std::size_t>(cfg.fig2l_n_v), w, summary);
  else if (id == "fig3b") run_fig3b(cfg, w, summary);
  else if (id == "fig3d") run_fig3d(cfg, w, summary);
  else if (id == "fig3i") run_fig3i(cfg, w, summary);
  else if (id == "fig4c") run_fig4c(cfg, w, summary);
  else if (id == "figS2") run_figs2(cfg, w, summary);
  else if (id == "fig1f-tradeoff") run_fig1f(cfg, w, summary);
  else if (id == "fig1i-dist") run_fig1i(cfg, w, summary);

  return {id, summary, std::move(w.files)};
}

namespace {

struct CalibMeasurement {
  double flip_time = 0.0;
  double safe_dvth = 0.0;
  double saturation = 0.0;
  double residual = 0.0;
  std::string failing;
};

CalibMeasurement measure(const SimConfig& cfg) {
  CalibMeasurement m;

  Cell hvt = make_cell(cfg, StackVariant::single_port, 0, MemState::hvt);
  m.flip_time = flip_time(hvt, cfg.calib_flip_v, 10.0);

  Cell safe = make_cell(cfg, StackVariant::single_port, 0, MemState::hvt);
  m.safe_dvth = pass_stress(std::move(safe), Port::front, cfg.calib_safe_v, cfg.calib_safe_dwell)
                    .dvth_front;

  Cell to_program = make_cell(cfg, StackVariant::single_port, 0, MemState::hvt);
  to_program = write_pulse(std::move(to_program), cfg.calib_write_amplitude, cfg.calib_write_duration);
  const double sat_up = to_program.ensemble.aligned_fraction(+1);
  Cell to_erase = make_cell(cfg, StackVariant::single_port, 0, MemState::lvt);
  to_erase = write_pulse(std::move(to_erase), -cfg.calib_write_amplitude, cfg.calib_write_duration);
  const double sat_down = to_erase.ensemble.aligned_fraction(-1);
  m.saturation = std::min(sat_up, sat_down);

  const double band = std::log10(3.0);
  double r_flip = 0.0;
  if (!std::isfinite(m.flip_time)) {
    r_flip = 10.0;
  } else {
    const double off = std::abs(std::log10(m.flip_time / cfg.calib_flip_target));
    r_flip = std::max(0.0, off - band);
  }
  const double r_safe = std::max(0.0, (std::abs(m.safe_dvth) - 0.010) / 0.010);
  const double r_sat = std::max(0.0, (cfg.calib_saturation_min - m.saturation) * 20.0);

  m.residual = r_flip + r_safe + r_sat;
  if (r_flip > 0.0) m.failing = "flip-time";
  else if (r_safe > 0.0) m.failing = "no-flip";
  else if (r_sat > 0.0) m.failing = "write-saturation";
  return m;
}

}  // namespace

CalibrationResult calibrate(const SimConfig& base) {
  SimConfig cfg = base;
  CalibMeasurement best = measure(cfg);
  std::size_t moves = 0;

  struct Knob {
    double SimConfig::* member;
    bool log_scale;
    double step;
    double lo, hi;
  };
  std::vector<Knob> knobs{
      {&SimConfig::kinetics_ea_median, true, 0.10, 5e7, 5e9},
      {&SimConfig::kinetics_tau0, true, 0.30, 1e-13, 1e-6},
      {&SimConfig::kinetics_field_exponent, false, 0.25, 1.0, 4.0},
      {&SimConfig::kinetics_ea_sigma, false, 0.02, 0.005, 0.5},
  };

  const std::size_t max_iters = static_cast<std::size_t>(base.calib_max_iterations);
  for (std::size_t iter = 0; iter < max_iters && best.residual > 0.0; ++iter) {
    bool improved = false;
    for (Knob& knob : knobs) {
      for (const double direction : {+1.0, -1.0}) {
        SimConfig trial = cfg;
        double& value = trial.*(knob.member);
        value = knob.log_scale ? value * std::pow(10.0, direction * knob.step)
                               : value + direction * knob.step;
        value = std::clamp(value, knob.lo, knob.hi);
        if (value == cfg.*(knob.member)) continue;
        const CalibMeasurement m = measure(trial);
        if (m.residual < best.residual) {
          cfg = trial;
          best = m;
          ++moves;
          improved = true;
          break;
        }
      }
      if (best.residual == 0.0) break;
    }
    if (!improved) {
      bool any = false;
      for (Knob& knob : knobs) {
        knob.step *= 0.5;
        if (knob.step > (knob.log_scale ? 0.01 : 0.002)) any = true;
      }
      if (!any) break;
    }
  }

  CalibrationResult result;
  result.config = cfg;
  result.moves = moves;
  result.success = best.residual == 0.0;
  result.failing_target = result.success ? "" : best.failing;
  result.flip_time = best.flip_time;
  result.safe_dvth = best.safe_dvth;
  result.saturation = best.saturation;
  result.residual = best.residual;
  return result;
}

}  // namespace fefet

#include "fefetsim/string_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "fefetsim/errors.hpp"

namespace fefet {

namespace {

double softplus(double x) {
  if (x > 35.0) return x;
  if (x < -700.0) return 0.0;
  return std::log1p(std::exp(x));
}

// Saturation prefactor K such that I_D = K * (1 - exp(-V_DS/Vt)).
double cell_k_factor(const Cell& c, double v_gate, double v_source, double v_pg) {
  const CellParams& p = c.params;
  const double vth_eff = c.vth(Port::front, v_pg - v_source);
  const double m_vt = p.ideality() * p.thermal_voltage;
  const double g = softplus((v_gate - v_source - vth_eff) / m_vt);
  return p.transconductance * (p.width / p.length) * m_vt * m_vt * g * g;
}

double select_k_factor(const CellParams& p, double vth, double v_gate, double v_source) {
  const double m_vt = p.ideality() * p.thermal_voltage;
  const double g = softplus((v_gate - v_source - vth) / m_vt);
  return p.transconductance * (p.width / p.length) * m_vt * m_vt * g * g;
}

struct DeviceChain {
  const NandString& s;
  const StringBias& bias;

  std::size_t count() const {
    return s.size() + (s.ssl() ? 1 : 0) + (s.gsl() ? 1 : 0);
  }

  // Device d in BL -> SL order; K at the given source-side potential.
  double k_at(std::size_t d, double v_source) const {
    std::size_t i = d;
    if (s.ssl()) {
      if (i == 0) return select_k_factor(s.cells().front().params, s.ssl()->vth, bias.v_ssl, v_source);
      --i;
    }
    if (i < s.size()) return cell_k_factor(s.cells()[i], bias.wl[i], v_source, bias.v_pg);
    return select_k_factor(s.cells().back().params, s.gsl()->vth, bias.v_gsl, v_source);
  }
};

}  // namespace

NandString::NandString(std::vector<Cell> cells, bool shared_pass_gate,
                       std::optional<SelectTransistor> ssl, std::optional<SelectTransistor> gsl)
    : cells_(std::move(cells)), shared_pass_gate_(shared_pass_gate), ssl_(ssl), gsl_(gsl) {
  if (cells_.empty()) throw std::invalid_argument("string: need at least one cell");
  bias_.wl.assign(cells_.size(), 0.0);
  op_ = solve_string_current(*this, bias_);
}

const StringOperatingPoint& NandString::set_bias(const StringBias& bias) {
  op_ = solve_string_current(*this, bias);
  bias_ = bias;
  return op_;
}

StringOperatingPoint solve_string_current(const NandString& s, const StringBias& bias) {
  if (bias.wl.size() != s.size())
    throw std::invalid_argument("string solve: wl_biases length must equal cell count");

  // Normalize so current flows high -> low; cells are source/drain symmetric.
  const bool reversed = bias.v_bl < bias.v_sl;
  const double v_hi = reversed ? bias.v_sl : bias.v_bl;
  const double v_lo = reversed ? bias.v_bl : bias.v_sl;

  const DeviceChain chain{s, bias};
  const std::size_t n_dev = chain.count();
  const double vt = s.cells().front().params.thermal_voltage;

  // March from the low end toward the high end at a trial current, returning
  // per-device drops. Device order here is low-end first.
  auto march = [&](double i, std::vector<double>& drops) -> double {
    double v = v_lo;
    for (std::size_t step = 0; step < n_dev; ++step) {
      const std::size_t d = reversed ? step : n_dev - 1 - step;
      const double k = chain.k_at(d, v);
      double dv = 0.0;
      if (i > 0.0) {
        if (!(k > i)) return std::numeric_limits<double>::infinity();
        const double ratio = std::min(i / k, 1.0 - 1e-15);
        dv = -vt * std::log1p(-ratio);
      }
      drops[step] = dv;
      v += dv;
    }
    return v;
  };

  std::vector<double> drops(n_dev, 0.0);
  double i_star = 0.0;

  if (v_hi > v_lo) {
    // Upper bracket: the low-end device's saturation current bounds any
    // feasible march start; infeasible trials read as "too much current".
    double hi = chain.k_at(reversed ? 0 : n_dev - 1, v_lo);
    if (hi > 0.0) {
      double lo_i = 0.0;
      for (int it = 0; it < 220; ++it) {
        const double mid = 0.5 * (lo_i + hi);
        if (mid == lo_i || mid == hi) break;
        const double v_end = march(mid, drops);
        if (v_end < v_hi)
          lo_i = mid;
        else
          hi = mid;
      }
      i_star = lo_i;
    }
    const double v_end = march(i_star, drops);
    // A saturated chain cannot absorb arbitrarily large terminal drops; park
    // the residual on the weakest (largest-drop) device.
    if (std::isfinite(v_end) && v_hi - v_end > 1e-9) {
      const auto weakest = std::max_element(drops.begin(), drops.end());
      *weakest += v_hi - v_end;
    }
  }

  StringOperatingPoint op;
  op.current = reversed ? -i_star : i_star;

  // Node potentials from accumulated drops, reported BL end -> SL end.
  std::vector<double> boundary(n_dev + 1);  // boundary[0] at low end
  boundary[0] = v_lo;
  for (std::size_t k = 0; k < n_dev; ++k) boundary[k + 1] = boundary[k] + drops[k];
  // boundary in low->high order equals SL->BL (forward) or BL->SL (reversed).
  std::vector<double> bl_to_sl(n_dev + 1);
  for (std::size_t k = 0; k <= n_dev; ++k)
    bl_to_sl[k] = reversed ? boundary[k] : boundary[n_dev - k];

  op.node_potentials.assign(bl_to_sl.begin() + 1, bl_to_sl.end() - 1);
  const std::size_t cell0 = s.ssl() ? 1 : 0;
  op.cell_source.resize(s.size());
  op.cell_drain.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a = bl_to_sl[cell0 + i];
    const double b = bl_to_sl[cell0 + i + 1];
    op.cell_drain[i] = std::max(a, b);
    op.cell_source[i] = std::min(a, b);
  }
  return op;
}

StringOperatingPoint solve_string_current(const NandString& s, double v_bl, double v_sl,
                                          const std::vector<double>& wl_biases, double v_pg) {
  StringBias b;
  b.v_bl = v_bl;
  b.v_sl = v_sl;
  b.v_pg = v_pg;
  b.wl = wl_biases;
  return solve_string_current(s, b);
}

ReadOutcome read_target(const NandString& s, std::size_t target_index, double v_lo, double v_hi,
                        std::size_t n_points, double v_pass, PassPort pass_port, double v_ds) {
  if (target_index >= s.size()) throw std::out_of_range("read_target: target index");
  if (n_points < 2) throw std::invalid_argument("read_target: need at least 2 points");

  StringBias bias;
  bias.v_bl = v_ds;
  bias.v_sl = 0.0;
  bias.wl.assign(s.size(), 0.0);
  if (pass_port == PassPort::write_gate) {
    for (std::size_t i = 0; i < s.size(); ++i) bias.wl[i] = (i == target_index) ? 0.0 : v_pass;
    bias.v_pg = 0.0;
  } else {
    bias.v_pg = v_pass;
  }

  ReadOutcome out;
  out.curve.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double v =
        v_lo + (v_hi - v_lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    bias.wl[target_index] = v;
    out.curve.push_back({v, solve_string_current(s, bias).current});
  }

  const Cell& target = s.cells()[target_index];
  try {
    out.vth_sensed = extract_vth_constant_current(out.curve, target.params.width, target.params.length);
  } catch (const ExtractionError& e) {
    // Current never reaching the sense level means a pass device limits the
    // string (the under-pass regime); a curve that never drops below the
    // sense level just means the sweep window missed the transition.
    const double i_crit = 1e-7 * target.params.width / target.params.length;
    out.under_pass = e.i_max() < i_crit;
  }
  return out;
}

void BiasWaveform::set(const std::string& terminal, std::vector<WaveformSegment> segments) {
  terminals_[terminal] = std::move(segments);
}

void BiasWaveform::append(const std::string& terminal, double v_start, double v_end,
                          double duration) {
  terminals_[terminal].push_back({v_start, v_end, duration});
}

double BiasWaveform::total_duration() const {
  double total = 0.0;
  for (const auto& [name, segs] : terminals_) {
    double t = 0.0;
    for (const WaveformSegment& seg : segs) t += seg.duration;
    total = std::max(total, t);
  }
  return total;
}

double BiasWaveform::value(const std::string& terminal, double t) const {
  const auto it = terminals_.find(terminal);
  if (it == terminals_.end()) return 0.0;
  double t0 = 0.0;
  for (const WaveformSegment& seg : it->second) {
    if (t <= t0 + seg.duration) {
      const double frac = seg.duration > 0.0 ? (t - t0) / seg.duration : 1.0;
      return seg.v_start + (seg.v_end - seg.v_start) * std::clamp(frac, 0.0, 1.0);
    }
    t0 += seg.duration;
  }
  return it->second.empty() ? 0.0 : it->second.back().v_end;
}

void BiasWaveform::validate(std::size_t n_cells) const {
  if (terminals_.empty()) throw std::invalid_argument("waveform: no terminals");
  double total = -1.0;
  for (const auto& [name, segs] : terminals_) {
    double t = 0.0;
    for (const WaveformSegment& seg : segs) {
      if (!(seg.duration > 0.0))
        throw std::invalid_argument("waveform: segment durations must be > 0 on " + name);
      t += seg.duration;
    }
    if (total < 0.0)
      total = t;
    else if (std::abs(t - total) > 1e-12 * std::max(1.0, total))
      throw std::invalid_argument("waveform: terminal " + name + " does not cover the full duration");
    if (name.rfind("WL", 0) == 0) {
      const std::size_t idx = std::stoul(name.substr(2));
      if (idx >= n_cells) throw std::invalid_argument("waveform: " + name + " out of range");
    }
  }
}

void StringTrace::write_csv(std::ostream& os) const {
  os << "t_s,I_string_A";
  for (std::size_t i = 0; i < n_nodes; ++i) os << ",node_V_" << i;
  for (std::size_t i = 0; i < n_cells; ++i) os << ",vth_cell_" << i << "_V";
  for (std::size_t i = 0; i < n_cells; ++i) os << ",efe_cell_" << i << "_Vpm";
  os << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    os << buf;
  };
  for (const TraceRow& r : rows) {
    put(r.t);
    os << ',';
    put(r.i_string);
    for (double v : r.node_potentials) {
      os << ',';
      put(v);
    }
    for (double v : r.vth_front) {
      os << ',';
      put(v);
    }
    for (double v : r.fe_field) {
      os << ',';
      put(v);
    }
    os << "\n";
  }
}

namespace {

StringBias bias_at(const BiasWaveform& wf, std::size_t n_cells, double t) {
  StringBias b;
  b.v_bl = wf.value("BL", t);
  b.v_sl = wf.value("SL", t);
  b.v_pg = wf.value("PG", t);
  b.v_ssl = wf.value("SSL", t);
  b.v_gsl = wf.value("GSL", t);
  b.wl.resize(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) b.wl[i] = wf.value("WL" + std::to_string(i), t);
  return b;
}

TraceRow make_row(const NandString& s, double t) {
  TraceRow row;
  row.t = t;
  row.i_string = s.operating_point().current;
  row.node_potentials = s.operating_point().node_potentials;
  row.vth_front.resize(s.size());
  row.fe_field.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    row.vth_front[i] = s.cells()[i].vth(Port::front, 0.0);
    row.fe_field[i] = field_report(s, i).fe_field;
  }
  return row;
}

}  // namespace

StringTrace apply_waveform(NandString& s, const BiasWaveform& waveform, double sample_rate) {
  waveform.validate(s.size());
  if (!(sample_rate > 0.0)) throw std::invalid_argument("apply_waveform: sample rate must be > 0");

  const double total = waveform.total_duration();

  // Break time at every segment boundary of every terminal.
  std::vector<double> edges{0.0, total};
  for (const auto& [name, segs] : waveform.terminals()) {
    double t = 0.0;
    for (const WaveformSegment& seg : segs) {
      t += seg.duration;
      if (t < total) edges.push_back(t);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [&](double a, double b) { return std::abs(a - b) < 1e-15 * total; }),
              edges.end());

  StringTrace trace;
  trace.n_cells = s.size();
  trace.n_nodes = s.size() - 1 + (s.ssl() ? 1 : 0) + (s.gsl() ? 1 : 0);

  s.set_bias(bias_at(waveform, s.size(), 0.0));
  trace.rows.push_back(make_row(s, 0.0));

  const double dt_target = 1.0 / sample_rate;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double span = edges[e + 1] - edges[e];
    const std::size_t n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / dt_target)));
    const double dt = span / static_cast<double>(n_steps);
    for (std::size_t k = 0; k < n_steps; ++k) {
      const double t0 = edges[e] + dt * static_cast<double>(k);
      const double t_mid = t0 + 0.5 * dt;
      const StringBias bias = bias_at(waveform, s.size(), t_mid);
      const StringOperatingPoint& op = s.set_bias(bias);
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double ref = 0.5 * (op.cell_source[i] + op.cell_drain[i]);
        s.cells()[i] = stress_bias(std::move(s.cells()[i]), bias.wl[i], bias.v_pg, dt, ref);
      }
      s.set_bias(bias);  // refresh the operating point with evolved polarizations
      trace.rows.push_back(make_row(s, t0 + dt));
    }
  }
  return trace;
}

std::vector<DisturbPoint> pass_disturb_experiment(const NandString& s, std::size_t victim_index,
                                                  const std::vector<double>& v_pass_values,
                                                  const std::vector<double>& dwell_times,
                                                  PassPort pass_port) {
  if (victim_index >= s.size()) throw std::out_of_range("pass_disturb_experiment: victim index");

  std::vector<DisturbPoint> grid;
  grid.reserve(v_pass_values.size() * dwell_times.size());
  for (double v : v_pass_values) {
    for (double dwell : dwell_times) {
      Cell victim = s.cells()[victim_index];
      victim.ensemble.set_all(-1);  // worst case: HVT opposes the pass field
      const double vth_before = victim.vth(Port::front, 0.0);
      victim = pass_port == PassPort::write_gate
                   ? stress_bias(std::move(victim), v, 0.0, dwell)
                   : stress_bias(std::move(victim), 0.0, v, dwell);
      grid.push_back({v, dwell, victim.vth(Port::front, 0.0) - vth_before});
    }
  }
  return grid;
}

ElectrostaticsSolution field_report(const NandString& s, std::size_t cell_index) {
  if (cell_index >= s.size()) throw std::out_of_range("field_report: cell index");
  const Cell& c = s.cells()[cell_index];
  const StringOperatingPoint& op = s.operating_point();
  const double ref = 0.5 * (op.cell_source[cell_index] + op.cell_drain[cell_index]);
  return solve_electrostatics(c.stack, s.bias().wl[cell_index] - ref, s.bias().v_pg - ref,
                              c.polarization(), c.channel);
}

}  // namespace fefet

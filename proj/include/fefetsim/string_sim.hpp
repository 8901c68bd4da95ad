#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fefetsim/cell.hpp"

namespace fefet {

/// Select transistor at a string end: fixed threshold, no memory.
struct SelectTransistor {
  double vth = 0.5;
};

/// Terminal biases for one quasi-static string solve.
struct StringBias {
  double v_bl = 0.0;
  double v_sl = 0.0;
  double v_pg = 0.0;
  std::vector<double> wl;  // one entry per cell, BL end -> SL end
  double v_ssl = 3.3;
  double v_gsl = 3.3;
};

struct StringOperatingPoint {
  double current = 0.0;               // A, positive BL -> SL
  std::vector<double> node_potentials;  // internal nodes, BL end -> SL end
  std::vector<double> cell_source;      // per-cell source-side potential
  std::vector<double> cell_drain;       // per-cell drain-side potential
};

/// Series NAND string of FeFET cells (BL end -> SL end) with optional select
/// transistors. Holds the most recently applied bias point so per-cell field
/// reports refer to the current operating condition.
class NandString {
 public:
  NandString(std::vector<Cell> cells, bool shared_pass_gate,
             std::optional<SelectTransistor> ssl = std::nullopt,
             std::optional<SelectTransistor> gsl = std::nullopt);

  std::size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  std::vector<Cell>& cells() { return cells_; }
  bool shared_pass_gate() const { return shared_pass_gate_; }
  const std::optional<SelectTransistor>& ssl() const { return ssl_; }
  const std::optional<SelectTransistor>& gsl() const { return gsl_; }

  /// Solve and remember the operating point at these biases.
  const StringOperatingPoint& set_bias(const StringBias& bias);
  const StringBias& bias() const { return bias_; }
  const StringOperatingPoint& operating_point() const { return op_; }

 private:
  std::vector<Cell> cells_;
  bool shared_pass_gate_ = false;
  std::optional<SelectTransistor> ssl_, gsl_;
  StringBias bias_;
  StringOperatingPoint op_;
};

/// Unique current carried by every device in the chain, found by outer
/// bisection on I with closed-form per-cell V_DS inversion. An all-off
/// string returns its floor current, not an error.
StringOperatingPoint solve_string_current(const NandString& s, const StringBias& bias);
StringOperatingPoint solve_string_current(const NandString& s, double v_bl, double v_sl,
                                          const std::vector<double>& wl_biases, double v_pg);

struct ReadOutcome {
  IvCurve curve;
  std::optional<double> vth_sensed;
  bool under_pass = false;  // string current never reached the sense level
};

/// Sweep the target word line and sense its threshold through the string.
/// WL mode holds the other word lines at v_pass; PG mode grounds them and
/// drives the shared pass gate at v_pass.
ReadOutcome read_target(const NandString& s, std::size_t target_index, double v_lo, double v_hi,
                        std::size_t n_points, double v_pass, PassPort pass_port, double v_ds);

struct WaveformSegment {
  double v_start = 0.0;
  double v_end = 0.0;
  double duration = 0.0;  // s, > 0
};

/// Piecewise-linear per-terminal schedule. Terminal names: BL, SL, PG,
/// WL0..WL{n-1}, SSL, GSL. Unlisted terminals sit at 0 V. All listed
/// terminals must cover the same total duration.
class BiasWaveform {
 public:
  void set(const std::string& terminal, std::vector<WaveformSegment> segments);
  void append(const std::string& terminal, double v_start, double v_end, double duration);
  /// Hold every listed terminal at its final value for `duration` and any
  /// new terminal at a constant; keeps totals aligned phase by phase.
  double total_duration() const;
  double value(const std::string& terminal, double t) const;
  void validate(std::size_t n_cells) const;  // throws std::invalid_argument
  const std::map<std::string, std::vector<WaveformSegment>>& terminals() const { return terminals_; }

 private:
  std::map<std::string, std::vector<WaveformSegment>> terminals_;
};

struct TraceRow {
  double t = 0.0;
  double i_string = 0.0;
  std::vector<double> node_potentials;
  std::vector<double> vth_front;  // per cell, at zero bias
  std::vector<double> fe_field;   // per cell, V/m
};

struct StringTrace {
  std::size_t n_cells = 0;
  std::size_t n_nodes = 0;
  std::vector<TraceRow> rows;

  /// Columns: t_s, I_string_A, node_V_<i>..., vth_cell_<i>_V..., efe_cell_<i>_Vpm...
  void write_csv(std::ostream& os) const;
};

/// Quasi-static transient: discretize segments at the sample rate, solve the
/// string at each step, then evolve every cell under its instantaneous
/// ferroelectric field (adaptive substeps). Node capacitances are ignored;
/// disturb timescales dwarf RC settling.
StringTrace apply_waveform(NandString& s, const BiasWaveform& waveform, double sample_rate);

struct DisturbPoint {
  double v_pass = 0.0;
  double dwell = 0.0;
  double dvth = 0.0;
};

/// Stress grid: for each (V_PASS, dwell), re-initialize the string with the
/// victim at HVT, hold the stress, and report the victim front-port VTH
/// shift. WL mode drives the victim word line; PG mode drives the shared
/// pass gate with all word lines grounded.
std::vector<DisturbPoint> pass_disturb_experiment(const NandString& s, std::size_t victim_index,
                                                  const std::vector<double>& v_pass_values,
                                                  const std::vector<double>& dwell_times,
                                                  PassPort pass_port);

/// Electrostatics of one cell at the string's current bias point.
ElectrostaticsSolution field_report(const NandString& s, std::size_t cell_index);

}  // namespace fefet

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace fefet {

enum class LayerRole { metal, ferroelectric, dielectric, channel };

struct Layer {
  LayerRole role = LayerRole::dielectric;
  double thickness = 0.0;      // m; ignored for metal
  double permittivity = 1.0;   // relative; ignored for metal
};

/// Sheet-charge model of the channel. The electron branch turns on smoothly
/// above psi_on; an optional hole branch turns on below psi_acc so that
/// negative gate drive is screened by accumulation. Both branches make
/// Q(psi) monotone non-increasing, which keeps the charge balance root
/// unique.
struct ChannelChargeModel {
  double thermal_voltage = 0.02585;   // V
  double turn_on_potential = 0.5;     // psi_on, V
  double accumulation_potential = -0.5;  // psi_acc, V
  double sheet_capacitance = 0.5;     // Cq, F/m^2
  double fixed_sheet_charge = 0.0;    // C/m^2
  bool electrons_enabled = true;      // false gives the Q == 0 stub
  bool holes_enabled = true;

  double charge(double psi) const;        // mobile sheet charge, C/m^2
  double dcharge_dpsi(double psi) const;  // <= 0
};

/// Ordered 1-D gate stack: WG metal, front insulators (exactly one
/// ferroelectric), channel, back insulators, PG metal. Sign conventions:
/// positive fields point from the write gate toward the pass gate, and
/// P > 0 means polarization pointing toward the channel (the LVT-setting
/// direction).
class GateStack {
 public:
  GateStack(std::vector<Layer> layers, double flatband_front = 0.0, double flatband_back = 0.0);

  const std::vector<Layer>& layers() const { return layers_; }
  double flatband_front() const { return flatband_front_; }
  double flatband_back() const { return flatband_back_; }

  std::size_t ferroelectric_index() const { return fe_index_; }
  std::size_t channel_index() const { return channel_index_; }
  const Layer& ferroelectric() const { return layers_[fe_index_]; }

  /// Series capacitance per area of the front insulator group, F/m^2.
  double front_capacitance() const { return c_front_; }
  /// Series capacitance per area of the back insulator group; +inf when the
  /// channel sits directly on the back metal.
  double back_capacitance() const { return c_back_; }
  bool back_pinned() const { return back_insulators_.empty(); }

  /// t_fe / (eps0 * eps_fe): volts of front-loop drop per unit polarization.
  double polarization_drop_coefficient() const { return fe_drop_; }

  const std::vector<std::size_t>& front_insulators() const { return front_insulators_; }
  const std::vector<std::size_t>& back_insulators() const { return back_insulators_; }

 private:
  std::vector<Layer> layers_;
  double flatband_front_ = 0.0;
  double flatband_back_ = 0.0;
  std::size_t fe_index_ = 0;
  std::size_t channel_index_ = 0;
  std::vector<std::size_t> front_insulators_;
  std::vector<std::size_t> back_insulators_;
  double c_front_ = 0.0;
  double c_back_ = 0.0;
  double fe_drop_ = 0.0;
};

struct LayerField {
  LayerRole role;
  double field = 0.0;          // V/m, positive WG -> PG
  double displacement = 0.0;   // C/m^2, includes P inside the ferroelectric
};

struct ElectrostaticsSolution {
  std::vector<LayerField> fields;   // one entry per stack layer, WG -> PG order
  double fe_field = 0.0;            // field in the ferroelectric layer, V/m
  double channel_potential = 0.0;   // psi, V
  double channel_charge = 0.0;      // mobile sheet charge, C/m^2 (<= 0 for electrons)
  double residual = 0.0;            // charge-balance residual expressed in volts
};

/// Solve the stack at the given terminal biases and fixed polarization.
/// psi is found by bracketing bisection on the sheet charge balance
/// D_back - D_front = Q_channel(psi) + Q_fixed (tolerance 1e-12 V); the
/// per-layer fields then follow from the two voltage loops. Throws
/// SolverError if no bracket exists within +/-100 V.
ElectrostaticsSolution solve_electrostatics(const GateStack& stack, double v_wg, double v_pg,
                                            double polarization, const ChannelChargeModel& channel);

/// Ferroelectric field at zero bias: the depolarization field. Opposes P
/// whenever the channel is depleted and P != 0.
double depolarization_field(const GateStack& stack, double polarization,
                            const ChannelChargeModel& channel);

enum class MemState { hvt, lvt };
enum class PassPort { write_gate, pass_gate };

/// E_FE sampled against the pass bias at fixed P (no switching feedback).
/// HVT uses P = -Pr, LVT uses P = +Pr.
std::vector<std::pair<double, double>> efe_vs_vpass_curve(
    const GateStack& stack, MemState state, PassPort pass_port, double v_lo, double v_hi,
    std::size_t n_points, double remanent_polarization, const ChannelChargeModel& channel);

/// dE_FE/dV_PG normalized by its deep-depletion (frozen-charge) value.
/// ~1 with no carriers, << 1 when the channel screens.
double screening_factor(const GateStack& stack, double polarization, double v_pg,
                        const ChannelChargeModel& channel);

}  // namespace fefet

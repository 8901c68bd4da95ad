#pragma once

#include <cstddef>
#include <vector>

#include "fefetsim/electrostatics.hpp"
#include "fefetsim/kinetics.hpp"

namespace fefet {

enum class Port { front, back };

/// Compact-model parameters of one FeFET. Threshold voltages are affine in
/// the polarization and in the opposite-port bias:
///     VTH_port = VTH0_port - gamma_port * P - r_port * V_other.
struct CellParams {
  double width = 1e-6;               // m
  double length = 1e-6;              // m
  double transconductance = 2e-4;    // k, A/V^2 at reference W/L
  double subthreshold_swing = 0.080; // V/decade, >= 60 mV/dec at 300 K
  double vth0_front = 0.0;
  double vth0_back = 0.0;
  double gamma_front = 0.0;          // V per C/m^2
  double gamma_back = 0.0;
  double coupling_front = 0.0;       // r: dVTH_front per volt on the back port
  double coupling_back = 0.0;
  double thermal_voltage = 0.02585;  // V; sets the drain saturation scale

  /// Fill VTH0/gamma/r so the two ports describe the same channel-inversion
  /// line as the stack electrostatics (P = 0 inverts the front port at
  /// psi_on * (1 + C_back/C_front)).
  static CellParams derived_from(const GateStack& stack, const ChannelChargeModel& channel);

  void check() const;
  double ideality() const;            // m = SS / (Vt ln 10)
  double memory_window(double ps) const { return 2.0 * ps * gamma_front; }
};

struct IvPoint {
  double v_gate = 0.0;
  double i_drain = 0.0;
};
using IvCurve = std::vector<IvPoint>;

/// One FeFET: grain ensemble + gate stack + compact parameters. Value
/// semantics; pulse operations return the evolved state.
struct Cell {
  GrainEnsemble ensemble;
  GateStack stack;
  ChannelChargeModel channel;
  CellParams params;
  SwitchingKinetics kinetics;

  double polarization() const { return ensemble.net_polarization(); }
  double vth(Port port, double other_port_bias = 0.0) const;

  /// Single smooth I-V: exponential below VTH, quadratic above, monotone in
  /// both V_G and V_DS. V_G and V_DS are referenced to the source.
  double drain_current(double v_gs, double v_ds, Port sweep_port = Port::front,
                       double other_port_bias = 0.0) const;

  IvCurve id_vg(Port sweep_port, double v_start, double v_stop, std::size_t n_points, double v_ds,
                double other_port_bias = 0.0) const;
};

/// V_G where I_D crosses 1e-7 * (W/L) A, interpolated linearly in log(I_D).
/// Throws ExtractionError when the curve never crosses.
double extract_vth_constant_current(const IvCurve& curve, double width, double length);

/// Hold the given terminal biases for `duration`, evolving the ensemble
/// self-consistently with the stack electrostatics. Substeps adapt so the
/// ferroelectric field drifts < 1% per accepted substep. `channel_reference`
/// is the electron reservoir potential (local string node).
Cell stress_bias(Cell cell, double v_wg, double v_pg, double duration,
                 double channel_reference = 0.0);

/// Write pulse on the ferroelectric (front) port.
Cell write_pulse(Cell cell, double amplitude, double duration);

struct PassStressResult {
  Cell cell;
  double dvth_front = 0.0;  // front-port VTH change at zero bias
};

/// Pass stress on either port; reports the front-port VTH shift.
PassStressResult pass_stress(Cell cell, Port port, double v_pass, double duration);

/// Partial-polarization write for multi-level storage.
Cell program_mlc(Cell cell, double amplitude, double duration);

/// Drain-source conductance I_D / V_DS at a small read bias (V_DS <= 50 mV).
double gds_readout(const Cell& cell, double v_g_read, double v_ds);

/// Time until the front-port VTH shifts by -MW/2 under a front-port stress,
/// or +infinity if it never flips within `max_time`.
double flip_time(const Cell& cell, double v_pass, double max_time);

}  // namespace fefet

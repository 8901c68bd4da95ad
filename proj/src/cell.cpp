#include "fefetsim/cell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fefetsim/errors.hpp"

namespace fefet {

namespace {

double softplus(double x) {
  if (x > 35.0) return x;
  if (x < -700.0) return 0.0;
  return std::log1p(std::exp(x));
}

}  // namespace

CellParams CellParams::derived_from(const GateStack& stack, const ChannelChargeModel& channel) {
  CellParams p;
  const double cf = stack.front_capacitance();
  const double cb = stack.back_capacitance();
  const double r = cb / cf;  // back-to-front coupling ratio
  p.thermal_voltage = channel.thermal_voltage;
  p.gamma_front = stack.polarization_drop_coefficient();
  p.coupling_front = r;
  p.vth0_front = stack.flatband_front() + channel.turn_on_potential * (1.0 + r) +
                 r * (0.0 - stack.flatband_back());
  // The back port sees the same inversion line solved for V_PG.
  p.gamma_back = p.gamma_front / r;
  p.coupling_back = 1.0 / r;
  p.vth0_back = p.vth0_front / r;
  return p;
}

void CellParams::check() const {
  if (!(width > 0.0 && length > 0.0)) throw std::invalid_argument("cell: W and L must be > 0");
  if (!(transconductance > 0.0)) throw std::invalid_argument("cell: k must be > 0");
  if (!(subthreshold_swing >= 0.060)) throw std::invalid_argument("cell: SS must be >= 60 mV/dec");
  if (!(gamma_back / gamma_front > 1.0))
    throw std::invalid_argument("cell: gamma_back/gamma_front must exceed 1");
}

double CellParams::ideality() const {
  return subthreshold_swing / (thermal_voltage * std::log(10.0));
}

double Cell::vth(Port port, double other_port_bias) const {
  const double p = polarization();
  if (port == Port::front)
    return params.vth0_front - params.gamma_front * p - params.coupling_front * other_port_bias;
  return params.vth0_back - params.gamma_back * p - params.coupling_back * other_port_bias;
}

double Cell::drain_current(double v_gs, double v_ds, Port sweep_port, double other_port_bias) const {
  const double vth_eff = vth(sweep_port, other_port_bias);
  const double m_vt = params.ideality() * params.thermal_voltage;
  const double g = softplus((v_gs - vth_eff) / m_vt);
  const double k_eff = params.transconductance * (params.width / params.length);
  return k_eff * m_vt * m_vt * g * g * -std::expm1(-v_ds / params.thermal_voltage);
}

IvCurve Cell::id_vg(Port sweep_port, double v_start, double v_stop, std::size_t n_points,
                    double v_ds, double other_port_bias) const {
  if (n_points < 2) throw std::invalid_argument("id_vg: need at least 2 points");
  IvCurve curve;
  curve.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double v =
        v_start + (v_stop - v_start) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    curve.push_back({v, drain_current(v, v_ds, sweep_port, other_port_bias)});
  }
  return curve;
}

double extract_vth_constant_current(const IvCurve& curve, double width, double length) {
  if (curve.size() < 2) throw std::invalid_argument("vth extraction: need at least 2 points");
  const double i_crit = 1e-7 * width / length;
  double i_min = std::numeric_limits<double>::infinity();
  double i_max = -std::numeric_limits<double>::infinity();
  for (const IvPoint& p : curve) {
    i_min = std::min(i_min, p.i_drain);
    i_max = std::max(i_max, p.i_drain);
  }
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double a = curve[i - 1].i_drain;
    const double b = curve[i].i_drain;
    if ((a - i_crit) * (b - i_crit) <= 0.0 && a != b) {
      if (a <= 0.0 || b <= 0.0) continue;
      const double t = (std::log(i_crit) - std::log(a)) / (std::log(b) - std::log(a));
      return curve[i - 1].v_gate + t * (curve[i].v_gate - curve[i - 1].v_gate);
    }
  }
  throw ExtractionError("no constant-current crossing in curve", i_min, i_max);
}

Cell stress_bias(Cell cell, double v_wg, double v_pg, double duration, double channel_reference) {
  if (duration < 0.0) throw std::invalid_argument("stress: duration must be >= 0");
  if (duration == 0.0) return cell;

  const double v_wg_rel = v_wg - channel_reference;
  const double v_pg_rel = v_pg - channel_reference;

  auto fe_field_at = [&](double p) {
    return solve_electrostatics(cell.stack, v_wg_rel, v_pg_rel, p, cell.channel).fe_field;
  };

  double t = 0.0;
  double dt = std::min(duration, std::max(cell.kinetics.attempt_time, duration * 1e-6));
  double field = fe_field_at(cell.ensemble.net_polarization());
  const double field_floor = 1e4;  // V/m; drift is judged relative to max(|E|, floor)
  const double dt_min = duration * 1e-9;

  while (t < duration * (1.0 - 1e-12)) {
    dt = std::min(dt, duration - t);
    GrainEnsemble trial = cell.ensemble;
    trial.evolve(field, dt, cell.kinetics);
    const double field_new = fe_field_at(trial.net_polarization());
    const double drift = std::abs(field_new - field);
    const double scale = std::max(std::abs(field), field_floor);
    if (drift > 0.01 * scale && dt > dt_min) {
      dt *= 0.5;
      continue;
    }
    cell.ensemble = std::move(trial);
    t += dt;
    field = field_new;
    if (drift < 0.0025 * scale) dt *= 2.0;
  }
  return cell;
}

Cell write_pulse(Cell cell, double amplitude, double duration) {
  if (amplitude == 0.0) return cell;
  return stress_bias(std::move(cell), amplitude, 0.0, duration);
}

PassStressResult pass_stress(Cell cell, Port port, double v_pass, double duration) {
  const double vth_before = cell.vth(Port::front, 0.0);
  Cell after = port == Port::front ? stress_bias(std::move(cell), v_pass, 0.0, duration)
                                   : stress_bias(std::move(cell), 0.0, v_pass, duration);
  const double dvth = after.vth(Port::front, 0.0) - vth_before;
  return {std::move(after), dvth};
}

Cell program_mlc(Cell cell, double amplitude, double duration) {
  return write_pulse(std::move(cell), amplitude, duration);
}

double gds_readout(const Cell& cell, double v_g_read, double v_ds) {
  if (!(v_ds > 0.0 && v_ds <= 0.050))
    throw std::invalid_argument("gds_readout: V_DS must be in (0, 50 mV]");
  return cell.drain_current(v_g_read, v_ds) / v_ds;
}

double flip_time(const Cell& cell, double v_pass, double max_time) {
  // Same substep loop as stress_bias, but watches for the half-window
  // crossing of the front-port VTH and interpolates the crossing time.
  Cell c = cell;
  const double vth0 = c.vth(Port::front, 0.0);
  const double half_mw = 0.5 * c.params.memory_window(c.ensemble.saturation_polarization());

  auto fe_field_at = [&](double p) {
    return solve_electrostatics(c.stack, v_pass, 0.0, p, c.channel).fe_field;
  };

  double t = 0.0;
  double dt = std::max(c.kinetics.attempt_time, max_time * 1e-9);
  double field = fe_field_at(c.ensemble.net_polarization());
  const double field_floor = 1e4;
  const double dt_min = max_time * 1e-12;
  double shift_prev = 0.0;

  while (t < max_time) {
    dt = std::min(dt, max_time - t);
    GrainEnsemble trial = c.ensemble;
    trial.evolve(field, dt, c.kinetics);
    const double field_new = fe_field_at(trial.net_polarization());
    const double drift = std::abs(field_new - field);
    const double scale = std::max(std::abs(field), field_floor);
    if (drift > 0.01 * scale && dt > dt_min) {
      dt *= 0.5;
      continue;
    }
    c.ensemble = std::move(trial);
    t += dt;
    field = field_new;
    const double shift = c.vth(Port::front, 0.0) - vth0;
    if (std::abs(shift) >= half_mw) {
      const double excess = std::abs(shift) - half_mw;
      const double gained = std::abs(shift - shift_prev);
      const double frac = gained > 0.0 ? excess / gained : 0.0;
      return t - dt * std::min(1.0, frac);
    }
    shift_prev = shift;
    if (drift < 0.0025 * scale) dt *= 2.0;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace fefet

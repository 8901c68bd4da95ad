#include "fefetsim/electrostatics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fefetsim/errors.hpp"
#include "fefetsim/units.hpp"

namespace fefet {

namespace {

// Overflow-safe ln(1 + exp(x)).
double softplus(double x) {
  if (x > 35.0) return x;
  if (x < -700.0) return 0.0;
  return std::log1p(std::exp(x));
}

// Logistic sigma(x) = d softplus / dx.
double logistic(double x) {
  if (x > 35.0) return 1.0;
  if (x < -35.0) return std::exp(x);
  return 1.0 / (1.0 + std::exp(-x));
}

}  // namespace

double ChannelChargeModel::charge(double psi) const {
  double q = 0.0;  // mobile part only; the solver adds fixed_sheet_charge itself
  const double vt = thermal_voltage;
  if (electrons_enabled) q -= sheet_capacitance * vt * softplus((psi - turn_on_potential) / vt);
  if (holes_enabled) q += sheet_capacitance * vt * softplus(-(psi - accumulation_potential) / vt);
  return q;
}

double ChannelChargeModel::dcharge_dpsi(double psi) const {
  double d = 0.0;
  const double vt = thermal_voltage;
  if (electrons_enabled) d -= sheet_capacitance * logistic((psi - turn_on_potential) / vt);
  if (holes_enabled) d -= sheet_capacitance * logistic(-(psi - accumulation_potential) / vt);
  return d;
}

GateStack::GateStack(std::vector<Layer> layers, double flatband_front, double flatband_back)
    : layers_(std::move(layers)), flatband_front_(flatband_front), flatband_back_(flatband_back) {
  if (layers_.size() < 4) throw std::invalid_argument("gate stack: need metal/.../channel/.../metal");
  if (layers_.front().role != LayerRole::metal || layers_.back().role != LayerRole::metal)
    throw std::invalid_argument("gate stack: both ends must be metal terminals");

  std::size_t n_fe = 0, n_channel = 0;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& l = layers_[i];
    if (l.role == LayerRole::metal) {
      if (i != 0 && i + 1 != layers_.size())
        throw std::invalid_argument("gate stack: metals only at the two ends");
      continue;
    }
    if (!(l.thickness > 0.0)) throw std::invalid_argument("gate stack: non-metal layer thickness must be > 0");
    if (!(l.permittivity >= 1.0)) throw std::invalid_argument("gate stack: permittivity must be >= 1");
    if (l.role == LayerRole::ferroelectric) {
      n_fe++;
      fe_index_ = i;
    } else if (l.role == LayerRole::channel) {
      n_channel++;
      channel_index_ = i;
    }
  }
  if (n_fe != 1) throw std::invalid_argument("gate stack: exactly one ferroelectric layer required");
  if (n_channel != 1) throw std::invalid_argument("gate stack: exactly one channel layer required");
  if (fe_index_ > channel_index_)
    throw std::invalid_argument("gate stack: ferroelectric must sit on the write-gate side of the channel");

  double s_front = 0.0, s_back = 0.0;
  for (std::size_t i = 1; i < channel_index_; ++i) {
    front_insulators_.push_back(i);
    s_front += layers_[i].thickness / (kEps0 * layers_[i].permittivity);
  }
  for (std::size_t i = channel_index_ + 1; i + 1 < layers_.size(); ++i) {
    back_insulators_.push_back(i);
    s_back += layers_[i].thickness / (kEps0 * layers_[i].permittivity);
  }
  if (front_insulators_.empty())
    throw std::invalid_argument("gate stack: ferroelectric cannot touch the write gate metal directly");
  c_front_ = 1.0 / s_front;
  c_back_ = back_insulators_.empty() ? std::numeric_limits<double>::infinity() : 1.0 / s_back;
  fe_drop_ = layers_[fe_index_].thickness / (kEps0 * layers_[fe_index_].permittivity);
}

namespace {

struct Balance {
  const GateStack& stack;
  double u_front;  // V_WG - fb_front
  double u_back;   // V_PG - fb_back
  double polarization;
  const ChannelChargeModel& channel;

  double d_front(double psi) const {
    return stack.front_capacitance() *
           (u_front - psi + polarization * stack.polarization_drop_coefficient());
  }
  double d_back(double psi) const { return stack.back_capacitance() * (psi - u_back); }

  // Monotone increasing in psi; root is the channel potential.
  double operator()(double psi) const {
    return d_back(psi) - d_front(psi) - channel.charge(psi) - channel.fixed_sheet_charge;
  }
};

double solve_channel_potential(const Balance& f) {
  double lo = std::min(f.u_front, f.u_back) - 1.0;
  double hi = std::max(f.u_front, f.u_back) + 1.0;
  double flo = f(lo), fhi = f(hi);
  while (flo > 0.0 || fhi < 0.0) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    lo = mid - 2.0 * half;
    hi = mid + 2.0 * half;
    if (lo < -100.0 || hi > 100.0) {
      lo = std::max(lo, -100.0);
      hi = std::min(hi, 100.0);
      flo = f(lo);
      fhi = f(hi);
      if (flo > 0.0 || fhi < 0.0)
        throw SolverError("channel potential not bracketable within +/-100 V", lo, hi);
      break;
    }
    flo = f(lo);
    fhi = f(hi);
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ElectrostaticsSolution solve_electrostatics(const GateStack& stack, double v_wg, double v_pg,
                                            double polarization, const ChannelChargeModel& channel) {
  const Balance f{stack, v_wg - stack.flatband_front(), v_pg - stack.flatband_back(), polarization,
                  channel};

  double psi;
  if (stack.back_pinned()) {
    psi = f.u_back;  // channel directly on the back metal: potential pinned
  } else {
    psi = solve_channel_potential(f);
  }

  ElectrostaticsSolution sol;
  sol.channel_potential = psi;
  sol.channel_charge = channel.charge(psi);

  const double df = f.d_front(psi);
  const double db = stack.back_pinned()
                        ? df - sol.channel_charge - channel.fixed_sheet_charge
                        : f.d_back(psi);

  sol.fields.resize(stack.layers().size());
  for (std::size_t i = 0; i < stack.layers().size(); ++i) {
    const Layer& l = stack.layers()[i];
    sol.fields[i].role = l.role;
    sol.fields[i].field = 0.0;
    sol.fields[i].displacement = 0.0;
  }
  for (std::size_t i : stack.front_insulators()) {
    const Layer& l = stack.layers()[i];
    const double p_here = (i == stack.ferroelectric_index()) ? polarization : 0.0;
    sol.fields[i].displacement = df;
    sol.fields[i].field = (df - p_here) / (kEps0 * l.permittivity);
  }
  for (std::size_t i : stack.back_insulators()) {
    const Layer& l = stack.layers()[i];
    sol.fields[i].displacement = db;
    sol.fields[i].field = db / (kEps0 * l.permittivity);
  }
  sol.fe_field = sol.fields[stack.ferroelectric_index()].field;

  const double imbalance = (db - df) - sol.channel_charge - channel.fixed_sheet_charge;
  const double cap_scale = stack.front_capacitance() +
                           (stack.back_pinned() ? 0.0 : stack.back_capacitance()) +
                           std::abs(channel.dcharge_dpsi(psi));
  sol.residual = std::abs(imbalance) / cap_scale;
  return sol;
}

double depolarization_field(const GateStack& stack, double polarization,
                            const ChannelChargeModel& channel) {
  return solve_electrostatics(stack, 0.0, 0.0, polarization, channel).fe_field;
}

std::vector<std::pair<double, double>> efe_vs_vpass_curve(
    const GateStack& stack, MemState state, PassPort pass_port, double v_lo, double v_hi,
    std::size_t n_points, double remanent_polarization, const ChannelChargeModel& channel) {
  if (n_points < 2) throw std::invalid_argument("efe_vs_vpass_curve: need at least 2 points");
  if (!std::isfinite(v_lo) || !std::isfinite(v_hi))
    throw std::invalid_argument("efe_vs_vpass_curve: range must be finite");
  const double p = (state == MemState::lvt ? +1.0 : -1.0) * remanent_polarization;
  std::vector<std::pair<double, double>> curve;
  curve.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double v = v_lo + (v_hi - v_lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    const double v_wg = pass_port == PassPort::write_gate ? v : 0.0;
    const double v_pg = pass_port == PassPort::pass_gate ? v : 0.0;
    curve.emplace_back(v, solve_electrostatics(stack, v_wg, v_pg, p, channel).fe_field);
  }
  return curve;
}

double screening_factor(const GateStack& stack, double polarization, double v_pg,
                        const ChannelChargeModel& channel) {
  if (stack.back_pinned())
    throw std::invalid_argument("screening_factor: stack has no back insulator");
  const double dv = 0.010;
  const double e_hi = solve_electrostatics(stack, 0.0, v_pg + dv, polarization, channel).fe_field;
  const double e_lo = solve_electrostatics(stack, 0.0, v_pg - dv, polarization, channel).fe_field;
  const double slope = (e_hi - e_lo) / (2.0 * dv);
  // Deep-depletion reference: frozen channel charge, pure capacitive divider.
  const double cf = stack.front_capacitance();
  const double cb = stack.back_capacitance();
  const double fe_eps = kEps0 * stack.ferroelectric().permittivity;
  const double deep = -cf * cb / ((cf + cb) * fe_eps);
  return slope / deep;
}

}  // namespace fefet

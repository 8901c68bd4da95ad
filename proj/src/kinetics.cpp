#include "fefetsim/kinetics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fefetsim/rng.hpp"

namespace fefet {

void SwitchingKinetics::check() const {
  if (!(attempt_time > 0.0)) throw std::invalid_argument("kinetics: tau0 must be > 0");
  if (!(field_exponent >= 1.0)) throw std::invalid_argument("kinetics: field exponent must be >= 1");
  if (!(stretch_exponent > 0.0)) throw std::invalid_argument("kinetics: stretch exponent must be > 0");
  if (!(ea_median > 0.0)) throw std::invalid_argument("kinetics: activation-field median must be > 0");
  if (!(ea_sigma >= 0.0)) throw std::invalid_argument("kinetics: activation-field sigma must be >= 0");
}

double switching_time(double field, double activation_field, const SwitchingKinetics& kin) {
  const double mag = std::abs(field);
  if (mag == 0.0) return std::numeric_limits<double>::infinity();
  const double arg = std::pow(activation_field / mag, kin.field_exponent);
  return kin.attempt_time * std::exp(arg);  // exp overflow -> +inf, which is fine
}

GrainEnsemble GrainEnsemble::sample(std::size_t n_grains, const SwitchingKinetics& kin,
                                    std::uint64_t seed, double saturation_polarization) {
  kin.check();
  if (n_grains == 0) throw std::invalid_argument("sample_ensemble: n_grains must be >= 1");
  if (!(saturation_polarization > 0.0))
    throw std::invalid_argument("sample_ensemble: saturation polarization must be > 0");

  GrainEnsemble e;
  e.seed_ = seed;
  e.saturation_polarization_ = saturation_polarization;
  e.grains_.resize(n_grains);
  constexpr std::uint64_t kSampleStream = 0x5A4D504C45ull;  // distinct from evolve() steps
  for (std::size_t i = 0; i < n_grains; ++i) {
    const double z = standard_normal(seed, kSampleStream, i);
    e.grains_[i].activation_field = kin.ea_median * std::exp(kin.ea_sigma * z);
    e.grains_[i].orientation = +1;
    e.grains_[i].progress = 0.0;
  }
  return e;
}

void GrainEnsemble::evolve(double field, double dt, const SwitchingKinetics& kin) {
  if (dt < 0.0) throw std::invalid_argument("evolve: dt must be >= 0");
  if (field == 0.0 || dt == 0.0) return;

  const int field_sign = field > 0.0 ? +1 : -1;
  const double beta = kin.stretch_exponent;
  const std::uint64_t step = step_++;

  for (std::size_t i = 0; i < grains_.size(); ++i) {
    Grain& g = grains_[i];
    if (g.orientation == field_sign) {
      g.progress = 0.0;  // aligned grains never flip; progress de-nucleates
      continue;
    }
    const double tau = switching_time(field, g.activation_field, kin);
    if (!std::isfinite(tau)) continue;
    const double h_old = g.progress;
    const double h_new = h_old + dt / tau;
    // Conditional flip probability given survival to h_old:
    //   p = 1 - S(h_new)/S(h_old), S(h) = exp(-h^beta).
    double p;
    if (h_new > 1e6) {
      p = 1.0;
    } else {
      p = -std::expm1(std::pow(h_old, beta) - std::pow(h_new, beta));
    }
    const double u = u01(hash_mix(seed_, step, i));
    if (u < p) {
      g.orientation = static_cast<std::int8_t>(field_sign);
      g.progress = 0.0;
    } else {
      g.progress = h_new;
    }
  }
}

double GrainEnsemble::net_polarization() const {
  double sum = 0.0;
  for (const Grain& g : grains_) sum += g.orientation;
  return saturation_polarization_ * sum / static_cast<double>(grains_.size());
}

double GrainEnsemble::aligned_fraction(int orientation_sign) const {
  std::size_t n = 0;
  for (const Grain& g : grains_)
    if (g.orientation == orientation_sign) ++n;
  return static_cast<double>(n) / static_cast<double>(grains_.size());
}

void GrainEnsemble::set_all(int orientation_sign) {
  for (Grain& g : grains_) {
    g.orientation = static_cast<std::int8_t>(orientation_sign >= 0 ? +1 : -1);
    g.progress = 0.0;
  }
}

void GrainEnsemble::set_orientation(std::size_t index, int orientation_sign) {
  Grain& g = grains_.at(index);
  g.orientation = static_cast<std::int8_t>(orientation_sign >= 0 ? +1 : -1);
  g.progress = 0.0;
}

}  // namespace fefet

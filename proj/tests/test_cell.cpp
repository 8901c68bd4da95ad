#include "doctest.h"

#include <cmath>

#include "fefetsim/cell.hpp"
#include "fefetsim/config.hpp"
#include "fefetsim/errors.hpp"
#include "fefetsim/units.hpp"

using namespace fefet;

namespace {

Cell default_cell(MemState state, std::uint64_t salt = 0) {
  return make_cell(SimConfig{}, StackVariant::single_port, salt, state);
}

double mw() {
  const SimConfig cfg;
  return make_cell_params(cfg, StackVariant::single_port).memory_window(cfg.ferro_ps);
}

}  // namespace

TEST_CASE("threshold voltage is affine in P and the other-port bias") {
  Cell cell = default_cell(MemState::lvt);

  SUBCASE("zero polarization and zero bias gives VTH0 exactly") {
    Cell c = cell;
    // Half the grains down cancels P exactly (even grain count).
    for (std::size_t i = 0; i < c.ensemble.size() / 2; ++i) c.ensemble.set_orientation(i, -1);
    CHECK(c.polarization() == 0.0);
    CHECK(c.vth(Port::front, 0.0) == c.params.vth0_front);
    CHECK(c.vth(Port::back, 0.0) == c.params.vth0_back);
  }
  SUBCASE("declared slopes, exactly") {
    const double r = cell.params.coupling_front;
    CHECK(cell.vth(Port::front, 1.0) - cell.vth(Port::front, 0.0) == doctest::Approx(-r).epsilon(1e-12));
    const double vth_before = cell.vth(Port::front, 0.0);
    Cell c = cell;
    c.ensemble.set_orientation(0, -1);  // dP = -2 Ps / N
    const double dp = 2.0 * c.ensemble.saturation_polarization() / static_cast<double>(c.ensemble.size());
    CHECK(c.vth(Port::front, 0.0) - vth_before == doctest::Approx(c.params.gamma_front * dp).epsilon(1e-9));
  }
  SUBCASE("memory windows scale with the gamma ratio") {
    const CellParams& p = cell.params;
    const double mw_front = p.memory_window(cell.ensemble.saturation_polarization());
    const double mw_back = 2.0 * p.gamma_back * cell.ensemble.saturation_polarization();
    CHECK(mw_back / mw_front == doctest::Approx(p.gamma_back / p.gamma_front).epsilon(1e-12));
    CHECK(p.gamma_back / p.gamma_front > 1.0);
  }
  SUBCASE("spot arithmetic") {
    Cell c = cell;
    c.params.vth0_front = 0.6;
    c.params.gamma_front = 50.0;  // 5 V per 10 uC/cm^2
    c.ensemble = GrainEnsemble::sample(10, c.kinetics, 1, uc_per_cm2_to_c_per_m2(10.0));
    CHECK(c.vth(Port::front, 0.0) == doctest::Approx(0.6 - 5.0).epsilon(1e-12));
  }
}

TEST_CASE("drain current expression") {
  const Cell cell = default_cell(MemState::lvt);
  const double w_over_l = cell.params.width / cell.params.length;

  SUBCASE("deep subthreshold is many decades down") {
    const double vth = cell.vth(Port::front, 0.0);
    const double v_off = vth - 10.0 * cell.params.subthreshold_swing;
    CHECK(cell.drain_current(v_off, 0.05) < 1e-10 * w_over_l);
  }
  SUBCASE("strictly increasing in gate bias") {
    double prev = -1.0;
    for (const IvPoint& p : cell.id_vg(Port::front, -1.0, 3.0, 81, 0.05)) {
      CHECK(p.i_drain > prev);
      prev = p.i_drain;
    }
  }
  SUBCASE("back-port bias translates the curve by the coupling ratio, exactly") {
    const auto base = cell.id_vg(Port::front, -0.5, 2.5, 61, 0.05, 0.0);
    const auto shifted = cell.id_vg(Port::front, -0.5, 2.5, 61, 0.05, 1.0);
    const double r = cell.params.coupling_front;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double i_translated = cell.drain_current(base[i].v_gate + r, 0.05, Port::front, 1.0);
      CHECK(i_translated == doctest::Approx(base[i].i_drain).epsilon(1e-9));
    }
    CHECK(shifted[30].i_drain > base[30].i_drain);  // positive back bias helps turn-on
  }
}

TEST_CASE("constant-current threshold extraction") {
  SUBCASE("synthetic exponential crossing at 0.30 V") {
    IvCurve curve;
    const double i_crit = 1e-7;  // W = L
    for (int i = 0; i <= 40; ++i) {
      const double v = -0.2 + 0.025 * i;
      curve.push_back({v, i_crit * std::pow(10.0, (v - 0.30) / 0.080)});
    }
    CHECK(extract_vth_constant_current(curve, 1e-6, 1e-6) == doctest::Approx(0.30).epsilon(0.0033));
  }
  SUBCASE("translation equivariance") {
    const Cell cell = default_cell(MemState::lvt);
    auto curve = cell.id_vg(Port::front, -1.0, 2.0, 121, 0.05);
    const double vth = extract_vth_constant_current(curve, cell.params.width, cell.params.length);
    for (IvPoint& p : curve) p.v_gate += 0.2;
    const double vth_shifted =
        extract_vth_constant_current(curve, cell.params.width, cell.params.length);
    CHECK(vth_shifted - vth == doctest::Approx(0.2).epsilon(1e-9));
  }
  SUBCASE("an all-off curve fails with the curve bounds attached") {
    IvCurve curve;
    for (int i = 0; i <= 10; ++i) curve.push_back({0.1 * i, 1e-15});
    CHECK_THROWS_AS(extract_vth_constant_current(curve, 1e-6, 1e-6), ExtractionError);
    try {
      extract_vth_constant_current(curve, 1e-6, 1e-6);
    } catch (const ExtractionError& e) {
      CHECK(e.i_max() == doctest::Approx(1e-15));
    }
  }
}

TEST_CASE("write pulses") {
  SUBCASE("a full write moves at least 80% of the memory window") {
    Cell erased = default_cell(MemState::hvt);
    const double vth_before = erased.vth(Port::front, 0.0);
    Cell written = write_pulse(std::move(erased), 4.0, 1e-6);
    CHECK(written.vth(Port::front, 0.0) - vth_before <= -0.8 * mw());
  }
  SUBCASE("saturating writes erase history") {
    Cell a = default_cell(MemState::hvt);
    a = write_pulse(std::move(a), -4.0, 1e-6);
    a = write_pulse(std::move(a), +4.0, 1e-6);
    Cell b = write_pulse(default_cell(MemState::hvt), +4.0, 1e-6);
    CHECK(a.vth(Port::front, 0.0) ==
          doctest::Approx(b.vth(Port::front, 0.0)).epsilon(0.05));
  }
  SUBCASE("zero amplitude is a no-op") {
    Cell c = default_cell(MemState::hvt);
    const double p = c.polarization();
    c = write_pulse(std::move(c), 0.0, 1e-6);
    CHECK(c.polarization() == p);
  }
}

TEST_CASE("pass stress") {
  SUBCASE("front-port stress flips an HVT cell at the anchor condition") {
    auto res = pass_stress(default_cell(MemState::hvt), Port::front, 2.3, 100e-6);
    CHECK(res.dvth_front <= -0.5 * mw());
  }
  SUBCASE("back-port stress up to 15 V for a second moves nothing") {
    for (MemState state : {MemState::hvt, MemState::lvt}) {
      auto res = pass_stress(default_cell(state), Port::back, 15.0, 1.0);
      CHECK(std::abs(res.dvth_front) < 0.010);
    }
  }
  SUBCASE("zero duration, zero shift") {
    auto res = pass_stress(default_cell(MemState::hvt), Port::front, 2.5, 0.0);
    CHECK(res.dvth_front == 0.0);
  }
  SUBCASE("back-port stress keeps polarization within the screening bound") {
    Cell lvt = default_cell(MemState::lvt);
    const double p_before = lvt.polarization();
    const double ps = lvt.ensemble.saturation_polarization();
    auto res = pass_stress(std::move(lvt), Port::back, 12.0, 1e-3);
    CHECK(std::abs(res.cell.polarization() - p_before) < 1e-3 * ps);
  }
  SUBCASE("front-port HVT disturb grows with time and bias") {
    double prev_mag = -1.0;
    for (double t : {1e-5, 1e-4, 1e-3}) {
      auto res = pass_stress(default_cell(MemState::hvt), Port::front, 2.3, t);
      CHECK(std::abs(res.dvth_front) >= prev_mag - 0.002);
      prev_mag = std::abs(res.dvth_front);
    }
    prev_mag = -1.0;
    for (double v : {1.9, 2.1, 2.3, 2.5}) {
      auto res = pass_stress(default_cell(MemState::hvt), Port::front, v, 1e-4);
      CHECK(std::abs(res.dvth_front) >= prev_mag - 0.002);
      prev_mag = std::abs(res.dvth_front);
    }
  }
  SUBCASE("read-level stress for a second is harmless") {
    const Cell probe = default_cell(MemState::lvt);
    const double v_read = probe.vth(Port::front, 0.0) + 1.0;
    for (MemState state : {MemState::hvt, MemState::lvt}) {
      auto res = pass_stress(default_cell(state), Port::front, v_read, 1.0);
      CHECK(std::abs(res.dvth_front) < 0.010);
    }
  }
}

TEST_CASE("multi-level programming and conductance readout") {
  SUBCASE("amplitudes in the partial-switching window give ordered levels") {
    double prev = -1.0;
    for (double amp : {2.6, 2.9, 3.2, 4.0}) {
      Cell c = program_mlc(default_cell(MemState::hvt), amp, 1e-6);
      const double g = gds_readout(c, 1.8, 0.05);
      CHECK(g > prev);
      prev = g;
    }
  }
  SUBCASE("reading is noiseless") {
    const Cell c = program_mlc(default_cell(MemState::hvt), 3.0, 1e-6);
    const double g0 = gds_readout(c, 1.8, 0.05);
    for (int i = 0; i < 100; ++i) CHECK(gds_readout(c, 1.8, 0.05) == g0);
  }
  SUBCASE("a full-amplitude MLC write equals the LVT write path") {
    const Cell via_mlc = program_mlc(default_cell(MemState::hvt), 4.0, 1e-6);
    const Cell via_write = write_pulse(default_cell(MemState::hvt), 4.0, 1e-6);
    CHECK(gds_readout(via_mlc, 1.8, 0.05) == gds_readout(via_write, 1.8, 0.05));
  }
}

TEST_CASE("cell parameter validation") {
  CellParams p = make_cell_params(SimConfig{}, StackVariant::single_port);
  p.gamma_back = p.gamma_front * 0.5;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
  p = make_cell_params(SimConfig{}, StackVariant::single_port);
  p.subthreshold_swing = 0.050;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
}

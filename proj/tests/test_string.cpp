#include "doctest.h"

#include <cmath>

#include "fefetsim/config.hpp"
#include "fefetsim/string_sim.hpp"

using namespace fefet;

namespace {

NandString make_test_string(const std::vector<MemState>& states, bool shared_pg = false,
                            StackVariant variant = StackVariant::single_port) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < states.size(); ++i)
    cells.push_back(make_cell(SimConfig{}, variant, i + 1, states[i]));
  return NandString(std::move(cells), shared_pg);
}

}  // namespace

TEST_CASE("uniform on-string matches the single-cell divider oracle within 2%") {
  NandString s = make_test_string({MemState::lvt, MemState::lvt, MemState::lvt});
  const auto op = solve_string_current(s, 0.050, 0.0, {2.0, 2.0, 2.0}, 0.0);
  const Cell iso = make_cell(SimConfig{}, StackVariant::single_port, 1, MemState::lvt);
  const double reference = iso.drain_current(2.0, 0.050 / 3.0);
  CHECK(op.current == doctest::Approx(reference).epsilon(0.02));
  CHECK(op.node_potentials.size() == 2);
  CHECK(op.node_potentials[0] > op.node_potentials[1]);  // BL side higher
}

TEST_CASE("one deeply-off cell switches the whole string off") {
  NandString s = make_test_string({MemState::lvt, MemState::lvt, MemState::lvt});
  const Cell& c = s.cells()[1];
  const double wl_off = c.vth(Port::front, 0.0) - 10.0 * c.params.subthreshold_swing;
  const auto op = solve_string_current(s, 0.050, 0.0, {2.0, wl_off, 2.0}, 0.0);
  CHECK(op.current < 1e-9 * c.params.width / c.params.length);
  CHECK(op.current >= 0.0);  // floor current, not an error
}

TEST_CASE("no terminal difference, no current") {
  NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt});
  CHECK(solve_string_current(s, 0.3, 0.3, {2.0, 2.0, 2.0}, 0.0).current == 0.0);
  const auto reversed = solve_string_current(s, 0.0, 0.050, {2.0, 2.0, 2.0}, 0.0);
  CHECK(reversed.current < 0.0);  // SL-to-BL flow reported with its sign
}

TEST_CASE("current continuity: every cell carries the solved current") {
  NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt});
  const std::vector<double> wl{2.2, 2.0, 1.8};
  const auto op = solve_string_current(s, 0.3, 0.0, wl, 0.0);
  REQUIRE(op.current > 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Cell& c = s.cells()[i];
    const double v_s = op.cell_source[i];
    const double i_cell = c.drain_current(wl[i] - v_s, op.cell_drain[i] - v_s, Port::front,
                                          0.0 - v_s);
    CHECK(i_cell == doctest::Approx(op.current).epsilon(1e-12));
  }
}

TEST_CASE("sensed threshold is independent of neighbor states") {
  double vth_min = 1e9, vth_max = -1e9;
  for (int combo = 0; combo < 4; ++combo) {
    NandString s = make_test_string({combo & 1 ? MemState::hvt : MemState::lvt, MemState::lvt,
                                     combo & 2 ? MemState::hvt : MemState::lvt});
    const auto out = read_target(s, 1, -0.5, 2.5, 61, 2.0, PassPort::write_gate, 0.05);
    REQUIRE(out.vth_sensed.has_value());
    vth_min = std::min(vth_min, *out.vth_sensed);
    vth_max = std::max(vth_max, *out.vth_sensed);
  }
  CHECK(vth_max - vth_min < 0.020);

  const Cell iso = make_cell(SimConfig{}, StackVariant::single_port, 2, MemState::lvt);
  const double vth_iso = extract_vth_constant_current(
      iso.id_vg(Port::front, -0.5, 2.5, 61, 0.05), iso.params.width, iso.params.length);
  CHECK(std::abs(vth_max - vth_iso) < 0.020);
  CHECK(std::abs(vth_min - vth_iso) < 0.020);
}

TEST_CASE("a single-cell string reads like the bare cell") {
  NandString s = make_test_string({MemState::lvt});
  const auto out = read_target(s, 0, -0.5, 2.5, 41, 2.0, PassPort::write_gate, 0.05);
  const Cell& c = s.cells()[0];
  const auto curve = c.id_vg(Port::front, -0.5, 2.5, 41, 0.05);
  for (std::size_t i = 0; i < curve.size(); ++i)
    CHECK(out.curve[i].i_drain == doctest::Approx(curve[i].i_drain).epsilon(1e-9));
}

TEST_CASE("pass-gate reads: under-pass at low bias, full current at high bias") {
  NandString low = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt}, true);
  const auto under = read_target(low, 0, -0.5, 2.5, 41, 6.0, PassPort::pass_gate, 0.05);
  CHECK(under.under_pass);
  CHECK_FALSE(under.vth_sensed.has_value());
  double i_under = 0.0;
  for (const IvPoint& p : under.curve) i_under = std::max(i_under, p.i_drain);

  NandString high = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt}, true);
  const auto passed = read_target(high, 0, -4.0, 2.5, 121, 14.0, PassPort::pass_gate, 0.05);
  CHECK_FALSE(passed.under_pass);
  CHECK(passed.vth_sensed.has_value());
  double i_passed = 0.0;
  for (const IvPoint& p : passed.curve) i_passed = std::max(i_passed, p.i_drain);
  CHECK(i_passed > 100.0 * i_under);
}

TEST_CASE("waveform bookkeeping") {
  BiasWaveform wf;
  wf.append("WL0", 0.0, 2.0, 1e-6);
  wf.append("WL0", 2.0, 2.0, 1e-6);
  wf.append("BL", 0.05, 0.05, 2e-6);

  SUBCASE("piecewise-linear lookup") {
    CHECK(wf.value("WL0", 0.0) == 0.0);
    CHECK(wf.value("WL0", 0.5e-6) == doctest::Approx(1.0));
    CHECK(wf.value("WL0", 1.5e-6) == 2.0);
    CHECK(wf.value("SL", 1.0e-6) == 0.0);  // unlisted terminal sits at ground
    CHECK(wf.total_duration() == doctest::Approx(2e-6));
  }
  SUBCASE("mismatched totals are rejected") {
    wf.append("SL", 0.0, 0.0, 1e-6);
    CHECK_THROWS_AS(wf.validate(1), std::invalid_argument);
  }
  SUBCASE("zero-duration segments are rejected") {
    BiasWaveform bad;
    bad.append("BL", 0.0, 1.0, 0.0);
    CHECK_THROWS_AS(bad.validate(1), std::invalid_argument);
  }
  SUBCASE("out-of-range word lines are rejected") {
    CHECK_THROWS_AS(wf.validate(0), std::invalid_argument);
    CHECK_NOTHROW(wf.validate(1));
  }
}

TEST_CASE("an all-zero waveform changes nothing") {
  NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt});
  std::vector<double> vth_before;
  for (const Cell& c : s.cells()) vth_before.push_back(c.vth(Port::front, 0.0));

  BiasWaveform wf;
  for (const char* t : {"BL", "SL", "PG", "WL0", "WL1", "WL2"}) wf.append(t, 0.0, 0.0, 1e-3);
  const auto trace = apply_waveform(s, wf, 1e5);
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(s.cells()[i].vth(Port::front, 0.0) == vth_before[i]);
  CHECK(trace.rows.size() >= 2);
  for (const TraceRow& r : trace.rows) CHECK(r.i_string == 0.0);
}

TEST_CASE("replaying a waveform reproduces the trace exactly") {
  auto run = [] {
    NandString s = make_test_string({MemState::hvt, MemState::lvt, MemState::hvt}, false);
    BiasWaveform wf;
    for (const char* t : {"WL0", "WL2"}) {
      wf.append(t, 0.0, 2.0, 0.5e-6);
      wf.append(t, 2.0, 2.0, 1e-6);
      wf.append(t, 2.0, 0.0, 0.5e-6);
    }
    wf.append("WL1", 0.0, 0.0, 2e-6);
    wf.append("BL", 0.05, 0.05, 2e-6);
    wf.append("SL", 0.0, 0.0, 2e-6);
    wf.append("PG", 0.0, 0.0, 2e-6);
    NandString fresh = s;
    return apply_waveform(fresh, wf, 4e7);
  };
  const auto a = run();
  const auto b = run();
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].t == b.rows[i].t);
    CHECK(a.rows[i].i_string == b.rows[i].i_string);
    for (std::size_t c = 0; c < a.rows[i].vth_front.size(); ++c) {
      CHECK(a.rows[i].vth_front[c] == b.rows[i].vth_front[c]);
      CHECK(a.rows[i].fe_field[c] == b.rows[i].fe_field[c]);
    }
  }
}

TEST_CASE("halving the time step leaves final thresholds within a millivolt") {
  auto run_at = [](double rate) {
    NandString s = make_test_string({MemState::lvt, MemState::lvt, MemState::lvt}, true,
                                    StackVariant::dual_port);
    BiasWaveform wf;
    for (const char* t : {"WL0", "WL1", "WL2"}) {
      wf.append(t, -4.0, -4.0, 1e-6);  // block erase
      wf.append(t, 0.0, 0.0, 0.2e-6);
      wf.append(t, t == std::string("WL1") ? 4.0 : 0.0, t == std::string("WL1") ? 4.0 : 0.0, 1e-6);
      wf.append(t, 0.0, 0.0, 0.2e-6);
    }
    for (const char* t : {"BL", "SL", "PG"}) wf.append(t, 0.0, 0.0, 2.4e-6);
    apply_waveform(s, wf, rate);
    std::vector<double> vth;
    for (const Cell& c : s.cells()) vth.push_back(c.vth(Port::front, 0.0));
    return vth;
  };
  const auto coarse = run_at(1e7);
  const auto halved = run_at(2e7);
  const auto fine = run_at(1.6e8);  // fixed fine-step oracle
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    CHECK(std::abs(coarse[i] - fine[i]) < 1e-3);
    CHECK(std::abs(halved[i] - fine[i]) < 1e-3);
  }
}

TEST_CASE("pass-disturb grids") {
  SUBCASE("word-line stress: flips come sooner at higher bias") {
    NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt});
    const auto grid = pass_disturb_experiment(s, 1, {1.9, 2.1, 2.3, 2.5}, {1e-4}, PassPort::write_gate);
    const double mw = s.cells()[1].params.memory_window(s.cells()[1].ensemble.saturation_polarization());
    REQUIRE(grid.size() == 4);
    for (std::size_t i = 1; i < grid.size(); ++i)
      CHECK(std::abs(grid[i].dvth) >= std::abs(grid[i - 1].dvth) - 0.002);
    CHECK(std::abs(grid.back().dvth) >= 0.5 * mw);  // 2.5 V flipped at 100 us
  }
  SUBCASE("word-line stress at 0.9 V for a second does nothing") {
    NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt});
    const auto grid = pass_disturb_experiment(s, 1, {0.9}, {1.0}, PassPort::write_gate);
    CHECK(std::abs(grid.front().dvth) < 0.010);
  }
  SUBCASE("pass-gate stress never disturbs, up to 15 V and a second") {
    NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt}, true);
    const auto grid = pass_disturb_experiment(s, 1, {5.0, 10.0, 15.0}, {1e-3, 1.0}, PassPort::pass_gate);
    for (const DisturbPoint& p : grid) CHECK(std::abs(p.dvth) < 0.010);
  }
  SUBCASE("a pass-gate waveform moves no polarization") {
    NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt}, true);
    std::vector<double> p_before;
    for (const Cell& c : s.cells()) p_before.push_back(c.polarization());
    BiasWaveform wf;
    wf.append("PG", 0.0, 12.0, 1e-6);
    wf.append("PG", 12.0, 12.0, 1e-3);
    wf.append("PG", 12.0, 0.0, 1e-6);
    wf.append("BL", 0.05, 0.05, 1.002e-3);
    for (const char* t : {"SL", "WL0", "WL1", "WL2"}) wf.append(t, 0.0, 0.0, 1.002e-3);
    apply_waveform(s, wf, 1e6);
    const double ps = s.cells()[0].ensemble.saturation_polarization();
    for (std::size_t i = 0; i < s.size(); ++i)
      CHECK(std::abs(s.cells()[i].polarization() - p_before[i]) < 1e-3 * ps);
  }
}

TEST_CASE("per-cell field reports") {
  SUBCASE("a zero-bias string reports the depolarization field") {
    NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt});
    StringBias bias;
    bias.wl.assign(3, 0.0);
    s.set_bias(bias);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Cell& c = s.cells()[i];
      CHECK(field_report(s, i).fe_field ==
            doctest::Approx(depolarization_field(c.stack, c.polarization(), c.channel)).epsilon(1e-9));
    }
  }
  SUBCASE("word-line pass bias concentrates anti-P field on the HVT victim") {
    NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt});
    StringBias bias;
    bias.v_bl = 0.05;
    bias.wl.assign(3, 1.0);
    s.set_bias(bias);
    const double e1 = field_report(s, 1).fe_field;
    bias.wl.assign(3, 2.0);
    s.set_bias(bias);
    const double e2 = field_report(s, 1).fe_field;
    CHECK(e1 > 0.0);  // anti-P for the HVT cell
    CHECK(e2 > e1);
  }
  SUBCASE("pass-gate bias relieves the HVT victim instead") {
    NandString s = make_test_string({MemState::lvt, MemState::hvt, MemState::lvt}, true,
                                    StackVariant::dual_port);
    StringBias bias;
    bias.v_bl = 0.05;
    bias.wl.assign(3, 0.0);
    s.set_bias(bias);
    const double e0 = field_report(s, 1).fe_field;
    bias.v_pg = 2.0;
    s.set_bias(bias);
    const double e2 = field_report(s, 1).fe_field;
    CHECK(std::abs(e2) <= std::abs(e0));
    CHECK_THROWS_AS(field_report(s, 7), std::out_of_range);
  }
}

TEST_CASE("select transistors join the chain") {
  std::vector<Cell> cells;
  for (int i = 0; i < 3; ++i)
    cells.push_back(make_cell(SimConfig{}, StackVariant::single_port, i + 1, MemState::lvt));
  NandString with_selects(std::move(cells), false, SelectTransistor{0.5}, SelectTransistor{0.5});
  StringBias bias;
  bias.v_bl = 0.05;
  bias.wl.assign(3, 2.0);
  bias.v_ssl = 3.3;
  bias.v_gsl = 3.3;
  const auto op = solve_string_current(with_selects, bias);
  CHECK(op.node_potentials.size() == 4);
  CHECK(op.current > 0.0);

  bias.v_ssl = 0.0;  // cut the string at the select gate
  const auto cut = solve_string_current(with_selects, bias);
  CHECK(cut.current < 1e-12 * op.current);
}

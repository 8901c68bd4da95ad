#include "doctest.h"

#include <cmath>

#include "fefetsim/config.hpp"
#include "fefetsim/errors.hpp"

using namespace fefet;

TEST_CASE("unit-suffixed values parse to SI") {
  const SimConfig cfg = parse_config(
      "stack.t_fe = \"12 nm\"\n"
      "kinetics.tau0 = \"2.2 ns\"\n"
      "kinetics.ea_median = \"3.8 MV/cm\"\n"
      "ferro.ps = \"1.8 uC/cm^2\"\n"
      "cell.subthreshold_swing = \"80 mV/dec\"\n"
      "scheme.v_cc = \"3300 mV\"\n"
      "kinetics.field_exponent = 2.5\n"
      "ferro.n_grains = 512\n"
      "# a comment line\n");
  CHECK(cfg.stack_t_fe == doctest::Approx(12e-9).epsilon(1e-12));
  CHECK(cfg.kinetics_tau0 == doctest::Approx(2.2e-9).epsilon(1e-12));
  CHECK(cfg.kinetics_ea_median == doctest::Approx(3.8e8).epsilon(1e-12));
  CHECK(cfg.ferro_ps == doctest::Approx(0.018).epsilon(1e-12));
  CHECK(cfg.cell_subthreshold_swing == doctest::Approx(0.080).epsilon(1e-12));
  CHECK(cfg.scheme_v_cc == doctest::Approx(3.3).epsilon(1e-12));
  CHECK(cfg.kinetics_field_exponent == 2.5);
  CHECK(cfg.ferro_n_grains == 512);
}

TEST_CASE("schema violations name the offending key") {
  SUBCASE("unknown key") {
    try {
      parse_config("stack.t_oxide = \"1 nm\"\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "stack.t_oxide");
    }
  }
  SUBCASE("duplicate key") {
    CHECK_THROWS_AS(parse_config("seed = 1\nseed = 2\n"), ConfigError);
  }
  SUBCASE("missing unit on a physical value") {
    try {
      parse_config("stack.t_fe = 10\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "stack.t_fe");
    }
  }
  SUBCASE("unknown unit") {
    CHECK_THROWS_AS(parse_config("stack.t_fe = \"10 parsec\"\n"), ConfigError);
  }
  SUBCASE("counts must be non-negative integers") {
    CHECK_THROWS_AS(parse_config("ferro.n_grains = 10.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("ferro.n_grains = -3\n"), ConfigError);
  }
  SUBCASE("not a number") {
    CHECK_THROWS_AS(parse_config("kinetics.ea_sigma = wide\n"), ConfigError);
  }
  SUBCASE("malformed line") {
    CHECK_THROWS_AS(parse_config("seed 1\n"), ConfigError);
  }
}

TEST_CASE("serialization round-trips losslessly") {
  SimConfig cfg;
  cfg.kinetics_tau0 = 3.07e-10;
  cfg.ferro_ps = 0.0171234567890123;
  cfg.cell_vth0_front = 0.5991;  // explicit override of a derived default
  const std::string text = serialize_config(cfg);
  const SimConfig back = parse_config(text);
  CHECK(back.kinetics_tau0 == cfg.kinetics_tau0);
  CHECK(back.ferro_ps == cfg.ferro_ps);
  CHECK(back.cell_vth0_front == cfg.cell_vth0_front);
  CHECK(serialize_config(back) == text);
  CHECK(config_hash(back) == config_hash(cfg));

  SimConfig other = cfg;
  other.seed = 99;
  CHECK(config_hash(other) != config_hash(cfg));
}

TEST_CASE("derived cell parameters fill in and overrides win") {
  const SimConfig cfg;
  const CellParams derived = make_cell_params(cfg, StackVariant::single_port);
  CHECK(derived.gamma_back / derived.gamma_front ==
        doctest::Approx(1.0 / derived.coupling_front).epsilon(1e-9));

  SimConfig with_override = cfg;
  with_override.cell_gamma_front = 10.0;
  const CellParams overridden = make_cell_params(with_override, StackVariant::single_port);
  CHECK(overridden.gamma_front == 10.0);

  // The canonical echo exposes the effective derived values.
  const std::string text = serialize_config(cfg);
  CHECK(text.find("cell.vth0_front") != std::string::npos);
  CHECK(text.find("nan") == std::string::npos);
}

TEST_CASE("validation reports named physics violations without simulating") {
  SUBCASE("defaults are clean") { CHECK(validate_config(SimConfig{}).empty()); }
  SUBCASE("negative thickness") {
    SimConfig cfg;
    cfg.stack_t_fe = -1e-9;
    const auto issues = validate_config(cfg);
    REQUIRE_FALSE(issues.empty());
    bool named = false;
    for (const Diagnostic& d : issues) named |= d.key == "stack.t_fe";
    CHECK(named);
  }
  SUBCASE("scheme ordering") {
    SimConfig cfg;
    cfg.scheme_v_pgm = 1.0;
    const auto issues = validate_config(cfg);
    bool named = false;
    for (const Diagnostic& d : issues) named |= d.key == "scheme.v_pgm";
    CHECK(named);
  }
  SUBCASE("several violations aggregate") {
    SimConfig cfg;
    cfg.stack_t_fe = 0.0;
    cfg.kinetics_field_exponent = 0.5;
    cfg.ferro_ps = -1.0;
    CHECK(validate_config(cfg).size() >= 3);
  }
}

TEST_CASE("overrides use the same value syntax as files") {
  SimConfig cfg;
  apply_override(cfg, "kinetics.tau0", "\"1.5 ns\"");
  CHECK(cfg.kinetics_tau0 == doctest::Approx(1.5e-9).epsilon(1e-12));
  apply_override(cfg, "kinetics.tau0", "2 ns");  // quotes optional
  CHECK(cfg.kinetics_tau0 == doctest::Approx(2e-9).epsilon(1e-12));
  CHECK_THROWS_AS(apply_override(cfg, "kinetics.tau", "\"1 ns\""), ConfigError);
}

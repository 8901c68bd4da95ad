// Command-line front end. Links only the C API.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fefetsim/fefetsim.h"

namespace {

struct Session {
  fefet_session* handle = fefet_session_create();
  ~Session() { fefet_session_destroy(handle); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { fefet_string_free(ptr); }
};

int report(fefet_session* session, fefet_status status, const char* verb) {
  std::fprintf(stderr, "fefetsim: %s failed (%s): %s\n", verb, fefet_status_name(status),
               fefet_session_last_error(session));
  return static_cast<int>(status);
}

int apply_common(fefet_session* session, const std::string& config_path, bool seed_set,
                 std::uint64_t seed, const std::vector<std::string>& overrides) {
  if (!config_path.empty()) {
    const fefet_status st = fefet_session_load_config(session, config_path.c_str());
    if (st != FEFET_OK) return report(session, st, "loading config");
  }
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "fefetsim: --set expects key=value, got '%s'\n", kv.c_str());
      return static_cast<int>(FEFET_ERR_INVALID_ARGUMENT);
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    const fefet_status st = fefet_session_set_option(session, key.c_str(), value.c_str());
    if (st != FEFET_OK) return report(session, st, "applying override");
  }
  if (seed_set) fefet_session_set_seed(session, seed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fefetsim: FeFET NAND string disturb simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", format = "csv", experiment_id;
  std::string calib_out = "calibrated.cfg";
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file");
    cmd->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_set = true; });
    cmd->add_option("--set", overrides, "override, e.g. --set kinetics.tau0=\"2.2 ns\"");
  };

  CLI::App* run = app.add_subcommand("run", "run one experiment");
  run->add_option("experiment", experiment_id, "experiment id (see `list`)")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_common(run);

  CLI::App* calibrate = app.add_subcommand("calibrate", "tune switching kinetics to the anchors");
  calibrate->add_option("--out", calib_out, "calibrated config file to write");
  add_common(calibrate);

  CLI::App* validate = app.add_subcommand("validate", "check a configuration without simulating");
  add_common(validate);

  app.add_subcommand("list", "list experiment ids");

  CLI11_PARSE(app, argc, argv);

  Session session;
  if (!session.handle) {
    std::fprintf(stderr, "fefetsim: out of memory\n");
    return 1;
  }

  if (app.got_subcommand("list")) {
    OwnedString ids;
    fefet_experiment_list(&ids.ptr);
    std::fputs(ids.ptr, stdout);
    return 0;
  }

  if (const int rc = apply_common(session.handle, config_path, seed_set, seed, overrides)) return rc;

  if (app.got_subcommand("validate")) {
    OwnedString diagnostics, text;
    const fefet_status st = fefet_session_validate(session.handle, &diagnostics.ptr);
    if (st != FEFET_OK) return report(session.handle, st, "validate");
    fefet_session_config_text(session.handle, &text.ptr);
    std::fputs(text.ptr, stdout);
    const bool clean = std::string(diagnostics.ptr) == "[]";
    if (!clean) std::fprintf(stderr, "%s\n", diagnostics.ptr);
    return clean ? 0 : 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  if (app.got_subcommand("calibrate")) {
    OwnedString summary;
    const fefet_status st = fefet_session_calibrate(session.handle, calib_out.c_str(), &summary.ptr);
    if (st != FEFET_OK) return report(session.handle, st, "calibrate");
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("calibrate: %s wrote=%s elapsed=%.2fs\n", summary.ptr, calib_out.c_str(), elapsed);
    return 0;
  }

  OwnedString summary;
  const fefet_status st =
      fefet_session_run(session.handle, experiment_id.c_str(), out_dir.c_str(), format.c_str(),
                        &summary.ptr);
  if (st != FEFET_OK) return report(session.handle, st, "run");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s: %s elapsed=%.2fs\n", experiment_id.c_str(), summary.ptr ? summary.ptr : "",
              elapsed);
  return 0;
}

#include "fefetsim/fefetsim.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "json.hpp"

#include "fefetsim/config.hpp"
#include "fefetsim/errors.hpp"
#include "fefetsim/experiments.hpp"

using nlohmann::json;

struct fefet_session {
  fefet::SimConfig config;
  std::string last_error;
};

namespace {

char* copy_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fefet_status fail(fefet_session* session, fefet_status status, const std::string& message) {
  if (session) session->last_error = message;
  return status;
}

// Translate a thrown error into a status code, recording the message.
template <typename Fn>
fefet_status guarded(fefet_session* session, Fn&& fn) {
  try {
    return fn();
  } catch (const fefet::ConfigError& e) {
    return fail(session, FEFET_ERR_CONFIG, e.what());
  } catch (const fefet::SolverError& e) {
    return fail(session, FEFET_ERR_SOLVER, e.what());
  } catch (const fefet::ExtractionError& e) {
    return fail(session, FEFET_ERR_EXTRACTION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(session, FEFET_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(session, FEFET_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* fefet_version(void) { return fefet::kVersion; }

const char* fefet_status_name(fefet_status status) {
  switch (status) {
    case FEFET_OK: return "ok";
    case FEFET_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case FEFET_ERR_CONFIG: return "config-error";
    case FEFET_ERR_UNKNOWN_EXPERIMENT: return "unknown-experiment";
    case FEFET_ERR_SOLVER: return "solver-failure";
    case FEFET_ERR_EXTRACTION: return "extraction-failure";
    case FEFET_ERR_CALIBRATION: return "calibration-failure";
    case FEFET_ERR_IO: return "io-error";
    case FEFET_ERR_INTERNAL: return "internal-error";
  }
  return "unknown-status";
}

fefet_session* fefet_session_create(void) { return new (std::nothrow) fefet_session(); }

void fefet_session_destroy(fefet_session* session) { delete session; }

const char* fefet_session_last_error(const fefet_session* session) {
  return session ? session->last_error.c_str() : "";
}

fefet_status fefet_session_load_config(fefet_session* session, const char* path) {
  if (!session || !path) return fail(session, FEFET_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(session, [&]() {
    session->config = fefet::load_config_file(path);
    return FEFET_OK;
  });
}

fefet_status fefet_session_set_option(fefet_session* session, const char* key, const char* value) {
  if (!session || !key || !value)
    return fail(session, FEFET_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(session, [&]() {
    fefet::apply_override(session->config, key, value);
    return FEFET_OK;
  });
}

fefet_status fefet_session_set_seed(fefet_session* session, uint64_t seed) {
  if (!session) return FEFET_ERR_INVALID_ARGUMENT;
  session->config.seed = static_cast<double>(seed);
  return FEFET_OK;
}

fefet_status fefet_session_config_text(const fefet_session* session, char** text) {
  if (!session || !text) return FEFET_ERR_INVALID_ARGUMENT;
  *text = copy_string(fefet::serialize_config(session->config));
  return *text ? FEFET_OK : FEFET_ERR_INTERNAL;
}

fefet_status fefet_session_validate(const fefet_session* session, char** diagnostics_json) {
  if (!session || !diagnostics_json) return FEFET_ERR_INVALID_ARGUMENT;
  json list = json::array();
  for (const fefet::Diagnostic& d : fefet::validate_config(session->config))
    list.push_back({{"key", d.key}, {"message", d.message}});
  *diagnostics_json = copy_string(list.dump(2));
  return *diagnostics_json ? FEFET_OK : FEFET_ERR_INTERNAL;
}

fefet_status fefet_session_run(fefet_session* session, const char* experiment_id,
                               const char* out_dir, const char* format, char** summary) {
  if (!session || !experiment_id || !out_dir)
    return fail(session, FEFET_ERR_INVALID_ARGUMENT, "null argument");
  if (!fefet::is_experiment_id(experiment_id)) {
    std::string valid;
    for (const std::string& s : fefet::experiment_ids())
      valid += (valid.empty() ? "" : ", ") + s;
    return fail(session, FEFET_ERR_UNKNOWN_EXPERIMENT,
                "unknown experiment '" + std::string(experiment_id) + "'; valid ids: " + valid);
  }
  fefet::OutputFormat fmt = fefet::OutputFormat::csv;
  if (format && std::strlen(format) > 0) {
    if (std::strcmp(format, "csv") == 0) fmt = fefet::OutputFormat::csv;
    else if (std::strcmp(format, "json") == 0) fmt = fefet::OutputFormat::json;
    else return fail(session, FEFET_ERR_INVALID_ARGUMENT,
                     "format must be 'csv' or 'json', got '" + std::string(format) + "'");
  }
  return guarded(session, [&]() {
    const fefet::ExperimentResult result =
        fefet::run_experiment(session->config, experiment_id, out_dir, fmt);
    if (summary) *summary = copy_string(result.summary);
    return FEFET_OK;
  });
}

fefet_status fefet_session_calibrate(fefet_session* session, const char* out_path, char** summary) {
  if (!session) return FEFET_ERR_INVALID_ARGUMENT;
  return guarded(session, [&]() {
    const fefet::CalibrationResult result = fefet::calibrate(session->config);
    char line[256];
    std::snprintf(line, sizeof line,
                  "moves=%zu flip_time_s=%.6g safe_dvth_v=%.6g saturation=%.6g residual=%.6g",
                  result.moves, result.flip_time, result.safe_dvth, result.saturation,
                  result.residual);
    if (!result.success) {
      return fail(session, FEFET_ERR_CALIBRATION,
                  "calibration target '" + result.failing_target + "' unreachable; " + line);
    }
    session->config = result.config;
    if (out_path) {
      std::ofstream os(out_path);
      if (!os) return fail(session, FEFET_ERR_IO, "cannot write " + std::string(out_path));
      os << fefet::serialize_config(result.config);
    }
    if (summary) *summary = copy_string(line);
    return FEFET_OK;
  });
}

fefet_status fefet_experiment_list(char** ids) {
  if (!ids) return FEFET_ERR_INVALID_ARGUMENT;
  std::string joined;
  for (const std::string& s : fefet::experiment_ids()) joined += s + "\n";
  *ids = copy_string(joined);
  return *ids ? FEFET_OK : FEFET_ERR_INTERNAL;
}

void fefet_string_free(char* text) { delete[] text; }

}  // extern "C"

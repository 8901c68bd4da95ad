/* fefetsim C API: opaque session handle + error codes over the C++ core.
 * All functions are thread-compatible: one session per thread, or external
 * locking. Strings returned through char** are owned by the caller and must
 * be released with fefet_string_free(). */

#ifndef FEFETSIM_H
#define FEFETSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FEFET_API __declspec(dllexport)
#else
#define FEFET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fefet_status {
  FEFET_OK = 0,
  FEFET_ERR_INVALID_ARGUMENT = 1,
  FEFET_ERR_CONFIG = 2,            /* schema violation; detail names the key */
  FEFET_ERR_UNKNOWN_EXPERIMENT = 3,
  FEFET_ERR_SOLVER = 4,            /* electrostatics/string solve failed */
  FEFET_ERR_EXTRACTION = 5,        /* no constant-current crossing */
  FEFET_ERR_CALIBRATION = 6,       /* targets unreachable; detail has residuals */
  FEFET_ERR_IO = 7,
  FEFET_ERR_INTERNAL = 8
} fefet_status;

typedef struct fefet_session fefet_session;

FEFET_API const char* fefet_version(void);
FEFET_API const char* fefet_status_name(fefet_status status);

/* Session lifecycle. A fresh session carries the built-in defaults. */
FEFET_API fefet_session* fefet_session_create(void);
FEFET_API void fefet_session_destroy(fefet_session* session);

/* Human-readable detail of the most recent failure on this session. The
 * pointer stays valid until the next call on the same session. */
FEFET_API const char* fefet_session_last_error(const fefet_session* session);

/* Replace the session configuration from a config file. */
FEFET_API fefet_status fefet_session_load_config(fefet_session* session, const char* path);

/* Apply one `key`/`value` override; value syntax matches the file format
 * (e.g. key "kinetics.tau0", value "\"2.2 ns\"" or "2.2 ns"). */
FEFET_API fefet_status fefet_session_set_option(fefet_session* session, const char* key,
                                                const char* value);

FEFET_API fefet_status fefet_session_set_seed(fefet_session* session, uint64_t seed);

/* Canonical serialization of the effective configuration. */
FEFET_API fefet_status fefet_session_config_text(const fefet_session* session, char** text);

/* Schema + physics sanity diagnostics as a JSON array (empty array when
 * valid); never runs a simulation. */
FEFET_API fefet_status fefet_session_validate(const fefet_session* session, char** diagnostics_json);

/* Run one experiment; artifacts are written under out_dir. format is "csv"
 * or "json" (NULL means csv). Summary receives a one-line result string. */
FEFET_API fefet_status fefet_session_run(fefet_session* session, const char* experiment_id,
                                         const char* out_dir, const char* format, char** summary);

/* Calibrate switching kinetics against the configured anchors; on success
 * the session adopts the tuned parameters and, when out_path is non-NULL,
 * the calibrated config file is written there. */
FEFET_API fefet_status fefet_session_calibrate(fefet_session* session, const char* out_path,
                                               char** summary);

/* Newline-separated list of experiment ids. */
FEFET_API fefet_status fefet_experiment_list(char** ids);

FEFET_API void fefet_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FEFETSIM_H */

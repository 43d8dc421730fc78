/* Copyright 2026 The nwa Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef NWA_NWA_H_
#define NWA_NWA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NWA_API __declspec(dllexport)
#else
#define NWA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 2 and 3 double as the CLI exit codes for configuration and data
 * errors. */
typedef enum nwa_status {
  NWA_OK = 0,
  NWA_ERR_INTERNAL = 1,
  NWA_ERR_CONFIG = 2,
  NWA_ERR_DATA = 3,
  NWA_ERR_CALIBRATION = 4,
  NWA_ERR_COVERAGE = 5,
  NWA_ERR_DIMENSION = 6,
  NWA_ERR_ARGUMENT = 7
} nwa_status;

typedef struct nwa_config nwa_config;
typedef struct nwa_session nwa_session;

NWA_API const char* nwa_version(void);
/* Message of the last failing call on this thread; never NULL. */
NWA_API const char* nwa_last_error(void);
NWA_API const char* nwa_status_name(nwa_status status);
/* Maps a status to the CLI exit code: 0, 2 (config), 3 (data) or 1. */
NWA_API int nwa_exit_code(nwa_status status);

/* Strings returned through `char**` are owned by the caller. */
NWA_API void nwa_string_free(char* s);

NWA_API nwa_status nwa_config_new(nwa_config** out);
NWA_API void nwa_config_free(nwa_config* config);
/* Keys are the CLI flag names without dashes, e.g. "scenario", "judge-mode". */
NWA_API nwa_status nwa_config_set(nwa_config* config, const char* key, const char* value);
/* `command` is one of "calibrate", "run", "serve", "report". */
NWA_API nwa_status nwa_config_validate(const nwa_config* config, const char* command);

/* Writes calibration.json under the output directory; returns its text. */
NWA_API nwa_status nwa_calibrate(const nwa_config* config, char** json_out);
/* Runs the configured grid, writes the artifacts, returns the text report. */
NWA_API nwa_status nwa_run(const nwa_config* config, char** report_out);
/* Renders the report.csv found under the output directory. */
NWA_API nwa_status nwa_report(const nwa_config* config, char** report_out);
/* Serves the live session over HTTP until the stream ends (with
 * "exit-on-end") or `*interrupt` becomes non-zero. */
NWA_API nwa_status nwa_serve(const nwa_config* config, const volatile int* interrupt);

/* In-process live session stepped by the caller. */
NWA_API nwa_status nwa_session_open(const nwa_config* config, nwa_session** out);
NWA_API void nwa_session_close(nwa_session* session);
/* Processes one slot; `*more` is 0 once the stream is exhausted. */
NWA_API nwa_status nwa_session_advance(nwa_session* session, int* more);
/* Inbound wire message; a malformed one queues an error event and fails. */
NWA_API nwa_status nwa_session_send(nwa_session* session, const char* message);
NWA_API nwa_status nwa_session_request_explanation(nwa_session* session);
/* Next outbound event line, or NULL when none is buffered. */
NWA_API nwa_status nwa_session_poll(nwa_session* session, char** line_out);

/* Best cluster-to-class assignment of an m x m row-major count matrix
 * (rows are clusters). */
NWA_API nwa_status nwa_best_mapping(const uint64_t* counts, size_t m, int* labels_out, uint64_t* matched_out);
/* Mean cross-entropy of `n` rows of `n_classes` probabilities. */
NWA_API nwa_status nwa_cross_entropy(const int* truth, const double* proba, size_t n, size_t n_classes,
                                     double* out);

#ifdef __cplusplus
}
#endif

#endif /* NWA_NWA_H_ */

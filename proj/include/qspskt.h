/*
 * qspskt - C API for the QSP Solovay-Kitaev toolkit.
 *
 * All functions return a qspskt_status; 0 means success. Strings returned
 * through char** are heap-allocated and must be released with
 * qspskt_string_free. Protocols are opaque handles released with
 * qspskt_protocol_free. The last error message for the calling thread is
 * available via qspskt_last_error.
 */

#ifndef QSPSKT_H
#define QSPSKT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qspskt_status {
    QSPSKT_OK = 0,
    QSPSKT_ERR_PRECONDITION = 2,
    QSPSKT_ERR_CONVERGENCE = 3,
    QSPSKT_ERR_PARSE = 4,
    QSPSKT_ERR_INTERNAL = 5
} qspskt_status;

typedef struct qspskt_protocol qspskt_protocol;

const char* qspskt_version(void);

/* Thread-local message describing the most recent failure. */
const char* qspskt_last_error(void);

void qspskt_string_free(char* s);
void qspskt_protocol_free(qspskt_protocol* p);

/* Protocol JSON parsing / serialization (see docs for the schema). */
qspskt_status qspskt_protocol_parse(const char* json, qspskt_protocol** out);
qspskt_status qspskt_protocol_to_json(const qspskt_protocol* p, char** json_out);

/* Evaluate at one signal: writes the 2x2 matrix as
 * [re(a), im(a), re(b), im(b), re(c), im(c), re(d), im(d)]. */
qspskt_status qspskt_protocol_eval(const qspskt_protocol* p, double x, double matrix_out[8]);

/* Full evaluation report over a grid (unitary entries, Pauli form,
 * projections per node) as a JSON document. */
qspskt_status qspskt_protocol_eval_report(const qspskt_protocol* p, const double* xs, size_t n,
                                          char** json_out);

/* Phase fitting: target is a ChebSeries JSON document. On success writes the
 * fitted protocol JSON and the sup residual. On convergence failure the best
 * protocol found is still written when best_json_out is non-NULL. */
qspskt_status qspskt_fit(const char* target_series_json, int degree, double tolerance,
                         int symmetric, uint64_t seed, char** protocol_json_out,
                         double* residual_out);

/* Full synthesis pipeline; config_json accepts
 * {"epsilon0":..., "degree0":..., "max_levels":..., "force_levels":...,
 *  "seed":..., "builder":"phase-finder"|"fourier-lcu"}.
 * ledger_json_out receives the per-level epsilon/length/residual table. */
qspskt_status qspskt_synthesize(const char* target_series_json, double epsilon,
                                const char* config_json, char** protocol_json_out,
                                char** ledger_json_out);

/* Named verification suites; report_json_out receives a row-per-check table.
 * Unknown names fail with QSPSKT_ERR_PRECONDITION and a message listing the
 * available suites. */
qspskt_status qspskt_verify(const char* suite_name, char** report_json_out);

#ifdef __cplusplus
}
#endif

#endif /* QSPSKT_H */

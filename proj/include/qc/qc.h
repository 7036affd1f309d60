#ifndef QC_QC_H
#define QC_QC_H

/* C interface to the verification library.  Every handle is opaque and owned by the
 * caller once returned; free it with the matching *_free.  Functions returning qc_status
 * leave a message for qc_last_error() on failure (per thread). */

#include <stddef.h>

#if defined(_WIN32)
#define QC_API __declspec(dllexport)
#else
#define QC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qc_status {
  QC_OK = 0,
  QC_ERR_CONFIG = 1,
  QC_ERR_ARGUMENT = 2,
  QC_ERR_DOMAIN = 3,
  QC_ERR_REGION = 4,
  QC_ERR_WINDOW = 5,
  QC_ERR_INVARIANT = 6,
  QC_ERR_INTERNAL = 7
} qc_status;

typedef struct qc_config qc_config;
typedef struct qc_report qc_report;
typedef struct qc_hseries qc_hseries;

QC_API const char* qc_version(void);
/* Message of the last failing call on this thread; "" when none. */
QC_API const char* qc_last_error(void);
QC_API const char* qc_status_name(qc_status s);

/* Configuration.  Defaults: rational curve, K = 6, window [-10, 10], max_mode 10,
 * cartan A1, suite "all", bidegree "all".  Setters store values; validation happens in
 * qc_config_validate and qc_run. */
QC_API qc_status qc_config_new(qc_config** out);
QC_API void qc_config_free(qc_config* c);
/* Overlay keys from a JSON object. */
QC_API qc_status qc_config_load_json(qc_config* c, const char* json_text);
QC_API qc_status qc_config_set_curve(qc_config* c, const char* name);
QC_API qc_status qc_config_set_K(qc_config* c, int K);
QC_API qc_status qc_config_set_window(qc_config* c, int lo, int hi);
QC_API qc_status qc_config_set_max_mode(qc_config* c, int max_mode);
QC_API qc_status qc_config_set_cartan(qc_config* c, const char* name);
QC_API qc_status qc_config_set_suite(qc_config* c, const char* name);
QC_API qc_status qc_config_set_bidegree(qc_config* c, const char* name);
QC_API qc_status qc_config_validate(const qc_config* c);

/* subcommand: kernels, cartan, serre, shuffle, gram, canonical, verify-all */
QC_API qc_status qc_run(const qc_config* c, const char* subcommand, qc_report** out);
QC_API const char* qc_report_json(const qc_report* r);
QC_API int qc_report_passed(const qc_report* r);
QC_API void qc_report_free(qc_report* r);

/* Truncated series in hbar with rational coefficients written "p/q". */
QC_API qc_status qc_hseries_new(int K, qc_hseries** out);
QC_API void qc_hseries_free(qc_hseries* h);
QC_API int qc_hseries_order(const qc_hseries* h);
QC_API qc_status qc_hseries_set(qc_hseries* h, int i, const char* rational);
/* Writes coefficient i into buf (NUL-terminated when cap > 0); returns the length needed
 * without the NUL, or 0 on error. */
QC_API size_t qc_hseries_get(const qc_hseries* h, int i, char* buf, size_t cap);
QC_API qc_status qc_hseries_add(const qc_hseries* a, const qc_hseries* b, qc_hseries** out);
QC_API qc_status qc_hseries_mul(const qc_hseries* a, const qc_hseries* b, qc_hseries** out);
QC_API qc_status qc_hseries_inv(const qc_hseries* a, qc_hseries** out);
QC_API qc_status qc_hseries_exp(const qc_hseries* a, qc_hseries** out);
QC_API qc_status qc_hseries_log(const qc_hseries* a, qc_hseries** out);

#ifdef __cplusplus
}
#endif

#endif

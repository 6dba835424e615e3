/*
 * mmf - multivariate multiplicative functions on finite integer domains.
 *
 * C interface to the shared library: opaque handles plus JSON-in/JSON-out
 * experiment entry points.  Every function returns a status code; on failure
 * mmf_last_error() carries a message for the calling thread.  Strings returned
 * through out-parameters are heap-allocated and must be released with
 * mmf_string_free().
 */

#ifndef MMF_H
#define MMF_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define MMF_OK 0
#define MMF_ERR_INTERNAL 1
#define MMF_ERR_CONFIG 2
#define MMF_ERR_RESOURCE 3
#define MMF_ERR_NUMERIC 4

typedef int mmf_status;

typedef struct mmf_domain mmf_domain;
typedef struct mmf_rng mmf_rng;

const char* mmf_version(void);

/* message describing the most recent failure on this thread ("" if none) */
const char* mmf_last_error(void);

void mmf_string_free(char* s);

/* ---- domains ---------------------------------------------------------- */

/* spec_json: {"type":"rectangle","dims":[3,4]}, {"type":"hyperbolic","d":2,"n":100}, ... */
mmf_status mmf_domain_create(const char* spec_json, mmf_domain** out);
void mmf_domain_free(mmf_domain* d);

mmf_status mmf_domain_dim(const mmf_domain* d, int32_t* out);
mmf_status mmf_domain_cardinality(const mmf_domain* d, int64_t* out);

/* lo/hi must hold dim entries */
mmf_status mmf_domain_bounding_box(const mmf_domain* d, int64_t* lo, int64_t* hi);

/* out: 1 if the point belongs to the domain, 0 otherwise */
mmf_status mmf_domain_contains(const mmf_domain* d, const int64_t* coords, int32_t dim,
                               int32_t* out);

/* CSV, one point per row with header "x1,...,xd"; path "-" writes to stdout */
mmf_status mmf_domain_write_csv(const mmf_domain* d, const char* path);

/* ---- sampling --------------------------------------------------------- */

mmf_rng* mmf_rng_create(uint64_t seed);
void mmf_rng_free(mmf_rng* r);

/* strategy: "auto", "materialized" or "rejection"; out holds dim coords */
mmf_status mmf_domain_sample(const mmf_domain* d, mmf_rng* rng, const char* strategy,
                             int64_t* out);

/* ---- experiments (JSON config in, JSON report out) --------------------- */

mmf_status mmf_diagnose(const char* config_json, char** report_json);
mmf_status mmf_limit_compare(const char* config_json, char** report_json);
mmf_status mmf_mean_value(const char* config_json, char** report_json);
mmf_status mmf_series_check(const char* config_json, char** report_json);
mmf_status mmf_sample_limit(const char* config_json, char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MMF_H */

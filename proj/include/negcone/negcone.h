/* C interface to the negative-curve cone verifier. All handles are opaque;
 * every call returns a status code, and the message of the last failure on
 * the calling thread is available from negcone_last_error(). */
#ifndef NEGCONE_H
#define NEGCONE_H

#include <stddef.h>
#include <stdint.h>

#if defined(NEGCONE_BUILDING_LIBRARY)
#define NEGCONE_API __attribute__((visibility("default")))
#else
#define NEGCONE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum negcone_status {
  NEGCONE_OK = 0,
  NEGCONE_VERIFICATION_FAILURE = 1,
  NEGCONE_BUDGET_EXCEEDED = 2,
  NEGCONE_CATALOG_VIOLATION = 3,
  NEGCONE_INVALID_ARGUMENT = 4
} negcone_status;

typedef struct negcone_space negcone_space;
typedef struct negcone_config negcone_config;
typedef struct negcone_result negcone_result;

NEGCONE_API const char* negcone_version(void);
NEGCONE_API const char* negcone_last_error(void);

/* Catalogs. `id` is "m05" or "m06". */
NEGCONE_API negcone_status negcone_space_create(const char* id, negcone_space** out);
NEGCONE_API void negcone_space_destroy(negcone_space* space);
NEGCONE_API negcone_status negcone_space_counts(const negcone_space* space, size_t* curves, size_t* divisors,
                                                size_t* rank);
/* Name of catalog curve or divisor `index`; the pointer lives as long as the
 * handle. */
NEGCONE_API negcone_status negcone_space_curve_name(const negcone_space* space, size_t index, const char** name);
NEGCONE_API negcone_status negcone_space_divisor_name(const negcone_space* space, size_t index, const char** name);
/* Intersection number of two classes written as text ("2H-E1", "l-e12"),
 * stored as an integer or "p/q" string into buf (NUL terminated). */
NEGCONE_API negcone_status negcone_pair(const negcone_space* space, const char* divisor, const char* curve, char* buf,
                                        size_t len);

/* Commands: verify-eff, enumerate-nefmin, orbits, face, oracle, fixtures,
 * report-contractions, check-cert. */
NEGCONE_API negcone_status negcone_config_create(const char* command, const char* space, negcone_config** out);
NEGCONE_API void negcone_config_destroy(negcone_config* config);
/* Keys: route, criteria, what, curve, cover (repeatable), input, max-size,
 * max-rays, max-seconds, trials, seed, drop-kv, perturb-curve. */
NEGCONE_API negcone_status negcone_config_set(negcone_config* config, const char* key, const char* value);

/* Runs the command. The returned status is the command's exit status; a
 * result handle is produced whenever the command ran. */
NEGCONE_API negcone_status negcone_run(const negcone_config* config, negcone_result** out);
NEGCONE_API const char* negcone_result_json(const negcone_result* result);
NEGCONE_API const char* negcone_result_summary(const negcone_result* result);
NEGCONE_API void negcone_result_destroy(negcone_result* result);

#ifdef __cplusplus
}
#endif

#endif

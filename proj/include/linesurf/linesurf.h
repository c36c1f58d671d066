#ifndef LINESURF_LINESURF_H
#define LINESURF_LINESURF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LSF_API __declspec(dllexport)
#else
#define LSF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values leave a message in lsf_last_error(). */
typedef enum lsf_status {
    LSF_OK = 0,
    LSF_ERR_STRUCTURAL = 1,         /* malformed field or object */
    LSF_ERR_DEGENERATE = 2,         /* degenerate geometric input */
    LSF_ERR_UNSUPPORTED = 3,        /* operation not available for this field */
    LSF_ERR_CHAR_GATE = 4,          /* needs characteristic 0 or p > d */
    LSF_ERR_NOT_ON_SURFACE = 5,
    LSF_ERR_SINGULAR_POINT = 6,
    LSF_ERR_PRECONDITION = 7,
    LSF_ERR_PARSE = 8,
    LSF_ERR_INCONSISTENT = 9,       /* a computed invariant violates a known identity */
    LSF_ERR_TRUNCATION_CAP = 10,
    LSF_ERR_INCOMPLETE_INPUT = 11,
    LSF_ERR_IO = 12,
    LSF_ERR_EXTENSION_REQUIRED = 13,
    LSF_ERR_INTERNAL = 99
} lsf_status;

typedef struct lsf_surface lsf_surface;
typedef struct lsf_census lsf_census;

LSF_API const char *lsf_version(void);

/* Message of the last failing call on this thread; empty after success. */
LSF_API const char *lsf_last_error(void);

/* Frees strings returned through char** out-parameters. */
LSF_API void lsf_string_free(char *s);

/* Field specs: "Q", "F<q>", "F<p>^<k>/<modulus>", "Q^<k>/<modulus>". */
LSF_API lsf_status lsf_surface_parse(const char *field_spec, const char *equation, lsf_surface **out);
LSF_API void lsf_surface_free(lsf_surface *s);
LSF_API int lsf_surface_degree(const lsf_surface *s);
LSF_API lsf_status lsf_surface_field(const lsf_surface *s, char **out);
LSF_API lsf_status lsf_surface_equation(const lsf_surface *s, char **out);

/* Searches for singular points over F_{q^k}, k <= k_max; JSON report. */
LSF_API lsf_status lsf_smoothness_probe(const lsf_surface *s, int k_max, char **json_out);

/* Exhaustive scan of the Grassmannian over a finite field. jobs = 0 uses
 * the hardware concurrency. */
LSF_API lsf_status lsf_scan(const lsf_surface *s, unsigned jobs, lsf_census **out);

/* Keeps the candidate lines lying on the surface; rejected candidates are
 * reported as a JSON array when rejected_json is not NULL. */
LSF_API lsf_status lsf_verify_lines(const lsf_surface *s, const char *lines_text, lsf_census **out,
                                    char **rejected_json);

/* 3d^2 lines of the Fermat surface of degree d, one per row. */
LSF_API lsf_status lsf_fermat_lines(const char *field_spec, int d, char **lines_text);

/* Field spec recorded in a census document. */
LSF_API lsf_status lsf_census_field_spec(const char *json, char **out);

LSF_API lsf_status lsf_census_parse(const lsf_surface *s, const char *json, lsf_census **out);
LSF_API lsf_status lsf_census_render(const lsf_census *c, char **json_out);
LSF_API void lsf_census_free(lsf_census *c);
LSF_API size_t lsf_census_size(const lsf_census *c);

/* Counts of first-kind, second-kind and unclassified lines, and the sum of
 * known multiplicities. Any pointer may be NULL. */
LSF_API lsf_status lsf_census_summary(const lsf_census *c, size_t *first, size_t *second, size_t *unclassified,
                                      int64_t *mult_sum);

/* Sets the kind of every line. */
LSF_API lsf_status lsf_classify(lsf_census *c, unsigned jobs);

/* Builds the flecnodal eliminant with a random plane derived from seed,
 * then sets kinds and multiplicities. Returns LSF_ERR_INCONSISTENT when the
 * results violate the degree or multiplicity identities. */
LSF_API lsf_status lsf_flecnodal(lsf_census *c, uint64_t seed, unsigned jobs);

/* Consistency audit of a classified, measured census. *all_hold is 1 when
 * no verdict fails. */
LSF_API lsf_status lsf_audit(const lsf_census *c, char **json_out, int *all_hold);

/* Closed-form bounds for degree d >= 3. */
LSF_API lsf_status lsf_bounds(int64_t d, char **json_out);

#ifdef __cplusplus
}
#endif

#endif

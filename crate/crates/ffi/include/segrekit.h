#ifndef SEGREKIT_H
#define SEGREKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The nonzero values below 6 match the exit codes of the
 * command-line tool.
 */
typedef enum SegrekitStatus {
  SEGREKIT_STATUS_OK = 0,
  SEGREKIT_STATUS_ERROR = 1,
  SEGREKIT_STATUS_CHECK_FAILED = 2,
  SEGREKIT_STATUS_GENERICITY = 3,
  SEGREKIT_STATUS_BUDGET = 4,
  SEGREKIT_STATUS_PARSE = 5,
  SEGREKIT_STATUS_NULL_POINTER = 6,
  SEGREKIT_STATUS_INVALID_UTF8 = 7,
  SEGREKIT_STATUS_PANIC = 8,
} SegrekitStatus;

/**
 * A parsed ideal file.
 */
typedef struct SegrekitInput SegrekitInput;

/**
 * A command with its options.
 */
typedef struct SegrekitJob SegrekitJob;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *segrekit_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *segrekit_last_error(void);

/**
 * Parses the text of an ideal file into `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SegrekitStatus segrekit_input_parse(const char *text, struct SegrekitInput **out);

/**
 * Number of variables of the ring declared by an input. Returns 0 for null.
 *
 * # Safety
 * `input` must be null or a handle from [`segrekit_input_parse`].
 */
size_t segrekit_input_num_vars(const struct SegrekitInput *input);

/**
 * Number of generators of an input. Returns 0 for null.
 *
 * # Safety
 * `input` must be null or a handle from [`segrekit_input_parse`].
 */
size_t segrekit_input_num_gens(const struct SegrekitInput *input);

/**
 * # Safety
 * `input` must be null or a handle from [`segrekit_input_parse`] that has not
 * been freed.
 */
void segrekit_input_free(struct SegrekitInput *input);

/**
 * Creates a job for `command` (`sv`, `segre`, `mass-check`, `gysin`, `mult`,
 * `segre-numbers`, `check-gata1` or `check-roundtrip`) with default options.
 *
 * # Safety
 * `command` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SegrekitStatus segrekit_job_new(const char *command, struct SegrekitJob **out);

/**
 * # Safety
 * `job` must be null or a handle from [`segrekit_job_new`] that has not been
 * freed.
 */
void segrekit_job_free(struct SegrekitJob *job);

/**
 * # Safety
 * `job` must be a live job handle.
 */
enum SegrekitStatus segrekit_job_set_seed(struct SegrekitJob *job, uint64_t seed);

/**
 * # Safety
 * `job` must be a live job handle.
 */
enum SegrekitStatus segrekit_job_set_trials(struct SegrekitJob *job, size_t trials);

/**
 * Twist of the section family; 0 restores the default.
 *
 * # Safety
 * `job` must be a live job handle.
 */
enum SegrekitStatus segrekit_job_set_twist(struct SegrekitJob *job, uint32_t twist);

/**
 * Maximum S-pairs per Gröbner basis; 0 restores the default.
 *
 * # Safety
 * `job` must be a live job handle.
 */
enum SegrekitStatus segrekit_job_set_budget(struct SegrekitJob *job, size_t max_pairs);

/**
 * Field override: `q`, `fp` or `fp:<prime>`; null restores the file's choice.
 *
 * # Safety
 * `job` must be a live job handle and `field` null or a NUL-terminated string.
 */
enum SegrekitStatus segrekit_job_set_field(struct SegrekitJob *job, const char *field);

/**
 * Complete-intersection degrees for `check-gata1` and `gysin`.
 *
 * # Safety
 * `job` must be a live job handle and `twists` point to `len` integers.
 */
enum SegrekitStatus segrekit_job_set_twists(struct SegrekitJob *job,
                                            const int64_t *twists,
                                            size_t len);

/**
 * Expected local dimension for `mult`; negative restores automatic detection.
 *
 * # Safety
 * `job` must be a live job handle.
 */
enum SegrekitStatus segrekit_job_set_dim(struct SegrekitJob *job, int64_t dim);

/**
 * Ambient dimension for `gysin`.
 *
 * # Safety
 * `job` must be a live job handle.
 */
enum SegrekitStatus segrekit_job_set_ambient(struct SegrekitJob *job, size_t ambient);

/**
 * Integer class coefficients `c_0, c_1, ...` for `gysin`.
 *
 * # Safety
 * `job` must be a live job handle and `coeffs` point to `len` integers.
 */
enum SegrekitStatus segrekit_job_set_class(struct SegrekitJob *job,
                                           const int64_t *coeffs,
                                           size_t len);

/**
 * Variable set to 1 before local computations; null clears it.
 *
 * # Safety
 * `job` must be a live job handle and `var` null or a NUL-terminated string.
 */
enum SegrekitStatus segrekit_job_set_chart(struct SegrekitJob *job, const char *var);

/**
 * Point moved to the origin before local computations.
 *
 * # Safety
 * `job` must be a live job handle and `coords` point to `len` integers.
 */
enum SegrekitStatus segrekit_job_set_point(struct SegrekitJob *job,
                                           const int64_t *coords,
                                           size_t len);

/**
 * Runs `job` on `input` (which may be null for `gysin`) and stores the JSON
 * report in `*json_out`. A failed check still produces a report and returns
 * [`SegrekitStatus::CheckFailed`].
 *
 * # Safety
 * `job` must be a live job handle, `input` null or a live input handle, and
 * `json_out` a valid pointer.
 */
enum SegrekitStatus segrekit_run(const struct SegrekitJob *job,
                                 const struct SegrekitInput *input,
                                 char **json_out);

/**
 * Releases a string returned by [`segrekit_run`].
 *
 * # Safety
 * `s` must be null or a string from this library that has not been freed.
 */
void segrekit_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEGREKIT_H */

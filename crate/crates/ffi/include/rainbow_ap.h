#ifndef RAINBOW_AP_H
#define RAINBOW_AP_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RapBalance {
  RAP_BALANCE_EQUINUMEROUS = 0,
  RAP_BALANCE_NEAR_EQUINUMEROUS = 1,
  RAP_BALANCE_BALANCED = 2,
  RAP_BALANCE_UNBALANCED = 3,
} RapBalance;

typedef enum RapSearchStatus {
  RAP_SEARCH_STATUS_FOUND = 0,
  RAP_SEARCH_STATUS_EXHAUSTED = 1,
  RAP_SEARCH_STATUS_BUDGET_EXCEEDED = 2,
} RapSearchStatus;

typedef enum RapStatus {
  RAP_STATUS_OK = 0,
  RAP_STATUS_NULL_POINTER = 1,
  RAP_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed coloring text or JSON.
   */
  RAP_STATUS_PARSE = 3,
  /**
   * An argument outside the domain of the operation.
   */
  RAP_STATUS_INVALID_ARGUMENT = 4,
  RAP_STATUS_UNKNOWN_SUITE = 5,
  /**
   * The output buffer is too small; the required size was written.
   */
  RAP_STATUS_BUFFER_TOO_SMALL = 6,
  RAP_STATUS_PANIC = 7,
} RapStatus;

typedef enum RapSymmetry {
  RAP_SYMMETRY_NONE = 0,
  RAP_SYMMETRY_VALUE_ORDER = 1,
  RAP_SYMMETRY_FULL_CANONICAL = 2,
} RapSymmetry;

typedef enum RapTopology {
  RAP_TOPOLOGY_INTERVAL = 0,
  RAP_TOPOLOGY_CYCLIC = 1,
} RapTopology;

typedef enum RapVariant {
  RAP_VARIANT_DEFAULT = 0,
  RAP_VARIANT_ALT41 = 1,
  RAP_VARIANT_STAR = 2,
} RapVariant;

/**
 * Opaque coloring handle.
 */
typedef struct RapColoring RapColoring;

/**
 * A rainbow progression: `start, start + d, ...` with `length` members.
 */
typedef struct RapWitness {
  size_t start;
  size_t d;
  size_t length;
} RapWitness;

typedef struct RapSearchConfig {
  size_t n;
  size_t k;
  /**
   * 0 means `k`.
   */
  size_t ap_length;
  /**
   * 0 means unlimited.
   */
  uint64_t max_nodes;
  /**
   * 0 means no time limit.
   */
  uint64_t time_limit_ms;
  enum RapSymmetry symmetry;
  /**
   * 0 means 1.
   */
  size_t threads;
} RapSearchConfig;

typedef struct RapSearchResult {
  enum RapSearchStatus status;
  uint64_t nodes;
  uint64_t prunes_capacity;
  uint64_t prunes_rainbow;
  uint64_t canonical_rejects;
  uint64_t elapsed_ms;
} RapSearchResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a
 * successful one. Valid until the next call into this library.
 */
const char *rap_last_error(void);

/**
 * Parses color letters (`A` = color 0). `k = 0` infers the number of colors
 * from the largest letter.
 */
enum RapStatus rap_coloring_parse(const char *letters,
                                  enum RapTopology topology,
                                  size_t k,
                                  struct RapColoring **out);

/**
 * Parses `{"n", "k", "topology", "colors"}`.
 */
enum RapStatus rap_coloring_from_json(const char *json, struct RapColoring **out);

void rap_coloring_free(struct RapColoring *c);

/**
 * Number of positions, or 0 for NULL.
 */
size_t rap_coloring_len(const struct RapColoring *c);

/**
 * Number of colors, or 0 for NULL.
 */
size_t rap_coloring_k(const struct RapColoring *c);

/**
 * Writes the letters plus a terminating NUL into `buf`. `needed` receives
 * the buffer size required; pass `buf = NULL, cap = 0` to query it.
 */
enum RapStatus rap_coloring_write_letters(const struct RapColoring *c,
                                          char *buf,
                                          size_t cap,
                                          size_t *needed);

enum RapStatus rap_construct_interval4(size_t n, enum RapVariant variant, struct RapColoring **out);

/**
 * The `k`-coloring of `[total]` without a rainbow AP(k).
 */
enum RapStatus rap_construct_k(size_t k, size_t total, struct RapColoring **out);

/**
 * The Z_24 coloring repeated `times` times around Z_{24 times}.
 */
enum RapStatus rap_construct_z24(size_t times, struct RapColoring **out);

enum RapStatus rap_construct_pow3(size_t n, struct RapColoring **out);

/**
 * Looks for a rainbow AP of `length` terms. `found` is set; when true and
 * `witness` is non-NULL the progression is written there, and up to
 * `elements_cap` member positions are copied into `elements`.
 */
enum RapStatus rap_find_rainbow_ap(const struct RapColoring *c,
                                   size_t length,
                                   bool *found,
                                   struct RapWitness *witness,
                                   size_t *elements,
                                   size_t elements_cap);

enum RapStatus rap_classify_balance(const struct RapColoring *c, enum RapBalance *out);

/**
 * The lexicographically least member of the coloring's symmetry orbit, as a
 * new handle.
 */
enum RapStatus rap_canonical_form(const struct RapColoring *c, struct RapColoring **out);

/**
 * `valid` is true when the cyclic coloring is equinumerous and has no
 * rainbow AP of `length` terms.
 */
enum RapStatus rap_verify_certificate(const struct RapColoring *c, size_t length, bool *valid);

/**
 * Searches equinumerous `k`-colorings of Z_n for one without a rainbow AP.
 * When the status is `Found` and `certificate` is non-NULL, a new handle is
 * stored there; otherwise `*certificate` is set to NULL.
 */
enum RapStatus rap_search(const struct RapSearchConfig *config,
                          struct RapSearchResult *result,
                          struct RapColoring **certificate);

/**
 * Runs a verification suite and stores its JSON report in `*report`.
 * `params_json` is NULL or a JSON object of parameter values.
 */
enum RapStatus rap_run_suite_json(const char *suite, const char *params_json, char **report);

void rap_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAINBOW_AP_H */

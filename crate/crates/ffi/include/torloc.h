#ifndef TORLOC_H
#define TORLOC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. The error codes match the exit codes of the command line tool.
 */
typedef enum TorlocStatus {
  TORLOC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TORLOC_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed or invalid input, including text that is not UTF-8.
   */
  TORLOC_STATUS_VALIDATION = 2,
  /**
   * Well-formed input that is mathematically incompatible.
   */
  TORLOC_STATUS_INCOMPATIBLE = 3,
  /**
   * A broken internal invariant or a caught panic.
   */
  TORLOC_STATUS_INTERNAL = 4,
} TorlocStatus;

/**
 * Opaque handle to a validated fan.
 */
typedef struct TorlocFan TorlocFan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or null after a
 * successful call. The pointer stays valid until the next call on this thread.
 */
const char *torloc_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string returned by this library that has not been freed.
 */
void torloc_string_free(char *s);

/**
 * Parses and validates a fan given as JSON, `{"rank": n, "maximal_cones": [...]}`.
 *
 * # Safety
 * `json` is a nul-terminated string; `out` is valid for a write.
 */
enum TorlocStatus torloc_fan_from_json(const char *json, struct TorlocFan **out);

/**
 * Releases a fan. Null is ignored.
 *
 * # Safety
 * `fan` is null or a handle from `torloc_fan_from_json` that has not been freed.
 */
void torloc_fan_free(struct TorlocFan *fan);

/**
 * Dimension of the ambient lattice.
 *
 * # Safety
 * `fan` is a live handle; `out` is valid for a write.
 */
enum TorlocStatus torloc_fan_ambient_dim(const struct TorlocFan *fan, size_t *out);

/**
 * Number of rays.
 *
 * # Safety
 * `fan` is a live handle; `out` is valid for a write.
 */
enum TorlocStatus torloc_fan_num_rays(const struct TorlocFan *fan, size_t *out);

/**
 * Number of maximal cones.
 *
 * # Safety
 * `fan` is a live handle; `out` is valid for a write.
 */
enum TorlocStatus torloc_fan_num_maximal_cones(const struct TorlocFan *fan, size_t *out);

/**
 * The fan in canonical JSON form.
 *
 * # Safety
 * `fan` is a live handle; `out` is valid for a write.
 */
enum TorlocStatus torloc_fan_to_json(const struct TorlocFan *fan, char **out);

/**
 * Equivariant multiplicity of maximal cone `cone` (0-based), as text such as
 * `2/((a-b)(a+b))`.
 *
 * # Safety
 * `fan` is a live handle; `out` is valid for a write.
 */
enum TorlocStatus torloc_multiplicity(const struct TorlocFan *fan, size_t cone, char **out);

/**
 * Rank of the Picard group of a complete fan.
 *
 * # Safety
 * `fan` is a live handle; `out` is valid for a write.
 */
enum TorlocStatus torloc_picard_rank(const struct TorlocFan *fan, size_t *out);

/**
 * The rank table for degrees `0..=k_max`, as aligned text.
 *
 * # Safety
 * `fan` is a live handle; `out` is valid for a write.
 */
enum TorlocStatus torloc_ranks(const struct TorlocFan *fan, size_t k_max, char **out);

/**
 * Index of the localization image in the Minkowski weights of codimension `k`,
 * as decimal text, or `infinite`.
 *
 * # Safety
 * `fan` is a live handle; `out` is valid for a write.
 */
enum TorlocStatus torloc_image_index(const struct TorlocFan *fan, size_t k, char **out);

/**
 * Normalized mixed volume `n! V` of a polytope system `{"polytopes": [...]}`, as
 * decimal text.
 *
 * # Safety
 * `json` is a nul-terminated string; `out` is valid for a write.
 */
enum TorlocStatus torloc_mixed_volume(const char *json, char **out);

/**
 * Chern number `c_lambda` of a bundle given as JSON on `fan`; `partition` is
 * written like `111`, `21` or `2,1`.
 *
 * # Safety
 * `fan` is a live handle; `bundle` and `partition` are nul-terminated strings;
 * `out` is valid for a write.
 */
enum TorlocStatus torloc_chern_number(const struct TorlocFan *fan,
                                      const char *bundle,
                                      const char *partition,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORLOC_H */

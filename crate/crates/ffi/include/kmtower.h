#ifndef KMTOWER_H
#define KMTOWER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KmStatus {
  KM_STATUS_OK = 0,
  KM_STATUS_NULL_POINTER = 1,
  KM_STATUS_INVALID_UTF8 = 2,
  KM_STATUS_INVALID_ARGUMENT = 3,
  KM_STATUS_RESOURCE_CAP = 4,
  /**
   * The call completed but at least one verification check failed.
   */
  KM_STATUS_CHECK_FAILED = 5,
  KM_STATUS_PANIC = 6,
} KmStatus;

typedef struct KmGcm KmGcm;

typedef struct KmRootSet KmRootSet;

/**
 * Message for the last error on this thread, or null. Valid until the next
 * failing call on the same thread.
 */
const char *km_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void km_string_free(char *s);

/**
 * Parses and validates a GCM from its JSON file format.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum KmStatus km_gcm_from_json(const char *json, struct KmGcm **out);

/**
 * The affine GCM of `family` (tag such as `"A2odd"`) at rank parameter `l`.
 *
 * # Safety
 * `family` must be a nul-terminated string; `out` must be writable.
 */
enum KmStatus km_gcm_affine(const char *family, uintptr_t l, struct KmGcm **out);

/**
 * # Safety
 * `gcm` must be a live handle or null; `out` must be writable.
 */
enum KmStatus km_gcm_size(const struct KmGcm *gcm, uintptr_t *out);

/**
 * # Safety
 * `gcm` must be a live handle or null; `out` must be writable.
 */
enum KmStatus km_gcm_entry(const struct KmGcm *gcm, uintptr_t i, uintptr_t j, int64_t *out);

/**
 * JSON `{"family", "l", "perm"}`, or `{"family": null}` outside the families.
 *
 * # Safety
 * `gcm` must be a live handle or null; `out` must be writable.
 */
enum KmStatus km_gcm_classify(const struct KmGcm *gcm, char **out);

/**
 * # Safety
 * `gcm` must come from this library and not have been freed. Null is ignored.
 */
void km_gcm_free(struct KmGcm *gcm);

/**
 * Real roots of height at most `height`, capped at `max_roots` (0 selects
 * the default cap).
 *
 * # Safety
 * `gcm` must be a live handle or null; `out` must be writable.
 */
enum KmStatus km_roots_enumerate(const struct KmGcm *gcm,
                                 uint32_t height,
                                 uintptr_t max_roots,
                                 struct KmRootSet **out);

/**
 * # Safety
 * `set` must be a live handle or null; `out` must be writable.
 */
enum KmStatus km_roots_len(const struct KmRootSet *set, uintptr_t *out);

/**
 * Whether the `len` coordinates at `coords` form a root in the set.
 *
 * # Safety
 * `coords` must point to `len` readable integers; `out` must be writable.
 */
enum KmStatus km_roots_contains(const struct KmRootSet *set,
                                const int64_t *coords,
                                uintptr_t len,
                                bool *out);

/**
 * The root-set JSON document.
 *
 * # Safety
 * `set` must be a live handle or null; `out` must be writable.
 */
enum KmStatus km_roots_to_json(const struct KmRootSet *set, char **out);

/**
 * # Safety
 * `set` must come from this library and not have been freed. Null is ignored.
 */
void km_roots_free(struct KmRootSet *set);

/**
 * Runs the check named `check` (e.g. `"lemma-3.1"`, `"all"`) and writes its
 * reports as NDJSON to `out`. `params_json` may be null or a JSON object with
 * optional `family`, `l`, `m`, `n`, `height`, `depth`, `max_mn`, `pairs`,
 * `quick`, `seed` and `parallelism`. Returns `CheckFailed` (with `out` set)
 * when a report fails.
 *
 * # Safety
 * `check` must be a nul-terminated string, `params_json` one or null, and
 * `out` writable.
 */
enum KmStatus km_verify(const char *check, const char *params_json, char **out);

#endif  /* KMTOWER_H */

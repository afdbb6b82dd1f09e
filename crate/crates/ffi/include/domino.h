#ifndef DOMINO_H
#define DOMINO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  DOMINO_STATUS_OK = 0,
  DOMINO_STATUS_NULL_POINTER = 1,
  DOMINO_STATUS_INVALID_UTF8 = 2,
  DOMINO_STATUS_INVALID_SEQUENCE = 3,
  DOMINO_STATUS_PARSE = 4,
  DOMINO_STATUS_NOT_ALWAYS_CONNECTED = 5,
  DOMINO_STATUS_CONTRACT_VIOLATION = 6,
  DOMINO_STATUS_INFEASIBLE = 7,
  DOMINO_STATUS_CAP_EXCEEDED = 8,
  DOMINO_STATUS_PARAMETER = 9,
  DOMINO_STATUS_PRECONDITION = 10,
  DOMINO_STATUS_UNKNOWN = 11,
  DOMINO_STATUS_CONFIG = 12,
  DOMINO_STATUS_IO = 13,
  DOMINO_STATUS_BUFFER_TOO_SMALL = 14,
  DOMINO_STATUS_PANIC = 15,
} DominoStatus;

typedef enum {
  DOMINO_VARIANT_DS = 0,
  DOMINO_VARIANT_CDS = 1,
  DOMINO_VARIANT_TDS = 2,
  DOMINO_VARIANT_IDS = 3,
} DominoVariant;

typedef enum {
  DOMINO_BASELINE_OFFLINE = 0,
  DOMINO_BASELINE_INCREMENTAL = 1,
} DominoBaseline;

/**
 * A selection chain: vertex `vertices[k]` joined at step `steps[k]`.
 */
typedef struct DominoChain DominoChain;

/**
 * An arrival sequence.
 */
typedef struct DominoSequence DominoSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library from this thread.
 */
const char *domino_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *domino_version(void);

/**
 * Parses the text instance format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
DominoStatus domino_sequence_parse(const char *text, DominoSequence **out);

/**
 * Builds a construction family instance, e.g. `("rotor", "delta=4")`.
 *
 * # Safety
 * `family` and `params` must be NUL-terminated strings (`params` may be NULL);
 * `out` must be writable.
 */
DominoStatus domino_sequence_generate(const char *family, const char *params, DominoSequence **out);

/**
 * Builds a sequence from flattened earlier-neighbor lists: vertex `i`
 * (1-based) has `counts[i-1]` earlier neighbors, stored consecutively in
 * `neighbors`.
 *
 * # Safety
 * `counts` must hold `n` entries and `neighbors` their sum; `out` must be writable.
 */
DominoStatus domino_sequence_from_arrivals(uintptr_t n,
                                           const uint32_t *counts,
                                           const uint32_t *neighbors,
                                           uintptr_t neighbors_len,
                                           DominoSequence **out);

/**
 * # Safety
 * `seq` must come from this library and not be used afterwards. NULL is ignored.
 */
void domino_sequence_free(DominoSequence *seq);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `seq` must be NULL or a live handle.
 */
uintptr_t domino_sequence_len(const DominoSequence *seq);

/**
 * Renders the sequence in the text format; release with [`domino_string_free`].
 *
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
DominoStatus domino_sequence_serialize(const DominoSequence *seq, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is ignored.
 */
void domino_string_free(char *s);

/**
 * Exact optimum size. `cap` bounds the instance size the solver accepts;
 * 0 selects the default cap of the chosen baseline.
 *
 * # Safety
 * `seq` must be a live handle; `out_size` must be writable.
 */
DominoStatus domino_solve(const DominoSequence *seq,
                          DominoVariant variant,
                          DominoBaseline baseline,
                          uintptr_t cap,
                          uintptr_t *out_size);

/**
 * Runs an online algorithm by CLI name (`parent`, `first-parent`,
 * `greedy-ids`, `even-layer:0`, `even-layer:1`) and returns its chain.
 *
 * # Safety
 * `seq` must be a live handle, `algorithm` a NUL-terminated string and
 * `out` writable. Release the chain with [`domino_chain_free`].
 */
DominoStatus domino_run_online(const DominoSequence *seq,
                               const char *algorithm,
                               DominoVariant variant,
                               DominoChain **out);

/**
 * Number of selected vertices, or 0 for NULL.
 *
 * # Safety
 * `chain` must be NULL or a live handle.
 */
uintptr_t domino_chain_len(const DominoChain *chain);

/**
 * Copies the selections into caller buffers of `capacity` entries each.
 *
 * # Safety
 * `chain` must be a live handle; `vertices` and `steps` must hold `capacity` entries.
 */
DominoStatus domino_chain_copy(const DominoChain *chain,
                               uint32_t *vertices,
                               uint32_t *steps,
                               uintptr_t capacity);

/**
 * # Safety
 * `chain` must come from this library and not be used afterwards. NULL is ignored.
 */
void domino_chain_free(DominoChain *chain);

/**
 * Runs an invariant suite (or `all`) and reports the total failure count.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out_failures` must be writable.
 */
DominoStatus domino_verify_suite(const char *name,
                                 uint64_t seed,
                                 uintptr_t pool,
                                 uintptr_t *out_failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOMINO_H */

#ifndef AKBLOCKS_H
#define AKBLOCKS_H

/* Generated by cbindgen from the akblocks-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
enum AkStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  /**
   * Success.
   */
  AK_OK = 0,
  /**
   * A required pointer argument was null.
   */
  AK_ERR_NULL = 1,
  /**
   * An argument could not be parsed or failed validation.
   */
  AK_ERR_PARSE = 2,
  /**
   * A budget was exceeded.
   */
  AK_ERR_BUDGET = 3,
  /**
   * A core-only operation received a non-core block.
   */
  AK_ERR_NOT_CORE = 4,
  /**
   * A charge was outside the required domain.
   */
  AK_ERR_DOMAIN = 5,
  /**
   * A reduction hypothesis cannot be met.
   */
  AK_ERR_NOT_APPLICABLE = 6,
  /**
   * An internal consistency check or arithmetic guard failed.
   */
  AK_ERR_INTERNAL = 7,
  /**
   * The library panicked; the handle arguments remain valid.
   */
  AK_ERR_PANIC = 8,
};
#ifndef __cplusplus
typedef int32_t AkStatus;
#endif // __cplusplus

/**
 * Opaque handle to a block of an Ariki-Koike algebra.
 */
typedef struct AkBlock AkBlock;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates the block containing the charged multipartition given by `mp_json`
 * (a JSON array of `l` arrays of parts) with charge `charge[0..l]`.
 *
 * # Safety
 * `charge` must point to `l` readable integers, `mp_json` must be a
 * NUL-terminated string, and `out` must be writable.
 */
AkStatus ak_block_new(size_t e,
                      size_t l,
                      const int64_t *charge,
                      const char *mp_json,
                      struct AkBlock **out);

/**
 * Releases a block handle; null is ignored.
 *
 * # Safety
 * `b` must be null or a handle returned by [`ak_block_new`] that has not
 * been freed.
 */
void ak_block_free(struct AkBlock *b);

/**
 * The weight of the block.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
AkStatus ak_block_weight(const struct AkBlock *b, size_t *out);

/**
 * Whether the block is a core block.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
AkStatus ak_block_is_core(const struct AkBlock *b, bool *out);

/**
 * Copies the moving vector into `buf[0..len]`; `written` receives its
 * length `l`. Fails with [`AkStatus::AkErrParse`] if `len < l`.
 *
 * # Safety
 * `buf` must have room for `len` entries; `b` must be a live handle and
 * `written` writable.
 */
AkStatus ak_block_mv(const struct AkBlock *b, size_t *buf, size_t len, size_t *written);

/**
 * The number of simple modules of a core block.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
AkStatus ak_block_count_simples(const struct AkBlock *b, uint64_t *out);

/**
 * Whether two core blocks are Scopes equivalent.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
AkStatus ak_blocks_scopes_equivalent(const struct AkBlock *a, const struct AkBlock *b, bool *out);

/**
 * The block summary as a JSON string; release it with [`ak_string_free`].
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
AkStatus ak_block_json(const struct AkBlock *b, char **out);

/**
 * The Scopes data of a core block as a JSON string.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
AkStatus ak_block_scopes_json(const struct AkBlock *b, char **out);

/**
 * The v-decomposition matrix of the block as a JSON string, computed with
 * the given budget.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
AkStatus ak_block_decomposition_json(const struct AkBlock *b, size_t budget, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library that has not been
 * freed.
 */
void ak_string_free(char *s);

/**
 * The message of the most recent failure on this thread, or an empty
 * string. The pointer stays valid until the next failing call on the same
 * thread.
 */
const char *ak_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AKBLOCKS_H */

#ifndef LUINV_H
#define LUINV_H

/* Generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum LuinvStatus {
  /**
   * Success.
   */
  LUINV_OK = 0,
  /**
   * A pointer argument was null.
   */
  LUINV_NULL_POINTER = 1,
  /**
   * Input text failed to parse; see `luinv_last_error_message`.
   */
  LUINV_PARSE_ERROR = 2,
  /**
   * The computation rejected its inputs or failed to certify.
   */
  LUINV_COMPUTE_ERROR = 3,
  /**
   * An argument was out of range for the requested operation.
   */
  LUINV_INVALID_ARGUMENT = 4,
} LuinvStatus;

/**
 * Named closed forms, selectable without constructing a basis.
 */
typedef enum LuinvClosedForm {
  /**
   * Two-fermion pairing invariant (degree 4).
   */
  LUINV_I22 = 0,
  /**
   * Two-fermion quartic complement invariant (degree 4).
   */
  LUINV_I1111 = 1,
  /**
   * Two-fermion sextic determinant-type invariant (degree 6).
   */
  LUINV_I16 = 2,
} LuinvClosedForm;

/**
 * Opaque handle to an orthogonal family basis of the highest-weight
 * subspace.
 */
typedef struct LuinvBasis LuinvBasis;

/**
 * Opaque handle to an exact-rational k-fermion state.
 */
typedef struct LuinvState LuinvState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. Borrowed;
 * overwritten by the next failing call.
 */
const char *luinv_last_error_message(void);

/**
 * Builds the basis for k-fermion states, symmetric power m, n modes.
 * On success stores a new handle in `out`.
 * # Safety
 * `out` must be a valid writable pointer.
 */
enum LuinvStatus luinv_basis_build(uint8_t k, uint32_t m, uint8_t n, struct LuinvBasis **out);

/**
 * Total dimension of the subspace spanned by the basis, or 0 for null.
 * # Safety
 * `basis` must be null or a live handle from `luinv_basis_build`.
 */
uint64_t luinv_basis_dimension(const struct LuinvBasis *basis);

/**
 * Number of orthogonal families in the basis, or 0 for null.
 * # Safety
 * `basis` must be null or a live handle from `luinv_basis_build`.
 */
uint64_t luinv_basis_family_count(const struct LuinvBasis *basis);

/**
 * # Safety
 * `basis` must be null or a handle not freed before; it is consumed.
 */
void luinv_basis_free(struct LuinvBasis *basis);

/**
 * Parses a state from text in either the `fermion` or the
 * `distinguishable` file format; distinguishable states are embedded into
 * the fermionic space. On success stores a new handle in `out`.
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum LuinvStatus luinv_state_parse(const char *text, struct LuinvState **out);

/**
 * Number of single-particle modes of the state, or 0 for null.
 * # Safety
 * `state` must be null or a live handle from `luinv_state_parse`.
 */
uint8_t luinv_state_modes(const struct LuinvState *state);

/**
 * Number of particles of the state, or 0 for null.
 * # Safety
 * `state` must be null or a live handle from `luinv_state_parse`.
 */
uint8_t luinv_state_particles(const struct LuinvState *state);

/**
 * # Safety
 * `state` must be null or a handle not freed before; it is consumed.
 */
void luinv_state_free(struct LuinvState *state);

/**
 * Evaluates the basis projection invariant of the normalized state and
 * stores it in `out`. The state may live on fewer modes than the basis;
 * more modes re-expand the basis internally.
 * # Safety
 * `basis` and `state` must be live handles; `out` must be writable.
 */
enum LuinvStatus luinv_eval_projection(const struct LuinvBasis *basis,
                                       const struct LuinvState *state,
                                       double *out);

/**
 * Evaluates a named closed-form invariant of the normalized state.
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum LuinvStatus luinv_eval_closed_form(enum LuinvClosedForm which,
                                        const struct LuinvState *state,
                                        double *out);

/**
 * Evaluates the fully antisymmetric family invariant over `base_n`-mode
 * windows (base_n must be a multiple of the particle number).
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum LuinvStatus luinv_eval_antisymmetric_family(const struct LuinvState *state,
                                                 uint8_t base_n,
                                                 double *out);

/**
 * Writes the exact normalized projection invariant as a `p/q` string into
 * `buf` (NUL-terminated, truncated to `cap` bytes). Returns the required
 * length excluding the NUL, or -1 on error.
 * # Safety
 * `basis` and `state` must be live handles; `buf` must point to at
 * least `cap` writable bytes (or be null with cap 0).
 */
ptrdiff_t luinv_eval_projection_exact(const struct LuinvBasis *basis,
                                      const struct LuinvState *state,
                                      char *buf,
                                      size_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LUINV_H */

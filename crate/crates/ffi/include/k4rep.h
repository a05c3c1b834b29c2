#ifndef K4REP_H
#define K4REP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum K4Status {
  K4_STATUS_OK = 0,
  K4_STATUS_NULL_POINTER = 1,
  K4_STATUS_INVALID_ARGUMENT = 2,
  K4_STATUS_NOT_A_REPRESENTATION = 3,
  // The representation fails the divisibility condition, so it has no dimension vector.
  K4_STATUS_NO_DIMENSION_VECTOR = 4,
  K4_STATUS_CAP_EXCEEDED = 5,
  K4_STATUS_BUFFER_TOO_SMALL = 6,
  K4_STATUS_INTERNAL = 7,
} K4Status;

// Opaque integral representation of the Klein four-group.
typedef struct K4Rep K4Rep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into this library on the same thread.
const char *k4_last_error_message(void);

// Builds a fixed-layout family member. `family` is one of `Delta_n`, `W_0`,
// `W_n`, `T_n`, `Delta_n1`, `regular`, `chi1`..`chi4`.
//
// # Safety
// `family` must be a NUL-terminated string and `out` writable.
enum K4Status k4_rep_construct(const char *family, uint32_t n, struct K4Rep **out);

// Builds `Δ_f` with the companion block of `f` at `position` (11, 12, 21 or 22).
// `f` is a bit string, lowest degree first, or human notation like `x^2+x+1`.
//
// # Safety
// `f` must be a NUL-terminated string and `out` writable.
enum K4Status k4_rep_construct_f(const char *f, uint32_t position, struct K4Rep **out);

// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum K4Status k4_rep_from_json(const char *json, struct K4Rep **out);

// Writes a newly allocated JSON string; release it with [`k4_string_free`].
//
// # Safety
// `rep` must be a live handle and `out` writable.
enum K4Status k4_rep_to_json(const struct K4Rep *rep, char **out);

// # Safety
// `s` must come from this library and not be freed twice. NULL is ignored.
void k4_string_free(char *s);

// # Safety
// `rep` must come from this library and not be freed twice. NULL is ignored.
void k4_rep_free(struct K4Rep *rep);

// # Safety
// `rep` must be a live handle and `out` writable.
enum K4Status k4_rep_degree(const struct K4Rep *rep, size_t *out);

// Copies the row-major image of generator `g` (0 for `a`, 1 for `b`) into
// `buf`, which must hold `degree²` entries.
//
// # Safety
// `rep` must be a live handle and `buf` writable for `len` entries.
enum K4Status k4_rep_generator(const struct K4Rep *rep, uint32_t g, int64_t *buf, size_t len);

// Writes `(d0, d1, d2, d3, d4)` to `out[0..5]`.
//
// # Safety
// `rep` must be a live handle and `out` writable for 5 entries.
enum K4Status k4_rep_dimension_vector(const struct K4Rep *rep, uint64_t *out);

// # Safety
// `rep` must be a live handle and `out` writable.
enum K4Status k4_rep_is_indecomposable(const struct K4Rep *rep, bool *out);

// Equivalence over the 2-adic and 2-local integers.
//
// # Safety
// `r1`, `r2` must be live handles and `out` writable.
enum K4Status k4_rep_equivalent_local(const struct K4Rep *r1, const struct K4Rep *r2, bool *out);

// Stabilizer as a 6-bit mask over `id, s1, s2, s1.s2, s2.s1, s1.s2.s1`.
//
// # Safety
// `rep` must be a live handle and `out` writable.
enum K4Status k4_rep_stabilizer_mask(const struct K4Rep *rep, uint8_t *out);

// `Γ^φ` for an automorphism word such as `s1.s2`.
//
// # Safety
// `rep` must be a live handle, `word` NUL-terminated, `out` writable.
enum K4Status k4_rep_conjugate(const struct K4Rep *rep, const char *word, struct K4Rep **out);

// The contragredient `Γ*`.
//
// # Safety
// `rep` must be a live handle and `out` writable.
enum K4Status k4_rep_dual(const struct K4Rep *rep, struct K4Rep **out);

// `Γ ⊗ χ_k` for `k` in 1..=4.
//
// # Safety
// `rep` must be a live handle and `out` writable.
enum K4Status k4_rep_tensor(const struct K4Rep *rep, uint32_t k, struct K4Rep **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* K4REP_H */

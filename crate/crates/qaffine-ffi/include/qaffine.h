#ifndef QAFFINE_H
#define QAFFINE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which algorithm produces a character.
 */
typedef enum QaMethod {
  QA_METHOD_FRENKEL_MUKHIN = 0,
  QA_METHOD_KERNEL_SOLVE = 1,
} QaMethod;

/**
 * Result codes.
 */
typedef enum QaStatus {
  QA_STATUS_OK = 0,
  QA_STATUS_NULL_POINTER = 1,
  QA_STATUS_INVALID_ARGUMENT = 2,
  QA_STATUS_INVALID_CARTAN = 3,
  QA_STATUS_NOT_APPLICABLE = 4,
  QA_STATUS_NOT_DOMINANT = 5,
  QA_STATUS_UNDERDETERMINED = 6,
  QA_STATUS_INCONSISTENT = 7,
  QA_STATUS_PANIC = 8,
} QaStatus;

/**
 * A validated, symmetrized generalized Cartan matrix.
 */
typedef struct QaCartan QaCartan;

/**
 * A truncated q-character.
 */
typedef struct QaCharacter QaCharacter;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a Cartan datum from a row-major `n × n` matrix.
 *
 * `r` may be null, in which case the minimal symmetrizer is chosen;
 * otherwise it must point to `n` entries.
 *
 * # Safety
 * `entries` must point to `n * n` readable values and `out` must be writable.
 */
enum QaStatus qa_cartan_new(const int64_t *entries,
                            size_t n,
                            const int64_t *r,
                            struct QaCartan **out);

/**
 * Releases a Cartan handle. Null is accepted.
 *
 * # Safety
 * `cd` must come from [`qa_cartan_new`] and not be used afterwards.
 */
void qa_cartan_free(struct QaCartan *cd);

/**
 * Writes the rank.
 *
 * # Safety
 * `cd` must be a live handle and `out` writable.
 */
enum QaStatus qa_cartan_rank(const struct QaCartan *cd, size_t *out);

/**
 * Writes the symmetrizer `r` into `out`, which must hold `rank` entries.
 *
 * # Safety
 * `cd` must be a live handle and `out` must have room for `rank` values.
 */
enum QaStatus qa_cartan_symmetrizer(const struct QaCartan *cd, int64_t *out);

/**
 * Renders `det C(z)` as a Laurent polynomial in `z`.
 *
 * # Safety
 * `cd` must be a live handle and `out` writable.
 */
enum QaStatus qa_cartan_det(const struct QaCartan *cd, char **out);

/**
 * Writes 1 if the q-character expansion is defined for this datum, else 0.
 *
 * # Safety
 * `cd` must be a live handle and `out` writable.
 */
enum QaStatus qa_cartan_invertible(const struct QaCartan *cd, int32_t *out);

/**
 * Computes the q-character of the fundamental module `Y_{node, q^qexp}`
 * truncated at `depth`. Nodes are counted from 1.
 *
 * # Safety
 * `cd` must be a live handle and `out` writable.
 */
enum QaStatus qa_qchar_fundamental(const struct QaCartan *cd,
                                   size_t node,
                                   int64_t qexp,
                                   int64_t depth,
                                   enum QaMethod method,
                                   struct QaCharacter **out);

/**
 * Releases a character handle. Null is accepted.
 *
 * # Safety
 * `chi` must come from this library and not be used afterwards.
 */
void qa_character_free(struct QaCharacter *chi);

/**
 * Writes the number of monomials.
 *
 * # Safety
 * `chi` must be a live handle and `out` writable.
 */
enum QaStatus qa_character_len(const struct QaCharacter *chi, size_t *out);

/**
 * Writes the classical dimension when it fits in 64 bits.
 *
 * # Safety
 * `chi` must be a live handle and `out` writable.
 */
enum QaStatus qa_character_dimension(const struct QaCharacter *chi, uint64_t *out);

/**
 * Writes 1 if two characters have the same terms, else 0.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum QaStatus qa_character_equal(const struct QaCharacter *a,
                                 const struct QaCharacter *b,
                                 int32_t *out);

/**
 * Renders one `coefficient<TAB>monomial` line per term.
 *
 * # Safety
 * `chi` must be a live handle and `out` writable.
 */
enum QaStatus qa_character_render(const struct QaCharacter *chi, int32_t show_k, char **out);

/**
 * Releases a string returned by this library. Null is accepted.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qa_string_free(char *s);

/**
 * Message for the most recent failure on this thread, or an empty string.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *qa_last_error(void);

/**
 * Static description of a status code.
 */
const char *qa_status_str(enum QaStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QAFFINE_H */

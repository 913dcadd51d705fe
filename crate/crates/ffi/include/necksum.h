#ifndef NECKSUM_H
#define NECKSUM_H

#pragma once

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Families accepted by `necksum_count` and `necksum_enumerate`.
typedef enum NecksumFamily {
  NECKSUM_FAMILY_NECKLACES = 0,
  NECKSUM_FAMILY_LYNDON = 1,
  NECKSUM_FAMILY_COPERIOD = 2,
  NECKSUM_FAMILY_LPLUS = 3,
  NECKSUM_FAMILY_SBAR = 4,
  NECKSUM_FAMILY_S = 5,
  NECKSUM_FAMILY_CVP = 6,
} NecksumFamily;

typedef enum NecksumStatus {
  NECKSUM_STATUS_OK = 0,
  NECKSUM_STATUS_INVALID_PARAMETER = 1,
  NECKSUM_STATUS_PARSE_ERROR = 2,
  NECKSUM_STATUS_NON_EXACT_DIVISION = 3,
  NECKSUM_STATUS_NOT_COPRIME = 4,
  NECKSUM_STATUS_SEARCH_EXHAUSTED = 5,
  NECKSUM_STATUS_Z_NOT_COPRIME = 6,
  NECKSUM_STATUS_NOT_CYCLIC = 7,
  NECKSUM_STATUS_SHAPE_VIOLATION = 8,
  NECKSUM_STATUS_UNEXPECTED_COPERIOD = 9,
  NECKSUM_STATUS_NOT_IN_DOMAIN = 10,
  NECKSUM_STATUS_AMBIGUOUS_ANCHOR = 11,
  NECKSUM_STATUS_GCD_NOT_ONE = 12,
  NECKSUM_STATUS_NULL_POINTER = 100,
  NECKSUM_STATUS_UTF8 = 101,
  NECKSUM_STATUS_OVERFLOW = 102,
  NECKSUM_STATUS_OUT_OF_RANGE = 103,
  NECKSUM_STATUS_PANIC = 199,
} NecksumStatus;

// Arbitrary-precision integer.
typedef struct NecksumInt NecksumInt;

// Owned list of strings.
typedef struct NecksumList NecksumList;

// Difference table.
typedef struct NecksumTable NecksumTable;

// Outcome of the equality prediction. `conditions` has bit 0 set for
// condition (a) through bit 4 for (e).
typedef struct NecksumVerdict {
  size_t n;
  size_t k;
  size_t r;
  bool predicted_equal;
  uint8_t conditions;
  int8_t sign;
} NecksumVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or NULL. Valid until the
// next call into this library from the same thread.
const char *necksum_last_error_message(void);

// Static upper-case name of a status code.
const char *necksum_status_name(enum NecksumStatus status);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void necksum_string_free(char *s);

// Exact size of a family. `k` and `r` are ignored where unused.
enum NecksumStatus necksum_count(enum NecksumFamily family,
                                 size_t n,
                                 size_t k,
                                 size_t r,
                                 struct NecksumInt **out);

// |N_r(n, k)| − |S̄_r(n, k)|, with r reduced mod n.
enum NecksumStatus necksum_difference(size_t n, size_t k, size_t r, struct NecksumInt **out);

// The difference summed over all k.
enum NecksumStatus necksum_aggregate_difference(size_t n, size_t r, struct NecksumInt **out);

enum NecksumStatus necksum_predict_equality(size_t n,
                                            size_t k,
                                            size_t r,
                                            struct NecksumVerdict *out);

// Decimal rendering; free with `necksum_string_free`.
//
// # Safety
// `value` must be a live handle from this library.
enum NecksumStatus necksum_int_to_string(const struct NecksumInt *value, char **out);

// Fails with `OVERFLOW` if the value does not fit.
//
// # Safety
// `value` must be a live handle from this library.
enum NecksumStatus necksum_int_to_i64(const struct NecksumInt *value, int64_t *out);

// # Safety
// `value` must come from this library and not have been freed. NULL is ignored.
void necksum_int_free(struct NecksumInt *value);

// Members of a family in the library's order: words as bit strings,
// subsets as `{a,b,c}`, permutations in one-line notation.
enum NecksumStatus necksum_enumerate(enum NecksumFamily family,
                                     size_t n,
                                     size_t k,
                                     size_t r,
                                     bool zero_based,
                                     struct NecksumList **out);

// # Safety
// `list` must be a live handle from this library.
size_t necksum_list_len(const struct NecksumList *list);

// Borrowed item, valid while the list lives; NULL when out of range.
//
// # Safety
// `list` must be a live handle from this library.
const char *necksum_list_get(const struct NecksumList *list, size_t index);

// # Safety
// `list` must come from this library and not have been freed. NULL is ignored.
void necksum_list_free(struct NecksumList *list);

// Ψ image of a permutation given in one-line notation (`"54213"` or
// `"5 4 2 1 3"`); writes the Lyndon word.
//
// # Safety
// `perm` must be a NUL-terminated string.
enum NecksumStatus necksum_psi(const char *perm, size_t k, char **out);

// Inverse of Ψ; writes the permutation in one-line notation.
//
// # Safety
// `word` must be a NUL-terminated string.
enum NecksumStatus necksum_psi_inverse(const char *word, size_t n, size_t k, char **out);

// Rows m = 1..=m_max of differences at (2m, 2k, r).
enum NecksumStatus necksum_table_diff_grid(size_t r, size_t m_max, struct NecksumTable **out);

// Rows n = 1..=n_max of summed differences for r = 0..=n.
enum NecksumStatus necksum_table_diff_sum(size_t n_max, struct NecksumTable **out);

// # Safety
// `table` must be a live handle from this library.
size_t necksum_table_rows(const struct NecksumTable *table);

// Length of row `row` (0-based), or 0 when out of range.
//
// # Safety
// `table` must be a live handle from this library.
size_t necksum_table_row_len(const struct NecksumTable *table, size_t row);

// Entry at (row, column), both 0-based, as a 64-bit integer.
//
// # Safety
// `table` must be a live handle from this library.
enum NecksumStatus necksum_table_get(const struct NecksumTable *table,
                                     size_t row,
                                     size_t column,
                                     int64_t *out);

// CSV rendering, identical to the command-line output.
//
// # Safety
// `table` must be a live handle from this library.
enum NecksumStatus necksum_table_to_csv(const struct NecksumTable *table, char **out);

// # Safety
// `table` must come from this library and not have been freed. NULL is ignored.
void necksum_table_free(struct NecksumTable *table);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NECKSUM_H */

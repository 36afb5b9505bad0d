#ifndef TRISOLVE_H
#define TRISOLVE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Parity class of a position. A `PEGk` position can only end with its
 last peg on a class `k` hole.
 */
typedef enum TsClass {
  TS_CLASS_EMPTY = 0,
  TS_CLASS_PEG0 = 1,
  TS_CLASS_PEG1 = 2,
  TS_CLASS_PEG2 = 3,
} TsClass;

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_ARGUMENT = 2,
  TS_STATUS_INFEASIBLE = 3,
  TS_STATUS_UNSOLVABLE = 4,
  TS_STATUS_ILLEGAL_MOVE = 5,
  TS_STATUS_BUDGET_EXHAUSTED = 6,
  TS_STATUS_INTERNAL = 7,
} TsStatus;

/*
 Opaque board position.
 */
typedef struct TsPosition TsPosition;

/*
 Opaque solution.
 */
typedef struct TsSolution TsSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Engine version, a static string.
 */
const char *ts_version(void);

/*
 Message for the last failure on this thread. Valid until the next call
 into the library from the same thread.
 */
const char *ts_last_error(void);

/*
 Release a string returned by the library.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void ts_string_free(char *s);

/*
 Full board `T_n` with one hole at `vacancy` (e.g. `"a1"`).

 # Safety
 `vacancy` must be a NUL-terminated string and `out` writable.
 */
enum TsStatus ts_position_new(size_t n, const char *vacancy, struct TsPosition **out);

/*
 Position from a hole list or a row-by-row `o`/`.` picture.

 # Safety
 `position` must be a NUL-terminated string and `out` writable.
 */
enum TsStatus ts_position_parse(size_t n, const char *position, struct TsPosition **out);

/*
 # Safety
 `p` must come from this library and not be freed twice.
 */
void ts_position_free(struct TsPosition *p);

/*
 Number of pegs, or 0 for a null handle.

 # Safety
 `p` must be null or a live handle.
 */
size_t ts_position_peg_count(const struct TsPosition *p);

/*
 Number of legal single jumps, or 0 for a null handle.

 # Safety
 `p` must be null or a live handle.
 */
size_t ts_position_legal_jump_count(const struct TsPosition *p);

/*
 Play one move such as `"a3-a1"` or `"a1-a3-c3"`. The position is left
 unchanged when the move is illegal.

 # Safety
 `p` must be a live handle and `mv` a NUL-terminated string.
 */
enum TsStatus ts_position_apply(struct TsPosition *p, const char *mv);

/*
 Occupied holes as a space-separated string; free with `ts_string_free`.

 # Safety
 `p` must be a live handle and `out` writable.
 */
enum TsStatus ts_position_holes(const struct TsPosition *p, char **out);

/*
 # Safety
 `p` must be a live handle and `out` writable.
 */
enum TsStatus ts_position_class(const struct TsPosition *p, enum TsClass *out);

/*
 SAX count of a T5 position.

 # Safety
 `p` must be a live handle and `out` writable.
 */
enum TsStatus ts_sax_count(const struct TsPosition *p, int32_t *out);

/*
 Whether the vacancy-to-finish problem passes the parity test.

 # Safety
 Strings must be NUL-terminated and `out` writable.
 */
enum TsStatus ts_is_feasible(size_t n, const char *vacancy, const char *finish, bool *out);

/*
 Constructive solution; `finish` may be null for "anywhere".

 # Safety
 `vacancy` must be NUL-terminated, `finish` null or NUL-terminated, and
 `out` writable.
 */
enum TsStatus ts_solve(size_t n, const char *vacancy, const char *finish, struct TsSolution **out);

/*
 Fewest-move solution within `node_limit` search nodes. Either end may be
 null. No solution under the budget gives `BudgetExhausted`.

 # Safety
 Strings must be null or NUL-terminated and `out` writable.
 */
enum TsStatus ts_shortest(size_t n,
                          const char *vacancy,
                          const char *finish,
                          uint64_t node_limit,
                          struct TsSolution **out);

/*
 # Safety
 `s` must come from this library and not be freed twice.
 */
void ts_solution_free(struct TsSolution *s);

/*
 Number of moves, or 0 for a null handle.

 # Safety
 `s` must be null or a live handle.
 */
size_t ts_solution_move_count(const struct TsSolution *s);

/*
 Solution text such as `"a3-a1, c3-a3, ..."`; free with `ts_string_free`.

 # Safety
 `s` must be a live handle and `out` writable.
 */
enum TsStatus ts_solution_text(const struct TsSolution *s, char **out);

/*
 Finishing hole of a solution; free with `ts_string_free`.

 # Safety
 `s` must be a live handle and `out` writable.
 */
enum TsStatus ts_solution_finish(const struct TsSolution *s, char **out);

/*
 Number of jump sequences from `vacancy` to one peg at `finish`.
 Saturates at `UINT64_MAX`.

 # Safety
 Strings must be NUL-terminated and `out` writable.
 */
enum TsStatus ts_count_solutions(size_t n, const char *vacancy, const char *finish, uint64_t *out);

/*
 `N` in "1 in N" for a random player on T5; `player` is 'A', 'B' or 'C'.

 # Safety
 `vacancy` must be NUL-terminated and `out` writable.
 */
enum TsStatus ts_player_odds(const char *vacancy, char player, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRISOLVE_H */

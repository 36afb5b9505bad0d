#include <stdio.h>
#include <string.h>
#include "trisolve.h"

#define CHECK(x) do { if (!(x)) { fprintf(stderr, "failed: %s (%s)\n", #x, ts_last_error()); return 1; } } while (0)

int main(void) {
    TsPosition *p = NULL;
    CHECK(ts_position_new(5, "a1", &p) == TS_STATUS_OK);
    CHECK(ts_position_peg_count(p) == 14);
    CHECK(ts_position_legal_jump_count(p) == 2);
    CHECK(ts_position_apply(p, "a2-a4") == TS_STATUS_ILLEGAL_MOVE);
    CHECK(ts_position_apply(p, "a3-a1") == TS_STATUS_OK);
    CHECK(ts_position_peg_count(p) == 13);
    ts_position_free(p);

    TsSolution *s = NULL;
    CHECK(ts_solve(20, "g10", NULL, &s) == TS_STATUS_OK);
    char *text = NULL;
    CHECK(ts_solution_text(s, &text) == TS_STATUS_OK);
    CHECK(strlen(text) > 0);
    ts_string_free(text);
    ts_solution_free(s);

    CHECK(ts_solve(10, "d7", NULL, &s) == TS_STATUS_INFEASIBLE);
    printf("ok %s\n", ts_version());
    return 0;
}

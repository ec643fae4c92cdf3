#include <stdio.h>
#include "walkmatch.h"

int main(void) {
    const size_t edges[] = {0, 1, 1, 2, 2, 0};
    const double pi0[] = {1.0, 0.0, 0.0};
    WmGraph *g = NULL;
    WmSchedule *s = NULL;
    WmReport r;
    char msg[256];

    if (wm_graph_new(edges, 3, &g) != WM_STATUS_OK) return 10;
    if (wm_schedule_random(7, &s) != WM_STATUS_OK) return 11;
    if (wm_run_matched(g, s, pi0, 3, 25, 1e-9, &r) != WM_STATUS_OK) {
        wm_last_error_message(msg, sizeof msg);
        fprintf(stderr, "%s\n", msg);
        return 12;
    }
    printf("horizon=%zu deviation=%.3e passed=%d\n", r.horizon, r.max_abs_deviation, r.passed);
    wm_schedule_free(s);
    wm_graph_free(g);

    if (wm_graph_new((const size_t[]){0, 0}, 1, &g) != WM_STATUS_INVALID_GRAPH) return 13;
    return r.passed ? 0 : 1;
}

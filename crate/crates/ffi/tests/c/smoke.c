#include <math.h>
#include <stdio.h>

#include "it2flc.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            const char *e = it2flc_last_error();                      \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,   \
                    #cond, e ? e : "no error");                       \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    It2flcController *it2 = NULL;
    CHECK(it2flc_controller_pendulum(IT2FLC_KIND_IT2, 0, &it2) == IT2FLC_STATUS_OK);
    CHECK(it2flc_controller_arity(it2) == 2);

    double zero[2] = {0.0, 0.0}, y = 1.0;
    CHECK(it2flc_controller_evaluate(it2, zero, 2, &y) == IT2FLC_STATUS_OK);
    CHECK(fabs(y) < 1e-6);

    double up[5] = {0.0, 0.5, 1.0, 0.5, 0.0}, lo[5] = {0.0, 0.0, 0.5, 0.0, 0.0};
    double c = 0.0;
    CHECK(it2flc_combine_centroid(0.0, 4.0, up, lo, 5, &c) == IT2FLC_STATUS_OK);
    CHECK(fabs(c - 2.0) < 1e-12);

    It2flcSimConfig cfg;
    CHECK(it2flc_sim_config_default(&cfg) == IT2FLC_STATUS_OK);
    cfg.duration = 5.0;
    It2flcTrace *tr = NULL;
    CHECK(it2flc_simulate(it2, &cfg, &tr) == IT2FLC_STATUS_OK);
    It2flcMetrics m;
    CHECK(it2flc_trace_metrics(tr, 0.005, &m) == IT2FLC_STATUS_OK);
    CHECK(m.settling_time > 0.0 && m.settling_time < 5.0);

    CHECK(it2flc_controller_evaluate(it2, zero, 1, &y) == IT2FLC_STATUS_INVALID_ARGUMENT);
    CHECK(it2flc_last_error() != NULL);

    it2flc_trace_free(tr);
    it2flc_controller_free(it2);
    printf("settling_time=%.3f\n", m.settling_time);
    return 0;
}

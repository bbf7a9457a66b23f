/* Compiled as C: proves the public header needs no C++. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "latk.h"

static int failures = 0;

static void expect(int cond, const char* what) {
    if (!cond) {
        fprintf(stderr, "FAIL: %s (%s)\n", what, latk_last_error());
        ++failures;
    }
}

int main(void) {
    double v = 0.0;
    expect(latk_theta(NULL, 1.0, 0.0, &v) == LATK_OK, "theta evaluates");
    expect(fabs(v - 1.08643481121330801) < 1e-14, "theta value");

    latk_options* opt = latk_options_new();
    expect(opt != NULL, "options allocate");
    expect(latk_options_set(opt, "abs_tol", 1e-12) == LATK_OK, "set abs_tol");
    expect(latk_options_set(opt, "bogus", 1.0) == LATK_ERR_USAGE, "unknown key rejected");

    latk_energy e;
    expect(latk_diff_energy(opt, 2.0, 2.5, 0.5, 1.0, &e) == LATK_OK, "difference energy");
    expect(e.est_error <= 1e-12, "truncation bound respects tolerance");
    expect(latk_diff_energy(opt, 2.0, 2.5, 0.5, -1.0, &e) == LATK_ERR_DOMAIN, "domain error");

    double rx, ry;
    char word[128];
    expect(latk_reduce(NULL, 2.3, 0.4, &rx, &ry, word, sizeof word) == LATK_OK, "reduce");
    expect(strlen(word) > 0, "reduction word recorded");

    latk_phase_result ph;
    expect(latk_classify_phase(NULL, 2.0, 2.82, &ph) == LATK_OK, "classify");
    expect(ph.phase == LATK_PHASE_SKINNY_RHOMBIC, "skinny phase");

    latk_report* rep = NULL;
    expect(latk_verify_run(NULL, "constants", 0, &rep) == LATK_OK, "verify run");
    expect(latk_report_all_passed(rep) == 1, "constants all pass");
    latk_report_free(rep);
    latk_options_free(opt);

    if (failures == 0) printf("c-binding smoke: all checks passed\n");
    return failures == 0 ? 0 : 1;
}

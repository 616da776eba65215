#include <stdio.h>
#include <string.h>

#include "orbitadm.h"

int main(void) {
    OrbitadmProblem *p = NULL;
    if (orbitadm_problem_from_corpus("axb_f1", &p) != ORBITADM_STATUS_OK) {
        fprintf(stderr, "load: %s\n", orbitadm_last_error());
        return 1;
    }
    OrbitadmConfig cfg = orbitadm_config_default();
    cfg.seed = 7;
    OrbitadmReport *r = NULL;
    if (orbitadm_verdict(p, &cfg, &r) != ORBITADM_STATUS_OK) {
        fprintf(stderr, "verdict: %s\n", orbitadm_last_error());
        return 1;
    }
    int ok = orbitadm_report_spectral(r) == ORBITADM_SPECTRAL_ABSOLUTELY_CONTINUOUS
        && orbitadm_report_admissibility(r) == ORBITADM_ADMISSIBILITY_ADMISSIBLE
        && orbitadm_report_d_tau(r) == 1
        && strstr(orbitadm_report_json(r), "\"Admissible\"") != NULL;

    int64_t num[1] = {3};
    int64_t den[1] = {2};
    size_t rank = 99;
    ok = ok && orbitadm_rank_at(p, num, den, 1, &rank) == ORBITADM_STATUS_OK && rank == 1;

    OrbitadmProblem *bad = NULL;
    ok = ok && orbitadm_problem_parse("algebra x\ndim 2\n", &bad) == ORBITADM_STATUS_INPUT && bad == NULL;
    ok = ok && strlen(orbitadm_last_error()) > 0;

    orbitadm_report_free(r);
    orbitadm_problem_free(p);
    printf("%s %s\n", orbitadm_version(), ok ? "ok" : "FAILED");
    return ok ? 0 : 1;
}

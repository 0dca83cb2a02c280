#include <stdio.h>
#include <string.h>
#include "radfact.h"

static int fail(const char *what) {
    const char *e = radfact_last_error();
    fprintf(stderr, "%s: %s\n", what, e ? e : "(no message)");
    return 1;
}

int main(void) {
    RadfactRing *ring = NULL;
    if (radfact_ring_from_json("{\"idealization\": {\"zn\": 2, \"module_rank\": 2}}", NULL, &ring) != RADFACT_STATUS_OK)
        return fail("ring");
    bool ssp = true;
    char *report = NULL;
    if (radfact_ring_decide_ssp(ring, &ssp, &report) != RADFACT_STATUS_OK)
        return fail("decide");
    uint64_t count = 0;
    radfact_ring_ideal_count(ring, &count);
    printf("order=%llu ideals=%llu ssp=%d\n", (unsigned long long)radfact_ring_order(ring),
           (unsigned long long)count, (int)ssp);
    radfact_string_free(report);
    radfact_ring_free(ring);

    RadfactQuadRing *q = NULL;
    RadfactQuadIdeal *i = NULL;
    int64_t x[] = {6}, y[] = {0};
    if (radfact_quad_ring_new(-5, NULL, &q) != RADFACT_STATUS_OK) return fail("quad ring");
    if (radfact_quad_ideal_from_gens(q, x, y, 1, &i) != RADFACT_STATUS_OK) return fail("ideal");
    uint64_t norm = 0;
    radfact_quad_ideal_norm(i, &norm);
    printf("norm=%llu\n", (unsigned long long)norm);
    radfact_quad_ideal_free(i);
    radfact_quad_ring_free(q);

    if (radfact_ring_from_json("{\"zn\": 0}", NULL, &ring) != RADFACT_STATUS_INVALID_INPUT)
        return fail("expected invalid input");
    printf("error=%s\n", strlen(radfact_last_error()) > 0 ? "set" : "empty");
    return 0;
}

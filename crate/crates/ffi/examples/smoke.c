/* Minimal C client: builds an ideal, checks membership, runs one
 * verification tuple. Exits nonzero on any unexpected result. */
#include <stdio.h>
#include <string.h>

#include "fitt.h"

#define CHECK(call)                                                        \
    do {                                                                   \
        FittStatus st_ = (call);                                           \
        if (st_ != FITT_STATUS_OK) {                                       \
            fprintf(stderr, "%s failed (%d): %s\n", #call, (int)st_,      \
                    fitt_last_error());                                    \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    FittRing *ring = NULL;
    FittIdeal *ideal = NULL;
    FittIdeal *gb = NULL;
    char *text = NULL;
    bool member = false;

    CHECK(fitt_ring_new("p=2", "x3,x4,U", &ring));
    CHECK(fitt_ideal_new(ring, "x3, U*x3^2 - x4^4", &ideal));
    CHECK(fitt_ideal_contains(ideal, "x4^2", &member));
    if (member) {
        fprintf(stderr, "x4^2 should not be a member\n");
        return 1;
    }
    CHECK(fitt_ideal_groebner(ideal, "grevlex", &gb));
    CHECK(fitt_ideal_to_string(gb, &text));
    printf("basis: %s\n", text);
    fitt_string_free(text);

    CHECK(fitt_verify_tuple_json("p=2 n=3 s=1 l=2 v=2,2,1", "corrected", true, &text));
    if (strstr(text, "\"status\": \"pass\"") == NULL) {
        fprintf(stderr, "unexpected report: %s\n", text);
        return 1;
    }
    fitt_string_free(text);

    if (fitt_ring_new("p=4", "x", &ring) != FITT_STATUS_VALIDATION) {
        fprintf(stderr, "p=4 should be rejected\n");
        return 1;
    }

    fitt_ideal_free(gb);
    fitt_ideal_free(ideal);
    printf("ok\n");
    return 0;
}

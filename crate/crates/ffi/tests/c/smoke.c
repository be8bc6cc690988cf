#include <stdio.h>
#include <string.h>

#include "torloc.h"

static const char *FAN = "{\"rank\": 2, \"maximal_cones\": [[[1, 0], [0, 1]], [[0, 1], [-1, -1]], [[-1, -1], [1, 0]]]}";

int main(void) {
    TorlocFan *fan = NULL;
    if (torloc_fan_from_json(FAN, &fan) != TORLOC_STATUS_OK) {
        fprintf(stderr, "load: %s\n", torloc_last_error());
        return 1;
    }
    size_t pic = 0;
    char *e = NULL;
    if (torloc_picard_rank(fan, &pic) != TORLOC_STATUS_OK || torloc_multiplicity(fan, 0, &e) != TORLOC_STATUS_OK) {
        fprintf(stderr, "query: %s\n", torloc_last_error());
        return 1;
    }
    printf("picard %zu\ne(0) = %s\n", pic, e);
    torloc_string_free(e);
    if (torloc_multiplicity(fan, 7, &e) != TORLOC_STATUS_VALIDATION || torloc_last_error() == NULL) {
        return 1;
    }
    torloc_fan_free(fan);
    return 0;
}

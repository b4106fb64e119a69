#include <stdio.h>
#include <string.h>

#include "dops.h"

int main(void) {
    DopsFamily *fam = NULL;
    if (dops_family_ml(1, "1", "-1", NULL, 4, &fam) != DOPS_STATUS_OK) {
        fprintf(stderr, "%s\n", dops_last_error());
        return 1;
    }
    char *c = NULL;
    if (dops_family_coeff(fam, 3, 1, &c) != DOPS_STATUS_OK || strcmp(c, "2") != 0) {
        return 2;
    }
    dops_string_free(c);

    char *report = NULL;
    DopsStatus st = dops_family_verify(fam, "routes,hahn", &report);
    dops_string_free(report);
    dops_family_free(fam);
    if (st != DOPS_STATUS_OK) {
        return 3;
    }

    if (dops_family_ml(1, "1", "1", NULL, 4, &fam) != DOPS_STATUS_INVALID_PARAMETER) {
        return 4;
    }
    printf("%s\n", dops_last_error());
    return 0;
}

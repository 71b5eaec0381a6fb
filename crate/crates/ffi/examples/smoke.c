#include <math.h>
#include <stdio.h>

#include "homperc.h"

int main(void) {
    HpComplex *c = NULL;
    if (hp_gen_perm(2, 10, 1, &c) != HP_OK) {
        fprintf(stderr, "gen: %s\n", hp_last_error_message());
        return 1;
    }
    HpBarcode *b = NULL;
    if (hp_persistence(c, 2, &b) != HP_OK) {
        fprintf(stderr, "persistence: %s\n", hp_last_error_message());
        return 1;
    }
    double births[2];
    size_t len = 0;
    if (hp_essential_births(b, 1, births, 2, &len) != HP_OK || len != 2) {
        fprintf(stderr, "births: %s\n", hp_last_error_message());
        return 1;
    }
    double zeros[1];
    if (hp_ec_zeros(HP_PERM, 2, zeros, 1, &len) != HP_OK || fabs(zeros[0] - 0.5) > 1e-9) {
        return 1;
    }
    HpComplex *bad = NULL;
    if (hp_gen_cubical(9, 4, 0, &bad) != HP_UNSUPPORTED_DIMENSION) {
        return 1;
    }
    printf("homperc %s: first H1 birth %.4f\n", hp_version(), births[0]);
    hp_barcode_free(b);
    hp_complex_free(c);
    return 0;
}

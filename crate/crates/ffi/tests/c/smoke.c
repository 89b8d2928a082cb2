#include <stdio.h>
#include <string.h>

#include "bkptau.h"

int main(void) {
    BkpSeries *tau = NULL;
    if (bkp_bgw_tau("0", "1", 6, &tau) != BKP_STATUS_OK) {
        return 10;
    }
    uint32_t idx[] = {1};
    uint32_t exp[] = {1};
    char *c = NULL;
    if (bkp_series_coeff(tau, idx, exp, 1, &c) != BKP_STATUS_OK || strcmp(c, "1/16") != 0) {
        return 11;
    }
    bkp_string_free(c);

    bool passed = false;
    if (bkp_is_bkp_tau(tau, 3, 3, &passed, NULL) != BKP_STATUS_OK || !passed) {
        return 12;
    }
    BkpSeries *bad = NULL;
    if (bkp_bgw_tau("1/0", "1", 6, &bad) != BKP_STATUS_PARSE || bkp_last_error() == NULL) {
        return 13;
    }
    bkp_series_free(tau);
    printf("ok\n");
    return 0;
}

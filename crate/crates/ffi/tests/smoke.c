#include <stdio.h>
#include <string.h>

#include "qsum.h"

int main(void) {
    QsumPair *pair = NULL;
    if (qsum_pair_new(3, -4, -3, &pair) != QSUM_STATUS_OK) {
        fprintf(stderr, "%s\n", qsum_last_error_message());
        return 1;
    }
    char *value = NULL;
    if (qsum_eval_f(pair, "0", &value) != QSUM_STATUS_OK) {
        return 2;
    }
    int ok = strcmp(value, "-14") == 0;
    printf("%s\n", value);
    qsum_string_free(value);
    qsum_pair_free(pair);

    QsumPair *bad = NULL;
    if (qsum_pair_new(2, -4, 1, &bad) != QSUM_STATUS_SIGN_CONSTRAINT || bad != NULL) {
        return 3;
    }
    return ok ? 0 : 4;
}

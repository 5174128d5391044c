#include <stdio.h>
#include <string.h>
#include "gop.h"

#define CHECK(c) do { if (!(c)) { fprintf(stderr, "failed: %s\n", #c); return 1; } } while (0)

int main(void) {
    GopOperator *op = NULL;
    CHECK(gop_operator_parse("(1-z)*D^2 - D", &op) == GOP_OK);
    size_t order = 0;
    CHECK(gop_operator_order(op, &order) == GOP_OK && order == 2);
    int32_t status = -1;
    CHECK(gop_pcurvature_status(op, 7, &status) == GOP_OK && status == GOP_STATUS_NILPOTENT);
    char *json = NULL;
    CHECK(gop_classify_json(op, &json) == GOP_OK);
    CHECK(strstr(json, "\"fuchsian\":true") != NULL);
    gop_string_free(json);
    gop_operator_free(op);

    CHECK(gop_operator_parse("D*theta", &op) == GOP_ERR_MIXED_BASIS);
    CHECK(gop_last_error_message() != NULL);
    printf("ok\n");
    return 0;
}

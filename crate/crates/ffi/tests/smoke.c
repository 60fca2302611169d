#include <stdio.h>
#include <string.h>
#include "ncat.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    NcatFlowData *fd = ncat_flow_data_torus();
    size_t counts[3];
    for (size_t l = 0; l < 3; l++) {
        CHECK(ncat_x_cell_count(fd, l, &counts[l]) == NCAT_STATUS_OK);
    }
    CHECK(counts[0] == 4 && counts[1] == 16 && counts[2] == 12);
    bool passed = false;
    CHECK(ncat_flow_data_validate(fd, &passed) == NCAT_STATUS_OK && passed);
    ncat_flow_data_free(fd);

    uint32_t src[] = {1, 2};
    uint32_t tgt[] = {0, 0};
    NcatWCell *cell = NULL;
    CHECK(ncat_w_cell_new(0, src, tgt, 2, &cell) == NCAT_STATUS_OK);
    char *text = ncat_w_cell_render(cell);
    CHECK(strcmp(text, "(0, [1 2 ; 0 0])") == 0);
    ncat_string_free(text);

    NcatWCell *bad = NULL;
    uint32_t wrong[] = {3};
    uint32_t lower[] = {0};
    CHECK(ncat_w_cell_new(3, wrong, lower, 1, &bad) == NCAT_STATUS_INVALID_CELL);
    CHECK(bad == NULL && strlen(ncat_last_error()) > 0);
    ncat_w_cell_free(cell);
    puts("ok");
    return 0;
}

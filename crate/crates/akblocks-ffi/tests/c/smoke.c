#include <stdio.h>
#include <string.h>
#include "akblocks.h"

int main(void) {
    int64_t charge[4] = {1, 3, 3, 6};
    AkBlock *b = NULL;
    if (ak_block_new(5, 4, charge, "[[3,2,1,1,1,1],[4,2,1],[2,2,1],[1]]", &b) != AK_OK) {
        fprintf(stderr, "%s\n", ak_last_error());
        return 1;
    }
    size_t mv[4];
    size_t n = 0;
    size_t w = 0;
    bool core = false;
    if (ak_block_mv(b, mv, 4, &n) != AK_OK || n != 4) return 2;
    if (mv[0] != 1 || mv[1] != 0 || mv[2] != 1 || mv[3] != 0) return 3;
    if (ak_block_weight(b, &w) != AK_OK || w != 2) return 4;
    if (ak_block_is_core(b, &core) != AK_OK || !core) return 5;
    char *s = NULL;
    if (ak_block_scopes_json(b, &s) != AK_OK || strstr(s, "\"scopes_vector\":[3,3,2,1,1]") == NULL) return 6;
    ak_string_free(s);
    ak_block_free(b);
    if (ak_block_new(5, 4, charge, "not json", &b) != AK_ERR_PARSE) return 7;
    printf("ok\n");
    return 0;
}

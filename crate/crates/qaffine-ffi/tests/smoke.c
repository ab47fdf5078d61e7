#include <stdio.h>
#include <string.h>

#include "qaffine.h"

int main(void) {
    const int64_t c[4] = {2, -1, -1, 2};
    QaCartan *cd = NULL;
    if (qa_cartan_new(c, 2, NULL, &cd) != QA_STATUS_OK) return 1;
    QaCharacter *chi = NULL;
    if (qa_qchar_fundamental(cd, 2, 0, 4, QA_METHOD_FRENKEL_MUKHIN, &chi) != QA_STATUS_OK) return 2;
    uint64_t dim = 0;
    if (qa_character_dimension(chi, &dim) != QA_STATUS_OK || dim != 3) return 3;
    char *det = NULL;
    if (qa_cartan_det(cd, &det) != QA_STATUS_OK || strcmp(det, "z^2 + 1 + z^-2") != 0) return 4;
    printf("%s\n", det);
    qa_string_free(det);
    qa_character_free(chi);
    QaStatus st = qa_qchar_fundamental(cd, 5, 0, 4, QA_METHOD_FRENKEL_MUKHIN, &chi);
    if (st != QA_STATUS_INVALID_ARGUMENT || strlen(qa_last_error()) == 0) return 5;
    qa_cartan_free(cd);
    return 0;
}

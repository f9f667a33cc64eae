#include <stdio.h>
#include <string.h>

#include "folium.h"

#define CHECK(cond)                                          \
    do {                                                     \
        if (!(cond)) {                                       \
            fprintf(stderr, "failed: %s\n", #cond);          \
            return 1;                                        \
        }                                                    \
    } while (0)

int main(void) {
    FoliumForm *omega = NULL;
    CHECK(folium_form_named("omega", &omega) == FOLIUM_STATUS_OK);

    int64_t degree = 0;
    bool integrable = false;
    CHECK(folium_form_check(omega, &degree, &integrable) == FOLIUM_STATUS_OK);
    CHECK(degree == 2 && integrable);

    int64_t lambda1[4] = {3, -1, -1, -1};
    FoliumForm *limit = NULL;
    CHECK(folium_form_limit(omega, lambda1, 4, FOLIUM_DIRECTION_TO_INFINITY, &limit) == FOLIUM_STATUS_OK);
    FoliumForm *omega1 = NULL;
    CHECK(folium_form_named("omega1", &omega1) == FOLIUM_STATUS_OK);
    char *a = NULL, *b = NULL;
    CHECK(folium_form_to_string(limit, &a) == FOLIUM_STATUS_OK);
    CHECK(folium_form_to_string(omega1, &b) == FOLIUM_STATUS_OK);
    CHECK(strcmp(a, b) == 0);

    char *lattice = NULL;
    CHECK(folium_form_fixing_lattice(omega, &lattice) == FOLIUM_STATUS_OK);
    CHECK(strcmp(lattice, "(3,1,-1,-3)\n") == 0);

    char *dim = NULL;
    CHECK(folium_dimension_formula(2, &dim) == FOLIUM_STATUS_OK);
    CHECK(strcmp(dim, "44") == 0);

    FoliumPolynomial *bad = NULL;
    CHECK(folium_polynomial_parse("z1 *", 0, &bad) == FOLIUM_STATUS_PARSE_ERROR);
    CHECK(folium_last_error() != NULL);

    printf("%s\n", a);
    folium_string_free(a);
    folium_string_free(b);
    folium_string_free(lattice);
    folium_string_free(dim);
    folium_form_free(limit);
    folium_form_free(omega1);
    folium_form_free(omega);
    return 0;
}

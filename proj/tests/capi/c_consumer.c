#include <stdio.h>
#include <string.h>

#include "linesurf/linesurf.h"

static int failures = 0;

static void expect(int ok, const char *what)
{
    if (!ok) {
        printf("FAIL %s (%s)\n", what, lsf_last_error());
        ++failures;
    }
}

int main(void)
{
    lsf_surface *s = NULL;
    lsf_census *c = NULL;
    lsf_census *back = NULL;
    char *text = NULL;
    char *again = NULL;
    size_t first = 0, second = 0, unclassified = 0;
    int64_t sum = 0;

    expect(lsf_surface_parse("F7", "x0^3 + x1^3 + x2^3 + x3^3", &s) == LSF_OK, "parse surface");
    expect(lsf_surface_degree(s) == 3, "degree");
    expect(lsf_scan(s, 1, &c) == LSF_OK, "scan");
    expect(lsf_census_size(c) == 27, "27 lines");
    expect(lsf_flecnodal(c, 5, 1) == LSF_OK, "flecnodal");
    expect(lsf_census_summary(c, &first, &second, &unclassified, &sum) == LSF_OK, "summary");
    expect(unclassified == 0 && first + second == 27 && sum <= 27, "kinds and multiplicities");
    expect(lsf_census_render(c, &text) == LSF_OK, "render");
    expect(lsf_census_parse(s, text, &back) == LSF_OK, "reparse");
    expect(lsf_census_render(back, &again) == LSF_OK && strcmp(text, again) == 0, "round trip");

    expect(lsf_bounds(2, &text) == LSF_ERR_PRECONDITION, "bounds below 3");
    expect(strlen(lsf_last_error()) > 0, "error message");
    expect(lsf_surface_parse("F7", "x0^3 + * x1", &s) == LSF_ERR_PARSE, "parse error");
    expect(lsf_scan(NULL, 1, &c) == LSF_ERR_PRECONDITION, "null handle");

    lsf_string_free(again);
    lsf_census_free(back);
    lsf_census_free(c);
    lsf_surface_free(s);
    if (failures == 0)
        printf("c consumer: ok\n");
    return failures == 0 ? 0 : 1;
}

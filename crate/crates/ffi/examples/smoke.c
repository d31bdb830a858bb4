#include <stdio.h>
#include "tiltver.h"

int main(void) {
    TvCase *c = NULL;
    if (tv_case_new("B2", 3, &c) != TV_STATUS_OK) {
        fprintf(stderr, "%s\n", tv_last_error());
        return 2;
    }
    char *report = NULL;
    bool refuted = false;
    if (tv_tmc_report(c, TV_FORMAT_TEXT, &report, &refuted) != TV_STATUS_OK) {
        fprintf(stderr, "%s\n", tv_last_error());
        tv_case_free(c);
        return 2;
    }
    fputs(report, stdout);
    tv_string_free(report);
    tv_case_free(c);
    return refuted ? 1 : 0;
}

/* Pure C consumer: compiles against the public header and links the shared
 * library, which is exactly what an external binding would do. */

#include <discrimlab/discrimlab.h>

#include <stdio.h>
#include <string.h>

int main(void) {
    double d = 0.0;
    if (dlab_d_closed_form(0.5, 0.5, 0.5, &d) != DLAB_OK) return 1;
    if (d < 0.8535533 || d > 0.8535534) return 1;

    const double bloch[3] = {0.0, 0.0, 1.0};
    double m[8];
    if (dlab_bloch_to_density(bloch, m) != DLAB_OK) return 1;
    if (m[0] < 0.999999) return 1;

    double bound = 0.0;
    if (dlab_direct_bound(0.5, 0.2, &bound) != DLAB_OK) return 1;
    if (bound < 0.7999999 || bound > 0.8000001) return 1;

    if (dlab_d_closed_form(0.5, 0.5, 2.0, &d) != DLAB_ERROR_INVALID_ARGUMENT) return 1;
    if (strlen(dlab_last_error_message()) == 0) return 1;

    dlab_report* rep = NULL;
    if (dlab_run("discrim", "eta1 = 0.5\ngamma2 = 0.25\nsamples = 1000\n", &rep) != DLAB_OK)
        return 1;
    if (dlab_report_row_count(rep) != 1) return 1;
    if (!dlab_report_all_pass(rep)) return 1;
    dlab_report_free(rep);

    printf("capi smoke ok (discrimlab %s)\n", dlab_version());
    return 0;
}

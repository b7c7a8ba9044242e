/* Compiled as C: the public header must be usable without a C++ compiler. */
#include <math.h>
#include <stdio.h>

#include "phonocool/phonocool.h"

int main(void) {
    pc_system_params sys = {2.0, 0.0, 0.5, 0.5};
    pc_bath_params bath = {0.01, 1.0, 3.0};
    pc_problem* p = NULL;
    double current = 0.0;
    if (pc_problem_create(&sys, &bath, &p) != PC_OK) {
        fprintf(stderr, "create failed: %s\n", pc_last_error());
        return 1;
    }
    if (pc_problem_heat_current(p, PC_METHOD_BLOCH_REDFIELD, PC_SHIFTS_DEFAULT, &current) != PC_OK) {
        fprintf(stderr, "heat current failed: %s\n", pc_last_error());
        pc_problem_free(p);
        return 1;
    }
    pc_problem_free(p);
    printf("Bloch-Redfield heat current at Omega=0.5, delta=0: %.9f\n", current);
    return fabs(current + 0.0860286) < 1e-6 ? 0 : 1;
}

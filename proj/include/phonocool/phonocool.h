/* phonocool.h — C interface to the phonon-cooling master-equation library.
 *
 * Every call returns a pc_status. On failure the message (and, for config
 * errors, the 1-based line) is kept per thread until the next failing call.
 * Handles are opaque and must be released with the matching *_free function.
 */
#ifndef PHONOCOOL_H
#define PHONOCOOL_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(PHONOCOOL_BUILDING_DLL)
#    define PC_API __declspec(dllexport)
#  else
#    define PC_API __declspec(dllimport)
#  endif
#else
#  define PC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
    PC_OK = 0,
    PC_ERR_INVALID_ARGUMENT = 1,
    PC_ERR_NUMERICAL = 2,
    PC_ERR_CONFIG = 3,
    PC_ERR_IO = 4,
    PC_ERR_INTERNAL = 5
} pc_status;

typedef enum pc_method {
    PC_METHOD_BLOCH_REDFIELD = 0,
    PC_METHOD_SECULAR = 1,
    PC_METHOD_PHENOMENOLOGICAL = 2,
    PC_METHOD_TCL_ORACLE = 3
} pc_method;

typedef enum pc_route { PC_ROUTE_TRACE_FORMULA = 0, PC_ROUTE_COUNTING_FD = 1 } pc_route;

/* Pass as include_shifts to use the method's default. */
#define PC_SHIFTS_DEFAULT (-1)

typedef struct pc_config pc_config;
typedef struct pc_records pc_records;
typedef struct pc_problem pc_problem;

typedef struct pc_record {
    double delta;
    double omega;
    pc_method method;
    pc_route route;
    double heat_absorption_rate;
    double min_eigenvalue_seen;
    double steady_residual;
    const char* status; /* "ok" or an error message; owned by the records handle */
} pc_record;

typedef struct pc_system_params {
    double e_man;
    double delta;
    double omega_rabi;
    double gamma_rad;
} pc_system_params;

typedef struct pc_bath_params {
    double alpha;
    double omega_c;
    double temperature;
} pc_bath_params;

PC_API const char* pc_version(void);
PC_API const char* pc_status_string(pc_status s);
PC_API const char* pc_last_error(void);
PC_API int pc_last_error_line(void); /* 0 when unknown */

/* Strings returned through char** out-parameters are freed with pc_string_free. */
PC_API void pc_string_free(char* s);

/* ---- configuration ---- */
PC_API size_t pc_profile_count(void);
PC_API const char* pc_profile_name(size_t index); /* NULL past the end */

PC_API pc_status pc_config_load_file(const char* path, pc_config** out);
PC_API pc_status pc_config_load_string(const char* json, pc_config** out);
PC_API pc_status pc_config_load_profile(const char* name, pc_config** out);
PC_API pc_status pc_config_to_json(const pc_config* cfg, char** out);
PC_API pc_status pc_config_row_count(const pc_config* cfg, size_t* out);
PC_API void pc_config_free(pc_config* cfg);

/* ---- sweeps ---- */
/* jobs = 0 selects the hardware thread count. Per-point failures do not fail the
 * call; they are reported in each record's status. */
PC_API pc_status pc_sweep_run(const pc_config* cfg, unsigned jobs, pc_records** out);
PC_API size_t pc_records_size(const pc_records* recs);
PC_API size_t pc_records_failures(const pc_records* recs);
PC_API pc_status pc_records_get(const pc_records* recs, size_t index, pc_record* out);
/* format is "csv", "json", or NULL to infer from the file extension. */
PC_API pc_status pc_records_write(const pc_records* recs, const char* path, const char* format);
PC_API void pc_records_free(pc_records* recs);

/* ---- single parameter point ---- */
PC_API pc_status pc_problem_create(const pc_system_params* sys, const pc_bath_params* bath,
                                   pc_problem** out);
PC_API pc_status pc_problem_rates(const pc_problem* p, double* gamma_plus, double* gamma_minus);
/* Column-major 9x9 generator (coherent + phonon + radiative) at counting field u,
 * split into real and imaginary parts of 81 entries each. Not available for the oracle. */
PC_API pc_status pc_problem_liouvillian(const pc_problem* p, pc_method m, double u,
                                        int include_shifts, double* re, double* im);
/* Row-major 3x3 steady state, basis (|e>, |g_u>, |g_l>). residual may be NULL. */
PC_API pc_status pc_problem_steady_state(const pc_problem* p, pc_method m, int include_shifts,
                                         double* re, double* im, double* residual);
/* Steady-state phonon heat current, positive when the bath gains energy. */
PC_API pc_status pc_problem_heat_current(const pc_problem* p, pc_method m, int include_shifts,
                                         double* current);
PC_API void pc_problem_free(pc_problem* p);

#ifdef __cplusplus
}
#endif

#endif /* PHONOCOOL_H */

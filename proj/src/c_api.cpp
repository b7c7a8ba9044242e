#include "phonocool/phonocool.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "phonocool/config.hpp"
#include "phonocool/errors.hpp"
#include "phonocool/oracle.hpp"
#include "phonocool/output.hpp"
#include "phonocool/sweep.hpp"

using namespace phonocool;

struct pc_config {
    SweepConfig cfg;
};

struct pc_records {
    std::vector<SpectrumRecord> rows;
};

struct pc_problem {
    SystemSpec spec;
    BathSpec bath;
    std::unique_ptr<Model> model;
};

namespace {

thread_local std::string g_error;
thread_local int g_error_line = 0;

pc_status fail(pc_status s, const std::string& msg, int line = 0) {
    g_error = msg;
    g_error_line = line;
    return s;
}

template <class F>
pc_status guarded(F&& f) {
    try {
        f();
        return PC_OK;
    } catch (const ConfigError& e) {
        return fail(PC_ERR_CONFIG, e.what(), e.line);
    } catch (const IoError& e) {
        return fail(PC_ERR_IO, e.what());
    } catch (const NumericalError& e) {
        return fail(PC_ERR_NUMERICAL, e.what());
    } catch (const InvalidArgument& e) {
        return fail(PC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(PC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(PC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(PC_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Method to_method(pc_method m) {
    switch (m) {
    case PC_METHOD_BLOCH_REDFIELD: return Method::bloch_redfield;
    case PC_METHOD_SECULAR: return Method::secular;
    case PC_METHOD_PHENOMENOLOGICAL: return Method::phenomenological;
    case PC_METHOD_TCL_ORACLE: return Method::tcl_oracle;
    }
    throw InvalidArgument("unknown method code " + std::to_string(static_cast<int>(m)));
}

bool shifts_flag(Method m, int include_shifts) {
    return include_shifts == PC_SHIFTS_DEFAULT ? default_include_shifts(m) : include_shifts != 0;
}

void require(const void* p, const char* what) {
    if (!p) throw InvalidArgument(std::string(what) + " must not be NULL");
}

} // namespace

extern "C" {

const char* pc_version(void) { return "0.1.0"; }

const char* pc_status_string(pc_status s) {
    switch (s) {
    case PC_OK: return "ok";
    case PC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PC_ERR_NUMERICAL: return "numerical failure";
    case PC_ERR_CONFIG: return "configuration error";
    case PC_ERR_IO: return "I/O error";
    case PC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* pc_last_error(void) { return g_error.c_str(); }
int pc_last_error_line(void) { return g_error_line; }

void pc_string_free(char* s) { delete[] s; }

size_t pc_profile_count(void) { return profile_names().size(); }

const char* pc_profile_name(size_t index) {
    static const std::vector<std::string> names = profile_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

pc_status pc_config_load_file(const char* path, pc_config** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new pc_config{parse_config_file(path)};
    });
}

pc_status pc_config_load_string(const char* json, pc_config** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = new pc_config{parse_config_string(json)};
    });
}

pc_status pc_config_load_profile(const char* name, pc_config** out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        auto cfg = profile_config(name);
        cfg.validate();
        *out = new pc_config{std::move(cfg)};
    });
}

pc_status pc_config_to_json(const pc_config* cfg, char** out) {
    return guarded([&] {
        require(cfg, "cfg");
        require(out, "out");
        *out = dup_string(serialize_config(cfg->cfg));
    });
}

pc_status pc_config_row_count(const pc_config* cfg, size_t* out) {
    return guarded([&] {
        require(cfg, "cfg");
        require(out, "out");
        const auto& c = cfg->cfg;
        *out = static_cast<size_t>(c.delta_steps) * c.omega_list.size() * c.methods.size() *
               c.routes.size();
    });
}

void pc_config_free(pc_config* cfg) { delete cfg; }

pc_status pc_sweep_run(const pc_config* cfg, unsigned jobs, pc_records** out) {
    return guarded([&] {
        require(cfg, "cfg");
        require(out, "out");
        *out = new pc_records{run_sweep(cfg->cfg, jobs)};
    });
}

size_t pc_records_size(const pc_records* recs) { return recs ? recs->rows.size() : 0; }

size_t pc_records_failures(const pc_records* recs) {
    if (!recs) return 0;
    size_t n = 0;
    for (const auto& r : recs->rows) n += r.ok() ? 0 : 1;
    return n;
}

pc_status pc_records_get(const pc_records* recs, size_t index, pc_record* out) {
    return guarded([&] {
        require(recs, "recs");
        require(out, "out");
        if (index >= recs->rows.size()) throw InvalidArgument("record index out of range");
        const auto& r = recs->rows[index];
        out->delta = r.delta;
        out->omega = r.omega;
        out->method = static_cast<pc_method>(r.method);
        out->route = r.route == HeatRoute::trace_formula ? PC_ROUTE_TRACE_FORMULA : PC_ROUTE_COUNTING_FD;
        out->heat_absorption_rate = r.heat_absorption_rate;
        out->min_eigenvalue_seen = r.min_eigenvalue_seen;
        out->steady_residual = r.steady_residual;
        out->status = r.status.c_str();
    });
}

pc_status pc_records_write(const pc_records* recs, const char* path, const char* format) {
    return guarded([&] {
        require(recs, "recs");
        require(path, "path");
        const auto fmt = format ? format_from_string(format) : format_from_path(path);
        write_output(recs->rows, path, fmt);
    });
}

void pc_records_free(pc_records* recs) { delete recs; }

pc_status pc_problem_create(const pc_system_params* sys, const pc_bath_params* bath, pc_problem** out) {
    return guarded([&] {
        require(sys, "sys");
        require(bath, "bath");
        require(out, "out");
        auto p = std::make_unique<pc_problem>();
        p->spec = {sys->e_man, sys->delta, sys->omega_rabi, sys->gamma_rad};
        p->bath = {bath->alpha, bath->omega_c, bath->temperature};
        p->model = std::make_unique<Model>(p->spec, p->bath);
        *out = p.release();
    });
}

pc_status pc_problem_rates(const pc_problem* p, double* gamma_plus, double* gamma_minus) {
    return guarded([&] {
        require(p, "problem");
        const auto r = phenomenological_rates(p->spec, p->bath);
        if (gamma_plus) *gamma_plus = r.gamma_plus;
        if (gamma_minus) *gamma_minus = r.gamma_minus;
    });
}

pc_status pc_problem_liouvillian(const pc_problem* p, pc_method m, double u, int include_shifts,
                                 double* re, double* im) {
    return guarded([&] {
        require(p, "problem");
        require(re, "re");
        require(im, "im");
        const Method method = to_method(m);
        if (method == Method::tcl_oracle)
            throw InvalidArgument("the oracle generator is time dependent; no single Liouvillian");
        const auto l = p->model->liouvillian(method, u, shifts_flag(method, include_shifts));
        for (int c = 0; c < kSuperDim; ++c)
            for (int r = 0; r < kSuperDim; ++r) {
                re[c * kSuperDim + r] = l.matrix(r, c).real();
                im[c * kSuperDim + r] = l.matrix(r, c).imag();
            }
    });
}

namespace {

struct PointSteady {
    SteadyState ss;
    double current;
};

PointSteady point_steady(const pc_problem* p, Method m, int include_shifts) {
    if (m == Method::tcl_oracle) {
        const MemoryKernelConfig cfg{};
        const Tcl2Kernel k(p->spec, make_correlation_table(p->bath, cfg), cfg);
        const auto r = tcl_steady_state(k);
        return {r.state, r.current};
    }
    const bool shifts = shifts_flag(m, include_shifts);
    auto ss = steady_state(p->model->liouvillian(m, 0.0, shifts));
    const double j = p->model->heat_current(m, ss.rho, shifts);
    return {ss, j};
}

} // namespace

pc_status pc_problem_steady_state(const pc_problem* p, pc_method m, int include_shifts, double* re,
                                  double* im, double* residual) {
    return guarded([&] {
        require(p, "problem");
        require(re, "re");
        require(im, "im");
        const auto r = point_steady(p, to_method(m), include_shifts);
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j) {
                re[i * kDim + j] = r.ss.rho(i, j).real();
                im[i * kDim + j] = r.ss.rho(i, j).imag();
            }
        if (residual) *residual = r.ss.residual;
    });
}

pc_status pc_problem_heat_current(const pc_problem* p, pc_method m, int include_shifts, double* current) {
    return guarded([&] {
        require(p, "problem");
        require(current, "current");
        *current = point_steady(p, to_method(m), include_shifts).current;
    });
}

void pc_problem_free(pc_problem* p) { delete p; }

} // extern "C"

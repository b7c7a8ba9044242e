#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "phonocool/phonocool.h"

TEST_CASE("version and status strings") {
    CHECK(std::string(pc_version()) == "0.1.0");
    CHECK(std::string(pc_status_string(PC_OK)) == "ok");
    CHECK(std::string(pc_status_string(PC_ERR_IO)) == "I/O error");
}

TEST_CASE("profiles are listed and loadable") {
    REQUIRE(pc_profile_count() == 7);
    CHECK(pc_profile_name(7) == nullptr);
    for (size_t i = 0; i < pc_profile_count(); ++i) {
        pc_config* cfg = nullptr;
        REQUIRE(pc_config_load_profile(pc_profile_name(i), &cfg) == PC_OK);
        char* json = nullptr;
        REQUIRE(pc_config_to_json(cfg, &json) == PC_OK);
        CHECK(std::strstr(json, pc_profile_name(i)) != nullptr);
        pc_config* again = nullptr;
        CHECK(pc_config_load_string(json, &again) == PC_OK);
        pc_config_free(again);
        pc_string_free(json);
        pc_config_free(cfg);
    }
    pc_config* cfg = nullptr;
    CHECK(pc_config_load_profile("nope", &cfg) == PC_ERR_CONFIG);
    CHECK(cfg == nullptr);
}

TEST_CASE("config errors report status, message and line") {
    pc_config* cfg = nullptr;
    CHECK(pc_config_load_string("{\n\"delta\": {\"steps\": 0}}", &cfg) == PC_ERR_CONFIG);
    CHECK(pc_last_error_line() == 2);
    CHECK(std::string(pc_last_error()).find("delta.steps") != std::string::npos);
    CHECK(pc_config_load_file("/nonexistent/x.json", &cfg) == PC_ERR_IO);
    CHECK(std::string(pc_last_error()).find("/nonexistent/x.json") != std::string::npos);
    CHECK(pc_config_load_string(nullptr, &cfg) == PC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("sweep through the C interface") {
    pc_config* cfg = nullptr;
    REQUIRE(pc_config_load_string(R"({"delta": {"min": 0, "max": 0.5, "steps": 2}, "omega_list": [0.5]})", &cfg) == PC_OK);
    size_t rows = 0;
    REQUIRE(pc_config_row_count(cfg, &rows) == PC_OK);
    CHECK(rows == 6);
    pc_records* recs = nullptr;
    REQUIRE(pc_sweep_run(cfg, 2, &recs) == PC_OK);
    CHECK(pc_records_size(recs) == rows);
    CHECK(pc_records_failures(recs) == 0);
    pc_record r{};
    REQUIRE(pc_records_get(recs, 0, &r) == PC_OK);
    CHECK(r.delta == 0.0);
    CHECK(r.omega == 0.5);
    CHECK(r.method == PC_METHOD_BLOCH_REDFIELD);
    CHECK(r.route == PC_ROUTE_TRACE_FORMULA);
    CHECK(r.heat_absorption_rate == doctest::Approx(0.0860286).epsilon(1e-5));
    CHECK(std::string(r.status) == "ok");
    CHECK(pc_records_get(recs, rows, &r) == PC_ERR_INVALID_ARGUMENT);
    CHECK(pc_records_write(recs, "/nonexistent-dir/out.csv", nullptr) == PC_ERR_IO);
    CHECK(pc_records_write(recs, "out.txt", nullptr) == PC_ERR_INVALID_ARGUMENT);
    const std::string path = "phonocool_capi_test.json";
    CHECK(pc_records_write(recs, path.c_str(), nullptr) == PC_OK);
    std::remove(path.c_str());
    pc_records_free(recs);
    pc_config_free(cfg);
}

TEST_CASE("single-point problem") {
    const pc_system_params sys{2.0, 0.0, 1.0, 0.5};
    const pc_bath_params bath{0.01, 1.0, 3.0};
    pc_problem* p = nullptr;
    REQUIRE(pc_problem_create(&sys, &bath, &p) == PC_OK);
    double gp = 0.0, gm = 0.0;
    REQUIRE(pc_problem_rates(p, &gp, &gm) == PC_OK);
    CHECK(gp / gm == doctest::Approx(std::exp(-2.0 / 3.0)).epsilon(1e-12));

    double re[81], im[81];
    REQUIRE(pc_problem_liouvillian(p, PC_METHOD_SECULAR, 0.0, PC_SHIFTS_DEFAULT, re, im) == PC_OK);
    // trace preservation: rows 0, 4, 8 of the column-stacked vector carry the diagonal
    for (int c = 0; c < 9; ++c) {
        const double s = re[c * 9 + 0] + re[c * 9 + 4] + re[c * 9 + 8];
        const double t = im[c * 9 + 0] + im[c * 9 + 4] + im[c * 9 + 8];
        CHECK(std::abs(s) < 1e-12);
        CHECK(std::abs(t) < 1e-12);
    }
    CHECK(pc_problem_liouvillian(p, PC_METHOD_TCL_ORACLE, 0.0, 1, re, im) == PC_ERR_INVALID_ARGUMENT);
    CHECK(pc_problem_liouvillian(p, static_cast<pc_method>(9), 0.0, 1, re, im) == PC_ERR_INVALID_ARGUMENT);

    double rr[9], ri[9], residual = 1.0;
    REQUIRE(pc_problem_steady_state(p, PC_METHOD_BLOCH_REDFIELD, PC_SHIFTS_DEFAULT, rr, ri, &residual) == PC_OK);
    CHECK(rr[0] + rr[4] + rr[8] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(residual < 1e-12);
    double br = 0.0, tcl = 0.0;
    REQUIRE(pc_problem_heat_current(p, PC_METHOD_BLOCH_REDFIELD, PC_SHIFTS_DEFAULT, &br) == PC_OK);
    REQUIRE(pc_problem_heat_current(p, PC_METHOD_TCL_ORACLE, PC_SHIFTS_DEFAULT, &tcl) == PC_OK);
    CHECK(br == doctest::Approx(-0.114809).epsilon(1e-5));
    CHECK(tcl == doctest::Approx(br).epsilon(0.05));
    pc_problem_free(p);

    const pc_system_params bad{-1.0, 0.0, 1.0, 0.5};
    CHECK(pc_problem_create(&bad, &bath, &p) == PC_ERR_INVALID_ARGUMENT);
    const pc_system_params closed{2.0, 0.0, 0.0, 0.0};
    REQUIRE(pc_problem_create(&closed, &bath, &p) == PC_OK);
    CHECK(pc_problem_steady_state(p, PC_METHOD_SECULAR, 0, rr, ri, nullptr) == PC_ERR_NUMERICAL);
    pc_problem_free(p);
}

TEST_CASE("null handles are tolerated by free functions") {
    pc_config_free(nullptr);
    pc_records_free(nullptr);
    pc_problem_free(nullptr);
    pc_string_free(nullptr);
    CHECK(pc_records_size(nullptr) == 0);
}

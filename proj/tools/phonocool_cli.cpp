// phonocool — heat-absorption spectra from the command line.
//
//   phonocool sweep --config run.json --output out.csv [--format csv|json] [--jobs N]
//   phonocool reproduce --profile paper-fig2a --output fig2a.json
//
// Exit status: 0 all points succeeded, 2 some points failed (rows kept with
// their error in `status`), 1 configuration, argument or I/O error.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "phonocool/phonocool.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

int report(pc_status s, const char* context) {
    std::fprintf(stderr, "phonocool: %s: %s: %s\n", context, pc_status_string(s), pc_last_error());
    return kExitConfig;
}

unsigned resolve_jobs(int flag) {
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("PHONOCOOL_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
        std::fprintf(stderr, "phonocool: ignoring invalid PHONOCOOL_JOBS='%s'\n", env);
    }
    return 0;
}

int run(pc_config* cfg, const std::string& output, const std::string& format, int jobs) {
    pc_records* recs = nullptr;
    if (pc_status s = pc_sweep_run(cfg, resolve_jobs(jobs), &recs); s != PC_OK) {
        pc_config_free(cfg);
        return report(s, "sweep");
    }
    pc_config_free(cfg);
    const pc_status w = pc_records_write(recs, output.c_str(), format.empty() ? nullptr : format.c_str());
    const size_t failures = pc_records_failures(recs);
    const size_t total = pc_records_size(recs);
    pc_records_free(recs);
    if (w != PC_OK) return report(w, "write");
    if (failures > 0) {
        std::fprintf(stderr, "phonocool: %zu of %zu rows failed; see the status column in %s\n",
                     failures, total, output.c_str());
        return kExitPartial;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phonon heat-absorption spectra of a driven three-level emitter"};
    app.require_subcommand(1);
    app.set_version_flag("--version", pc_version());

    std::string config_path, profile, output, format;
    int jobs = 0;

    auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a JSON config");
    sweep->add_option("--config", config_path, "JSON config file (empty file = paper-fig2 defaults)")
        ->required();
    auto* reproduce = app.add_subcommand("reproduce", "Run a built-in figure profile");
    std::vector<std::string> names;
    for (size_t i = 0; i < pc_profile_count(); ++i) names.emplace_back(pc_profile_name(i));
    reproduce->add_option("--profile", profile, "Profile name")->required()->check(CLI::IsMember(names));

    for (auto* cmd : {sweep, reproduce}) {
        cmd->add_option("--output", output, "Output file (.csv or .json)")->required();
        cmd->add_option("--format", format, "csv or json; inferred from --output when omitted")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--jobs", jobs, "Worker threads (default: PHONOCOOL_JOBS or all cores)")
            ->check(CLI::NonNegativeNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    pc_config* cfg = nullptr;
    if (sweep->parsed()) {
        if (pc_status s = pc_config_load_file(config_path.c_str(), &cfg); s != PC_OK)
            return report(s, config_path.c_str());
    } else {
        if (pc_status s = pc_config_load_profile(profile.c_str(), &cfg); s != PC_OK)
            return report(s, profile.c_str());
    }
    return run(cfg, output, format, jobs);
}

// config.hpp — Sweep configuration: JSON schema, named profiles, validation

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "phonocool/bath.hpp"
#include "phonocool/dynamics.hpp"
#include "phonocool/generators.hpp"
#include "phonocool/oracle.hpp"

namespace phonocool {

enum class SignConvention { absorption_positive, bath_gain_positive };

std::string_view to_string(SignConvention s);

struct ModeConfig {
    enum class Kind { steady, transient };
    Kind kind{Kind::steady};
    double t_end{30.0};
    double dt{0.01}; // transient step; in steady mode, the step of the counting-field difference

    bool operator==(const ModeConfig&) const = default;
};

struct RouteConfig {
    HeatRoute route{HeatRoute::trace_formula};
    double u_step{0.05};
    FdScheme scheme{FdScheme::central};

    bool operator==(const RouteConfig&) const = default;
};

struct SweepConfig {
    std::string profile{"paper-fig2"};
    double e_man{2.0};
    double gamma_rad{0.5};
    double alpha{0.01};
    double omega_c{1.0};
    double temperature{3.0};
    double delta_min{-1.5};
    double delta_max{1.5};
    int delta_steps{81};
    std::vector<double> omega_list{0.01, 0.1, 0.5, 1.0};
    std::vector<Method> methods{Method::bloch_redfield, Method::secular, Method::phenomenological};
    ModeConfig mode{};
    std::vector<RouteConfig> routes{RouteConfig{}};
    // indexed by Method
    std::array<bool, 4> include_shifts{true, false, false, true};
    SignConvention sign{SignConvention::absorption_positive};
    double quad_tol{1e-9};
    double omega_max_factor{40.0};
    double pairing_tol{1e-10}; // relative to e_man
    MemoryKernelConfig oracle{};

    bool shifts_for(Method m) const { return include_shifts[static_cast<std::size_t>(m)]; }
    BathSpec bath() const { return {alpha, omega_c, temperature}; }
    SystemSpec system(double delta, double omega) const { return {e_man, delta, omega, gamma_rad}; }
    std::vector<double> deltas() const;

    // Throws ConfigError naming the offending field.
    void validate() const;

    bool operator==(const SweepConfig& o) const;
};

// Built-in profiles: paper-fig2, paper-fig2a … paper-fig2d, paper-fig3a, paper-fig3b.
std::vector<std::string> profile_names();
SweepConfig profile_config(std::string_view name); // throws ConfigError when unknown

// Whitespace-only input yields the paper-fig2 defaults. Unknown keys, wrong types
// and out-of-range values raise ConfigError with the 1-based line of the key.
SweepConfig parse_config_string(std::string_view text);
// Missing or unreadable file raises IoError.
SweepConfig parse_config_file(const std::string& path);

// Canonical JSON with every field spelled out.
std::string serialize_config(const SweepConfig& cfg);

} // namespace phonocool

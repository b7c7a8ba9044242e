// sweep.hpp — Heat-absorption spectra over (Ω, δ) grids

#pragma once

#include <string>
#include <vector>

#include "phonocool/config.hpp"

namespace phonocool {

struct SpectrumRecord {
    double delta{0.0};
    double omega{0.0};
    Method method{Method::bloch_redfield};
    HeatRoute route{HeatRoute::trace_formula};
    double heat_absorption_rate{0.0}; // sign follows SweepConfig::sign
    double min_eigenvalue_seen{0.0};
    double steady_residual{0.0};
    std::string status{"ok"};

    bool ok() const { return status == "ok"; }
};

// One record per (omega, delta, method, route), in that nesting order. Points run
// on up to `jobs` threads (0 picks hardware concurrency); a failing point keeps
// its row with NaN values and the error text in `status`.
std::vector<SpectrumRecord> run_sweep(const SweepConfig& cfg, unsigned jobs = 1);

// Records for a single (δ, Ω) point; throws on failure.
std::vector<SpectrumRecord> evaluate_point(const SweepConfig& cfg, double delta, double omega);

} // namespace phonocool

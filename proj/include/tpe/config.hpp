#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "tpe/scan.hpp"

namespace tpe {

inline constexpr int kSchemaVersion = 1;

struct EvolveConfig {
    double t_max = 400.0;
    double dt = 0.02;
    int store_stride = 10;
    double stop_residual = 1e-6;
    int csv_stride = 1;
};

struct SweepBlockConfig {
    double delta2_min = -6.0;
    double delta2_max = 6.0;
    int points = 121;
    double exclude_abs_below = 0.2;
    std::vector<double> temperatures = {5.0, 10.0, 20.0};
    bool include_phonon_free = true;
    double t_max = 400.0;
    double dt = 0.02;
};

struct SpectrumBlockConfig {
    double omega_min = -8.0;
    double omega_max = 8.0;
    int points = 600;
    double tau_max = 400.0;
    double t_max = 400.0;
    double dt = 0.02;
    std::vector<double> temperatures = {0.0, 5.0, 10.0, 20.0};
};

struct ResonanceBlockConfig {
    std::string kind = "cavity";
    double search_min = -6.0;
    double search_max = 6.0;
    double exclude_abs_below = 0.2;
};

struct RatesBlockConfig {
    bool dump_kernels = false;
    double kernel_omega_max = 8.0;
    int kernel_omega_points = 401;
};

// Fully deterministic run description; every knob has a default, unknown keys
// are rejected with the path to the offending entry.
struct RunConfig {
    SystemParams system;
    BathSpec bath;
    SpaceDescriptor space{3};
    GeneratorKind generator = GeneratorKind::approximate;
    EvolveConfig evolve;
    SweepBlockConfig sweep;
    SpectrumBlockConfig spectrum;
    ResonanceBlockConfig resonance;
    RatesBlockConfig rates;
    std::string output_dir = "out";

    // Effective configuration with all defaults filled in (sidecar payload).
    nlohmann::json effective() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace tpe

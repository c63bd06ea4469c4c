#pragma once

#include <string>
#include <vector>

#include "tpe/dynamics.hpp"
#include "tpe/liouvillian.hpp"

namespace tpe {

enum class GeneratorKind { full, approximate };

struct SweepGrid {
    double lo = -6.0;
    double hi = 6.0;
    int points = 121;
    // The far-detuned picture is singular at delta2 = 0 (Stark term 2g^2/d);
    // grid values inside the band are skipped.
    double exclude_below = 0.2;

    std::vector<double> values() const;
};

struct SweepPoint {
    double delta2 = 0.0;
    double P = 0.0, Q = 0.0, R = 0.0, R_prime = 0.0;
    double residual = 0.0;
    bool ok = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    SystemParams sys;  // delta2 is the per-point value
    BathSpec bath;
    GeneratorKind generator = GeneratorKind::approximate;

    const SweepPoint* argmax_R() const;
};

struct SweepConfig {
    SystemParams sys;
    BathSpec bath;
    SweepGrid grid;
    GeneratorKind generator = GeneratorKind::approximate;
    SpaceDescriptor space{3};
    PropagateOptions prop{.dt = 0.02, .t_max = 400.0, .store_stride = 0,
                          .stop_residual = 1e-6};
    int workers = 0;  // 0: hardware concurrency
};

// Propagates |e1,e2,0> for every grid value of delta2 and integrates the
// emission probabilities. Per-point failures are recorded and the sweep
// continues; results are ordered by grid index.
SweepResult sweep_delta2(const SweepConfig& cfg);

enum class ResonanceKind { cavity, phonon };

struct ResonanceResult {
    double delta2_star = 0.0;
    double mismatch = 0.0;
};

// Finds the delta2 minimizing the two-photon resonance condition
//   cavity: |D1 + D2 + 2g1^2/D1 + 2g2^2/D2|
//   phonon: |D1 + 2g1^2/D1 - D2 - 2g2^2/D2|
// over [lo, hi] excluding the singular band around 0.
ResonanceResult resonance_locator(const SystemParams& sys, ResonanceKind kind,
                                  double lo = -6.0, double hi = 6.0,
                                  double exclude_below = 0.2);

}  // namespace tpe

#include <doctest.h>

#include <cmath>

#include "tpe/scan.hpp"

using namespace tpe;

namespace {

SystemParams strong_second_dot() {
    SystemParams sys;
    sys.g2 = 2.0;
    sys.delta1 = -5.0;
    sys.kappa = 0.1;
    sys.gamma1 = sys.gamma2 = 0.01;
    sys.gamma1_deph = sys.gamma2_deph = 0.01;
    return sys;
}

double run_single_R(const SystemParams& sys, const BathSpec& bath) {
    const SpaceDescriptor space = build_space(3);
    const OperatorSet ops = build_operators(space);
    const PhononTables tables(bath);
    const PhononRates rates = compute_rates(sys, tables);
    const Superoperator liou = approx_liouvillian(sys, rates, ops);
    PropagateOptions opts;
    opts.dt = 0.02;
    opts.t_max = 400.0;
    opts.store_stride = 0;
    opts.stop_residual = 1e-6;
    const TimeSeries ts = propagate(liou, initial_state_both_excited(space), opts);
    return emission_probabilities(ts, sys.kappa).R;
}

}  // namespace

TEST_SUITE_BEGIN("scan");

TEST_CASE("resonance locator closed-form cases") {
    SystemParams equal;
    equal.g2 = 1.0;
    equal.delta1 = -4.2;
    const ResonanceResult rp = resonance_locator(equal, ResonanceKind::phonon);
    CHECK(rp.delta2_star == doctest::Approx(equal.delta1).epsilon(1e-6));
    CHECK(rp.mismatch < 1e-9);

    // g2 = 2 g1, D1 = -5: the cavity condition D2 + 8/D2 = 5.4 has no real
    // root; the closest approach is at D2 = 2 sqrt(2) with mismatch
    // 4 sqrt(2) - 5.4.
    SystemParams uneq = strong_second_dot();
    const ResonanceResult rc = resonance_locator(uneq, ResonanceKind::cavity);
    CHECK(rc.delta2_star == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-4));
    CHECK(rc.mismatch == doctest::Approx(4.0 * std::sqrt(2.0) - 5.4).epsilon(1e-6));

    // Mirrored detuning lands on the negative branch.
    SystemParams mirror = uneq;
    mirror.delta1 = 5.0;
    const ResonanceResult rm = resonance_locator(mirror, ResonanceKind::cavity);
    CHECK(rm.delta2_star == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-4));

    // Independent oracle: dense scan of the condition.
    auto cond = [&](double d2) {
        return std::abs(uneq.delta1 + d2 + 2.0 / uneq.delta1 + 8.0 / d2);
    };
    double best = 1e9, best_x = 0.0;
    for (int k = 0; k <= 100000; ++k) {
        const double x = -6.0 + 12.0 * k / 100000.0;
        if (std::abs(x) < 0.2) continue;
        if (cond(x) < best) {
            best = cond(x);
            best_x = x;
        }
    }
    CHECK(rc.delta2_star == doctest::Approx(best_x).epsilon(1e-3));
    CHECK(rc.mismatch == doctest::Approx(best).epsilon(1e-3));

    CHECK_THROWS_AS(resonance_locator(SystemParams{}, ResonanceKind::cavity), ConfigError);
}

TEST_CASE("mirror symmetry without phonons") {
    SweepConfig cfg;
    cfg.sys = strong_second_dot();
    cfg.bath.alpha_p = 0.0;
    cfg.grid = SweepGrid{-4.5, 4.5, 13, 0.2};
    cfg.prop.t_max = 300.0;

    const SweepResult red = sweep_delta2(cfg);

    cfg.sys.delta1 = 5.0;
    const SweepResult blue = sweep_delta2(cfg);

    REQUIRE(red.points.size() == blue.points.size());
    const std::size_t n = red.points.size();
    for (std::size_t k = 0; k < n; ++k) {
        const SweepPoint& a = red.points[k];
        const SweepPoint& b = blue.points[n - 1 - k];  // delta2 -> -delta2
        REQUIRE(a.ok);
        REQUIRE(b.ok);
        CHECK(a.delta2 == doctest::Approx(-b.delta2));
        CHECK(std::abs(a.P - b.P) < 1e-3);
        CHECK(std::abs(a.Q - b.Q) < 1e-3);
        CHECK(std::abs(a.R - b.R) < 1e-3);
    }
}

TEST_CASE("phonon coupling breaks the mirror symmetry") {
    SystemParams red;
    red.delta1 = -5.0;
    red.delta2 = -5.0;
    red.kappa = 0.1;
    red.gamma1 = red.gamma2 = 0.01;
    red.gamma1_deph = red.gamma2_deph = 0.01;
    SystemParams blue = red;
    blue.delta1 = 5.0;
    blue.delta2 = 5.0;

    BathSpec bath;
    bath.temperature = 20.0;
    const double r_red = run_single_R(red, bath);
    const double r_blue = run_single_R(blue, bath);
    CHECK(std::abs(r_red - r_blue) > 0.05);
}

TEST_CASE("two-photon emission grows with temperature") {
    SystemParams sys;
    sys.delta1 = -5.0;
    sys.delta2 = 3.0;  // away from both resonances
    sys.kappa = 0.1;
    sys.gamma1 = sys.gamma2 = 0.01;
    sys.gamma1_deph = sys.gamma2_deph = 0.01;

    double prev = -1.0;
    for (double t : {5.0, 10.0, 20.0}) {
        BathSpec bath;
        bath.temperature = t;
        const double r = run_single_R(sys, bath);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("per-point failures are recorded without aborting the sweep") {
    SweepConfig cfg;
    cfg.sys = strong_second_dot();
    cfg.bath.alpha_p = 0.0;
    cfg.grid = SweepGrid{-2.0, 2.0, 5, 0.2};
    cfg.prop.t_max = -1.0;  // forces a per-point configuration error
    const SweepResult res = sweep_delta2(cfg);
    for (const auto& p : res.points) {
        CHECK_FALSE(p.ok);
        CHECK_FALSE(p.error.empty());
    }
}

TEST_SUITE_END();

#include "tpe/scan.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace tpe {

std::vector<double> SweepGrid::values() const {
    if (points < 2 || hi <= lo) throw ConfigError("sweep grid: need hi > lo, points >= 2");
    std::vector<double> v;
    v.reserve(points);
    for (int k = 0; k < points; ++k) {
        const double x = lo + (hi - lo) * k / double(points - 1);
        if (std::abs(x) < exclude_below) continue;
        v.push_back(x);
    }
    if (v.empty()) throw ConfigError("sweep grid: excluded band covers every point");
    return v;
}

const SweepPoint* SweepResult::argmax_R() const {
    const SweepPoint* best = nullptr;
    for (const auto& p : points) {
        if (!p.ok) continue;
        if (!best || p.R > best->R) best = &p;
    }
    return best;
}

SweepResult sweep_delta2(const SweepConfig& cfg) {
    cfg.sys.validate();
    cfg.bath.validate();
    const std::vector<double> grid = cfg.grid.values();
    const PhononTables tables(cfg.bath);
    const OperatorSet ops = build_operators(cfg.space);
    const Matrix rho0 = initial_state_both_excited(cfg.space);

    SweepResult result;
    result.sys = cfg.sys;
    result.bath = cfg.bath;
    result.generator = cfg.generator;
    result.points.resize(grid.size());

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= grid.size()) return;
            SweepPoint& pt = result.points[i];
            pt.delta2 = grid[i];
            try {
                SystemParams sys = cfg.sys;
                sys.delta2 = grid[i];
                const PhononRates rates = compute_rates(sys, tables);
                const Superoperator liou =
                    cfg.generator == GeneratorKind::full
                        ? full_liouvillian(sys, rates, tables, ops)
                        : approx_liouvillian(sys, rates, ops);
                const TimeSeries ts = propagate(liou, rho0, cfg.prop);
                const EmissionProbabilities ep = emission_probabilities(ts, sys.kappa);
                pt.P = ep.P;
                pt.Q = ep.Q;
                pt.R = ep.R;
                pt.R_prime = ep.R_prime;
                pt.residual = ep.residual;
                pt.ok = true;
            } catch (const std::exception& ex) {
                pt.ok = false;
                pt.error = ex.what();
            }
        }
    };

    unsigned n_workers = cfg.workers > 0 ? unsigned(cfg.workers)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, grid.size());
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned k = 0; k < n_workers; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return result;
}

namespace {

double condition_value(const SystemParams& sys, ResonanceKind kind, double d2) {
    const double stark1 = 2.0 * sys.g1 * sys.g1 / sys.delta1;
    const double stark2 = 2.0 * sys.g2 * sys.g2 / d2;
    if (kind == ResonanceKind::cavity) {
        return sys.delta1 + d2 + stark1 + stark2;
    }
    return sys.delta1 + stark1 - d2 - stark2;
}

}  // namespace

ResonanceResult resonance_locator(const SystemParams& sys, ResonanceKind kind,
                                  double lo, double hi, double exclude_below) {
    if (sys.delta1 == 0.0) throw ConfigError("resonance_locator: delta1 must be nonzero");
    if (hi <= lo) throw ConfigError("resonance_locator: empty search interval");

    const int n = 20001;
    double best_x = 0.0;
    double best_f = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        const double x = lo + (hi - lo) * k / double(n - 1);
        if (std::abs(x) < exclude_below) continue;
        const double f = std::abs(condition_value(sys, kind, x));
        if (f < best_f) {
            best_f = f;
            best_x = x;
        }
    }
    if (!std::isfinite(best_f)) throw ConfigError("resonance_locator: empty search interval");

    // Golden-section polish around the best grid sample.
    const double h = (hi - lo) / double(n - 1);
    double a = best_x - h, b = best_x + h;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 80; ++it) {
        if (std::abs(condition_value(sys, kind, c)) < std::abs(condition_value(sys, kind, d))) {
            b = d;
        } else {
            a = c;
        }
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    const double x_star = 0.5 * (a + b);
    const double f_star = std::abs(condition_value(sys, kind, x_star));
    if (f_star <= best_f) {
        return {x_star, f_star};
    }
    return {best_x, best_f};
}

}  // namespace tpe

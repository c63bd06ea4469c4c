#include "tpe/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "tpe/config.hpp"
#include "tpe/csv.hpp"
#include "tpe/spectrum.hpp"

namespace tpe {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string temperature_label(double t_kelvin) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", t_kelvin);
    return std::string("T") + buf + "K";
}

void write_sidecar(const fs::path& path, const RunConfig& cfg, const std::string& command,
                   const json& extra) {
    json j;
    j["command"] = command;
    j["config"] = cfg.effective();
    j["results"] = extra;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path.string());
    out << j.dump(2) << "\n";
}

json rates_to_json(const PhononRates& r) {
    auto c = [](Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; };
    json j;
    j["mean_B"] = r.mean_B;
    j["stark_plus"] = {r.stark_plus[0], r.stark_plus[1]};
    j["stark_minus"] = {r.stark_minus[0], r.stark_minus[1]};
    j["omega_2ph"] = c(r.omega_2ph);
    j["omega_plus"] = c(r.omega_plus);
    j["omega_minus"] = c(r.omega_minus);
    j["feed_plus"] = {r.feed_plus[0], r.feed_plus[1]};
    j["feed_minus"] = {r.feed_minus[0], r.feed_minus[1]};
    j["cross_pp_12"] = c(r.cross_pp_12);
    j["cross_pp_21"] = c(r.cross_pp_21);
    j["cross_mm_12"] = c(r.cross_mm_12);
    j["cross_mm_21"] = c(r.cross_mm_21);
    j["cross_pm_12"] = c(r.cross_pm_12);
    j["cross_pm_21"] = c(r.cross_pm_21);
    j["cross_mp_12"] = c(r.cross_mp_12);
    j["cross_mp_21"] = c(r.cross_mp_21);
    j["cross_pp_11"] = c(r.cross_pp_11);
    j["cross_pp_22"] = c(r.cross_pp_22);
    j["cross_mm_11"] = c(r.cross_mm_11);
    j["cross_mm_22"] = c(r.cross_mm_22);
    return j;
}

Superoperator build_generator(const SystemParams& sys, const PhononRates& rates,
                              const PhononTables& tables, const OperatorSet& ops,
                              GeneratorKind kind) {
    return kind == GeneratorKind::full ? full_liouvillian(sys, rates, tables, ops)
                                       : approx_liouvillian(sys, rates, ops);
}

void dump_kernel_table(const fs::path& path, const std::vector<double>& x,
                       const std::vector<Complex>& values) {
    CsvWriter csv(path.string(), {"tau_or_omega", "re", "im"});
    for (std::size_t k = 0; k < x.size(); ++k) {
        csv.row({x[k], values[k].real(), values[k].imag()});
    }
}

int cmd_rates(const RunConfig& cfg, const fs::path& out_dir) {
    const PhononTables tables(cfg.bath);
    const PhononRates r = compute_rates(cfg.system, tables);

    std::ofstream raw((out_dir / "rates.csv").string());
    if (!raw) throw ConfigError("cannot open output file rates.csv");
    raw << "name,re,im\n";
    auto row = [&raw](const std::string& name, Complex z) {
        raw << name << "," << format_double(z.real()) << "," << format_double(z.imag())
            << "\n";
    };
    row("mean_B", r.mean_B);
    row("stark_plus_1", r.stark_plus[0]);
    row("stark_plus_2", r.stark_plus[1]);
    row("stark_minus_1", r.stark_minus[0]);
    row("stark_minus_2", r.stark_minus[1]);
    row("omega_2ph", r.omega_2ph);
    row("omega_plus", r.omega_plus);
    row("omega_minus", r.omega_minus);
    row("feed_plus_1", r.feed_plus[0]);
    row("feed_plus_2", r.feed_plus[1]);
    row("feed_minus_1", r.feed_minus[0]);
    row("feed_minus_2", r.feed_minus[1]);
    row("cross_pp_12", r.cross_pp_12);
    row("cross_pp_21", r.cross_pp_21);
    row("cross_mm_12", r.cross_mm_12);
    row("cross_mm_21", r.cross_mm_21);
    row("cross_pm_12", r.cross_pm_12);
    row("cross_pm_21", r.cross_pm_21);
    row("cross_mp_12", r.cross_mp_12);
    row("cross_mp_21", r.cross_mp_21);
    row("cross_pp_11", r.cross_pp_11);
    row("cross_pp_22", r.cross_pp_22);
    row("cross_mm_11", r.cross_mm_11);
    row("cross_mm_22", r.cross_mm_22);
    raw.close();

    json extra;
    extra["rates"] = rates_to_json(r);

    if (cfg.rates.dump_kernels) {
        dump_kernel_table(out_dir / "phi_tau.csv", tables.tau(), tables.phi());
        dump_kernel_table(out_dir / "g_plus_tau.csv", tables.tau(), tables.g_plus());
        dump_kernel_table(out_dir / "g_minus_tau.csv", tables.tau(), tables.g_minus());
        const std::vector<double> omega = linspace(-cfg.rates.kernel_omega_max,
                                                   cfg.rates.kernel_omega_max,
                                                   cfg.rates.kernel_omega_points);
        std::vector<Complex> kp(omega.size()), km(omega.size());
        for (std::size_t i = 0; i < omega.size(); ++i) {
            kp[i] = tables.k_plus(omega[i]);
            km[i] = tables.k_minus(omega[i]);
        }
        dump_kernel_table(out_dir / "k_plus_omega.csv", omega, kp);
        dump_kernel_table(out_dir / "k_minus_omega.csv", omega, km);
        extra["kernel_dumps"] = true;
    }

    write_sidecar(out_dir / "rates_params.json", cfg, "rates", extra);

    std::printf("<B> = %.6f  feed+ = (%.6g, %.6g)  feed- = (%.6g, %.6g)  "
                "|omega_2ph| = %.6g\n",
                r.mean_B, r.feed_plus[0], r.feed_plus[1], r.feed_minus[0],
                r.feed_minus[1], std::abs(r.omega_2ph));
    return 0;
}

int cmd_evolve(const RunConfig& cfg, const fs::path& out_dir, bool dump_liouvillian) {
    const OperatorSet ops = build_operators(cfg.space);
    const PhononTables tables(cfg.bath);
    const PhononRates rates = compute_rates(cfg.system, tables);
    const Superoperator liou =
        build_generator(cfg.system, rates, tables, ops, cfg.generator);

    if (dump_liouvillian) {
        CsvWriter csv((out_dir / "liouvillian.csv").string(), {"row", "col", "re", "im"});
        for (Eigen::Index c = 0; c < liou.m.cols(); ++c) {
            for (Eigen::Index rr = 0; rr < liou.m.rows(); ++rr) {
                const Complex z = liou.m(rr, c);
                if (z == Complex{}) continue;
                csv.row({double(rr), double(c), z.real(), z.imag()});
            }
        }
    }

    PropagateOptions opts;
    opts.dt = cfg.evolve.dt;
    opts.t_max = cfg.evolve.t_max;
    opts.store_stride = cfg.evolve.store_stride;
    opts.stop_residual = cfg.evolve.stop_residual;
    // The far-detuned generator may dip transiently negative near degenerate
    // detunings; only flag genuinely unphysical excursions there.
    opts.negativity_floor = cfg.generator == GeneratorKind::full ? 1e-6 : 2e-2;
    const TimeSeries ts = propagate(liou, initial_state_both_excited(cfg.space), opts);
    const EmissionProbabilities ep = emission_probabilities(ts, cfg.system.kappa);

    CsvWriter csv((out_dir / "evolve.csv").string(),
                  {"t", "rho_ee", "P", "Q", "R", "R_prime", "trace_err"});
    for (std::size_t k = 0; k < ts.curves.t.size(); k += std::size_t(cfg.evolve.csv_stride)) {
        csv.row({ts.curves.t[k], ts.curves.ee0[k], ep.P_t[k], ep.Q_t[k], ep.R_t[k],
                 ep.Rp_t[k], ts.curves.trace_err[k]});
    }

    json extra;
    extra["P"] = ep.P;
    extra["Q"] = ep.Q;
    extra["R"] = ep.R;
    extra["R_prime"] = ep.R_prime;
    extra["residual_excitation"] = ep.residual;
    extra["horizon_warning"] = ep.horizon_warning;
    extra["t_end"] = ts.t_end;
    extra["rates"] = rates_to_json(rates);
    write_sidecar(out_dir / "evolve_params.json", cfg, "evolve", extra);

    std::printf("P = %.6f  Q = %.6f  R = %.6f  R' = %.6f  (t_end = %g, residual = %.3g)\n",
                ep.P, ep.Q, ep.R, ep.R_prime, ts.t_end, ep.residual);
    if (ep.horizon_warning) {
        std::fprintf(stderr, "warning: residual excitation %.3g at t_max\n", ep.residual);
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const fs::path& out_dir, int workers) {
    json extra;
    extra["cases"] = json::array();

    auto run_case = [&](const BathSpec& bath, const std::string& label) {
        SweepConfig sc;
        sc.sys = cfg.system;
        sc.bath = bath;
        sc.grid = SweepGrid{cfg.sweep.delta2_min, cfg.sweep.delta2_max, cfg.sweep.points,
                            cfg.sweep.exclude_abs_below};
        sc.generator = cfg.generator;
        sc.space = cfg.space;
        sc.prop.dt = cfg.sweep.dt;
        sc.prop.t_max = cfg.sweep.t_max;
        sc.prop.store_stride = 0;
        sc.prop.stop_residual = 1e-6;
        sc.workers = workers;
        const SweepResult res = sweep_delta2(sc);

        const std::string file = "sweep_" + label + ".csv";
        CsvWriter csv((out_dir / file).string(), {"delta2", "P", "Q", "R"});
        json failures = json::array();
        for (const auto& p : res.points) {
            if (p.ok) {
                csv.row({p.delta2, p.P, p.Q, p.R});
            } else {
                failures.push_back({{"delta2", p.delta2}, {"error", p.error}});
            }
        }

        json jc;
        jc["label"] = label;
        jc["file"] = file;
        jc["temperature_K"] = bath.temperature;
        jc["alpha_p"] = bath.alpha_p;
        jc["failures"] = failures;
        if (const SweepPoint* best = res.argmax_R()) {
            jc["argmax_R"] = {{"delta2", best->delta2}, {"R", best->R}};
            std::printf("sweep %s: argmax R at delta2 = %.4f (R = %.4f)\n", label.c_str(),
                        best->delta2, best->R);
        }
        extra["cases"].push_back(jc);
    };

    if (cfg.sweep.include_phonon_free) {
        BathSpec off = cfg.bath;
        off.alpha_p = 0.0;
        run_case(off, "no_phonon");
    }
    for (double t : cfg.sweep.temperatures) {
        BathSpec bath = cfg.bath;
        bath.temperature = t;
        run_case(bath, temperature_label(t));
    }

    // Analytic resonance-condition minimizers for diagnosis alongside the
    // empirical argmax values (skipped where the condition is singular).
    for (auto [kind, key] : {std::pair{ResonanceKind::cavity, "resonance_cavity"},
                             std::pair{ResonanceKind::phonon, "resonance_phonon"}}) {
        try {
            const ResonanceResult res =
                resonance_locator(cfg.system, kind, cfg.sweep.delta2_min,
                                  cfg.sweep.delta2_max, cfg.sweep.exclude_abs_below);
            extra[key] = {{"delta2_star", res.delta2_star}, {"mismatch", res.mismatch}};
        } catch (const ConfigError& e) {
            extra[key] = {{"error", e.what()}};
        }
    }

    write_sidecar(out_dir / "sweep_params.json", cfg, "sweep", extra);
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, const fs::path& out_dir, int workers) {
    const OperatorSet ops = build_operators(cfg.space);
    json extra;
    extra["cases"] = json::array();

    struct Case {
        double temperature;
        std::string label;
        SpectrumResult result;
        bool done = false;
        std::string error;
    };
    std::vector<Case> cases;
    for (double t : cfg.spectrum.temperatures) {
        cases.push_back({t, temperature_label(t), {}, false, ""});
    }

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= cases.size()) return;
            try {
                BathSpec bath = cfg.bath;
                bath.temperature = cases[i].temperature;
                const PhononTables tables(bath);
                const PhononRates rates = compute_rates(cfg.system, tables);
                const Superoperator liou =
                    build_generator(cfg.system, rates, tables, ops, cfg.generator);

                PropagateOptions popt;
                popt.dt = cfg.spectrum.dt;
                popt.t_max = cfg.spectrum.t_max;
                popt.store_stride = 0;
                popt.stop_residual = 1e-6;
                const TimeSeries ts =
                    propagate(liou, initial_state_both_excited(cfg.space), popt);

                SpectrumOptions sopt;
                sopt.omega_min = cfg.spectrum.omega_min;
                sopt.omega_max = cfg.spectrum.omega_max;
                sopt.omega_points = cfg.spectrum.points;
                sopt.tau_max = cfg.spectrum.tau_max;
                sopt.dtau = cfg.spectrum.dt;
                cases[i].result =
                    spectrum_from_trajectory(liou, ts, ops, cfg.system.kappa, sopt);
                cases[i].done = true;
            } catch (const std::exception& ex) {
                cases[i].error = ex.what();
            }
        }
    };
    const unsigned n_workers = std::min<std::size_t>(
        workers > 0 ? unsigned(workers) : std::max(1u, std::thread::hardware_concurrency()),
        cases.size());
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n_workers; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (const auto& c : cases) {
        if (!c.done) {
            throw NumericalAccuracyError("spectrum case " + c.label + " failed: " + c.error);
        }
        const std::string file = "spectrum_" + c.label + ".csv";
        CsvWriter csv((out_dir / file).string(), {"omega", "S_normalized", "S_raw"});
        for (std::size_t k = 0; k < c.result.omega.size(); ++k) {
            csv.row({c.result.omega[k], c.result.values[k], c.result.raw[k]});
        }
        const auto peak =
            std::max_element(c.result.values.begin(), c.result.values.end());
        const double peak_omega =
            c.result.omega[std::size_t(peak - c.result.values.begin())];
        json jc;
        jc["label"] = c.label;
        jc["file"] = file;
        jc["temperature_K"] = c.temperature;
        jc["peak_omega"] = peak_omega;
        jc["raw_norm"] = c.result.raw_norm;
        jc["horizon_warning"] = c.result.horizon_warning;
        extra["cases"].push_back(jc);
        std::printf("spectrum %s: peak at omega = %.4f (raw peak = %.6g)\n",
                    c.label.c_str(), peak_omega, c.result.raw_norm);
    }

    write_sidecar(out_dir / "spectrum_params.json", cfg, "spectrum", extra);
    return 0;
}

int cmd_resonance(const RunConfig& cfg, const fs::path& out_dir) {
    const ResonanceKind kind = cfg.resonance.kind == "cavity" ? ResonanceKind::cavity
                                                              : ResonanceKind::phonon;
    const ResonanceResult res =
        resonance_locator(cfg.system, kind, cfg.resonance.search_min,
                          cfg.resonance.search_max, cfg.resonance.exclude_abs_below);
    json extra;
    extra["kind"] = cfg.resonance.kind;
    extra["delta2_star"] = res.delta2_star;
    extra["mismatch"] = res.mismatch;
    write_sidecar(out_dir / "resonance_params.json", cfg, "resonance", extra);
    std::printf("%s resonance: delta2* = %.6f, mismatch = %.6g\n",
                cfg.resonance.kind.c_str(), res.delta2_star, res.mismatch);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"two-QD cavity QED simulator with a shared phonon bath", "tpe"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::string generator_override;
    int workers = 0;
    bool dump_liouvillian = false;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "JSON run configuration");
        if (config_required) opt->required();
        sub->add_option("--out", out_override, "output directory (overrides config)");
        sub->add_option("--workers", workers, "worker threads (default: all cores)");
        sub->add_option("--generator", generator_override,
                        "generator override: full | approx");
    };

    CLI::App* sub_rates = app.add_subcommand("rates", "phonon rates and shifts");
    CLI::App* sub_evolve = app.add_subcommand("evolve", "time evolution from |e1,e2,0>");
    CLI::App* sub_sweep = app.add_subcommand("sweep", "delta2 sweep of P, Q, R");
    CLI::App* sub_spectrum = app.add_subcommand("spectrum", "emitted-photon spectrum");
    CLI::App* sub_resonance = app.add_subcommand("resonance", "two-photon resonance locator");
    for (CLI::App* sub : {sub_rates, sub_evolve, sub_sweep, sub_spectrum, sub_resonance}) {
        add_common(sub, true);
    }
    sub_evolve->add_flag("--dump-liouvillian", dump_liouvillian,
                         "write the generator matrix as CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help/usage text
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (!generator_override.empty()) {
            if (generator_override == "full") {
                cfg.generator = GeneratorKind::full;
            } else if (generator_override == "approx" || generator_override == "approximate") {
                cfg.generator = GeneratorKind::approximate;
            } else {
                throw ConfigError("--generator must be full or approx");
            }
        }
        if (!out_override.empty()) cfg.output_dir = out_override;
        const fs::path out_dir(cfg.output_dir);
        fs::create_directories(out_dir);

        if (app.got_subcommand(sub_rates)) return cmd_rates(cfg, out_dir);
        if (app.got_subcommand(sub_evolve)) return cmd_evolve(cfg, out_dir, dump_liouvillian);
        if (app.got_subcommand(sub_sweep)) return cmd_sweep(cfg, out_dir, workers);
        if (app.got_subcommand(sub_spectrum)) return cmd_spectrum(cfg, out_dir, workers);
        if (app.got_subcommand(sub_resonance)) return cmd_resonance(cfg, out_dir);
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericalAccuracyError& e) {
        std::fprintf(stderr, "numerical-accuracy error: %s\n", e.what());
        return 3;
    } catch (const HorizonError& e) {
        std::fprintf(stderr, "horizon error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace tpe

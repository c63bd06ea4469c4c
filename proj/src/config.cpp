#include "tpe/config.hpp"

#include <fstream>
#include <sstream>

namespace tpe {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config: " + path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) fail(path + "." + it.key(), "unknown key");
    }
}

double get_num(const json& obj, const std::string& path, const char* key,
               double fallback, double lo, double hi) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    const double x = v.get<double>();
    if (x < lo || x > hi) {
        std::ostringstream os;
        os << "value " << x << " outside [" << lo << ", " << hi << "]";
        fail(path + "." + key, os.str());
    }
    return x;
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback,
            int lo, int hi) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    const int x = v.get<int>();
    if (x < lo || x > hi) {
        std::ostringstream os;
        os << "value " << x << " outside [" << lo << ", " << hi << "]";
        fail(path + "." + key, os.str());
    }
    return x;
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
    return v.get<bool>();
}

std::vector<double> get_num_list(const json& obj, const std::string& path,
                                 const char* key, std::vector<double> fallback,
                                 double lo, double hi) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.empty()) fail(path + "." + key, "expected a non-empty array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(path + "." + key, "expected numbers");
        const double x = e.get<double>();
        if (x < lo || x > hi) fail(path + "." + key, "value out of range");
        out.push_back(x);
    }
    return out;
}

GeneratorKind parse_generator(const json& root) {
    if (!root.contains("generator")) return GeneratorKind::approximate;
    const json& v = root.at("generator");
    if (!v.is_string()) fail("generator", "expected \"full\" or \"approximate\"");
    const std::string s = v.get<std::string>();
    if (s == "full") return GeneratorKind::full;
    if (s == "approximate" || s == "approx") return GeneratorKind::approximate;
    fail("generator", "expected \"full\" or \"approximate\", got \"" + s + "\"");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    check_keys(root, "(root)",
               {"schema_version", "space", "system", "bath", "generator", "evolve",
                "sweep", "spectrum", "resonance", "rates", "output_dir"});

    if (!root.contains("schema_version")) fail("schema_version", "missing required field");
    const int version = get_int(root, "(root)", "schema_version", -1, -1000000, 1000000);
    if (version != kSchemaVersion) {
        fail("schema_version", "expected " + std::to_string(kSchemaVersion) + ", got " +
                                   std::to_string(version));
    }

    RunConfig cfg;

    if (root.contains("space")) {
        const json& s = root.at("space");
        check_keys(s, "space", {"n_max"});
        cfg.space = build_space(get_int(s, "space", "n_max", 3, 2, 12));
    }

    if (root.contains("system")) {
        const json& s = root.at("system");
        check_keys(s, "system",
                   {"g1", "g2", "delta1", "delta2", "kappa", "gamma1", "gamma2",
                    "gamma1_dephasing", "gamma2_dephasing"});
        const double g1 = get_num(s, "system", "g1", 1.0, 0.0, 1e6);
        if (g1 != 1.0) {
            fail("system.g1", "g1 = 1 fixes the unit system; express couplings "
                              "and rates in units of g1");
        }
        cfg.system.g1 = g1;
        cfg.system.g2 = get_num(s, "system", "g2", 1.0, 0.0, 1e6);
        cfg.system.delta1 = get_num(s, "system", "delta1", -5.0, -1e6, 1e6);
        cfg.system.delta2 = get_num(s, "system", "delta2", 0.0, -1e6, 1e6);
        cfg.system.kappa = get_num(s, "system", "kappa", 0.1, 0.0, 1e6);
        cfg.system.gamma1 = get_num(s, "system", "gamma1", 0.01, 0.0, 1e6);
        cfg.system.gamma2 = get_num(s, "system", "gamma2", 0.01, 0.0, 1e6);
        cfg.system.gamma1_deph = get_num(s, "system", "gamma1_dephasing", 0.01, 0.0, 1e6);
        cfg.system.gamma2_deph = get_num(s, "system", "gamma2_dephasing", 0.01, 0.0, 1e6);
    } else {
        cfg.system.delta1 = -5.0;
        cfg.system.kappa = 0.1;
        cfg.system.gamma1 = cfg.system.gamma2 = 0.01;
        cfg.system.gamma1_deph = cfg.system.gamma2_deph = 0.01;
    }

    if (root.contains("bath")) {
        const json& b = root.at("bath");
        check_keys(b, "bath",
                   {"alpha_p", "omega_b", "temperature_K", "energy_scale_meV",
                    "omega_cutoff_factor", "tau_max", "tau_step", "omega_points"});
        cfg.bath.alpha_p = get_num(b, "bath", "alpha_p", 1.42e-3, 0.0, 1.0);
        cfg.bath.omega_b = get_num(b, "bath", "omega_b", 10.0, 1e-6, 1e6);
        cfg.bath.temperature = get_num(b, "bath", "temperature_K", 0.0, 0.0, 1e4);
        cfg.bath.energy_scale = get_num(b, "bath", "energy_scale_meV", 0.1, 1e-9, 1e3);
        cfg.bath.omega_cutoff_factor = get_num(b, "bath", "omega_cutoff_factor", 6.0, 1.0, 100.0);
        cfg.bath.tau_max = get_num(b, "bath", "tau_max", 0.0, 0.0, 1e4);
        cfg.bath.tau_step = get_num(b, "bath", "tau_step", 2e-3, 1e-7, 1.0);
        cfg.bath.omega_points = get_int(b, "bath", "omega_points", 2001, 201, 2000001);
    }

    cfg.generator = parse_generator(root);

    if (root.contains("evolve")) {
        const json& e = root.at("evolve");
        check_keys(e, "evolve", {"t_max", "dt", "store_stride", "stop_residual", "csv_stride"});
        cfg.evolve.t_max = get_num(e, "evolve", "t_max", 400.0, 1e-3, 1e7);
        cfg.evolve.dt = get_num(e, "evolve", "dt", 0.02, 1e-6, 10.0);
        cfg.evolve.store_stride = get_int(e, "evolve", "store_stride", 10, 0, 1000000);
        cfg.evolve.stop_residual = get_num(e, "evolve", "stop_residual", 1e-6, 0.0, 1.0);
        cfg.evolve.csv_stride = get_int(e, "evolve", "csv_stride", 1, 1, 1000000);
    }

    if (root.contains("sweep")) {
        const json& s = root.at("sweep");
        check_keys(s, "sweep",
                   {"delta2_min", "delta2_max", "points", "exclude_abs_below",
                    "temperatures_K", "include_phonon_free", "t_max", "dt"});
        cfg.sweep.delta2_min = get_num(s, "sweep", "delta2_min", -6.0, -1e6, 1e6);
        cfg.sweep.delta2_max = get_num(s, "sweep", "delta2_max", 6.0, -1e6, 1e6);
        if (cfg.sweep.delta2_max <= cfg.sweep.delta2_min) {
            fail("sweep.delta2_max", "must exceed sweep.delta2_min");
        }
        cfg.sweep.points = get_int(s, "sweep", "points", 121, 2, 100000);
        cfg.sweep.exclude_abs_below = get_num(s, "sweep", "exclude_abs_below", 0.2, 0.0, 1e6);
        cfg.sweep.temperatures = get_num_list(s, "sweep", "temperatures_K",
                                              {5.0, 10.0, 20.0}, 0.0, 1e4);
        cfg.sweep.include_phonon_free = get_bool(s, "sweep", "include_phonon_free", true);
        cfg.sweep.t_max = get_num(s, "sweep", "t_max", 400.0, 1e-3, 1e7);
        cfg.sweep.dt = get_num(s, "sweep", "dt", 0.02, 1e-6, 10.0);
    }

    if (root.contains("spectrum")) {
        const json& s = root.at("spectrum");
        check_keys(s, "spectrum",
                   {"omega_min", "omega_max", "points", "tau_max", "t_max", "dt",
                    "temperatures_K"});
        cfg.spectrum.omega_min = get_num(s, "spectrum", "omega_min", -8.0, -1e6, 1e6);
        cfg.spectrum.omega_max = get_num(s, "spectrum", "omega_max", 8.0, -1e6, 1e6);
        if (cfg.spectrum.omega_max <= cfg.spectrum.omega_min) {
            fail("spectrum.omega_max", "must exceed spectrum.omega_min");
        }
        cfg.spectrum.points = get_int(s, "spectrum", "points", 600, 3, 1000000);
        cfg.spectrum.tau_max = get_num(s, "spectrum", "tau_max", 400.0, 1e-3, 1e7);
        cfg.spectrum.t_max = get_num(s, "spectrum", "t_max", 400.0, 1e-3, 1e7);
        cfg.spectrum.dt = get_num(s, "spectrum", "dt", 0.02, 1e-6, 10.0);
        cfg.spectrum.temperatures = get_num_list(s, "spectrum", "temperatures_K",
                                                 {0.0, 5.0, 10.0, 20.0}, 0.0, 1e4);
    }

    if (root.contains("resonance")) {
        const json& r = root.at("resonance");
        check_keys(r, "resonance", {"kind", "search_min", "search_max", "exclude_abs_below"});
        if (r.contains("kind")) {
            if (!r.at("kind").is_string()) fail("resonance.kind", "expected a string");
            cfg.resonance.kind = r.at("kind").get<std::string>();
            if (cfg.resonance.kind != "cavity" && cfg.resonance.kind != "phonon") {
                fail("resonance.kind", "expected \"cavity\" or \"phonon\"");
            }
        }
        cfg.resonance.search_min = get_num(r, "resonance", "search_min", -6.0, -1e6, 1e6);
        cfg.resonance.search_max = get_num(r, "resonance", "search_max", 6.0, -1e6, 1e6);
        cfg.resonance.exclude_abs_below =
            get_num(r, "resonance", "exclude_abs_below", 0.2, 0.0, 1e6);
    }

    if (root.contains("rates")) {
        const json& r = root.at("rates");
        check_keys(r, "rates", {"dump_kernels", "kernel_omega_max", "kernel_omega_points"});
        cfg.rates.dump_kernels = get_bool(r, "rates", "dump_kernels", false);
        cfg.rates.kernel_omega_max = get_num(r, "rates", "kernel_omega_max", 8.0, 1e-3, 1e6);
        cfg.rates.kernel_omega_points = get_int(r, "rates", "kernel_omega_points", 401, 3, 1000000);
    }

    if (root.contains("output_dir")) {
        if (!root.at("output_dir").is_string()) fail("output_dir", "expected a string");
        cfg.output_dir = root.at("output_dir").get<std::string>();
    }

    cfg.system.validate();
    cfg.bath.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

nlohmann::json RunConfig::effective() const {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["space"] = {{"n_max", space.n_max}};
    j["system"] = {{"g1", system.g1},
                   {"g2", system.g2},
                   {"delta1", system.delta1},
                   {"delta2", system.delta2},
                   {"kappa", system.kappa},
                   {"gamma1", system.gamma1},
                   {"gamma2", system.gamma2},
                   {"gamma1_dephasing", system.gamma1_deph},
                   {"gamma2_dephasing", system.gamma2_deph}};
    j["bath"] = {{"alpha_p", bath.alpha_p},
                 {"omega_b", bath.omega_b},
                 {"temperature_K", bath.temperature},
                 {"energy_scale_meV", bath.energy_scale},
                 {"omega_cutoff_factor", bath.omega_cutoff_factor},
                 {"tau_max", bath.tau_max},
                 {"tau_step", bath.tau_step},
                 {"omega_points", bath.omega_points}};
    j["generator"] = generator == GeneratorKind::full ? "full" : "approximate";
    j["evolve"] = {{"t_max", evolve.t_max},
                   {"dt", evolve.dt},
                   {"store_stride", evolve.store_stride},
                   {"stop_residual", evolve.stop_residual},
                   {"csv_stride", evolve.csv_stride}};
    j["sweep"] = {{"delta2_min", sweep.delta2_min},
                  {"delta2_max", sweep.delta2_max},
                  {"points", sweep.points},
                  {"exclude_abs_below", sweep.exclude_abs_below},
                  {"temperatures_K", sweep.temperatures},
                  {"include_phonon_free", sweep.include_phonon_free},
                  {"t_max", sweep.t_max},
                  {"dt", sweep.dt}};
    j["spectrum"] = {{"omega_min", spectrum.omega_min},
                     {"omega_max", spectrum.omega_max},
                     {"points", spectrum.points},
                     {"tau_max", spectrum.tau_max},
                     {"t_max", spectrum.t_max},
                     {"dt", spectrum.dt},
                     {"temperatures_K", spectrum.temperatures}};
    j["resonance"] = {{"kind", resonance.kind},
                      {"search_min", resonance.search_min},
                      {"search_max", resonance.search_max},
                      {"exclude_abs_below", resonance.exclude_abs_below}};
    j["rates"] = {{"dump_kernels", rates.dump_kernels},
                  {"kernel_omega_max", rates.kernel_omega_max},
                  {"kernel_omega_points", rates.kernel_omega_points}};
    return j;
}

}  // namespace tpe

#pragma once

#include "tpe/errors.hpp"

namespace tpe {

// Unit system: hbar = 1, g1 = 1. Frequencies and rates are quoted in units
// of g1, time in 1/g1. Temperature is in Kelvin and enters only through
// coth(hbar*w / 2 kB T); energy_scale is hbar*g1 expressed in meV and fixes
// the Kelvin <-> dimensionless conversion.
//
// alpha_p carries units of 1/g1^2 (so that J(w) = alpha_p w^3 exp(-w^2/2wb^2)
// is a frequency). With energy_scale = 0.1 meV the default coupling
// corresponds to the usual ~0.06 ps^2 deformation-potential value.
struct BathSpec {
    double alpha_p = 1.42e-3;       // electron-phonon coupling, 1/g1^2
    double omega_b = 10.0;          // cutoff frequency, g1
    double temperature = 0.0;       // Kelvin
    double energy_scale = 0.1;      // hbar*g1 in meV
    double omega_cutoff_factor = 6.0;  // w-quadrature upper limit, units of omega_b
    double tau_max = 0.0;           // tau horizon; 0 selects the default below
    double tau_step = 2e-3;         // tau grid spacing, 1/g1
    int omega_points = 2001;        // nodes of the w-quadrature (made odd)

    bool phonons_enabled() const { return alpha_p > 0.0; }

    // Phonon correlations die within a few 1/omega_b; thermal occupation
    // stretches the tail, hence the temperature factor.
    double effective_tau_max() const {
        if (tau_max > 0.0) return tau_max;
        return 8.0 / omega_b * (1.0 + temperature / 5.0);
    }

    void validate() const {
        if (alpha_p < 0.0) throw ConfigError("bath.alpha_p must be >= 0");
        if (omega_b <= 0.0) throw ConfigError("bath.omega_b must be > 0");
        if (temperature < 0.0) throw ConfigError("bath.temperature must be >= 0");
        if (energy_scale <= 0.0) throw ConfigError("bath.energy_scale must be > 0");
        if (omega_cutoff_factor <= 0.0) throw ConfigError("bath.omega_cutoff_factor must be > 0");
        if (tau_max < 0.0) throw ConfigError("bath.tau_max must be >= 0");
        if (tau_step <= 0.0) throw ConfigError("bath.tau_step must be > 0");
        if (omega_points < 201) throw ConfigError("bath.omega_points must be >= 201");
    }
};

// Cavity-QD parameters, all in units of g1 (g1 = 1 by convention).
// delta1/delta2 are the polaron-shifted exciton-cavity detunings.
struct SystemParams {
    double g1 = 1.0;
    double g2 = 1.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double kappa = 0.0;      // cavity leakage
    double gamma1 = 0.0;     // spontaneous decay
    double gamma2 = 0.0;
    double gamma1_deph = 0.0;  // pure dephasing
    double gamma2_deph = 0.0;

    void validate() const {
        if (g1 < 0.0 || g2 < 0.0) throw ConfigError("couplings must be >= 0");
        if (kappa < 0.0) throw ConfigError("kappa must be >= 0");
        if (gamma1 < 0.0 || gamma2 < 0.0) throw ConfigError("gamma must be >= 0");
        if (gamma1_deph < 0.0 || gamma2_deph < 0.0) throw ConfigError("dephasing must be >= 0");
    }
};

// Boltzmann constant in meV/K.
inline constexpr double kBoltzmannMeV = 0.08617333262;

}  // namespace tpe

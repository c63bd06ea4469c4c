#pragma once

#include <vector>

#include "tpe/dynamics.hpp"

namespace tpe {

// Two-time cavity correlation C(t, tau) = Tr[a' e^{L tau}(a rho(t))],
// evaluated by the quantum regression theorem: seed a*rho(t) at every stored
// trajectory sample and propagate it with the same one-step scheme.
struct CorrelationGrid {
    std::vector<double> t;    // seed times (the stored trajectory samples)
    std::vector<double> tau;
    Eigen::MatrixXcd c;       // c(k, m) = C(t_k, tau_m)
};

CorrelationGrid two_time_correlation(const Superoperator& liouvillian,
                                     const TimeSeries& ts, const OperatorSet& ops,
                                     const std::vector<double>& tau_grid);

struct SpectrumResult {
    std::vector<double> omega;   // w - w_c, units of g1
    std::vector<double> values;  // normalized to unit peak
    std::vector<double> raw;     // kappa-weighted spectral density
    double raw_norm = 0.0;       // peak of the raw spectrum
    bool horizon_warning = false;
};

// S(w) = 2 kappa Re int dt int dtau C(t,tau) e^{i w tau}, double trapezoid on
// the correlation grid, then normalized to unit peak.
SpectrumResult emission_spectrum(const CorrelationGrid& grid,
                                 const std::vector<double>& omega_grid, double kappa);

struct SpectrumOptions {
    double omega_min = -8.0;
    double omega_max = 8.0;
    int omega_points = 600;
    double tau_max = 400.0;
    double dtau = 0.02;
};

// Fast path for the same double integral: the t integration is done exactly
// through linearity by seeding a * int rho(t) dt once, so only a single tau
// propagation is needed.
SpectrumResult spectrum_from_trajectory(const Superoperator& liouvillian,
                                        const TimeSeries& ts, const OperatorSet& ops,
                                        double kappa, const SpectrumOptions& opts);

// int S_raw(w) dw / 2pi over the result's grid (trapezoid); for a fully
// decayed transient this matches kappa * int <a'a> dt.
double spectrum_parseval_integral(const SpectrumResult& s);

// Integrated raw weight inside |w| < half_width.
double spectral_weight_in_window(const SpectrumResult& s, double half_width);

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace tpe

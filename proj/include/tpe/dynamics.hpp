#pragma once

#include <vector>

#include "tpe/superoperator.hpp"

namespace tpe {

struct PropagateOptions {
    double dt = 0.02;            // step, 1/g1
    double t_max = 400.0;
    int store_stride = 10;       // density matrices kept every N steps; 0 = none
    double stop_residual = 0.0;  // stop early when total excitation drops below
    double check_interval = 25.0;
    bool validate_states = true; // trace/Hermiticity/positivity at stored samples
    // Positivity tolerance for stored samples. The far-detuned generator is
    // Redfield-like and can dip transiently negative near degenerate
    // detunings (~1e-2); the full generator stays positive to roundoff.
    double negativity_floor = 1e-6;
};

// Named basis populations and bookkeeping recorded at every step.
struct PopulationCurves {
    std::vector<double> t;
    std::vector<double> ee0;      // <e1,e2,0| rho |e1,e2,0>
    std::vector<double> ge1;      // |g1,e2,1>
    std::vector<double> eg1;      // |e1,g2,1>
    std::vector<double> gg2;      // |g1,g2,2>
    std::vector<double> gg1;      // |g1,g2,1>
    std::vector<double> guard;    // total population at the truncation level n_max
    std::vector<double> photon;   // <a'a>
    std::vector<double> excitation;
    std::vector<double> trace_err;
};

struct TimeSeries {
    SpaceDescriptor space;
    PopulationCurves curves;

    std::vector<double> state_times;  // strided density-matrix samples
    std::vector<Matrix> states;

    Matrix rho_time_integral;        // int_0^t_end rho(t) dt (trapezoid)
    double photon_flux_integral = 0; // int <a'a> dt
    double qd_loss_integral[2] = {0.0, 0.0};  // int <si+ si-> dt
    double t_end = 0.0;
    double final_residual = 0.0;     // total excitation at t_end
};

TimeSeries propagate(const Superoperator& liouvillian, const Matrix& rho0,
                     const PropagateOptions& opts);

// Uniform-grid overload; the grid must be equally spaced from 0.
TimeSeries propagate(const Superoperator& liouvillian, const Matrix& rho0,
                     const std::vector<double>& t_grid);

struct EmissionProbabilities {
    double P = 0.0;        // photon leaked from |g1,e2,1>
    double Q = 0.0;        // from |e1,g2,1>
    double R = 0.0;        // two photons, from |g1,g2,2>
    double R_prime = 0.0;  // from |g1,g2,1>
    bool horizon_warning = false;
    double residual = 0.0;
    std::vector<double> t;  // cumulative curves on the propagation grid
    std::vector<double> P_t, Q_t, R_t, Rp_t;
};

EmissionProbabilities emission_probabilities(const TimeSeries& ts, double kappa);

struct TrajectoryObservables {
    std::vector<double> t;
    std::vector<double> rho_ee;
    std::vector<double> P_t, Q_t, R_t, Rp_t;
};

TrajectoryObservables trajectory_observables(const TimeSeries& ts, double kappa);

// rho(0) = |e1,e2,0><e1,e2,0|
Matrix initial_state_both_excited(const SpaceDescriptor& space);

// (1/2) ||rho - sigma||_1
double trace_distance(const Matrix& rho, const Matrix& sigma);

}  // namespace tpe

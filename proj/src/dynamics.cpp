#include "tpe/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace tpe {

namespace {

struct PopulationIndices {
    int ee0, ge1, eg1, gg2, gg1;
    std::vector<int> guard;  // all states with n = n_max
    std::vector<int> qd1_excited, qd2_excited;
    std::vector<std::pair<int, double>> photon_weights;  // diag weights of a'a
};

PopulationIndices make_indices(const SpaceDescriptor& space) {
    PopulationIndices idx;
    idx.ee0 = basis_index(space, kE, kE, 0);
    idx.ge1 = basis_index(space, kG, kE, 1);
    idx.eg1 = basis_index(space, kE, kG, 1);
    idx.gg2 = basis_index(space, kG, kG, 2);
    idx.gg1 = basis_index(space, kG, kG, 1);
    for (int q1 = 0; q1 <= 1; ++q1) {
        for (int q2 = 0; q2 <= 1; ++q2) {
            for (int n = 0; n <= space.n_max; ++n) {
                const int k = basis_index(space, q1, q2, n);
                if (n == space.n_max) idx.guard.push_back(k);
                if (q1 == kE) idx.qd1_excited.push_back(k);
                if (q2 == kE) idx.qd2_excited.push_back(k);
                if (n > 0) idx.photon_weights.emplace_back(k, double(n));
            }
        }
    }
    return idx;
}

// Diagonal of the density matrix inside the vectorized state.
inline double diag_re(const Vector& v, int dim, int k) {
    return v(k + Eigen::Index(k) * dim).real();
}

}  // namespace

Matrix initial_state_both_excited(const SpaceDescriptor& space) {
    return basis_projector(space, kE, kE, 0);
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
    Matrix diff = rho - sigma;
    diff = 0.5 * (diff + Matrix(diff.adjoint()));
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

TimeSeries propagate(const Superoperator& liouvillian, const Matrix& rho0,
                     const PropagateOptions& opts) {
    const int dim = liouvillian.dim();
    if (rho0.rows() != dim || rho0.cols() != dim) {
        throw ConfigError("propagate: state dimension does not match the generator");
    }
    if (opts.dt <= 0.0 || opts.t_max <= 0.0) {
        throw ConfigError("propagate: dt and t_max must be > 0");
    }

    const PopulationIndices idx = make_indices(liouvillian.space);
    const int n_steps = int(std::llround(opts.t_max / opts.dt));
    const int check_every =
        std::max(1, int(std::llround(opts.check_interval / opts.dt)));

    // One dense step propagator; expm makes every step exact for constant L.
    const Matrix stepper = Matrix(liouvillian.m * opts.dt).exp();

    TimeSeries ts;
    ts.space = liouvillian.space;
    Vector v = vectorize(rho0);
    Vector v_integral = Vector::Zero(v.size());

    auto& c = ts.curves;
    auto record = [&](double t, const Vector& state) {
        c.t.push_back(t);
        c.ee0.push_back(diag_re(state, dim, idx.ee0));
        c.ge1.push_back(diag_re(state, dim, idx.ge1));
        c.eg1.push_back(diag_re(state, dim, idx.eg1));
        c.gg2.push_back(diag_re(state, dim, idx.gg2));
        c.gg1.push_back(diag_re(state, dim, idx.gg1));
        double guard = 0.0;
        for (int k : idx.guard) guard += diag_re(state, dim, k);
        c.guard.push_back(guard);
        double nph = 0.0;
        for (auto& [k, w] : idx.photon_weights) nph += w * diag_re(state, dim, k);
        c.photon.push_back(nph);
        double q1 = 0.0, q2 = 0.0;
        for (int k : idx.qd1_excited) q1 += diag_re(state, dim, k);
        for (int k : idx.qd2_excited) q2 += diag_re(state, dim, k);
        c.excitation.push_back(q1 + q2 + nph);
        double tr = 0.0;
        for (int k = 0; k < dim; ++k) tr += diag_re(state, dim, k);
        c.trace_err.push_back(std::abs(tr - 1.0));
        return std::make_tuple(q1, q2, nph);
    };

    auto maybe_store = [&](int step, double t, const Vector& state) {
        if (opts.store_stride <= 0) return;
        if (step % opts.store_stride != 0) return;
        Matrix rho = unvectorize(state, dim);
        if (opts.validate_states) {
            const DensityCheck chk = check_density(rho);
            if (chk.trace_err > 1e-6) {
                throw NumericalAccuracyError("propagate: trace drift " +
                                             std::to_string(chk.trace_err) + " at t=" +
                                             std::to_string(t));
            }
            if (chk.min_eigenvalue < -opts.negativity_floor) {
                throw NumericalAccuracyError("propagate: negative population " +
                                             std::to_string(chk.min_eigenvalue) +
                                             " at t=" + std::to_string(t));
            }
        }
        ts.state_times.push_back(t);
        ts.states.push_back(std::move(rho));
    };

    auto [q1, q2, nph] = record(0.0, v);
    maybe_store(0, 0.0, v);
    double prev_q1 = q1, prev_q2 = q2, prev_nph = nph;
    Vector v_prev = v;

    int step = 0;
    for (step = 1; step <= n_steps; ++step) {
        const double t = step * opts.dt;
        v = stepper * v;
        auto [cq1, cq2, cnph] = record(t, v);

        // Running trapezoids for the photon ledger and the spectrum seed.
        ts.photon_flux_integral += 0.5 * (prev_nph + cnph) * opts.dt;
        ts.qd_loss_integral[0] += 0.5 * (prev_q1 + cq1) * opts.dt;
        ts.qd_loss_integral[1] += 0.5 * (prev_q2 + cq2) * opts.dt;
        v_integral += 0.5 * opts.dt * (v_prev + v);
        prev_q1 = cq1;
        prev_q2 = cq2;
        prev_nph = cnph;
        v_prev = v;

        maybe_store(step, t, v);

        if (opts.stop_residual > 0.0 && step % check_every == 0 &&
            c.excitation.back() < opts.stop_residual) {
            break;
        }
    }

    ts.t_end = c.t.back();
    ts.final_residual = c.excitation.back();
    ts.rho_time_integral = unvectorize(v_integral, dim);
    return ts;
}

TimeSeries propagate(const Superoperator& liouvillian, const Matrix& rho0,
                     const std::vector<double>& t_grid) {
    if (t_grid.size() < 2 || t_grid.front() != 0.0) {
        throw ConfigError("propagate: grid must start at 0 with >= 2 samples");
    }
    const double dt = t_grid[1] - t_grid[0];
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        if (std::abs(t_grid[k] - t_grid[k - 1] - dt) > 1e-9 * std::max(1.0, dt)) {
            throw ConfigError("propagate: grid must be uniform");
        }
    }
    PropagateOptions opts;
    opts.dt = dt;
    opts.t_max = t_grid.back();
    opts.store_stride = 1;
    opts.stop_residual = 0.0;
    return propagate(liouvillian, rho0, opts);
}

EmissionProbabilities emission_probabilities(const TimeSeries& ts, double kappa) {
    const auto& c = ts.curves;
    EmissionProbabilities out;
    out.t = c.t;
    const std::size_t n = c.t.size();
    out.P_t.resize(n);
    out.Q_t.resize(n);
    out.R_t.resize(n);
    out.Rp_t.resize(n);
    double p = 0.0, q = 0.0, r = 0.0, rp = 0.0;
    out.P_t[0] = out.Q_t[0] = out.R_t[0] = out.Rp_t[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double h = c.t[k] - c.t[k - 1];
        p += 0.5 * h * kappa * (c.ge1[k - 1] + c.ge1[k]);
        q += 0.5 * h * kappa * (c.eg1[k - 1] + c.eg1[k]);
        r += 0.5 * h * 2.0 * kappa * (c.gg2[k - 1] + c.gg2[k]);
        rp += 0.5 * h * kappa * (c.gg1[k - 1] + c.gg1[k]);
        out.P_t[k] = p;
        out.Q_t[k] = q;
        out.R_t[k] = r;
        out.Rp_t[k] = rp;
    }
    out.P = p;
    out.Q = q;
    out.R = r;
    out.R_prime = rp;
    out.residual = ts.final_residual;
    out.horizon_warning = ts.final_residual >= 1e-6;
    return out;
}

TrajectoryObservables trajectory_observables(const TimeSeries& ts, double kappa) {
    EmissionProbabilities ep = emission_probabilities(ts, kappa);
    TrajectoryObservables obs;
    obs.t = ts.curves.t;
    obs.rho_ee = ts.curves.ee0;
    obs.P_t = std::move(ep.P_t);
    obs.Q_t = std::move(ep.Q_t);
    obs.R_t = std::move(ep.R_t);
    obs.Rp_t = std::move(ep.Rp_t);
    return obs;
}

}  // namespace tpe

#include "tpe/spectrum.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tpe {

namespace {

// Tr(a' M) = <vec(a), vec(M)> for column stacking.
inline Complex adag_overlap(const Vector& vec_a, const Vector& state) {
    return vec_a.dot(state);  // Eigen's dot conjugates the left argument
}

void check_uniform(const std::vector<double>& grid, const char* what) {
    if (grid.size() < 2 || grid.front() != 0.0) {
        throw ConfigError(std::string(what) + ": grid must start at 0 with >= 2 samples");
    }
    const double h = grid[1] - grid[0];
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (std::abs(grid[k] - grid[k - 1] - h) > 1e-9 * std::max(1.0, h)) {
            throw ConfigError(std::string(what) + ": grid must be uniform");
        }
    }
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) v[k] = lo + (hi - lo) * k / double(n - 1);
    return v;
}

CorrelationGrid two_time_correlation(const Superoperator& liouvillian,
                                     const TimeSeries& ts, const OperatorSet& ops,
                                     const std::vector<double>& tau_grid) {
    if (ts.states.empty()) {
        throw ConfigError("two_time_correlation: trajectory has no stored states");
    }
    check_uniform(tau_grid, "two_time_correlation");
    const double dtau = tau_grid[1] - tau_grid[0];
    const Matrix stepper = Matrix(liouvillian.m * dtau).exp();
    const Vector vec_a = vectorize(ops.a);

    CorrelationGrid grid;
    grid.t = ts.state_times;
    grid.tau = tau_grid;
    grid.c.resize(Eigen::Index(grid.t.size()), Eigen::Index(tau_grid.size()));

    for (std::size_t k = 0; k < ts.states.size(); ++k) {
        Vector v = vectorize(Matrix(ops.a * ts.states[k]));
        for (std::size_t m = 0; m < tau_grid.size(); ++m) {
            grid.c(k, m) = adag_overlap(vec_a, v);
            if (m + 1 < tau_grid.size()) v = stepper * v;
        }
    }
    return grid;
}

SpectrumResult emission_spectrum(const CorrelationGrid& grid,
                                 const std::vector<double>& omega_grid, double kappa) {
    const std::size_t nt = grid.t.size();
    const std::size_t ntau = grid.tau.size();
    if (nt < 2 || ntau < 2) {
        throw ConfigError("emission_spectrum: correlation grid too small");
    }
    const double ht = grid.t[1] - grid.t[0];
    const double htau = grid.tau[1] - grid.tau[0];

    // Collapse the t integral first (trapezoid down the columns).
    Eigen::RowVectorXcd c_t(ntau);
    for (std::size_t m = 0; m < ntau; ++m) {
        Complex acc{};
        for (std::size_t k = 0; k < nt; ++k) {
            const double w = (k == 0 || k == nt - 1) ? 0.5 : 1.0;
            acc += w * grid.c(k, m);
        }
        c_t(m) = acc * ht;
    }

    const double cmax = c_t.cwiseAbs().maxCoeff();
    SpectrumResult out;
    out.horizon_warning = cmax > 0.0 && std::abs(c_t(ntau - 1)) > 1e-6 * cmax;

    out.omega = omega_grid;
    out.raw.resize(omega_grid.size());
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        // C(t, tau) = <a'(t+tau) a(t)> pairs with e^{-i w tau} so that an
        // emitter at detuning D peaks at w - w_c = D.
        const Complex rot = std::exp(-kImag * omega_grid[i] * htau);
        Complex z{1.0, 0.0};
        Complex acc{};
        for (std::size_t m = 0; m < ntau; ++m) {
            const double w = (m == 0 || m == ntau - 1) ? 0.5 : 1.0;
            acc += w * c_t(m) * z;
            z *= rot;
        }
        out.raw[i] = 2.0 * kappa * (acc * htau).real();
    }

    out.raw_norm = *std::max_element(out.raw.begin(), out.raw.end());
    if (out.raw_norm <= 0.0) {
        throw NumericalAccuracyError("emission_spectrum: non-positive peak");
    }
    out.values.resize(out.raw.size());
    for (std::size_t i = 0; i < out.raw.size(); ++i) {
        out.values[i] = out.raw[i] / out.raw_norm;
        // Truncation ringing from a non-decayed correlation is already
        // reported through the horizon flag.
        if (out.values[i] < -1e-6 && !out.horizon_warning) {
            throw NumericalAccuracyError("emission_spectrum: negative value " +
                                         std::to_string(out.values[i]));
        }
    }
    return out;
}

SpectrumResult spectrum_from_trajectory(const Superoperator& liouvillian,
                                        const TimeSeries& ts, const OperatorSet& ops,
                                        double kappa, const SpectrumOptions& opts) {
    if (ts.rho_time_integral.size() == 0) {
        throw ConfigError("spectrum_from_trajectory: trajectory lacks time integral");
    }
    const int n_tau = int(std::llround(opts.tau_max / opts.dtau)) + 1;
    const Matrix stepper = Matrix(liouvillian.m * opts.dtau).exp();
    const Vector vec_a = vectorize(ops.a);

    // c(tau) = Tr[a' e^{L tau} (a * int rho dt)]
    Vector v = vectorize(Matrix(ops.a * ts.rho_time_integral));
    Eigen::VectorXcd c(n_tau);
    for (int m = 0; m < n_tau; ++m) {
        c(m) = adag_overlap(vec_a, v);
        if (m + 1 < n_tau) v = stepper * v;
    }

    const double cmax = c.cwiseAbs().maxCoeff();
    SpectrumResult out;
    out.horizon_warning = cmax > 0.0 && std::abs(c(n_tau - 1)) > 1e-6 * cmax;

    out.omega = linspace(opts.omega_min, opts.omega_max, opts.omega_points);
    out.raw.resize(out.omega.size());
    for (std::size_t i = 0; i < out.omega.size(); ++i) {
        const Complex rot = std::exp(-kImag * out.omega[i] * opts.dtau);
        Complex z{1.0, 0.0};
        Complex acc{};
        for (int m = 0; m < n_tau; ++m) {
            const double w = (m == 0 || m == n_tau - 1) ? 0.5 : 1.0;
            acc += w * c(m) * z;
            z *= rot;
        }
        out.raw[i] = 2.0 * kappa * (acc * opts.dtau).real();
    }

    out.raw_norm = *std::max_element(out.raw.begin(), out.raw.end());
    if (out.raw_norm <= 0.0) {
        throw NumericalAccuracyError("spectrum_from_trajectory: non-positive peak");
    }
    out.values.resize(out.raw.size());
    for (std::size_t i = 0; i < out.raw.size(); ++i) {
        out.values[i] = out.raw[i] / out.raw_norm;
        if (out.values[i] < -1e-6 && !out.horizon_warning) {
            throw NumericalAccuracyError("spectrum_from_trajectory: negative value " +
                                         std::to_string(out.values[i]));
        }
    }
    return out;
}

double spectrum_parseval_integral(const SpectrumResult& s) {
    double acc = 0.0;
    for (std::size_t i = 1; i < s.omega.size(); ++i) {
        acc += 0.5 * (s.raw[i - 1] + s.raw[i]) * (s.omega[i] - s.omega[i - 1]);
    }
    return acc / (2.0 * std::numbers::pi);
}

double spectral_weight_in_window(const SpectrumResult& s, double half_width) {
    double acc = 0.0;
    for (std::size_t i = 1; i < s.omega.size(); ++i) {
        const double mid = 0.5 * (s.omega[i - 1] + s.omega[i]);
        if (std::abs(mid) < half_width) {
            acc += 0.5 * (s.raw[i - 1] + s.raw[i]) * (s.omega[i] - s.omega[i - 1]);
        }
    }
    return acc;
}

}  // namespace tpe

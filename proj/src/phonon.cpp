#include "tpe/phonon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tpe {

namespace {

// Simpson weights (times h/3) folded into per-node coefficients of the
// w-quadrature. The integrand of phi is
//   J(w)/w^2 [coth(c_T w) cos(w tau) - i sin(w tau)],
// J(w)/w^2 = alpha_p w exp(-w^2/2wb^2). The w->0 limit of the coth part is
// alpha_p / c_T for T > 0 and 0 at T = 0.
struct OmegaGrid {
    std::vector<double> w;
    std::vector<double> re_coeff;  // weight * J/w^2 * coth
    std::vector<double> im_coeff;  // weight * J/w^2
};

int force_odd(int n) { return (n % 2 == 0) ? n + 1 : n; }

OmegaGrid make_omega_grid(const BathSpec& bath, int n_points) {
    const int n = std::max(3, force_odd(n_points));
    const double w_max = bath.omega_cutoff_factor * bath.omega_b;
    const double h = w_max / (n - 1);
    const bool thermal = bath.temperature > 0.0;
    const double c_T =
        thermal ? bath.energy_scale / (2.0 * kBoltzmannMeV * bath.temperature) : 0.0;

    OmegaGrid grid;
    grid.w.resize(n);
    grid.re_coeff.resize(n);
    grid.im_coeff.resize(n);
    for (int k = 0; k < n; ++k) {
        const double w = k * h;
        double simpson = (k == 0 || k == n - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        const double weight = simpson * h / 3.0;
        const double j = bath.alpha_p * w * std::exp(-w * w / (2.0 * bath.omega_b * bath.omega_b));
        grid.w[k] = w;
        grid.im_coeff[k] = weight * j;
        if (k == 0) {
            grid.re_coeff[k] = thermal ? weight * bath.alpha_p / c_T : 0.0;
        } else {
            const double coth = thermal ? 1.0 / std::tanh(c_T * w) : 1.0;
            grid.re_coeff[k] = weight * j * coth;
        }
    }
    return grid;
}

Complex phi_from_grid(const OmegaGrid& grid, double tau) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < grid.w.size(); ++k) {
        re += grid.re_coeff[k] * std::cos(grid.w[k] * tau);
        im -= grid.im_coeff[k] * std::sin(grid.w[k] * tau);
    }
    return {re, im};
}

// At T = 0 the correlation carries an algebraic tail, phi ~ -alpha_p/tau^2
// (half-line transform of the w -> 0 edge of J/w^2), so a fixed horizon can
// never push |G| below a hard floor. The horizon is accepted when either the
// kernel itself is negligible or the integrated tail bound |G(t)| * t is.
constexpr double kDecayFloor = 1e-10;
constexpr double kTailBudget = 3e-5;

// Oscillations e^{i w tau} must stay resolved on the w grid out to the
// horizon: tau * dw <= 0.5.
int scaled_omega_points(const BathSpec& bath, double t_max) {
    const double w_max = bath.omega_cutoff_factor * bath.omega_b;
    const int by_resolution = int(std::ceil(2.0 * w_max * t_max)) + 1;
    return std::max(bath.omega_points, by_resolution);
}

// Conservative bound on |G_+-| at the horizon from phi alone.
double kernel_tail_estimate(const BathSpec& bath, double tau) {
    const OmegaGrid grid = make_omega_grid(bath, scaled_omega_points(bath, tau));
    const double p = std::abs(phi_from_grid(grid, tau));
    return p * std::exp(p);
}

bool horizon_acceptable(double kernel_tail, double t_max) {
    return kernel_tail < kDecayFloor || kernel_tail * t_max < kTailBudget;
}

// Composite Simpson of kernel(tau) e^{i w tau}; stride picks every stride-th
// sample (the step-halving check uses stride 2).
Complex simpson_half_fourier(const std::vector<Complex>& kernel, double tau_step,
                             double omega, int stride) {
    const std::size_t n = (kernel.size() - 1) / stride + 1;
    const double h = tau_step * stride;
    const Complex rot = std::exp(kImag * omega * h);
    Complex z{1.0, 0.0};
    Complex acc{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) {
        double simpson = (m == 0 || m == n - 1) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
        acc += simpson * kernel[m * stride] * z;
        z *= rot;
    }
    return acc * (h / 3.0);
}

}  // namespace

double spectral_density(double omega, const BathSpec& bath) {
    if (omega < 0.0) throw ConfigError("spectral_density: omega must be >= 0");
    return bath.alpha_p * omega * omega * omega *
           std::exp(-omega * omega / (2.0 * bath.omega_b * bath.omega_b));
}

Complex correlation_phi(double tau, const BathSpec& bath) {
    bath.validate();
    if (!bath.phonons_enabled()) return {0.0, 0.0};
    const int n = force_odd(bath.omega_points);
    const Complex coarse = phi_from_grid(make_omega_grid(bath, n), tau);
    const Complex fine = phi_from_grid(make_omega_grid(bath, 2 * n - 1), tau);
    const double scale = std::max({std::abs(fine), bath.alpha_p * bath.omega_b * bath.omega_b});
    if (std::abs(fine - coarse) > 1e-6 * scale) {
        throw NumericalAccuracyError(
            "correlation_phi: w-quadrature not resolved at tau=" + std::to_string(tau));
    }
    return fine;
}

double mean_displacement(const BathSpec& bath) {
    if (!bath.phonons_enabled()) return 1.0;
    return std::exp(-0.5 * correlation_phi(0.0, bath).real());
}

Complex half_fourier_samples(const std::vector<Complex>& kernel, double tau_step,
                             double omega) {
    if (kernel.size() < 3 || kernel.size() % 2 == 0) {
        throw ConfigError("half_fourier_samples: need an odd sample count >= 3");
    }
    return simpson_half_fourier(kernel, tau_step, omega, 1);
}

PhononTables::PhononTables(const BathSpec& bath) : bath_(bath) {
    bath_.validate();
    if (!bath_.phonons_enabled()) {
        // No phonon coupling: all kernels vanish identically.
        dtau_ = bath_.tau_step;
        tau_ = {0.0, dtau_, 2 * dtau_, 3 * dtau_, 4 * dtau_};
        phi_.assign(tau_.size(), Complex{});
        g_g_ = g_u_ = g_plus_ = g_minus_ = phi_;
        mean_B_ = 1.0;
        return;
    }

    double t_max = bath_.tau_max;
    const bool user_horizon = t_max > 0.0;
    if (!user_horizon) {
        t_max = bath_.effective_tau_max();
        for (int i = 0; i < 12 && !horizon_acceptable(kernel_tail_estimate(bath_, t_max), t_max);
             ++i) {
            t_max *= 2.0;
        }
    }
    if (!horizon_acceptable(kernel_tail_estimate(bath_, t_max), t_max)) {
        throw HorizonError("phonon tables: kernel not decayed at tau_max=" +
                           std::to_string(t_max));
    }

    // Interval count divisible by 4 so the halved grid is still Simpson-valid.
    int n_int = std::max(16, int(std::ceil(t_max / bath_.tau_step)));
    n_int = ((n_int + 3) / 4) * 4;
    const std::size_t n = std::size_t(n_int) + 1;
    dtau_ = t_max / n_int;

    const int n_omega = scaled_omega_points(bath_, t_max);
    const OmegaGrid grid = make_omega_grid(bath_, n_omega);

    // Resolution check of the w-quadrature at tau = 0 (largest phi value) and
    // near the horizon (fastest oscillation); errors are judged against the
    // overall kernel scale alpha_p wb^2.
    {
        const double scale = bath_.alpha_p * bath_.omega_b * bath_.omega_b;
        const OmegaGrid refined_grid = make_omega_grid(bath_, 2 * force_odd(n_omega) - 1);
        for (double tau : {0.0, 0.5 * t_max}) {
            const Complex refined = phi_from_grid(refined_grid, tau);
            const Complex coarse = phi_from_grid(grid, tau);
            if (std::abs(refined - coarse) > 1e-6 * std::max(std::abs(refined), scale)) {
                throw NumericalAccuracyError("phonon tables: w-quadrature not resolved");
            }
        }
    }

    tau_.resize(n);
    phi_.assign(n, Complex{});
    std::vector<double> re(n, 0.0), im(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) tau_[m] = m * dtau_;

    // Accumulate phi(tau) over w nodes with a phase-rotation recurrence.
    for (std::size_t k = 0; k < grid.w.size(); ++k) {
        const Complex rot = std::exp(kImag * grid.w[k] * dtau_);
        Complex z{1.0, 0.0};
        const double rc = grid.re_coeff[k];
        const double ic = grid.im_coeff[k];
        for (std::size_t m = 0; m < n; ++m) {
            re[m] += rc * z.real();
            im[m] -= ic * z.imag();
            z *= rot;
        }
    }
    for (std::size_t m = 0; m < n; ++m) phi_[m] = {re[m], im[m]};

    mean_B_ = std::exp(-0.5 * phi_[0].real());
    const double b2 = mean_B_ * mean_B_;

    g_g_.resize(n);
    g_u_.resize(n);
    g_plus_.resize(n);
    g_minus_.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const Complex p = phi_[m];
        g_g_[m] = b2 * (std::cosh(p) - 1.0);
        g_u_[m] = b2 * std::sinh(p);
        g_plus_[m] = g_g_[m] + g_u_[m];
        g_minus_[m] = g_g_[m] - g_u_[m];
    }

    const double tail = std::max(std::abs(g_plus_.back()), std::abs(g_minus_.back()));
    if (!horizon_acceptable(tail, t_max)) {
        throw HorizonError("phonon tables: kernel not decayed at tau_max=" +
                           std::to_string(t_max) + " (|G| = " + std::to_string(tail) + ")");
    }
}

Complex PhononTables::transform(const std::vector<Complex>& kernel, double omega) const {
    if (!bath_.phonons_enabled()) return {0.0, 0.0};
    const Complex full = simpson_half_fourier(kernel, dtau_, omega, 1);
    const Complex half = simpson_half_fourier(kernel, dtau_, omega, 2);
    // Convergence is judged against the kernel weight L1 >= |K(w)| for every
    // w; transforms near zero carry no rate and cannot be held to a relative
    // tolerance of themselves.
    double l1 = 0.0;
    for (const Complex& k : kernel) l1 += std::abs(k);
    l1 *= dtau_;
    if (std::abs(full - half) > 1e-6 * l1) {
        throw NumericalAccuracyError(
            "half_fourier: tau quadrature not converged at omega=" + std::to_string(omega));
    }
    return full;
}

GreenFunctions green_functions(double tau, const BathSpec& bath) {
    const Complex p = bath.phonons_enabled() ? correlation_phi(tau, bath) : Complex{};
    const double b = mean_displacement(bath);
    const double b2 = b * b;
    GreenFunctions g;
    g.g_g = b2 * (std::cosh(p) - 1.0);
    g.g_u = b2 * std::sinh(p);
    g.g_plus = b2 * (std::exp(p) - 1.0);
    g.g_minus = b2 * (std::exp(-p) - 1.0);
    return g;
}

PhononRates compute_rates(const SystemParams& sys, const BathSpec& bath) {
    return compute_rates(sys, PhononTables(bath));
}

PhononRates compute_rates(const SystemParams& sys, const PhononTables& tables) {
    sys.validate();
    PhononRates r;
    r.mean_B = tables.mean_B();
    if (!tables.bath().phonons_enabled()) return r;
    if (r.mean_B <= 0.0 || r.mean_B > 1.0) {
        throw NumericalAccuracyError("compute_rates: <B> outside (0, 1]");
    }

    const double g[2] = {sys.g1, sys.g2};
    const double d[2] = {sys.delta1, sys.delta2};

    // I+/-(w) = int_0^inf G+-(tau) e^{i w tau} dtau. Transforms of the
    // conjugated kernels follow from int G* e^{iwt} = conj(int G e^{-iwt}).
    const Complex ip_p1 = tables.k_plus(+d[0]), ip_m1 = tables.k_plus(-d[0]);
    const Complex ip_p2 = tables.k_plus(+d[1]), ip_m2 = tables.k_plus(-d[1]);
    const Complex im_p1 = tables.k_minus(+d[0]), im_m1 = tables.k_minus(-d[0]);
    const Complex im_p2 = tables.k_minus(+d[1]), im_m2 = tables.k_minus(-d[1]);

    const Complex ip_pos[2] = {ip_p1, ip_p2};
    const Complex ip_neg[2] = {ip_m1, ip_m2};

    for (int i = 0; i < 2; ++i) {
        const double gi2 = g[i] * g[i];
        r.stark_plus[i] = gi2 * ip_pos[i].imag();
        r.stark_minus[i] = gi2 * ip_neg[i].imag();

        // Gamma_i^+- = g_i^2 [I+(+-D_i) + conj(I+(+-D_i))] = 2 g_i^2 Re I+.
        const Complex feed_p = gi2 * (ip_pos[i] + std::conj(ip_pos[i]));
        const Complex feed_m = gi2 * (ip_neg[i] + std::conj(ip_neg[i]));
        if (std::abs(feed_p.imag()) > 1e-10 * std::max(1.0, std::abs(feed_p.real())) ||
            std::abs(feed_m.imag()) > 1e-10 * std::max(1.0, std::abs(feed_m.real()))) {
            throw NumericalAccuracyError("compute_rates: feed rate has imaginary residue");
        }
        // The scattering rates are transforms of positive-definite
        // correlations, hence nonnegative up to the tail budget of the tau
        // quadrature (the T = 0 kernels only decay algebraically).
        auto clamp_rate = [](double v) {
            if (v >= 0.0) return v;
            if (v > -1e-5) return 0.0;
            throw NumericalAccuracyError("compute_rates: negative scattering rate " +
                                         std::to_string(v));
        };
        r.feed_plus[i] = clamp_rate(feed_p.real());
        r.feed_minus[i] = clamp_rate(feed_m.real());
    }

    const Complex im_pos[2] = {im_p1, im_p2};
    const Complex im_neg[2] = {im_m1, im_m2};
    r.cross_pp_11 = sys.g1 * sys.g1 * (im_pos[0] + std::conj(im_neg[0]));
    r.cross_pp_22 = sys.g2 * sys.g2 * (im_pos[1] + std::conj(im_neg[1]));
    r.cross_mm_11 = sys.g1 * sys.g1 * (im_neg[0] + std::conj(im_pos[0]));
    r.cross_mm_22 = sys.g2 * sys.g2 * (im_neg[1] + std::conj(im_pos[1]));

    const double g12 = sys.g1 * sys.g2;
    if (g12 == 0.0) return r;  // cross rates vanish with either coupling

    r.omega_2ph = 0.5 * g12 * (im_p1 + im_p2 - std::conj(im_m1) - std::conj(im_m2));
    r.omega_plus = 0.5 * g12 * (ip_m2 - std::conj(ip_m1));
    r.omega_minus = 0.5 * g12 * (ip_p2 - std::conj(ip_p1));

    r.cross_pp_12 = g12 * (im_p2 + std::conj(im_m1));
    r.cross_pp_21 = g12 * (im_p1 + std::conj(im_m2));
    r.cross_mm_12 = g12 * (im_m2 + std::conj(im_p1));
    r.cross_mm_21 = g12 * (im_m1 + std::conj(im_p2));
    r.cross_pm_12 = g12 * (ip_m2 + std::conj(ip_m1));
    r.cross_pm_21 = g12 * (ip_m1 + std::conj(ip_m2));
    r.cross_mp_12 = g12 * (ip_p2 + std::conj(ip_p1));
    r.cross_mp_21 = g12 * (ip_p1 + std::conj(ip_p2));
    return r;
}

}  // namespace tpe

#pragma once

#include <complex>
#include <vector>

#include "tpe/bath.hpp"
#include "tpe/operators.hpp"

namespace tpe {

// Super-Ohmic spectral function J(w) = alpha_p w^3 exp(-w^2 / 2 wb^2).
double spectral_density(double omega, const BathSpec& bath);

// phi(tau) = int_0^inf dw J(w)/w^2 [coth(hw/2kT) cos(w tau) - i sin(w tau)],
// evaluated by composite Simpson on [0, cutoff_factor * wb]. Refines once and
// throws NumericalAccuracyError if the result is not resolved to 1e-6.
Complex correlation_phi(double tau, const BathSpec& bath);

// <B> = exp(-Re phi(0) / 2).
double mean_displacement(const BathSpec& bath);

// Half Fourier transform K(w) = int_0^inf k(tau) e^{i w tau} dtau of a kernel
// sampled on a uniform tau grid (odd sample count), composite Simpson.
Complex half_fourier_samples(const std::vector<Complex>& kernel, double tau_step,
                             double omega);

// Polaron Green-function kernels tabulated on a uniform tau grid.
// G_g = <B>^2 (cosh phi - 1), G_u = <B>^2 sinh phi, G+- = G_g +- G_u.
class PhononTables {
  public:
    explicit PhononTables(const BathSpec& bath);

    const BathSpec& bath() const { return bath_; }
    double mean_B() const { return mean_B_; }
    Complex phi0() const { return phi_.empty() ? Complex{} : phi_.front(); }

    const std::vector<double>& tau() const { return tau_; }
    const std::vector<Complex>& phi() const { return phi_; }
    const std::vector<Complex>& g_g() const { return g_g_; }
    const std::vector<Complex>& g_u() const { return g_u_; }
    const std::vector<Complex>& g_plus() const { return g_plus_; }
    const std::vector<Complex>& g_minus() const { return g_minus_; }

    // Half Fourier transforms of the tabulated kernels; each call checks
    // convergence under step halving (NumericalAccuracyError otherwise).
    Complex k_g(double omega) const { return transform(g_g_, omega); }
    Complex k_u(double omega) const { return transform(g_u_, omega); }
    Complex k_plus(double omega) const { return transform(g_plus_, omega); }
    Complex k_minus(double omega) const { return transform(g_minus_, omega); }

    double tau_step() const { return dtau_; }

  private:
    Complex transform(const std::vector<Complex>& kernel, double omega) const;

    BathSpec bath_;
    double mean_B_ = 1.0;
    double dtau_ = 0.0;
    std::vector<double> tau_;
    std::vector<Complex> phi_, g_g_, g_u_, g_plus_, g_minus_;
};

// Green functions at a single delay (convenience for tests/diagnostics).
struct GreenFunctions {
    Complex g_g, g_u, g_plus, g_minus;
};
GreenFunctions green_functions(double tau, const BathSpec& bath);

// Phonon-induced Stark shifts, coherent couplings and scattering rates for a
// given system/bath pair. Cross-dot rates are stored with their full complex
// values; the imaginary parts are principal-value (Lamb-type) corrections and
// the tabulated rate is the real part. The single-dot feed/absorption rates
// are real by construction and asserted so.
struct PhononRates {
    double mean_B = 1.0;
    double stark_plus[2] = {0.0, 0.0};   // delta_i^+
    double stark_minus[2] = {0.0, 0.0};  // delta_i^-
    Complex omega_2ph{};                 // two-photon coupling
    Complex omega_plus{}, omega_minus{}; // excitation-transfer couplings

    double feed_plus[2] = {0.0, 0.0};    // Gamma_i^+ (cavity feeding, jump a'si-)
    double feed_minus[2] = {0.0, 0.0};   // Gamma_i^- (absorption, jump si+a)

    // Two-photon emission (++) / absorption (--) and transfer (+-, -+) rates.
    Complex cross_pp_12{}, cross_pp_21{};
    Complex cross_mm_12{}, cross_mm_21{};
    Complex cross_pm_12{}, cross_pm_21{};
    Complex cross_mp_12{}, cross_mp_21{};

    // Same-dot members of the anomalous (pair) families: the G- sector also
    // couples si+a rho si+a of one dot; the operator products vanish, only
    // the sandwich survives. Required for consistency with the full kernel.
    Complex cross_pp_11{}, cross_pp_22{};
    Complex cross_mm_11{}, cross_mm_22{};
};

PhononRates compute_rates(const SystemParams& sys, const BathSpec& bath);
PhononRates compute_rates(const SystemParams& sys, const PhononTables& tables);

}  // namespace tpe

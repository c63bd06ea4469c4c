#pragma once

#include "tpe/bath.hpp"
#include "tpe/phonon.hpp"
#include "tpe/superoperator.hpp"

namespace tpe {

// H_s = D1 s1+s1- + D2 s2+s2- + <B>(g1 s1+a + g2 s2+a + h.c.)
Matrix system_hamiltonian(const SystemParams& sys, const PhononRates& rates,
                          const OperatorSet& ops);

// System part of the polaron coupling, X_g = g1 s1+a + g2 s2+a + h.c. and
// X_u = i(g1 s1+a + g2 s2+a) + h.c.
Matrix coupling_x_g(const SystemParams& sys, const OperatorSet& ops);
Matrix coupling_x_u(const SystemParams& sys, const OperatorSet& ops);

// H_eff = H_s + Stark shifts + two-photon and excitation-transfer couplings.
Matrix effective_hamiltonian(const SystemParams& sys, const PhononRates& rates,
                             const OperatorSet& ops);

// -(rate/2)(C'C rho - 2 C rho C' + rho C'C); rate must be >= 0.
Superoperator lindblad_dissipator(const Matrix& c_op, double rate,
                                  const SpaceDescriptor& space);

// Cross-channel family -(rate/2)(A B rho - 2 B rho A + rho A B); rates may be
// complex, Hermiticity of the total generator is restored by the conjugate
// partner family.
Superoperator cross_dissipator(const Matrix& a, const Matrix& b, Complex rate,
                               const SpaceDescriptor& space);

// Phonon dissipator of the polaron master equation evaluated spectrally:
// eigendecompose h_ref, damp each X matrix element by the half Fourier
// transform of the matching Green-function kernel at its Bohr frequency, and
// assemble -sum_j ([X_j, Xt_j rho] + h.c.).
Superoperator phonon_dissipator(const Matrix& h_ref, const SystemParams& sys,
                                const OperatorSet& ops, const PhononTables& tables);

// Full generator: -i[H_s, .] + phonon dissipator (H_s propagator) + kappa,
// gamma, dephasing channels.
Superoperator full_liouvillian(const SystemParams& sys, const PhononRates& rates,
                               const PhononTables& tables, const OperatorSet& ops);

// Far-detuned generator: -i[H_eff, .] + kappa/gamma/dephasing channels +
// phonon feed/absorption channels + the eight cross-dot families.
Superoperator approx_liouvillian(const SystemParams& sys, const PhononRates& rates,
                                 const OperatorSet& ops);

// Same object built through the spectral route with the free (detuning-only)
// reference Hamiltonian; used to cross-validate the explicit rate families.
Superoperator approx_liouvillian_spectral(const SystemParams& sys,
                                          const PhononRates& rates,
                                          const PhononTables& tables,
                                          const OperatorSet& ops);

}  // namespace tpe

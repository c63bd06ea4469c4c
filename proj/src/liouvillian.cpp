#include "tpe/liouvillian.hpp"

#include <cmath>
#include <map>

namespace tpe {

namespace {

Matrix commutator_superop(const Matrix& h) {
    return -kImag * (spre(h) - spost(h));
}

// Half Fourier transforms evaluated once per distinct Bohr frequency.
template <typename F>
class KernelCache {
  public:
    explicit KernelCache(F f) : f_(std::move(f)) {}

    Complex at(double omega) {
        const long long key = llround(omega * 1e9);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const Complex v = f_(omega);
        cache_.emplace(key, v);
        return v;
    }

  private:
    F f_;
    std::map<long long, Complex> cache_;
};

template <typename Cache>
Matrix damped_coupling(const Matrix& x_eig, const Eigen::VectorXd& energies,
                       Cache& kernel) {
    const Eigen::Index d = x_eig.rows();
    Matrix xt = Matrix::Zero(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = 0; n < d; ++n) {
            if (x_eig(m, n) == Complex{}) continue;
            xt(m, n) = x_eig(m, n) * kernel.at(energies(n) - energies(m));
        }
    }
    return xt;
}

Superoperator kappa_gamma_channels(const SystemParams& sys, const OperatorSet& ops) {
    const int d2 = ops.space.dim() * ops.space.dim();
    Superoperator l{Matrix::Zero(d2, d2), ops.space, Superoperator::Kind::custom};
    l.m += lindblad_dissipator(ops.a, sys.kappa, ops.space).m;
    l.m += lindblad_dissipator(ops.sigma1_minus, sys.gamma1, ops.space).m;
    l.m += lindblad_dissipator(ops.sigma2_minus, sys.gamma2, ops.space).m;
    l.m += lindblad_dissipator(ops.sigma1_plus * ops.sigma1_minus, sys.gamma1_deph,
                               ops.space).m;
    l.m += lindblad_dissipator(ops.sigma2_plus * ops.sigma2_minus, sys.gamma2_deph,
                               ops.space).m;
    return l;
}

Matrix free_hamiltonian(const SystemParams& sys, const OperatorSet& ops) {
    return sys.delta1 * ops.sigma1_plus * ops.sigma1_minus +
           sys.delta2 * ops.sigma2_plus * ops.sigma2_minus;
}

}  // namespace

Matrix coupling_x_g(const SystemParams& sys, const OperatorSet& ops) {
    Matrix up = sys.g1 * ops.sigma1_plus * ops.a + sys.g2 * ops.sigma2_plus * ops.a;
    return up + up.adjoint();
}

Matrix coupling_x_u(const SystemParams& sys, const OperatorSet& ops) {
    Matrix up = sys.g1 * ops.sigma1_plus * ops.a + sys.g2 * ops.sigma2_plus * ops.a;
    return kImag * up + (kImag * up).adjoint();
}

Matrix system_hamiltonian(const SystemParams& sys, const PhononRates& rates,
                          const OperatorSet& ops) {
    return free_hamiltonian(sys, ops) + rates.mean_B * coupling_x_g(sys, ops);
}

Matrix effective_hamiltonian(const SystemParams& sys, const PhononRates& rates,
                             const OperatorSet& ops) {
    const Matrix& a = ops.a;
    const Matrix& ad = ops.a_dag;
    const Matrix sm[2] = {ops.sigma1_minus, ops.sigma2_minus};
    const Matrix sp[2] = {ops.sigma1_plus, ops.sigma2_plus};

    Matrix h = system_hamiltonian(sys, rates, ops);

    // Stark shifts: delta_i^+ dresses the excited manifold (feed channel
    // anticommutator), delta_i^- the ground manifold (absorption channel).
    for (int i = 0; i < 2; ++i) {
        h += rates.stark_plus[i] * sp[i] * a * ad * sm[i];
        h += rates.stark_minus[i] * ad * sm[i] * sp[i] * a;
    }

    // Two-photon coupling.
    Matrix w_dag = sm[0] * sm[1] * ad * ad;  // both excitons down, two photons up
    h -= kImag * rates.omega_2ph * w_dag + (kImag * rates.omega_2ph * w_dag).adjoint();

    // Excitation transfer between the dots via the common bath.
    Matrix t_up = sp[0] * a * ad * sm[1];   // dot2 -> dot1
    Matrix t_down = ad * sm[0] * sp[1] * a; // dot1 -> dot2
    h -= kImag * rates.omega_minus * t_up + (kImag * rates.omega_minus * t_up).adjoint();
    h -= kImag * rates.omega_plus * t_down + (kImag * rates.omega_plus * t_down).adjoint();
    return h;
}

Superoperator lindblad_dissipator(const Matrix& c_op, double rate,
                                  const SpaceDescriptor& space) {
    if (rate < 0.0) throw ConfigError("lindblad_dissipator: negative rate");
    const int d2 = space.dim() * space.dim();
    Superoperator l{Matrix::Zero(d2, d2), space, Superoperator::Kind::custom};
    if (rate == 0.0) return l;
    Matrix cdc = c_op.adjoint() * c_op;
    l.m = -(rate / 2.0) *
          (spre(cdc) - 2.0 * sandwich(c_op, c_op.adjoint()) + spost(cdc));
    return l;
}

Superoperator cross_dissipator(const Matrix& a, const Matrix& b, Complex rate,
                               const SpaceDescriptor& space) {
    const int d2 = space.dim() * space.dim();
    Superoperator l{Matrix::Zero(d2, d2), space, Superoperator::Kind::custom};
    if (rate == Complex{}) return l;
    Matrix ab = a * b;
    l.m = -(rate / 2.0) * (spre(ab) - 2.0 * sandwich(b, a) + spost(ab));
    return l;
}

Superoperator phonon_dissipator(const Matrix& h_ref, const SystemParams& sys,
                                const OperatorSet& ops, const PhononTables& tables) {
    const int d = ops.space.dim();
    const int d2 = d * d;
    Superoperator l{Matrix::Zero(d2, d2), ops.space, Superoperator::Kind::custom};
    if (!tables.bath().phonons_enabled()) return l;

    Eigen::SelfAdjointEigenSolver<Matrix> es(h_ref);
    if (es.info() != Eigen::Success) {
        throw NumericalAccuracyError("phonon_dissipator: eigendecomposition failed");
    }
    const Eigen::VectorXd energies = es.eigenvalues();
    const Matrix v = es.eigenvectors();

    KernelCache cache_g([&tables](double w) { return tables.k_g(w); });
    KernelCache cache_u([&tables](double w) { return tables.k_u(w); });

    auto add_channel = [&](const Matrix& x, auto& cache) {
        const Matrix x_eig = v.adjoint() * x * v;
        const Matrix xt = v * damped_coupling(x_eig, energies, cache) * v.adjoint();
        l.m -= spre(x * xt) - sandwich(xt, x) + spost(Matrix(xt.adjoint() * x)) -
               sandwich(x, Matrix(xt.adjoint()));
    };
    add_channel(coupling_x_g(sys, ops), cache_g);
    add_channel(coupling_x_u(sys, ops), cache_u);
    return l;
}

Superoperator full_liouvillian(const SystemParams& sys, const PhononRates& rates,
                               const PhononTables& tables, const OperatorSet& ops) {
    sys.validate();
    const Matrix h_s = system_hamiltonian(sys, rates, ops);
    Superoperator l{commutator_superop(h_s), ops.space, Superoperator::Kind::full};
    l.m += phonon_dissipator(h_s, sys, ops, tables).m;
    l.m += kappa_gamma_channels(sys, ops).m;
    return l;
}

Superoperator approx_liouvillian(const SystemParams& sys, const PhononRates& rates,
                                 const OperatorSet& ops) {
    sys.validate();
    const SpaceDescriptor space = ops.space;
    const Matrix feed_op[2] = {ops.a_dag * ops.sigma1_minus, ops.a_dag * ops.sigma2_minus};
    const Matrix abs_op[2] = {ops.sigma1_plus * ops.a, ops.sigma2_plus * ops.a};

    Superoperator l{commutator_superop(effective_hamiltonian(sys, rates, ops)), space,
                    Superoperator::Kind::approximate};
    l.m += kappa_gamma_channels(sys, ops).m;

    for (int i = 0; i < 2; ++i) {
        l.m += lindblad_dissipator(feed_op[i], rates.feed_plus[i], space).m;
        l.m += lindblad_dissipator(abs_op[i], rates.feed_minus[i], space).m;
    }

    // Cross-dot families; Hermiticity holds pairwise through the rate
    // conjugation identities (e.g. conj(G_12^{++}) = G_21^{--}). The
    // same-dot anomalous pair terms of the free-propagator kernel
    // (rates.cross_pp_11 etc.) are intentionally not part of this
    // generator; see approx_liouvillian_spectral for the variant that
    // carries them.
    l.m += cross_dissipator(feed_op[0], feed_op[1], rates.cross_pp_12, space).m;
    l.m += cross_dissipator(feed_op[1], feed_op[0], rates.cross_pp_21, space).m;
    l.m += cross_dissipator(abs_op[0], abs_op[1], rates.cross_mm_12, space).m;
    l.m += cross_dissipator(abs_op[1], abs_op[0], rates.cross_mm_21, space).m;
    l.m += cross_dissipator(abs_op[0], feed_op[1], rates.cross_mp_12, space).m;
    l.m += cross_dissipator(abs_op[1], feed_op[0], rates.cross_mp_21, space).m;
    l.m += cross_dissipator(feed_op[0], abs_op[1], rates.cross_pm_12, space).m;
    l.m += cross_dissipator(feed_op[1], abs_op[0], rates.cross_pm_21, space).m;
    return l;
}

Superoperator approx_liouvillian_spectral(const SystemParams& sys,
                                          const PhononRates& rates,
                                          const PhononTables& tables,
                                          const OperatorSet& ops) {
    sys.validate();
    const Matrix h_s = system_hamiltonian(sys, rates, ops);
    Superoperator l{commutator_superop(h_s), ops.space,
                    Superoperator::Kind::approximate};
    l.m += phonon_dissipator(free_hamiltonian(sys, ops), sys, ops, tables).m;
    l.m += kappa_gamma_channels(sys, ops).m;
    return l;
}

}  // namespace tpe

#include "tpe/operators.hpp"

#include <cmath>
#include <string>

namespace tpe {

SpaceDescriptor build_space(int n_max) {
    if (n_max < 2) {
        throw ConfigError("n_max must be >= 2, got " + std::to_string(n_max));
    }
    return SpaceDescriptor{n_max};
}

int basis_index(const SpaceDescriptor& space, int q1, int q2, int n) {
    if (q1 < 0 || q1 > 1 || q2 < 0 || q2 > 1) {
        throw std::out_of_range("qubit level must be 0 (g) or 1 (e)");
    }
    if (n < 0 || n > space.n_max) {
        throw std::out_of_range("photon number " + std::to_string(n) +
                                " outside 0.." + std::to_string(space.n_max));
    }
    return (2 * q1 + q2) * (space.n_max + 1) + n;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

OperatorSet build_operators(const SpaceDescriptor& space) {
    const int nc = space.n_max + 1;

    Matrix id2 = Matrix::Identity(2, 2);
    Matrix idc = Matrix::Identity(nc, nc);
    Matrix sp = Matrix::Zero(2, 2);  // |e><g|
    sp(kE, kG) = 1.0;
    Matrix sm = sp.adjoint();

    Matrix ac = Matrix::Zero(nc, nc);  // a|n> = sqrt(n)|n-1>
    for (int n = 1; n < nc; ++n) ac(n - 1, n) = std::sqrt(double(n));

    OperatorSet ops;
    ops.space = space;
    ops.sigma1_plus = kron(kron(sp, id2), idc);
    ops.sigma1_minus = kron(kron(sm, id2), idc);
    ops.sigma2_plus = kron(kron(id2, sp), idc);
    ops.sigma2_minus = kron(kron(id2, sm), idc);
    ops.a = kron(kron(id2, id2), ac);
    ops.a_dag = ops.a.adjoint();
    ops.identity = Matrix::Identity(space.dim(), space.dim());
    ops.photon_number = ops.a_dag * ops.a;
    ops.excitation_number = ops.sigma1_plus * ops.sigma1_minus +
                            ops.sigma2_plus * ops.sigma2_minus + ops.photon_number;
    return ops;
}

Vector basis_state(const SpaceDescriptor& space, int q1, int q2, int n) {
    Vector v = Vector::Zero(space.dim());
    v(basis_index(space, q1, q2, n)) = 1.0;
    return v;
}

Matrix basis_projector(const SpaceDescriptor& space, int q1, int q2, int n) {
    Matrix p = Matrix::Zero(space.dim(), space.dim());
    p(basis_index(space, q1, q2, n), basis_index(space, q1, q2, n)) = 1.0;
    return p;
}

Complex expectation(const Matrix& op, const Matrix& rho) {
    if (op.rows() != rho.rows() || op.cols() != rho.cols() || op.rows() != op.cols()) {
        throw std::invalid_argument("expectation: operator/state dimension mismatch");
    }
    return (op * rho).trace();
}

DensityCheck check_density(const Matrix& rho) {
    DensityCheck c{};
    c.trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    c.herm_err = (rho - Matrix(rho.adjoint())).cwiseAbs().maxCoeff();
    Matrix herm = 0.5 * (rho + Matrix(rho.adjoint()));
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

}  // namespace tpe

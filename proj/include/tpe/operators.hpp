#pragma once

#include <Eigen/Dense>
#include <complex>

#include "tpe/errors.hpp"

namespace tpe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};

// Two quantum dots (two-level each) tensor a truncated cavity mode.
// Basis ordering is |q1> (x) |q2> (x) |n>, q in {g,e}, n in 0..n_max,
// row-major: index = (2*q1 + q2) * (n_max + 1) + n with g = 0, e = 1.
// This ordering is fixed so that data files are stable across runs.
struct SpaceDescriptor {
    int n_max = 3;
    int dim() const { return 4 * (n_max + 1); }
    bool operator==(const SpaceDescriptor&) const = default;
};

inline constexpr int kG = 0;
inline constexpr int kE = 1;

// n_max >= 2 so that both initial excitations fit into the photon ladder.
SpaceDescriptor build_space(int n_max);

int basis_index(const SpaceDescriptor& space, int q1, int q2, int n);

struct OperatorSet {
    SpaceDescriptor space;
    Matrix sigma1_plus, sigma1_minus;
    Matrix sigma2_plus, sigma2_minus;
    Matrix a, a_dag;
    Matrix identity;
    Matrix photon_number;      // a'a
    Matrix excitation_number;  // s1+s1- + s2+s2- + a'a
};

OperatorSet build_operators(const SpaceDescriptor& space);

Matrix kron(const Matrix& a, const Matrix& b);

Vector basis_state(const SpaceDescriptor& space, int q1, int q2, int n);

// Rank-1 projector |q1,q2,n><q1,q2,n|.
Matrix basis_projector(const SpaceDescriptor& space, int q1, int q2, int n);

// Tr(op * rho); throws on dimension mismatch.
Complex expectation(const Matrix& op, const Matrix& rho);

struct DensityCheck {
    double trace_err;       // |Tr(rho) - 1|
    double herm_err;        // max |rho - rho'|
    double min_eigenvalue;  // of the Hermitian part
};

DensityCheck check_density(const Matrix& rho);

}  // namespace tpe

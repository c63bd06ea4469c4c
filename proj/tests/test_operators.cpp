#include <doctest.h>

#include "tpe/liouvillian.hpp"
#include "tpe/operators.hpp"

using namespace tpe;

TEST_SUITE_BEGIN("operators");

TEST_CASE("space dimensions and truncation guard") {
    CHECK(build_space(2).dim() == 12);
    CHECK(build_space(3).dim() == 16);
    CHECK_THROWS_AS(build_space(1), ConfigError);
}

TEST_CASE("ladder operator actions on basis states") {
    const SpaceDescriptor space = build_space(3);
    const OperatorSet ops = build_operators(space);

    Vector gg2 = basis_state(space, kG, kG, 2);
    Vector gg1 = basis_state(space, kG, kG, 1);
    CHECK((ops.a * gg2 - std::sqrt(2.0) * gg1).norm() == doctest::Approx(0.0));

    Vector gg0 = basis_state(space, kG, kG, 0);
    CHECK((ops.a * gg0).norm() == doctest::Approx(0.0));

    Vector eg0 = basis_state(space, kE, kG, 0);
    CHECK((ops.sigma1_plus * gg0 - eg0).norm() == doctest::Approx(0.0));
}

TEST_CASE("adjoint involution and operator identities") {
    const SpaceDescriptor space = build_space(3);
    const OperatorSet ops = build_operators(space);

    CHECK((ops.sigma1_plus - Matrix(ops.sigma1_minus.adjoint())).norm() < 1e-15);
    CHECK((ops.a_dag - Matrix(ops.a.adjoint())).norm() < 1e-15);
    CHECK((Matrix(ops.a_dag.adjoint()) - ops.a).norm() < 1e-15);

    // [a, a'] = 1 on the subspace n < n_max.
    Matrix comm = ops.a * ops.a_dag - ops.a_dag * ops.a;
    for (int q1 = 0; q1 <= 1; ++q1) {
        for (int q2 = 0; q2 <= 1; ++q2) {
            for (int n = 0; n < space.n_max; ++n) {
                Vector v = basis_state(space, q1, q2, n);
                CHECK((comm * v - v).norm() < 1e-14);
            }
        }
    }

    // si+si- is a projector.
    Matrix p1 = ops.sigma1_plus * ops.sigma1_minus;
    CHECK((p1 * p1 - p1).norm() < 1e-15);
}

TEST_CASE("basis projectors") {
    const SpaceDescriptor space = build_space(3);
    Matrix p = basis_projector(space, kE, kE, 0);
    CHECK(std::abs(p.trace() - Complex(1.0)) < 1e-15);
    CHECK((p * p - p).norm() < 1e-15);
    Vector ee0 = basis_state(space, kE, kE, 0);
    CHECK(std::abs((ee0.adjoint() * p * ee0)(0) - Complex(1.0)) < 1e-15);
    CHECK_THROWS_AS(basis_projector(space, kG, kG, 4), std::out_of_range);
}

TEST_CASE("expectation values") {
    const SpaceDescriptor space = build_space(3);
    const OperatorSet ops = build_operators(space);

    Matrix rho = basis_projector(space, kE, kG, 0);
    CHECK(expectation(ops.identity, rho).real() == doctest::Approx(1.0));
    CHECK(expectation(ops.sigma1_plus * ops.sigma1_minus, rho).real() ==
          doctest::Approx(1.0));

    Matrix rho2 = basis_projector(space, kG, kG, 2);
    CHECK(expectation(ops.photon_number, rho2).real() == doctest::Approx(2.0));

    Matrix wrong = Matrix::Identity(4, 4);
    CHECK_THROWS_AS(expectation(wrong, rho), std::invalid_argument);
}

TEST_CASE("total excitation commutes with the coupling operators") {
    const SpaceDescriptor space = build_space(3);
    const OperatorSet ops = build_operators(space);
    SystemParams sys;
    sys.g2 = 2.0;
    sys.delta1 = -5.0;
    sys.delta2 = 2.6;

    const Matrix n = ops.excitation_number;
    const Matrix xg = coupling_x_g(sys, ops);
    const Matrix xu = coupling_x_u(sys, ops);
    PhononRates rates;
    rates.mean_B = 0.9;
    const Matrix hs = system_hamiltonian(sys, rates, ops);

    CHECK((n * xg - xg * n).norm() < 1e-12);
    CHECK((n * xu - xu * n).norm() < 1e-12);
    CHECK((n * hs - hs * n).norm() < 1e-12);
}

TEST_CASE("density checks flag bad matrices") {
    const SpaceDescriptor space = build_space(2);
    Matrix rho = basis_projector(space, kG, kG, 0);
    DensityCheck good = check_density(rho);
    CHECK(good.trace_err < 1e-14);
    CHECK(good.herm_err < 1e-14);
    CHECK(good.min_eigenvalue > -1e-14);

    Matrix bad = 2.0 * rho;
    CHECK(check_density(bad).trace_err > 0.5);
}

TEST_SUITE_END();

#pragma once

#include "tpe/operators.hpp"

namespace tpe {

// Superoperators act on column-stacked density matrices:
// vec(A rho B) = (B^T (x) A) vec(rho), vec index = row + col * dim.
Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, int dim);

Matrix spre(const Matrix& a);                       // vec(A rho)
Matrix spost(const Matrix& b);                      // vec(rho B)
Matrix sandwich(const Matrix& a, const Matrix& b);  // vec(A rho B)

struct Superoperator {
    enum class Kind { full, approximate, custom };
    Matrix m;  // d^2 x d^2
    SpaceDescriptor space;
    Kind kind = Kind::custom;

    int dim() const { return space.dim(); }

    // Image of a density matrix under the generator.
    Matrix operator()(const Matrix& rho) const {
        return unvectorize(m * vectorize(rho), dim());
    }
};

}  // namespace tpe

#include "tpe/superoperator.hpp"

namespace tpe {

Vector vectorize(const Matrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, int dim) {
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix spre(const Matrix& a) {
    return kron(Matrix::Identity(a.rows(), a.cols()), a);
}

Matrix spost(const Matrix& b) {
    return kron(b.transpose(), Matrix::Identity(b.rows(), b.cols()));
}

Matrix sandwich(const Matrix& a, const Matrix& b) {
    return kron(b.transpose(), a);
}

}  // namespace tpe

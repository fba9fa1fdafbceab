#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qkd {

using complexd = std::complex<double>;

// Dense complex matrix, row-major. Sized for this project's state spaces
// (dimension <= 16), so no attempt at blocking or sparsity.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    complexd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const complexd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    CMatrix adjoint() const;
    complexd trace() const;
    double frobenius_norm() const;
    bool is_hermitian(double tol) const;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);

    friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
    friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
    friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
    friend CMatrix operator*(complexd s, CMatrix m);

    friend CMatrix kron(const CMatrix& a, const CMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complexd> data_;
};

// Apply a matrix to a vector (column semantics).
std::vector<complexd> apply(const CMatrix& m, const std::vector<complexd>& v);

// Eigenvalues ascending; columns of `vectors` are the matching orthonormal
// eigenvectors.
struct EigenSystem {
    std::vector<double> values;
    CMatrix vectors;
};

// Hermitian eigensolvers: closed form for 2x2, cyclic Jacobi above that.
// Inputs must be Hermitian; only the property needed by each caller is
// validated (squareness here, hermiticity at the DensityOperator boundary).
std::vector<double> hermitian_eigenvalues(const CMatrix& m);
EigenSystem hermitian_eigensystem(const CMatrix& m);

// Square root of a positive semidefinite Hermitian matrix. Eigenvalues in
// [psd_floor, 0] are clamped to 0; values below psd_floor throw.
CMatrix hermitian_sqrt(const CMatrix& m, double psd_floor);

}  // namespace qkd

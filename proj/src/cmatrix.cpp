#include "qkd/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qkd/tolerances.hpp"

namespace qkd {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, complexd{0.0, 0.0}) {}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

complexd CMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
    complexd t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const complexd& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool CMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix difference: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    CMatrix r(lhs.rows_, rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; ++i)
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const complexd a = lhs(i, k);
            if (a == complexd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += a * rhs(k, j);
        }
    return r;
}

CMatrix operator*(complexd s, CMatrix m) {
    for (complexd& z : m.data_) z *= s;
    return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) {
            const complexd aij = a(i, j);
            if (aij == complexd{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows_; ++k)
                for (std::size_t l = 0; l < b.cols_; ++l)
                    r(i * b.rows_ + k, j * b.cols_ + l) = aij * b(k, l);
        }
    return r;
}

std::vector<complexd> apply(const CMatrix& m, const std::vector<complexd>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("apply: shape mismatch");
    std::vector<complexd> r(m.rows(), complexd{0.0, 0.0});
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

namespace {

EigenSystem eig_closed_form_2x2(const CMatrix& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const complexd b = m(0, 1);
    const double babs = std::abs(b);

    EigenSystem es;
    es.vectors = CMatrix(2, 2);
    if (babs == 0.0) {
        const std::size_t lo = (a <= d) ? 0 : 1;
        es.values = {std::min(a, d), std::max(a, d)};
        es.vectors(lo, 0) = 1.0;
        es.vectors(1 - lo, 1) = 1.0;
        return es;
    }

    const double mean = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), babs);
    es.values = {mean - rad, mean + rad};
    // (b, lambda - a) is an eigenvector for lambda; nonzero whenever b != 0
    for (std::size_t col = 0; col < 2; ++col) {
        const complexd v0 = b;
        const complexd v1 = complexd{es.values[col] - a, 0.0};
        const double n = std::sqrt(std::norm(v0) + std::norm(v1));
        es.vectors(0, col) = v0 / n;
        es.vectors(1, col) = v1 / n;
    }
    return es;
}

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = 0; q < a.cols(); ++q)
            if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

// Cyclic-by-rows Jacobi for complex Hermitian matrices. Each rotation is the
// real Jacobi rotation for the modulus of the pivot, carrying the pivot's
// phase, so the pivot is annihilated exactly.
EigenSystem eig_jacobi(CMatrix a) {
    const std::size_t n = a.rows();
    CMatrix v = CMatrix::identity(n);
    const double scale = 1.0 + a.frobenius_norm();

    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        if (off_diagonal_norm(a) <= tolerances.jacobi_off * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq == 0.0) continue;
                const complexd phase = a(p, q) / apq;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const complexd sp = (t * c) * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const complexd akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - std::conj(sp) * akq;
                    a(k, q) = sp * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const complexd apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sp * aqk;
                    a(q, k) = std::conj(sp) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const complexd vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(sp) * vkq;
                    v(k, q) = sp * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged && off_diagonal_norm(a) > tolerances.jacobi_off * scale)
        throw std::runtime_error("jacobi eigensolver did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = CMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        es.values[col] = a(order[col], order[col]).real();
        for (std::size_t k = 0; k < n; ++k) es.vectors(k, col) = v(k, order[col]);
    }
    return es;
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigensystem: matrix not square");
    if (m.rows() == 0) throw std::invalid_argument("eigensystem: empty matrix");
    if (m.rows() == 1) {
        EigenSystem es;
        es.values = {m(0, 0).real()};
        es.vectors = CMatrix::identity(1);
        return es;
    }
    if (m.rows() == 2) return eig_closed_form_2x2(m);
    return eig_jacobi(m);
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    return hermitian_eigensystem(m).values;
}

CMatrix hermitian_sqrt(const CMatrix& m, double psd_floor) {
    const EigenSystem es = hermitian_eigensystem(m);
    const std::size_t n = m.rows();
    CMatrix r(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        double lambda = es.values[col];
        if (lambda < psd_floor)
            throw std::domain_error("hermitian_sqrt: eigenvalue below positivity tolerance");
        lambda = std::max(lambda, 0.0);
        const double root = std::sqrt(lambda);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) += root * es.vectors(i, col) * std::conj(es.vectors(j, col));
    }
    return r;
}

}  // namespace qkd

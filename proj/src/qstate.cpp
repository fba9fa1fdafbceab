#include "qkd/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qkd/tolerances.hpp"

namespace qkd {

namespace {

std::size_t checked_dims_product(const std::vector<std::size_t>& dims, std::size_t expected) {
    std::size_t p = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("subsystem dimension must be positive");
        p *= d;
    }
    if (p != expected)
        throw std::invalid_argument("product of subsystem dimensions does not match state size");
    return p;
}

void check_same_dims(const DensityOperator& a, const DensityOperator& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("operators live on different spaces");
}

double clamped_sqrt_sum(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < tolerances.psd_floor)
            throw std::domain_error("fidelity: product has a significantly negative eigenvalue");
        s += std::sqrt(std::max(lambda, 0.0));
    }
    return s;
}

}  // namespace

PureState::PureState(std::vector<complexd> amplitudes, std::vector<std::size_t> dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
    checked_dims_product(dims_, amplitudes_.size());
    double n = 0.0;
    for (const complexd& z : amplitudes_) n += std::norm(z);
    if (std::abs(n - 1.0) > tolerances.norm_one)
        throw std::invalid_argument("pure state is not normalized");
}

DensityOperator::DensityOperator(CMatrix matrix, std::vector<std::size_t> dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    if (matrix_.rows() != matrix_.cols())
        throw std::invalid_argument("density operator must be square");
    checked_dims_product(dims_, matrix_.rows());
    if (!matrix_.is_hermitian(tolerances.hermiticity))
        throw std::invalid_argument("density operator is not Hermitian");
    if (std::abs(matrix_.trace() - complexd{1.0, 0.0}) > tolerances.trace_one)
        throw std::invalid_argument("density operator trace is not 1");
    const std::vector<double> ev = hermitian_eigenvalues(matrix_);
    if (ev.front() < tolerances.psd_floor)
        throw std::invalid_argument("density operator has a negative eigenvalue");
}

DensityOperator density_from_pure(const PureState& s) {
    const std::size_t n = s.dim();
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = s.amplitudes()[i] * std::conj(s.amplitudes()[j]);
    return DensityOperator(std::move(m), s.dims());
}

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<complexd> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            amps[i * b.dim() + j] = a.amplitudes()[i] * b.amplitudes()[j];
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return PureState(std::move(amps), std::move(dims));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityOperator(kron(a.matrix(), b.matrix()), std::move(dims));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& keep) {
    const std::vector<std::size_t>& dims = rho.dims();
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    for (std::size_t i = 0; i + 1 < keep.size(); ++i)
        if (keep[i] >= keep[i + 1])
            throw std::invalid_argument("partial_trace: keep indices must be strictly increasing");
    if (keep.back() >= dims.size())
        throw std::invalid_argument("partial_trace: subsystem index out of range");

    const std::size_t m = dims.size();
    std::vector<bool> kept(m, false);
    for (std::size_t k : keep) kept[k] = true;

    std::vector<std::size_t> out_dims;
    std::size_t out_dim = 1;
    for (std::size_t k : keep) {
        out_dims.push_back(dims[k]);
        out_dim *= dims[k];
    }

    // strides of each subsystem in the flattened index (row-major)
    std::vector<std::size_t> stride(m, 1);
    for (std::size_t i = m; i-- > 1;) stride[i - 1] = stride[i] * dims[i];

    CMatrix out(out_dim, out_dim);
    const std::size_t full = rho.dim();
    std::vector<std::size_t> digits(m);
    for (std::size_t r = 0; r < full; ++r) {
        std::size_t rr = r;
        for (std::size_t s = 0; s < m; ++s) {
            digits[s] = rr / stride[s];
            rr %= stride[s];
        }
        std::size_t row_out = 0;
        for (std::size_t k : keep) row_out = row_out * dims[k] + digits[k];

        for (std::size_t c = 0; c < full; ++c) {
            std::size_t cc = c;
            std::size_t col_out = 0;
            bool traced_match = true;
            for (std::size_t s = 0; s < m; ++s) {
                const std::size_t digit = cc / stride[s];
                cc %= stride[s];
                if (kept[s])
                    col_out = col_out * dims[s] + digit;
                else if (digit != digits[s]) {
                    traced_match = false;
                    break;
                }
            }
            if (traced_match) out(row_out, col_out) += rho.matrix()(r, c);
        }
    }
    return DensityOperator(std::move(out), std::move(out_dims));
}

double fidelity_product_form(const DensityOperator& rho, const DensityOperator& sigma) {
    check_same_dims(rho, sigma);
    // The eigenvalues of rho*sigma equal those of sqrt(rho)*sigma*sqrt(rho),
    // which is Hermitian and stays within the Hermitian solver's domain.
    const CMatrix root = hermitian_sqrt(rho.matrix(), tolerances.psd_floor);
    const CMatrix product = root * sigma.matrix() * root;
    const double s = clamped_sqrt_sum(hermitian_eigenvalues(product));
    return std::clamp(s * s, 0.0, 1.0);
}

double fidelity_trace_norm(const DensityOperator& rho, const DensityOperator& sigma) {
    check_same_dims(rho, sigma);
    // trace norm of M = sqrt(rho)*sqrt(sigma) via the eigenvalues of M^dagger M
    const CMatrix root_rho = hermitian_sqrt(rho.matrix(), tolerances.psd_floor);
    const CMatrix root_sigma = hermitian_sqrt(sigma.matrix(), tolerances.psd_floor);
    const CMatrix m = root_rho * root_sigma;
    const CMatrix gram = m.adjoint() * m;
    const double trace_norm = clamped_sqrt_sum(hermitian_eigenvalues(gram));
    return std::clamp(trace_norm * trace_norm, 0.0, 1.0);
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    check_same_dims(rho, sigma);
    const CMatrix diff = rho.matrix() - sigma.matrix();
    double d = 0.0;
    for (double mu : hermitian_eigenvalues(diff)) d += std::abs(mu);
    return 0.5 * d;
}

double hs_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    check_same_dims(rho, sigma);
    // Tr[(rho-sigma)^2] is the squared Frobenius norm for Hermitian arguments
    const CMatrix diff = rho.matrix() - sigma.matrix();
    const double f = diff.frobenius_norm();
    return f * f;
}

double expectation(const PureState& s, const DensityOperator& rho) {
    if (s.dim() != rho.dim()) throw std::invalid_argument("expectation: shape mismatch");
    const std::vector<complexd> rs = apply(rho.matrix(), s.amplitudes());
    complexd e = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) e += std::conj(s.amplitudes()[i]) * rs[i];
    return e.real();
}

complexd inner(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: shape mismatch");
    complexd s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return s;
}

}  // namespace qkd

#pragma once

#include <cstddef>
#include <vector>

#include "qkd/cmatrix.hpp"

namespace qkd {

// Subsystem ordering is row-major throughout: the leftmost factor in `dims`
// is the slowest-running index of the flattened vector/matrix.

class PureState {
public:
    PureState(std::vector<complexd> amplitudes, std::vector<std::size_t> dims);

    const std::vector<complexd>& amplitudes() const { return amplitudes_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return amplitudes_.size(); }

private:
    std::vector<complexd> amplitudes_;
    std::vector<std::size_t> dims_;
};

class DensityOperator {
public:
    DensityOperator(CMatrix matrix, std::vector<std::size_t> dims);

    const CMatrix& matrix() const { return matrix_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return matrix_.rows(); }

private:
    CMatrix matrix_;
    std::vector<std::size_t> dims_;
};

DensityOperator density_from_pure(const PureState& s);

PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Reduce to the subsystems listed in `keep` (0-based, strictly increasing),
// tracing out the rest.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& keep);

// Fidelity in the squared convention: both forms equal (sum_i sqrt(lambda_i))^2
// over the eigenvalues of rho*sigma, which is 1 for identical states. The two
// functions reach that number through different decompositions and serve as
// mutual cross-checks.
double fidelity_product_form(const DensityOperator& rho, const DensityOperator& sigma);
double fidelity_trace_norm(const DensityOperator& rho, const DensityOperator& sigma);

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Tr[(rho-sigma)^2], the squared-norm convention.
double hs_distance(const DensityOperator& rho, const DensityOperator& sigma);

// <s|rho|s>
double expectation(const PureState& s, const DensityOperator& rho);

complexd inner(const PureState& a, const PureState& b);

}  // namespace qkd

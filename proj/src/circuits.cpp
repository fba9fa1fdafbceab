#include "qkd/circuits.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qkd {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_params(const PrepParams& p) {
    if (!(p.theta1 >= 0.0 && p.theta1 < kHalfPi))
        throw std::invalid_argument("theta1 out of range [0, pi/2)");
    if (!(p.theta2 >= 0.0 && p.theta2 < kHalfPi))
        throw std::invalid_argument("theta2 out of range [0, pi/2)");
}

}  // namespace

CMatrix gate_hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix h(2, 2);
    h(0, 0) = s;
    h(0, 1) = s;
    h(1, 0) = s;
    h(1, 1) = -s;
    return h;
}

CMatrix gate_cnot12() {
    CMatrix c(4, 4);
    c(0, 0) = 1.0;
    c(1, 1) = 1.0;
    c(2, 3) = 1.0;  // |11> -> |10>
    c(3, 2) = 1.0;  // |10> -> |11>
    return c;
}

CMatrix gate_crot(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    CMatrix m(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = c;
    m(2, 3) = -s;
    m(3, 2) = s;
    m(3, 3) = c;
    return m;
}

CMatrix gate_u1(double theta1) {
    const double c = std::cos(theta1);
    const double s = std::sin(theta1);
    CMatrix m(2, 2);
    m(0, 0) = c;
    m(0, 1) = -s;
    m(1, 0) = s;
    m(1, 1) = c;
    return m;
}

PureState prepare_alice_state(const PrepParams& p) {
    check_params(p);
    const CMatrix i2 = CMatrix::identity(2);
    const CMatrix cnot = gate_cnot12();
    const CMatrix chain =
        cnot * kron(gate_hadamard(), i2) * gate_crot(2.0 * p.theta2) * cnot *
        kron(gate_u1(p.theta1), i2);

    std::vector<complexd> zero_zero{1.0, 0.0, 0.0, 0.0};
    return PureState(apply(chain, zero_zero), {2, 2});
}

std::pair<PureState, PureState> z_basis_states(double alpha_sq) {
    if (!(alpha_sq > 0.0 && alpha_sq < 1.0))
        throw std::invalid_argument("alpha_sq out of range (0, 1)");
    const double alpha = std::sqrt(alpha_sq);
    const double beta = std::sqrt(1.0 - alpha_sq);
    PureState phi({complexd{alpha, 0.0}, complexd{beta, 0.0}}, {2});
    PureState phi_prime({complexd{-beta, 0.0}, complexd{alpha, 0.0}}, {2});
    return {std::move(phi), std::move(phi_prime)};
}

EmitResult alice_measure_and_emit(const PureState& state, std::mt19937_64& rng) {
    if (state.dims() != std::vector<std::size_t>{2, 2})
        throw std::invalid_argument("alice_measure_and_emit expects a two-qubit state");
    const std::vector<complexd>& a = state.amplitudes();
    const double p0 = std::norm(a[0]) + std::norm(a[1]);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int bit = (unit(rng) < p0) ? 0 : 1;

    const std::size_t base = static_cast<std::size_t>(bit) * 2;
    const double p = (bit == 0) ? p0 : 1.0 - p0;
    if (p <= 0.0) throw std::runtime_error("measurement selected a zero-probability branch");
    const double scale = 1.0 / std::sqrt(p);
    PureState collapsed({scale * a[base], scale * a[base + 1]}, {2});
    return {bit, std::move(collapsed)};
}

}  // namespace qkd

#include "qkd/cloners.hpp"

#include <cmath>
#include <stdexcept>

#include "qkd/circuits.hpp"

namespace qkd {

CloningMachine CloningMachine::wootters_zurek() {
    return {Kind::WoottersZurek, 0.0};
}

CloningMachine CloningMachine::modified_buzek_hillery(double xi) {
    if (!(xi >= 0.0 && xi <= 0.5))
        throw std::invalid_argument("xi out of range [0, 0.5]");
    return {Kind::ModifiedBuzekHillery, xi};
}

std::size_t CloningMachine::machine_dim() const {
    return kind == Kind::WoottersZurek ? 2 : 4;
}

CMatrix machine_isometry(const CloningMachine& m) {
    const std::size_t dm = m.machine_dim();
    CMatrix v(4 * dm, 2);
    // flattened index of |b e m> is (b * 2 + e) * dm + m
    if (m.kind == CloningMachine::Kind::WoottersZurek) {
        v(0 * dm + 0, 0) = 1.0;  // |00>|Q0>
        v(3 * dm + 1, 1) = 1.0;  // |11>|Q1>
        return v;
    }
    const double q = std::sqrt(1.0 - 2.0 * m.xi);
    const double y = std::sqrt(m.xi);
    v(0 * dm + 0, 0) = q;  // |00>|Q0>
    v(1 * dm + 2, 0) = y;  // |01>|Y0>
    v(2 * dm + 2, 0) = y;  // |10>|Y0>
    v(3 * dm + 1, 1) = q;  // |11>|Q1>
    v(1 * dm + 3, 1) = y;  // |01>|Y1>
    v(2 * dm + 3, 1) = y;  // |10>|Y1>
    return v;
}

CloneOutput clone(const CloningMachine& m, const PureState& input) {
    if (input.dim() != 2) throw std::invalid_argument("clone expects a 1-qubit input");
    const CMatrix v = machine_isometry(m);
    PureState full(apply(v, input.amplitudes()), {2, 2, m.machine_dim()});

    DensityOperator rho_full = density_from_pure(full);
    DensityOperator rho_BE = partial_trace(rho_full, {0, 1});
    DensityOperator rho_E = partial_trace(rho_BE, {1});
    DensityOperator rho_B = partial_trace(rho_BE, {0});
    DensityOperator rho_id = density_from_pure(input);
    return {std::move(rho_BE), std::move(rho_E), std::move(rho_B), std::move(rho_id)};
}

std::pair<DensityOperator, DensityOperator> eve_state_pair(const CloningMachine& m,
                                                           double alpha_sq) {
    const auto [phi, phi_prime] = z_basis_states(alpha_sq);
    return {clone(m, phi).rho_E, clone(m, phi_prime).rho_E};
}

double fidelity_wz_closed(double alpha_sq) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0))
        throw std::invalid_argument("alpha_sq out of range [0, 1]");
    return 4.0 * alpha_sq * (1.0 - alpha_sq);
}

double fidelity_bh_closed(double alpha_sq, double xi) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0))
        throw std::invalid_argument("alpha_sq out of range [0, 1]");
    if (!(xi >= 0.0 && xi <= 0.5))
        throw std::invalid_argument("xi out of range [0, 0.5]");
    const double omt = 1.0 - 2.0 * xi;
    return 4.0 * (alpha_sq * (1.0 - alpha_sq) * omt * omt + xi * (1.0 - xi));
}

double fidelity_closed(const CloningMachine& m, double alpha_sq) {
    return m.kind == CloningMachine::Kind::WoottersZurek
               ? fidelity_wz_closed(alpha_sq)
               : fidelity_bh_closed(alpha_sq, m.xi);
}

double bob_qber_oracle(const CloningMachine& m, double alpha_sq) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0))
        throw std::invalid_argument("alpha_sq out of range [0, 1]");
    // built directly so the endpoints alpha_sq = 0 and 1 are usable
    const double alpha = std::sqrt(alpha_sq);
    const double beta = std::sqrt(1.0 - alpha_sq);
    PureState phi({complexd{alpha, 0.0}, complexd{beta, 0.0}}, {2});
    PureState phi_prime({complexd{-beta, 0.0}, complexd{alpha, 0.0}}, {2});

    const double err_phi = 1.0 - expectation(phi, clone(m, phi).rho_B);
    const double err_phi_prime = 1.0 - expectation(phi_prime, clone(m, phi_prime).rho_B);
    return 0.5 * (err_phi + err_phi_prime);
}

}  // namespace qkd

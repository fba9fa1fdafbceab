#include "qkd/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qkd/circuits.hpp"
#include "qkd/qstate.hpp"

namespace qkd {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t avalanche(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void validate(const ProtocolConfig& cfg) {
    if (cfg.n_pulses == 0) throw std::invalid_argument("n_pulses must be positive");
    if (!(cfg.theta1 > 0.0 && cfg.theta1 < std::numbers::pi / 2.0))
        throw std::invalid_argument("theta1 out of range (0, pi/2)");
    if (!(cfg.sample_fraction > 0.0 && cfg.sample_fraction < 1.0))
        throw std::invalid_argument("sample_fraction out of range (0, 1)");
    if (!(cfg.depolarizing_noise >= 0.0 && cfg.depolarizing_noise <= 1.0))
        throw std::invalid_argument("depolarizing_noise out of range [0, 1]");
    if (cfg.eve) {
        const double p = cfg.eve->interception_probability;
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("interception_probability out of range [0, 1]");
    }
}

}  // namespace

Substream::Substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
    : state_(avalanche(avalanche(seed ^ tag) + (index + 1) * kGolden)) {}

std::uint64_t Substream::next_u64() {
    state_ += kGolden;
    return avalanche(state_);
}

double Substream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

ProtocolOutcome run_protocol(const ProtocolConfig& cfg) {
    validate(cfg);

    const double cos_t = std::cos(cfg.theta1);
    const double alpha_sq = cos_t * cos_t;
    const auto [phi, phi_prime] = z_basis_states(alpha_sq);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    std::vector<complexd> plus(2), minus(2);
    for (int i = 0; i < 2; ++i) {
        plus[i] = (phi.amplitudes()[i] + phi_prime.amplitudes()[i]) * inv_sqrt2;
        minus[i] = (phi.amplitudes()[i] - phi_prime.amplitudes()[i]) * inv_sqrt2;
    }
    const PureState psi(plus, {2});
    const PureState psi_prime(minus, {2});

    // basis 0 = Z, basis 1 = X; signal index = 2 * basis + bit
    const PureState* signals[4] = {&phi, &phi_prime, &psi, &psi_prime};

    // P(Bob reads 0 | signal, intercepted, Bob basis); depolarized pulses
    // bypass the table with probability 1/2.
    double p_zero[2][4][2];
    for (int s = 0; s < 4; ++s) {
        const DensityOperator direct = density_from_pure(*signals[s]);
        p_zero[0][s][0] = expectation(phi, direct);
        p_zero[0][s][1] = expectation(psi, direct);
        if (cfg.eve) {
            const CloneOutput cloned = clone(cfg.eve->machine, *signals[s]);
            p_zero[1][s][0] = expectation(phi, cloned.rho_B);
            p_zero[1][s][1] = expectation(psi, cloned.rho_B);
        } else {
            p_zero[1][s][0] = p_zero[0][s][0];
            p_zero[1][s][1] = p_zero[0][s][1];
        }
    }

    const double intercept_prob = cfg.eve ? cfg.eve->interception_probability : 0.0;
    std::vector<char> alice_bits, bob_bits;
    for (std::uint64_t i = 0; i < cfg.n_pulses; ++i) {
        Substream stream(cfg.seed, kPulseStreamTag, i);
        const int alice_basis = stream.next_unit() < 0.5 ? 0 : 1;
        const int alice_bit = stream.next_unit() < 0.5 ? 0 : 1;
        const bool intercepted = cfg.eve.has_value() && stream.next_unit() < intercept_prob;
        const bool depolarized = stream.next_unit() < cfg.depolarizing_noise;
        const int bob_basis = stream.next_unit() < 0.5 ? 0 : 1;
        const double u = stream.next_unit();

        const double p0 = depolarized
                              ? 0.5
                              : p_zero[intercepted ? 1 : 0][2 * alice_basis + alice_bit][bob_basis];
        const int bob_bit = u < p0 ? 0 : 1;

        if (alice_basis == 0 && bob_basis == 0) {
            alice_bits.push_back(static_cast<char>(alice_bit));
            bob_bits.push_back(static_cast<char>(bob_bit));
        }
    }

    ProtocolOutcome out;
    out.sifted_length = alice_bits.size();
    out.sample_size = static_cast<std::uint64_t>(
        std::llround(cfg.sample_fraction * static_cast<double>(out.sifted_length)));
    if (out.sample_size == 0) throw std::runtime_error("estimation sample is empty");

    // Partial Fisher-Yates pick of the estimation positions.
    std::vector<std::uint64_t> order(out.sifted_length);
    for (std::uint64_t i = 0; i < out.sifted_length; ++i) order[i] = i;
    Substream picker(cfg.seed, kSampleStreamTag, 0);
    std::vector<bool> sampled(out.sifted_length, false);
    for (std::uint64_t i = 0; i < out.sample_size; ++i) {
        const std::uint64_t j = i + picker.next_u64() % (out.sifted_length - i);
        std::swap(order[i], order[j]);
        sampled[order[i]] = true;
    }

    std::uint64_t sample_errors = 0;
    for (std::uint64_t i = 0; i < out.sifted_length; ++i) {
        if (sampled[i]) {
            if (alice_bits[i] != bob_bits[i]) ++sample_errors;
        } else {
            out.final_key_bits_alice.push_back(static_cast<char>('0' + alice_bits[i]));
            out.final_key_bits_bob.push_back(static_cast<char>('0' + bob_bits[i]));
        }
    }
    out.delta_z_hat =
        static_cast<double>(sample_errors) / static_cast<double>(out.sample_size);

    const double fidelity = cfg.eve ? fidelity_closed(cfg.eve->machine, alpha_sq)
                                    : fidelity_window().upper;
    out.key_rate_report = make_key_rate_report(fidelity, out.delta_z_hat);
    out.decision = out.key_rate_report.positive ? Decision::Continue : Decision::Abort;
    return out;
}

double expected_delta_z(const ProtocolConfig& cfg) {
    validate(cfg);
    const double cos_t = std::cos(cfg.theta1);
    double eve_term = 0.0;
    if (cfg.eve)
        eve_term = cfg.eve->interception_probability *
                   bob_qber_oracle(cfg.eve->machine, cos_t * cos_t);
    return cfg.depolarizing_noise / 2.0 + (1.0 - cfg.depolarizing_noise) * eve_term;
}

}  // namespace qkd

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qkd/bounds.hpp"
#include "qkd/cloners.hpp"

namespace qkd {

// Counter-based substream of SplitMix64. Every random decision in a run is
// drawn from a stream keyed by (seed, tag, index), so results do not depend
// on how pulses are split across workers.
class Substream {
public:
    Substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

    std::uint64_t next_u64();
    double next_unit();  // uniform in [0, 1)

private:
    std::uint64_t state_;
};

inline constexpr std::uint64_t kPulseStreamTag = 0x70756C7365ULL;    // "pulse"
inline constexpr std::uint64_t kSampleStreamTag = 0x73616D706C65ULL; // "sample"

struct EveConfig {
    CloningMachine machine;
    double interception_probability = 1.0;  // in [0, 1]; 1 clones every pulse
};

struct ProtocolConfig {
    std::uint64_t n_pulses = 0;      // >= 1
    double theta1 = 0.0;             // in (0, pi/2); alpha^2 = cos^2(theta1)
    std::optional<EveConfig> eve;
    double sample_fraction = 0.5;    // in (0, 1), share of sifted key sacrificed
    std::uint64_t seed = 0;
    double depolarizing_noise = 0.0; // in [0, 1], channel replaces qubit by I/2
};

enum class Decision { Continue, Abort };

struct ProtocolOutcome {
    std::uint64_t sifted_length = 0;
    std::uint64_t sample_size = 0;
    double delta_z_hat = 0.0;
    // Fidelity taken from the configured machine's closed form; with no Eve
    // it is pinned to fidelity_window().upper so only noise can trigger abort.
    KeyRateReport key_rate_report;
    Decision decision = Decision::Abort;
    std::string final_key_bits_alice;  // unsampled sifted remainder, '0'/'1'
    std::string final_key_bits_bob;
};

// One pass of the prepare-and-measure protocol: per pulse Alice draws a basis
// and a bit, Eve clones with the configured probability and forwards Bob's
// share, the channel depolarizes with the configured probability, Bob draws a
// basis and measures. Z-Z rounds form the sifted key; a sampled subset yields
// delta_z_hat; abort iff the estimate reaches the tolerable threshold (or no
// threshold exists). Deterministic given the seed.
ProtocolOutcome run_protocol(const ProtocolConfig& cfg);

// Analytic error-rate prediction: noise/2 + (1-noise) * p * QBER(machine).
double expected_delta_z(const ProtocolConfig& cfg);

}  // namespace qkd

#pragma once

namespace qkd {

// Every numerical tolerance used by the library lives here so tests and
// implementation cannot drift apart.
struct Tolerances {
    // state invariants
    double hermiticity = 1e-12;
    double trace_one = 1e-12;
    double norm_one = 1e-12;

    // eigenvalues of nominally positive matrices: values in [psd_floor, 0]
    // are treated as rounding noise and clamped to 0, anything below
    // psd_floor is an error
    double psd_floor = -1e-10;

    double unitarity = 1e-12;

    // agreement required between the two fidelity forms on commuting inputs
    double fidelity_agreement = 1e-10;

    // bisection interval width for window/root solving
    double bisection = 1e-9;

    // cyclic Jacobi stops when the off-diagonal norm falls below
    // jacobi_off * (1 + frobenius norm)
    double jacobi_off = 1e-14;
};

inline constexpr Tolerances tolerances{};

}  // namespace qkd

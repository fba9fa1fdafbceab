#pragma once

#include <random>
#include <utility>

#include "qkd/qstate.hpp"

namespace qkd {

// Two-qubit basis order is |00>, |01>, |10>, |11> with the first qubit as
// the slower index, matching the library-wide row-major convention.

struct PrepParams {
    // theta1 = 0 is accepted as a limit case (Bell pair) although the
    // protocol itself keeps theta1 strictly inside (0, pi/2).
    double theta1 = 0.0;
    double theta2 = 0.0;
};

CMatrix gate_hadamard();
CMatrix gate_cnot12();

// Controlled rotation: identity on the control-0 subspace, rotation by
// theta/2 with the (cos, -sin / sin, cos) sign convention on control-1.
CMatrix gate_crot(double theta);

// Real rotation taking |0> to cos(theta1)|0> + sin(theta1)|1>.
CMatrix gate_u1(double theta1);

// Applies the theta1 rotation on qubit 1, CNOT12, CROT12 with half-angle
// theta2, H1, CNOT12 to |00>. For theta2 = 0 the result is
//   (1/sqrt2) [cos(theta1)(|00>+|11>) + sin(theta1)(|01>-|10>)].
PureState prepare_alice_state(const PrepParams& p);

// |phi> = alpha|0> + beta|1>, |phi'> = alpha|1> - beta|0>, alpha = sqrt(alpha_sq).
std::pair<PureState, PureState> z_basis_states(double alpha_sq);

struct EmitResult {
    int bit;
    PureState state;
};

// Measures qubit 1 of a two-qubit state in the computational basis and
// returns the outcome together with the collapsed, renormalized second qubit.
EmitResult alice_measure_and_emit(const PureState& state, std::mt19937_64& rng);

}  // namespace qkd

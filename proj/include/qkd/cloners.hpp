#pragma once

#include <cstddef>
#include <utility>

#include "qkd/qstate.hpp"

namespace qkd {

// Symmetric 1-to-2 cloning machines. The output space is ordered
// B (Bob's forwarded copy) x E (Eve's copy) x M (machine), so subsystem
// indices are B = 0, E = 1, M = 2.
struct CloningMachine {
    enum class Kind { WoottersZurek, ModifiedBuzekHillery };

    Kind kind = Kind::WoottersZurek;
    double xi = 0.0;  // meaningful for ModifiedBuzekHillery only

    static CloningMachine wootters_zurek();

    // xi in [0, 0.5]; xi = 0 reproduces the Wootters-Zurek reduced states.
    static CloningMachine modified_buzek_hillery(double xi);

    std::size_t machine_dim() const;
};

// Isometry from the 1-qubit input to B x E x M, as a (4 * machine_dim) x 2
// matrix. The machine vectors are fixed embeddings: orthonormal basis vectors
// scaled by sqrt(1-2xi) for |Q_i> and sqrt(xi) for |Y_i>.
CMatrix machine_isometry(const CloningMachine& m);

struct CloneOutput {
    DensityOperator rho_BE;  // machine traced out
    DensityOperator rho_E;
    DensityOperator rho_B;
    DensityOperator rho_id;  // projector onto the input
};

CloneOutput clone(const CloningMachine& m, const PureState& input);

// Eve's reduced states for the two Z-basis signals at a given alpha^2.
std::pair<DensityOperator, DensityOperator> eve_state_pair(const CloningMachine& m,
                                                           double alpha_sq);

double fidelity_wz_closed(double alpha_sq);
double fidelity_bh_closed(double alpha_sq, double xi);
double fidelity_closed(const CloningMachine& m, double alpha_sq);

// Z-basis error rate Bob sees when every pulse is intercepted and cloned,
// averaged over the two signal states.
double bob_qber_oracle(const CloningMachine& m, double alpha_sq);

}  // namespace qkd

#include "qkd/distances.hpp"

#include <stdexcept>

#include "qkd/bounds.hpp"
#include "qkd/circuits.hpp"

namespace qkd {

namespace {

EfficiencyRow make_row(const CloningMachine& m, double alpha_sq, std::optional<double> xi) {
    const auto [phi, phi_prime] = z_basis_states(alpha_sq);
    const CloneOutput out = clone(m, phi);
    const CloneOutput out_prime = clone(m, phi_prime);
    const Window fw = fidelity_window();

    EfficiencyRow row;
    row.xi = xi;
    row.alpha_sq = alpha_sq;
    row.fidelity = fidelity_closed(m, alpha_sq);
    row.delta_z_upper = delta_z_threshold(row.fidelity);
    row.trace_dist_sq_bound = trace_dist_sq_upper(row.fidelity);
    row.hs_bound = hs_upper(row.fidelity);
    const double td = trace_distance(out.rho_E, out_prime.rho_E);
    row.measured_trace_dist_sq = td * td;
    row.measured_hs_e_eprime = hs_distance(out.rho_E, out_prime.rho_E);
    row.measured_hs_e_id = hs_distance(out.rho_E, out.rho_id);
    row.condition_holds = row.measured_hs_e_id <= row.measured_hs_e_eprime;
    // usable rows need alpha^2 inside the considered interval as well
    row.in_window = row.fidelity > fw.lower && row.fidelity < fw.upper && alpha_sq > 0.0 &&
                    alpha_sq < 0.5;
    return row;
}

}  // namespace

double trace_dist_sq_upper(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0))
        throw std::invalid_argument("fidelity out of range [0, 1]");
    return 1.0 - fidelity * fidelity;
}

double hs_upper(double fidelity) {
    return 2.0 * trace_dist_sq_upper(fidelity);
}

std::vector<double> default_wz_alpha() {
    // Final entry solves 4 a^2 (1 - a^2) = 0.9922, the fidelity its row is
    // quoted at; the rounded 0.456 does not reproduce the row's distance
    // bounds.
    return {0.293, 0.30, 0.35, 0.40, 0.45, 0.4558411956683607};
}

std::vector<double> default_bh_xi() {
    return {0.1, 0.2, 0.3, 0.4, 0.455};
}

std::vector<std::vector<double>> default_bh_alpha() {
    return {
        {0.241, 0.30, 0.35, 0.40, 0.445},
        {0.155, 0.20, 0.25, 0.30, 0.35, 0.40, 0.426},
        {0.001, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.39},
        {0.001, 0.05, 0.10, 0.15, 0.20, 0.25, 0.28},
        {0.001, 0.011},
    };
}

std::vector<EfficiencyRow> wz_efficiency_table(const std::vector<double>& alpha_grid) {
    const CloningMachine m = CloningMachine::wootters_zurek();
    std::vector<EfficiencyRow> rows;
    rows.reserve(alpha_grid.size());
    for (double a : alpha_grid) rows.push_back(make_row(m, a, std::nullopt));
    return rows;
}

std::vector<EfficiencyRow> bh_efficiency_table(const std::vector<double>& xi_list,
                                               const std::vector<std::vector<double>>& alpha_grid) {
    if (xi_list.size() != alpha_grid.size())
        throw std::invalid_argument("one alpha^2 grid is required per xi");
    std::vector<EfficiencyRow> rows;
    for (std::size_t i = 0; i < xi_list.size(); ++i) {
        const CloningMachine m = CloningMachine::modified_buzek_hillery(xi_list[i]);
        for (double a : alpha_grid[i]) rows.push_back(make_row(m, a, xi_list[i]));
    }
    return rows;
}

}  // namespace qkd

#pragma once

#include <optional>
#include <vector>

#include "qkd/cloners.hpp"

namespace qkd {

// Fidelity-based upper bounds on how far Eve's two reduced states can sit
// from each other. `fidelity` is the clone fidelity in the squared
// convention.
double trace_dist_sq_upper(double fidelity);  // 1 - F^2
double hs_upper(double fidelity);             // 2 (1 - F^2)

// One table row: closed-form bounds next to distances measured on the
// states the isometry actually produces.
struct EfficiencyRow {
    std::optional<double> xi;  // empty for the symmetric machine
    double alpha_sq = 0.0;
    double fidelity = 0.0;
    // Largest tolerable error rate at this fidelity; absent below the window.
    std::optional<double> delta_z_upper;
    double trace_dist_sq_bound = 0.0;
    double hs_bound = 0.0;
    double measured_trace_dist_sq = 0.0;  // D(rho_E, rho_E')^2
    double measured_hs_e_eprime = 0.0;    // D_HS(rho_E, rho_E')
    double measured_hs_e_id = 0.0;        // D_HS(rho_E, |phi><phi|)
    // Eve's copy is at least as close to the ideal as to its counterpart.
    bool condition_holds = false;
    // Fidelity strictly inside fidelity_window().
    bool in_window = false;
};

// Grids reproducing the reference tables.
std::vector<double> default_wz_alpha();
std::vector<double> default_bh_xi();
std::vector<std::vector<double>> default_bh_alpha();

std::vector<EfficiencyRow> wz_efficiency_table(const std::vector<double>& alpha_grid);

// One alpha^2 grid per xi; the two lists must have equal length.
std::vector<EfficiencyRow> bh_efficiency_table(const std::vector<double>& xi_list,
                                               const std::vector<std::vector<double>>& alpha_grid);

}  // namespace qkd

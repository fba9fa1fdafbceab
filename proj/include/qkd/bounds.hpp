#pragma once

#include <optional>

namespace qkd {

// Entropies are in bits. The coefficient `a` is in nats: the 1/ln2 prefactor
// of the modified bound converts back to bits, and only that reading
// reproduces the published validity window.

double binary_entropy(double x);

double shor_preskill_rate(double delta_x, double delta_z);

// R = 1 - h((1+F)/2) - h(delta_z)
double woodhead_rate(double fidelity, double delta_z);

// a = ln2 + ((1+F)/2) ln((1+F)/2) + ((1-F)/2) ln((1-F)/2)
double a_coefficient(double fidelity);

// (1/ln2) [a + delta_z ln(delta_z) - delta_z]; continuous limit a/ln2 at
// delta_z = 0.
double r_lb(double fidelity, double delta_z);

// (1/ln2) [a + (delta_z^2 - 1)/2.5 - delta_z]. The log inequality behind it
// holds for delta_z below kQuadraticValidityLimit; the value is still
// computed outside that range and callers flag it via quadratic_validity.
double r_lb_quadratic(double fidelity, double delta_z);

inline constexpr double kQuadraticValidityLimit = 0.305;

bool quadratic_validity(double delta_z);

// Largest tolerable error rate (2.5 - sqrt(10.25 - 10a))/2; absent when
// a(F) <= 0.4, where the bound cannot be positive for any delta_z.
std::optional<double> delta_z_threshold(double fidelity);

struct Window {
    double lower = 0.0;
    double upper = 0.0;
};

// Fidelity interval on which a positive threshold exists and the quadratic
// step stays valid: lower solves a(F) = 0.4, upper solves
// delta_z_threshold(F) = kQuadraticValidityLimit. Both roots are found by
// bisection; nothing is hard-coded.
Window fidelity_window();

// alpha^2 interval (within (0, 0.5)) where the Wootters-Zurek fidelity lies
// in the fidelity window.
Window alpha_window_wz();

// Same for the modified Buzek-Hillery machine at fixed xi. Lower end is 0
// when the alpha^2 -> 0 fidelity 4xi(1-xi) already sits above the window's
// lower edge; absent when it sits above the upper edge.
std::optional<Window> alpha_window_bh(double xi);

struct KeyRateReport {
    double fidelity = 0.0;
    double delta_z = 0.0;
    double R = 0.0;  // Woodhead rate
    double r_lb = 0.0;
    double r_lb_quadratic = 0.0;
    std::optional<double> delta_z_threshold;
    // true iff the quadratic lower bound is positive, i.e. delta_z is below
    // an existing threshold
    bool positive = false;
    bool quadratic_valid = false;
};

KeyRateReport make_key_rate_report(double fidelity, double delta_z);

}  // namespace qkd

#include "qkd/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qkd/cloners.hpp"
#include "qkd/tolerances.hpp"

namespace qkd {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double xlnx(double x) {
    return x == 0.0 ? 0.0 : x * std::log(x);
}

void check_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string(name) + " out of range [0, 1]");
}

// Bisection for monotonically increasing f with a sign change on [lo, hi].
template <typename F>
double bisect_increasing(F f, double lo, double hi) {
    if (!(f(lo) < 0.0) || !(f(hi) > 0.0))
        throw std::logic_error("bisection bracket does not enclose a root");
    while (hi - lo > tolerances.bisection) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double binary_entropy(double x) {
    check_unit_interval(x, "x");
    return -(xlnx(x) + xlnx(1.0 - x)) / kLn2;
}

double shor_preskill_rate(double delta_x, double delta_z) {
    return 1.0 - binary_entropy(delta_x) - binary_entropy(delta_z);
}

double woodhead_rate(double fidelity, double delta_z) {
    check_unit_interval(fidelity, "fidelity");
    return 1.0 - binary_entropy((1.0 + fidelity) / 2.0) - binary_entropy(delta_z);
}

double a_coefficient(double fidelity) {
    check_unit_interval(fidelity, "fidelity");
    const double u = (1.0 + fidelity) / 2.0;
    return kLn2 + xlnx(u) + xlnx(1.0 - u);
}

double r_lb(double fidelity, double delta_z) {
    check_unit_interval(delta_z, "delta_z");
    // xlnx supplies the delta_z -> 0 limit a/ln2
    return (a_coefficient(fidelity) + xlnx(delta_z) - delta_z) / kLn2;
}

double r_lb_quadratic(double fidelity, double delta_z) {
    check_unit_interval(delta_z, "delta_z");
    return (a_coefficient(fidelity) + (delta_z * delta_z - 1.0) / 2.5 - delta_z) / kLn2;
}

bool quadratic_validity(double delta_z) {
    // delta_z = 0 is included: the bound chain holds there by continuity
    return delta_z >= 0.0 && delta_z < kQuadraticValidityLimit;
}

std::optional<double> delta_z_threshold(double fidelity) {
    const double a = a_coefficient(fidelity);
    if (a <= 0.4) return std::nullopt;
    // discriminant is positive for every F since a <= ln2
    return (2.5 - std::sqrt(10.25 - 10.0 * a)) / 2.0;
}

Window fidelity_window() {
    static const Window w = [] {
        Window out;
        out.lower = bisect_increasing([](double f) { return a_coefficient(f) - 0.4; }, 0.0, 1.0);
        out.upper = bisect_increasing(
            [](double f) { return delta_z_threshold(f).value_or(0.0) - kQuadraticValidityLimit; },
            out.lower, 1.0);
        return out;
    }();
    return w;
}

Window alpha_window_wz() {
    static const Window w = [] {
        const Window fw = fidelity_window();
        Window out;
        out.lower = bisect_increasing(
            [&fw](double x) { return fidelity_wz_closed(x) - fw.lower; }, 0.0, 0.5);
        out.upper = bisect_increasing(
            [&fw](double x) { return fidelity_wz_closed(x) - fw.upper; }, 0.0, 0.5);
        return out;
    }();
    return w;
}

std::optional<Window> alpha_window_bh(double xi) {
    if (!(xi >= 0.0 && xi <= 0.5))
        throw std::invalid_argument("xi out of range [0, 0.5]");
    const Window fw = fidelity_window();
    const double base = fidelity_bh_closed(0.0, xi);  // alpha^2 -> 0 limit
    if (base >= fw.upper) return std::nullopt;

    Window out;
    out.lower = (base >= fw.lower)
                    ? 0.0
                    : bisect_increasing(
                          [&](double x) { return fidelity_bh_closed(x, xi) - fw.lower; }, 0.0, 0.5);
    out.upper = bisect_increasing(
        [&](double x) { return fidelity_bh_closed(x, xi) - fw.upper; }, 0.0, 0.5);
    return out;
}

KeyRateReport make_key_rate_report(double fidelity, double delta_z) {
    check_unit_interval(fidelity, "fidelity");
    check_unit_interval(delta_z, "delta_z");

    KeyRateReport rep;
    rep.fidelity = fidelity;
    rep.delta_z = delta_z;
    rep.R = woodhead_rate(fidelity, delta_z);
    rep.r_lb = r_lb(fidelity, delta_z);
    rep.r_lb_quadratic = r_lb_quadratic(fidelity, delta_z);
    rep.delta_z_threshold = delta_z_threshold(fidelity);
    rep.positive = rep.delta_z_threshold.has_value() && delta_z < *rep.delta_z_threshold;
    // The threshold-vs-limit comparison cannot be sharper than the window
    // root search, so it gets the same slack.
    rep.quadratic_valid = quadratic_validity(delta_z) &&
                          (!rep.delta_z_threshold.has_value() ||
                           *rep.delta_z_threshold <= kQuadraticValidityLimit + tolerances.bisection);
    return rep;
}

}  // namespace qkd

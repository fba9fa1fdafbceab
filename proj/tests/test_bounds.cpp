#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "qkd/bounds.hpp"
#include "qkd/cloners.hpp"

using namespace qkd;

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(binary_entropy(0.11) == doctest::Approx(0.499915958164528).epsilon(1e-12));
    for (double x : {0.03, 0.2, 0.41})
        CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.01), std::invalid_argument);
}

TEST_CASE("plain and fidelity-based rates") {
    // symmetric error rate of 11% barely keeps the plain rate positive
    CHECK(shor_preskill_rate(0.11, 0.11) == doctest::Approx(0.000168083670944).epsilon(1e-9));
    CHECK(shor_preskill_rate(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

    // woodhead rate equals the plain rate with delta_x replaced by (1+F)/2
    CHECK(woodhead_rate(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(woodhead_rate(0.9, 0.05) ==
          doctest::Approx(1.0 - binary_entropy(0.95) - binary_entropy(0.05)).epsilon(1e-14));
}

TEST_CASE("nats coefficient of the modified bound") {
    CHECK(a_coefficient(1.0) == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
    CHECK(a_coefficient(0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(a_coefficient(0.8281) == doctest::Approx(0.40008110143375436).epsilon(1e-12));
    CHECK(a_coefficient(0.5) == doctest::Approx(0.130812035941137).epsilon(1e-10));
}

TEST_CASE("modified lower bound and its quadratic form") {
    // delta_z -> 0 limit is a / ln2
    for (double f : {0.85, 0.9, 0.95})
        CHECK(r_lb(f, 0.0) == doctest::Approx(a_coefficient(f) / std::numbers::ln2).epsilon(1e-14));

    // spot value against the formula written out longhand
    const double f = 0.9, dz = 0.1;
    const double a = a_coefficient(f);
    CHECK(r_lb(f, dz) ==
          doctest::Approx((a + dz * std::log(dz) - dz) / std::numbers::ln2).epsilon(1e-14));
    CHECK(r_lb_quadratic(f, dz) ==
          doctest::Approx((a + (dz * dz - 1.0) / 2.5 - dz) / std::numbers::ln2).epsilon(1e-14));

    CHECK_THROWS_AS(r_lb(0.9, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(r_lb(1.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(r_lb_quadratic(0.9, 1.0001), std::invalid_argument);
}

TEST_CASE("quadratic validity range") {
    CHECK(quadratic_validity(0.0));  // limit case
    CHECK(quadratic_validity(0.1));
    CHECK(quadratic_validity(0.3049));
    CHECK_FALSE(quadratic_validity(0.305));
    CHECK_FALSE(quadratic_validity(0.5));
    CHECK_FALSE(quadratic_validity(-0.001));
}

TEST_CASE("tolerable error threshold") {
    CHECK_FALSE(delta_z_threshold(0.5).has_value());
    CHECK_FALSE(delta_z_threshold(0.8280).has_value());

    CHECK(delta_z_threshold(0.8976).value() == doctest::Approx(0.09470096383656101).epsilon(1e-12));
    CHECK(delta_z_threshold(0.96).value() == doctest::Approx(0.21330822719601605).epsilon(1e-12));
    CHECK(delta_z_threshold(0.84).value() == doctest::Approx(0.01446).epsilon(1e-5));
    // the threshold of the exact fidelity behind the 0.9923 rows
    CHECK(delta_z_threshold(fidelity_bh_closed(0.39, 0.3)).value() ==
          doctest::Approx(0.30498367735466936).epsilon(1e-12));

    // the bound vanishes exactly at the threshold (algebraic root)
    for (double f : {0.85, 0.9, 0.95, 0.99})
        CHECK(std::abs(r_lb_quadratic(f, delta_z_threshold(f).value())) < 1e-12);
}

TEST_CASE("bound ordering on the valid region") {
    for (int i = 1; i <= 20; ++i) {
        const Window fw = fidelity_window();
        const double f = fw.lower + i * (fw.upper - fw.lower) / 21.0;
        const double dz1 = delta_z_threshold(f).value();
        for (int j = 1; j <= 20; ++j) {
            const double dz = dz1 * j / 21.0;
            const double quad = r_lb_quadratic(f, dz);
            const double lb = r_lb(f, dz);
            const double full = woodhead_rate(f, dz);
            CHECK(quad > 0.0);
            CHECK(quad <= lb + 1e-12);
            CHECK(lb <= full + 1e-12);
        }
    }
}

TEST_CASE("scalar log inequalities behind the chain") {
    // delta ln delta >= (delta^2 - 1)/2.5 on (0, 0.305)
    for (int k = 1; k <= 1000; ++k) {
        const double d = kQuadraticValidityLimit * k / 1001.0;
        CHECK(d * std::log(d) >= (d * d - 1.0) / 2.5);
    }
    // (1 - delta) ln(1 - delta) >= -delta on (0, 1)
    for (int k = 1; k <= 1000; ++k) {
        const double d = k / 1001.0;
        CHECK((1.0 - d) * std::log(1.0 - d) >= -d);
    }
}

TEST_CASE("fidelity window from bisection") {
    const Window w = fidelity_window();
    CHECK(w.lower == doctest::Approx(0.8280313834).epsilon(1e-7));
    CHECK(w.upper == doctest::Approx(0.9922604465).epsilon(1e-7));
    // residuals prove the endpoints are genuine roots, not constants
    CHECK(std::abs(a_coefficient(w.lower) - 0.4) < 1e-8);
    CHECK(std::abs(delta_z_threshold(w.upper).value() - kQuadraticValidityLimit) < 1e-8);
}

TEST_CASE("alpha windows for both machines") {
    const Window wz = alpha_window_wz();
    CHECK(wz.lower == doctest::Approx(0.2926545054).epsilon(1e-7));
    CHECK(wz.upper == doctest::Approx(0.4560126340).epsilon(1e-7));

    const Window fw = fidelity_window();
    CHECK(std::abs(fidelity_wz_closed(wz.lower) - fw.lower) < 1e-8);
    CHECK(std::abs(fidelity_wz_closed(wz.upper) - fw.upper) < 1e-8);

    const auto w01 = alpha_window_bh(0.1);
    REQUIRE(w01.has_value());
    CHECK(w01->lower == doctest::Approx(0.2408181312).epsilon(1e-7));
    CHECK(w01->upper == doctest::Approx(0.4450157932).epsilon(1e-7));

    const auto w02 = alpha_window_bh(0.2);
    REQUIRE(w02.has_value());
    CHECK(w02->lower == doctest::Approx(0.1544241752).epsilon(1e-7));
    CHECK(w02->upper == doctest::Approx(0.4266877244).epsilon(1e-7));

    // baseline fidelity 4 xi (1 - xi) already above the window's lower edge:
    // every small alpha^2 works, so the lower endpoint is pinned to 0
    const auto w03 = alpha_window_bh(0.3);
    REQUIRE(w03.has_value());
    CHECK(w03->lower == 0.0);
    CHECK(w03->upper == doctest::Approx(0.3900315868).epsilon(1e-7));

    const auto w0455 = alpha_window_bh(0.455);
    REQUIRE(w0455.has_value());
    CHECK(w0455->lower == 0.0);
    CHECK(w0455->upper == doctest::Approx(0.0112512).epsilon(1e-4));

    // baseline above the upper edge: no usable alpha^2 at all
    CHECK_FALSE(alpha_window_bh(0.49).has_value());

    CHECK_THROWS_AS(alpha_window_bh(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(alpha_window_bh(0.6), std::invalid_argument);
}

TEST_CASE("key rate report assembles the decision inputs") {
    const KeyRateReport pos = make_key_rate_report(0.96, 0.1);
    CHECK(pos.fidelity == 0.96);
    CHECK(pos.delta_z == 0.1);
    CHECK(pos.delta_z_threshold.has_value());
    CHECK(pos.positive);
    CHECK(pos.quadratic_valid);
    CHECK(pos.r_lb_quadratic > 0.0);
    CHECK(pos.r_lb_quadratic <= pos.r_lb + 1e-12);
    CHECK(pos.r_lb <= pos.R + 1e-12);

    const KeyRateReport high_err = make_key_rate_report(0.96, 0.3);
    CHECK_FALSE(high_err.positive);  // 0.3 above the 0.2133 threshold
    CHECK(high_err.r_lb_quadratic < 0.0);

    const KeyRateReport no_thr = make_key_rate_report(0.5, 0.01);
    CHECK_FALSE(no_thr.delta_z_threshold.has_value());
    CHECK_FALSE(no_thr.positive);

    // window-edge fidelity with a clean sample: valid despite the threshold
    // sitting a bisection-width above the limit
    const KeyRateReport edge = make_key_rate_report(fidelity_window().upper, 0.0);
    CHECK(edge.positive);
    CHECK(edge.quadratic_valid);

    // fidelity above the window: threshold exists but the quadratic
    // derivation no longer applies there
    const KeyRateReport beyond = make_key_rate_report(1.0, 0.1);
    CHECK(beyond.delta_z_threshold.value() > kQuadraticValidityLimit);
    CHECK_FALSE(beyond.quadratic_valid);

    CHECK_THROWS_AS(make_key_rate_report(1.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_key_rate_report(0.9, -0.1), std::invalid_argument);
}

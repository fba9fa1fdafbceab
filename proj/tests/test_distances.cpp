#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "qkd/bounds.hpp"
#include "qkd/distances.hpp"

using namespace qkd;

TEST_CASE("fidelity-based distance caps") {
    CHECK(trace_dist_sq_upper(1.0) == 0.0);
    CHECK(hs_upper(1.0) == 0.0);
    CHECK(trace_dist_sq_upper(0.8286) == doctest::Approx(0.3134).epsilon(1e-3));
    // at the window's lower edge the trace distance can reach sqrt(0.31425)
    CHECK(trace_dist_sq_upper(0.8281) == doctest::Approx(0.31425).epsilon(1e-4));
    CHECK(std::sqrt(trace_dist_sq_upper(0.8281)) == doctest::Approx(0.56058).epsilon(1e-4));
    CHECK(hs_upper(0.9602) == doctest::Approx(0.1562).epsilon(1e-3));
    for (double f : {0.1, 0.5, 0.9})
        CHECK(hs_upper(f) == doctest::Approx(2.0 * trace_dist_sq_upper(f)).epsilon(1e-14));
    CHECK_THROWS_AS(trace_dist_sq_upper(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(hs_upper(1.1), std::invalid_argument);
}

TEST_CASE("reference grids have the published shapes") {
    CHECK(default_wz_alpha().size() == 6);
    CHECK(default_bh_xi().size() == 5);
    std::size_t rows = 0;
    for (const auto& g : default_bh_alpha()) rows += g.size();
    CHECK(rows == 30);
    CHECK(default_bh_alpha().size() == default_bh_xi().size());
}

TEST_CASE("symmetric-machine table rows") {
    const auto rows = wz_efficiency_table(default_wz_alpha());
    REQUIRE(rows.size() == 6);

    for (const EfficiencyRow& r : rows) {
        CHECK_FALSE(r.xi.has_value());
        CHECK(r.in_window);
        CHECK(r.hs_bound == doctest::Approx(2.0 * r.trace_dist_sq_bound).epsilon(1e-14));
        // measured distances respect the closed-form caps
        CHECK(r.measured_trace_dist_sq <= r.trace_dist_sq_bound + 1e-12);
        CHECK(r.measured_hs_e_eprime <= 2.0 * r.measured_trace_dist_sq + 1e-12);
    }

    CHECK(rows[0].fidelity == doctest::Approx(0.8286).epsilon(1e-3));
    CHECK(rows[0].trace_dist_sq_bound == doctest::Approx(0.3134).epsilon(1e-3));
    CHECK(rows[0].hs_bound == doctest::Approx(0.6268).epsilon(1e-3));
    CHECK(rows[2].fidelity == doctest::Approx(0.91).epsilon(1e-10));
    // final row is pinned to the fidelity its published bounds imply
    CHECK(rows[5].fidelity == doctest::Approx(0.9922).epsilon(1e-10));
    CHECK(rows[5].hs_bound == doctest::Approx(0.0311).epsilon(1e-3));
}

TEST_CASE("imposed closeness condition is checked, not assumed") {
    // the known violating configuration
    const auto rows = wz_efficiency_table({0.4});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].measured_hs_e_id == doctest::Approx(0.48).epsilon(1e-10));
    CHECK(rows[0].measured_hs_e_eprime == doctest::Approx(0.08).epsilon(1e-10));
    CHECK_FALSE(rows[0].condition_holds);

    // near a basis state the clone is essentially ideal and it holds
    const auto edge = wz_efficiency_table({0.999999});
    CHECK(edge[0].condition_holds);
    CHECK_FALSE(edge[0].in_window);

    // fully mixing machine: eve's two states coincide, the ideal is far away
    const auto mixed = bh_efficiency_table({0.5}, {{0.3}});
    CHECK(mixed[0].measured_hs_e_eprime == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mixed[0].measured_hs_e_id > 0.0);
    CHECK_FALSE(mixed[0].condition_holds);
}

TEST_CASE("asymmetric-machine table rows") {
    const auto rows = bh_efficiency_table(default_bh_xi(), default_bh_alpha());
    REQUIRE(rows.size() == 30);

    for (const EfficiencyRow& r : rows) {
        REQUIRE(r.xi.has_value());
        CHECK(r.in_window);
        REQUIRE(r.delta_z_upper.has_value());
        CHECK(*r.delta_z_upper > 0.0);
        CHECK(*r.delta_z_upper < kQuadraticValidityLimit + 1e-9);
        CHECK(r.measured_trace_dist_sq <= r.trace_dist_sq_bound + 1e-12);
        CHECK(r.measured_hs_e_eprime <= 2.0 * r.measured_trace_dist_sq + 1e-12);
    }

    CHECK(rows[0].fidelity == doctest::Approx(0.8283).epsilon(1e-3));
    CHECK(rows[0].delta_z_upper.value() == doctest::Approx(0.0003).epsilon(1e-2));
    // same fidelity rows across xi blocks agree cell-for-cell
    // (xi=0.2, alpha^2=0.30) and (xi=0.3, alpha^2=0.20) share F = 0.9424
    CHECK(rows[8].fidelity == doctest::Approx(rows[16].fidelity).epsilon(1e-12));
    CHECK(rows[8].delta_z_upper.value() ==
          doctest::Approx(rows[16].delta_z_upper.value()).epsilon(1e-12));
}

TEST_CASE("rows outside the analysis interval are flagged") {
    const auto half = wz_efficiency_table({0.5});
    CHECK_FALSE(half[0].in_window);  // fidelity 1 sits above the window

    // fidelity back inside the window but alpha^2 beyond the symmetric range
    const auto mirrored = wz_efficiency_table({0.6});
    CHECK(mirrored[0].fidelity == doctest::Approx(0.96).epsilon(1e-12));
    CHECK_FALSE(mirrored[0].in_window);

    const auto below = wz_efficiency_table({0.1});
    CHECK_FALSE(below[0].in_window);  // fidelity 0.36 below the window
}

TEST_CASE("table generators validate their inputs") {
    CHECK_THROWS_AS(wz_efficiency_table({1.5}), std::invalid_argument);
    CHECK_THROWS_AS(wz_efficiency_table({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(bh_efficiency_table({0.1, 0.2}, {{0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(bh_efficiency_table({0.6}, {{0.3}}), std::invalid_argument);
}

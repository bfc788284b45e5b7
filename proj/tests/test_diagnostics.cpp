#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dflux/diagnostics.hpp"

using namespace dflux;

TEST_CASE("geometric offsets and fit windows") {
    const std::vector<double> offsets = geometric_offsets(0.01, 1.0, 5);
    REQUIRE(offsets.size() == 5);
    CHECK(offsets.front() == 0.01);
    CHECK(offsets.back() == 1.0);
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        CHECK(offsets[i] / offsets[i - 1] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(geometric_offsets(1.0, 0.5, 4), Error);

    // preferred window when it spans a decade, widened otherwise, empty when
    // even the widened window is too narrow
    const auto preferred = modulus_fit_offsets(0.001, 1.0, 4);
    CHECK(preferred.front() == doctest::Approx(0.004));
    CHECK(preferred.back() == doctest::Approx(0.125));
    const auto widened = modulus_fit_offsets(0.01, 1.0, 4);
    CHECK(widened.front() == doctest::Approx(0.01));
    CHECK(widened.back() == doctest::Approx(0.5));
    CHECK(modulus_fit_offsets(0.1, 1.0, 4).empty());
}

TEST_CASE("l1 distance between reconstructions") {
    const ProblemSpec p = builtin_problem("twoflux-convex");
    const LatticeSpec coarse = build_lattice(-1.0, 1.0, 0.02, 0.1, p.flux, 0.2);
    const LatticeSpec fine = build_lattice(-1.0, 1.0, 0.01, 0.1, p.flux, 0.2);
    const StaggeredTrajectory tc = run(p, coarse);
    const StaggeredTrajectory tf = run(p, fine);
    CHECK(l1_distance_at_time(tc, tc, 0.15) == 0.0);
    const double d = l1_distance_at_time(tc, tf, 0.15);
    CHECK(d > 0.0);
    CHECK(d < 0.2);
    CHECK(l1_distance_at_time(tc, tf, 0.15) == l1_distance_at_time(tf, tc, 0.15));
}

TEST_CASE("refinement ladder: single entry degenerates to unit ratios") {
    const RefinementLadder ladder = run_refinement_ladder(
        builtin_problem("twoflux-convex"), -1.0, 1.0, 0.1, 0.4, {80}, WeightFunction::unit());
    REQUIRE(ladder.rows.size() == 1);
    CHECK(ladder.band_ratio_dissipation == 1.0);
    CHECK(ladder.band_ratio_psi_mass == 1.0);
    CHECK(ladder.rows[0].l1_to_finest == 0.0);
    CHECK(ladder.note.empty());
}

TEST_CASE("refinement ladder: l1 distance to finest decreases") {
    const RefinementLadder ladder =
        run_refinement_ladder(builtin_problem("burgers-riemann"), -1.0, 1.0, 0.1, 0.4,
                              {50, 100, 200, 400}, WeightFunction::unit());
    REQUIRE(ladder.rows.size() == 4);
    for (std::size_t i = 1; i + 1 < ladder.rows.size(); ++i) {
        CHECK(ladder.rows[i].l1_to_finest < ladder.rows[i - 1].l1_to_finest);
    }
    CHECK(ladder.bands_within_factor(10.0));
}

TEST_CASE("refinement ladder: memory budget truncates with a note") {
    // ~16 MB budget: the 3000-cell level needs ~62 MB once inflated
    const RefinementLadder ladder = run_refinement_ladder(
        builtin_problem("twoflux-convex"), -1.0, 1.0, 0.1, 0.4, {60, 120, 3000},
        WeightFunction::unit(), 6, std::size_t(16) << 20);
    CHECK(ladder.rows.size() == 2);
    CHECK(!ladder.note.empty());
    // an infeasible first level still throws
    CHECK_THROWS_AS(run_refinement_ladder(builtin_problem("twoflux-convex"), -1.0, 1.0, 0.1,
                                          0.4, {3000}, WeightFunction::unit(), 6,
                                          std::size_t(16) << 20),
                    LatticeError);
    // non-increasing ladders are rejected
    CHECK_THROWS_AS(run_refinement_ladder(builtin_problem("twoflux-convex"), -1.0, 1.0, 0.1,
                                          0.4, {100, 100}, WeightFunction::unit()),
                    Error);
}

TEST_CASE("diagnostics report carries statuses for every enabled group") {
    const ProblemSpec p = builtin_problem("twoflux-traffic");
    const LatticeSpec lat = build_lattice(-1.0, 1.0, 0.01, 0.1, p.flux, 0.5);
    const StaggeredTrajectory traj = run(p, lat);
    DiagnosticsOptions options;
    options.weights = {WeightFunction::unit()};
    const DiagnosticsReport report = run_diagnostics(traj, options);

    CHECK_FALSE(report.has_failures());
    bool gamma_skipped = false;
    bool finite_status = false;
    for (const auto& [name, status] : report.statuses) {
        if (name == "gamma_lower_bound") gamma_skipped = status == "SKIPPED";
        if (name == "report_finite") finite_status = status == "PASS";
    }
    CHECK(gamma_skipped);
    CHECK(finite_status);
    CHECK(report.scalar("u_max") <= 1.0 + 1e-15);
    CHECK(std::isfinite(report.scalar("identity_spatial_1_unit")));
}

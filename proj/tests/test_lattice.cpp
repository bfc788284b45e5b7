#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "dflux/lattice.hpp"

using namespace dflux;

namespace {

FluxSpec flux_with_lipschitz(double lip) {
    FluxSpec flux;
    flux.f = [](double, double u) { return u; };
    flux.df_du = [](double, double) { return 1.0; };
    flux.df_dk = [](double, double) { return 0.0; };
    flux.du_lipschitz = lip;
    return flux;
}

LatticeSpec tiny_window_spec(int j_min, int j_max) {
    LatticeSpec spec;
    spec.dx = 1.0;
    spec.dt = 0.5;
    spec.lambda = 0.5;
    spec.kappa = 0.5;
    spec.j_min = j_min;
    spec.j_max = j_max;
    spec.n_max = 4;
    return spec;
}

} // namespace

TEST_CASE("time step comes from the CFL bound") {
    const LatticeSpec a = build_lattice(-1.0, 1.0, 0.01, 0.1, flux_with_lipschitz(1.0), 0.5);
    CHECK(a.dt == doctest::Approx(0.009).epsilon(1e-12));
    CHECK(a.lambda == doctest::Approx(0.9).epsilon(1e-12));

    const LatticeSpec b = build_lattice(-1.0, 1.0, 0.01, 0.5, flux_with_lipschitz(2.0), 0.5);
    CHECK(b.lambda == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("inadmissible parameters are rejected") {
    CHECK_THROWS_AS(build_lattice(-1.0, 1.0, 0.01, 1.0, flux_with_lipschitz(1.0), 0.5),
                    LatticeError);
    CHECK_THROWS_AS(build_lattice(-1.0, 1.0, 0.01, 1.5, flux_with_lipschitz(1.0), 0.5),
                    LatticeError);
    CHECK_THROWS_AS(build_lattice(-1.0, 1.0, 0.01, 0.1, flux_with_lipschitz(0.0), 0.5),
                    LatticeError);
    // memory budget: absurdly small cap
    CHECK_THROWS_AS(build_lattice(-1.0, 1.0, 1e-5, 0.1, flux_with_lipschitz(1.0), 0.5, 1024),
                    LatticeError);
}

TEST_CASE("lambda is clipped into the comparability range") {
    // tiny Lipschitz constant would give lambda = 90; the clip caps it at 10
    const LatticeSpec spec = build_lattice(-1.0, 1.0, 0.01, 0.1, flux_with_lipschitz(0.01), 0.5);
    CHECK(spec.lambda == doctest::Approx(10.0));
    CHECK(spec.lambda * 0.01 <= 1.0 - spec.kappa + 1e-15);
    // large Lipschitz constant cannot satisfy CFL with lambda >= 0.1
    CHECK_THROWS_AS(build_lattice(-1.0, 1.0, 0.01, 0.1, flux_with_lipschitz(20.0), 0.5),
                    LatticeError);
}

TEST_CASE("sublattices partition the window by parity") {
    const LatticeSpec spec = tiny_window_spec(-2, 2);
    CHECK(sublattice(0, spec) == std::vector<int>{-2, 0, 2});
    CHECK(sublattice_complement(0, spec) == std::vector<int>{-1, 1});
    CHECK(sublattice(1, spec) == std::vector<int>{-1, 1});
    CHECK(sublattice(2, spec) == std::vector<int>{-2, 0, 2});
}

TEST_CASE("partition property over random windows") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> half(2, 40);
    std::uniform_int_distribution<int> level(0, 13);
    for (int trial = 0; trial < 100; ++trial) {
        const int j_max = 2 * half(rng);
        const LatticeSpec spec = tiny_window_spec(-j_max, j_max);
        const int n = level(rng);
        const auto even = sublattice(n, spec);
        const auto odd = sublattice_complement(n, spec);
        CHECK(even.size() + odd.size() ==
              static_cast<std::size_t>(spec.j_max - spec.j_min + 1));
        for (int j : even) CHECK((j + n) % 2 == 0);
        for (int j : odd) CHECK(((j + n) % 2 + 2) % 2 == 1);
        std::vector<int> merged;
        std::merge(even.begin(), even.end(), odd.begin(), odd.end(),
                   std::back_inserter(merged));
        for (std::size_t i = 0; i < merged.size(); ++i) {
            CHECK(merged[i] == spec.j_min + static_cast<int>(i));
        }
    }
}

TEST_CASE("CFL invariant holds for every built lattice") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dx_dist(1e-4, 0.1);
    std::uniform_real_distribution<double> kappa_dist(0.01, 0.99);
    std::uniform_real_distribution<double> lip_dist(0.05, 8.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double dx = dx_dist(rng);
        const double kappa = kappa_dist(rng);
        const double lip = lip_dist(rng);
        try {
            const LatticeSpec spec =
                build_lattice(-1.0, 1.0, dx, kappa, flux_with_lipschitz(lip), 0.1);
            CHECK(spec.lambda * lip <= 1.0 - kappa + 1e-12);
            CHECK(spec.lambda >= kLambdaMin);
            CHECK(spec.lambda <= kLambdaMax);
            CHECK(spec.j_min * spec.dx <= -1.0 - (spec.n_max + 2) * spec.dx);
            CHECK(spec.j_max * spec.dx >= 1.0 + (spec.n_max + 2) * spec.dx);
            CHECK(spec.j_min % 2 == 0);
            CHECK(spec.j_max % 2 == 0);
        } catch (const LatticeError&) {
            // infeasible CFL within the clip range is a legal rejection
            CHECK(lip > 10.0 * (1.0 - kappa) - 1e-12);
        }
    }
}

TEST_CASE("staggered field pads and parity") {
    Eigen::ArrayXd values(3);
    values << 5.0, 6.0, 5.0;
    const StaggeredField field(0, -2, values, 5.0, 5.0);
    CHECK(field.value(-2) == 5.0);
    CHECK(field.value(0) == 6.0);
    CHECK(field.value(2) == 5.0);
    CHECK(field.value(-100) == 5.0);
    CHECK(field.value(100) == 5.0);
    CHECK(field.padding_intact());
    CHECK(field.j_last() == 2);
    CHECK_THROWS_AS(StaggeredField(0, -1, values, 0.0, 0.0), LatticeError);

    const StaggeredField broken(0, -2, values, 5.0, 4.0);
    CHECK_FALSE(broken.padding_intact());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dflux/entropy.hpp"
#include "dflux/summation.hpp"

using namespace dflux;

namespace {

StaggeredTrajectory solve(const ProblemSpec& p, int cells, double T, double kappa = 0.1) {
    const double dx = 2.0 / cells;
    const LatticeSpec lat = build_lattice(-1.0, 1.0, dx, kappa, p.flux, T);
    return run(p, lat);
}

} // namespace

TEST_CASE("entropy constants are assembled from the sup-norm expressions") {
    const ProblemSpec p = builtin_problem("twoflux-convex");
    const LatticeSpec lat = build_lattice(-1.0, 1.0, 0.01, 0.1, p.flux, 0.2);
    const EntropyConstants c = assemble_entropy_constants(p, lat);
    const double lambda = lat.lambda;
    const SupNorms& n = p.norms;
    const double end_value = 0.5 * lambda * n.dS_du * n.df_dk + 0.5 * n.dS_dk +
                             0.5 * lambda * n.dQ_dk;
    const double path_slope = 0.5 * lambda * (p.b - p.a) * n.d2S_duu * n.df_dk;
    CHECK(c.diss_coeff_kx == doctest::Approx(path_slope + end_value).epsilon(1e-15));
    CHECK(c.diss_coeff_kt == n.dS_dk);
    CHECK(c.K2 == n.d2S_duu);
    CHECK(c.K3 == doctest::Approx(path_slope + end_value + 0.5 * n.dS_dk).epsilon(1e-15));
    CHECK(c.K4 == n.dS_dk);
    CHECK(c.gamma == p.entropy.d2S_duu_lower);
    CHECK(c.kappa == lat.kappa);
}

TEST_CASE("entropy production vanishes on constant states") {
    ProblemSpec p = builtin_problem("twoflux-convex");
    p.coefficient = CoefficientSpec::constant(1.5);
    p.init = InitialDataSpec::constant(0.3);
    const StaggeredTrajectory traj = solve(p, 50, 0.2);
    for (int n = 0; n <= traj.lattice.n_max; ++n) {
        const EntropyProductionField psi = entropy_production(traj, p.entropy, n);
        CHECK(psi.values.abs().maxCoeff() == 0.0);
    }
}

TEST_CASE("entropy production is dissipative for constant k and convex S") {
    const ProblemSpec p = builtin_problem("burgers-riemann");
    const StaggeredTrajectory traj = solve(p, 100, 0.3);
    double max_psi = -1.0;
    for (int n = 0; n <= traj.lattice.n_max; ++n) {
        const EntropyProductionField psi = entropy_production(traj, p.entropy, n);
        max_psi = std::max(max_psi, psi.values.maxCoeff());
    }
    CHECK(max_psi <= 1e-15);
}

TEST_CASE("entropy balance reconstructs the stored entropy") {
    const ProblemSpec p = builtin_problem("moving-jump");
    const StaggeredTrajectory traj = solve(p, 60, 0.25);
    const double half_lambda = 0.5 * traj.lattice.lambda;
    for (int n = 0; n <= traj.lattice.n_max; n += 3) {
        const EntropyProductionField psi = entropy_production(traj, p.entropy, n);
        for (int j = psi.j_first; j <= psi.j_last(); j += 2) {
            const double s_m = p.entropy.S(traj.k(n, j - 1), traj.u(n, j - 1));
            const double s_p = p.entropy.S(traj.k(n, j + 1), traj.u(n, j + 1));
            const double q_m = p.entropy.Q(traj.k(n, j - 1), traj.u(n, j - 1));
            const double q_p = p.entropy.Q(traj.k(n, j + 1), traj.u(n, j + 1));
            const double rebuilt =
                psi.value(j) + 0.5 * (s_m + s_p) - half_lambda * (q_p - q_m);
            const double stored = p.entropy.S(traj.k(n + 1, j), traj.u(n + 1, j));
            CHECK(rebuilt == doctest::Approx(stored).epsilon(1e-13));
        }
    }
}

TEST_CASE("single coefficient jump with constant state obeys the absolute bound") {
    ProblemSpec p = builtin_problem("twoflux-convex");
    p.init = InitialDataSpec::constant(0.4);
    const StaggeredTrajectory traj = solve(p, 60, 0.02); // level 0 still constant in u
    const EntropyConstants c = assemble_entropy_constants(p, traj.lattice);
    const EntropyProductionField psi = entropy_production(traj, p.entropy, 0);
    for (int j = psi.j_first; j <= psi.j_last(); j += 2) {
        const double dk_x = std::abs(traj.k(0, j + 1) - traj.k(0, j - 1));
        const double dk_half =
            std::abs(traj.k(1, j) - 0.5 * (traj.k(0, j - 1) + traj.k(0, j + 1)));
        const double rhs = c.K3 * dk_x + c.K4 * dk_half; // dU = 0 at level 0
        CHECK(std::abs(psi.value(j)) <= rhs + 1e-15);
    }
}

TEST_CASE("both cell-wise bounds hold on every built-in problem") {
    for (const char* name :
         {"burgers-riemann", "twoflux-convex", "twoflux-traffic", "moving-jump"}) {
        const ProblemSpec p = builtin_problem(name);
        const StaggeredTrajectory traj = solve(p, 80, 0.3);
        const DissipationCheck check =
            check_dissipation_bounds(traj, p.entropy, p.entropy.d2S_duu_lower);
        INFO(name);
        CHECK(check.violations_abs == 0);
        CHECK(check.violations_dissipation == 0);
        CHECK(check.worst_margin_abs >= -1e-12 * check.scale);
    }
}

TEST_CASE("weighted sums vanish on constant trajectories") {
    ProblemSpec p = builtin_problem("twoflux-traffic");
    p.coefficient = CoefficientSpec::constant(1.0);
    p.init = InitialDataSpec::constant(0.0);
    const StaggeredTrajectory traj = solve(p, 50, 0.2);
    const DissipationSums sums = weighted_dissipation_sum(traj, WeightFunction::unit(), 0.2);
    CHECK(sums.spatial == 0.0);
    CHECK(sums.temporal == 0.0);
    CHECK(psi_weighted_mass(traj, p.entropy, WeightFunction::unit(), 0.2) == 0.0);
}

TEST_CASE("unit weight dominates the decay weight") {
    const ProblemSpec p = builtin_problem("twoflux-convex");
    const StaggeredTrajectory traj = solve(p, 80, 0.3);
    const DissipationSums unit = weighted_dissipation_sum(traj, WeightFunction::unit(), 0.3);
    const DissipationSums decay =
        weighted_dissipation_sum(traj, WeightFunction::rational_decay(1.0), 0.3);
    CHECK(unit.spatial >= decay.spatial);
    CHECK(unit.temporal >= decay.temporal);
    CHECK(psi_weighted_mass(traj, p.entropy, WeightFunction::unit(), 0.3) >=
          psi_weighted_mass(traj, p.entropy, WeightFunction::rational_decay(1.0), 0.3));
}

TEST_CASE("sums are monotone in the horizon") {
    const ProblemSpec p = builtin_problem("twoflux-convex");
    const StaggeredTrajectory traj = solve(p, 80, 0.4);
    const WeightFunction chi = WeightFunction::rational_decay(1.0);
    double prev_spatial = 0.0;
    double prev_mass = 0.0;
    for (double t : {0.1, 0.2, 0.3, 0.4}) {
        const DissipationSums sums = weighted_dissipation_sum(traj, chi, t);
        const double mass = psi_weighted_mass(traj, p.entropy, chi, t);
        CHECK(sums.spatial >= prev_spatial);
        CHECK(mass >= prev_mass);
        prev_spatial = sums.spatial;
        prev_mass = mass;
    }
}

TEST_CASE("psi mass equals the signed sum when dissipation has one sign") {
    const ProblemSpec p = builtin_problem("burgers-riemann"); // k const, S convex
    const StaggeredTrajectory traj = solve(p, 80, 0.3);
    const WeightFunction chi = WeightFunction::unit();
    const double mass = psi_weighted_mass(traj, p.entropy, chi, 0.3);
    CompensatedSum signed_sum;
    for (int n = 0; n <= traj.lattice.n_max; ++n) {
        const EntropyProductionField psi = entropy_production(traj, p.entropy, n);
        for (int j = psi.j_first; j <= psi.j_last(); j += 2) signed_sum += psi.value(j);
    }
    CHECK(mass == doctest::Approx(-traj.lattice.dx * signed_sum.value()).epsilon(1e-12));
}

#include "dflux/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dflux/summation.hpp"

namespace dflux {

EntropyConstants assemble_entropy_constants(const ProblemSpec& problem,
                                            const LatticeSpec& lattice) {
    const SupNorms& norms = problem.norms;
    const double lambda = lattice.lambda;
    const double range = problem.b - problem.a;

    const double end_value_coeff = 0.5 * lambda * norms.dS_du * norms.df_dk +
                                   0.5 * norms.dS_dk + 0.5 * lambda * norms.dQ_dk;
    const double path_slope_coeff = 0.5 * lambda * range * norms.d2S_duu * norms.df_dk;

    EntropyConstants constants;
    constants.gamma = problem.entropy.d2S_duu_lower;
    constants.kappa = lattice.kappa;
    constants.diss_coeff_kx = path_slope_coeff + end_value_coeff;
    constants.diss_coeff_kt = norms.dS_dk;
    constants.K2 = norms.d2S_duu;
    constants.K3 = path_slope_coeff + end_value_coeff + 0.5 * norms.dS_dk;
    constants.K4 = norms.dS_dk;
    return constants;
}

EntropyProductionField entropy_production(const StaggeredTrajectory& traj,
                                          const EntropyPairSpec& pair, int n) {
    if (n < 0 || n > traj.lattice.n_max) {
        throw NumericsError("entropy production level outside 0..N");
    }
    const std::vector<int> indices = sublattice_complement(n, traj.lattice);
    EntropyProductionField field;
    field.level = n;
    field.j_first = indices.front();
    field.values.resize(static_cast<Eigen::Index>(indices.size()));
    const double half_lambda = 0.5 * traj.lattice.lambda;

    for (std::size_t idx = 0; idx < indices.size(); ++idx) {
        const int j = indices[idx];
        const double s_next = pair.S(traj.k(n + 1, j), traj.u(n + 1, j));
        const double s_minus = pair.S(traj.k(n, j - 1), traj.u(n, j - 1));
        const double s_plus = pair.S(traj.k(n, j + 1), traj.u(n, j + 1));
        const double q_minus = pair.Q(traj.k(n, j - 1), traj.u(n, j - 1));
        const double q_plus = pair.Q(traj.k(n, j + 1), traj.u(n, j + 1));
        field.values[static_cast<Eigen::Index>(idx)] =
            s_next - 0.5 * (s_minus + s_plus) + half_lambda * (q_plus - q_minus);
    }
    return field;
}

DissipationCheck check_dissipation_bounds(const StaggeredTrajectory& traj,
                                          const EntropyPairSpec& pair, double gamma,
                                          double tolerance_scale) {
    const LatticeSpec& lat = traj.lattice;
    EntropyConstants constants = assemble_entropy_constants(traj.problem, lat);
    constants.gamma = gamma;

    DissipationCheck check;
    check.convexity_available = gamma > 0.0;
    const double quad_coeff = gamma * constants.kappa * constants.kappa / 8.0;

    double worst_diss = std::numeric_limits<double>::infinity();
    double worst_abs = std::numeric_limits<double>::infinity();
    double scale = 0.0;

    for (int n = 0; n <= lat.n_max; ++n) {
        const EntropyProductionField psi = entropy_production(traj, pair, n);
        for (int j = psi.j_first; j <= psi.j_last(); j += 2) {
            const double psi_v = psi.value(j);
            const double du = traj.u(n, j + 1) - traj.u(n, j - 1);
            const double dk_x = std::abs(traj.k(n, j + 1) - traj.k(n, j - 1));
            const double dk_t = std::abs(traj.k(n + 1, j) - traj.k(n, j - 1));
            const double dk_half = std::abs(traj.k(n + 1, j) -
                                            0.5 * (traj.k(n, j - 1) + traj.k(n, j + 1)));

            const double rhs_abs =
                constants.K2 * du * du + constants.K3 * dk_x + constants.K4 * dk_half;
            const double margin_abs = rhs_abs - std::abs(psi_v);
            worst_abs = std::min(worst_abs, margin_abs);
            scale = std::max({scale, std::abs(psi_v), rhs_abs});
            ++check.cells_checked;

            if (check.convexity_available) {
                const double rhs_diss = -quad_coeff * du * du +
                                        constants.diss_coeff_kx * dk_x +
                                        constants.diss_coeff_kt * dk_t;
                const double margin_diss = rhs_diss - psi_v;
                worst_diss = std::min(worst_diss, margin_diss);
                scale = std::max(scale, std::abs(rhs_diss));
            }
        }
    }

    check.scale = std::max(scale, 1e-300);
    check.worst_margin_abs = worst_abs;
    check.worst_margin_dissipation = check.convexity_available ? worst_diss : 0.0;
    const double tol = tolerance_scale * check.scale;
    if (check.convexity_available && worst_diss < -tol) ++check.violations_dissipation;
    if (worst_abs < -tol) ++check.violations_abs;
    return check;
}

DissipationSums weighted_dissipation_sum(const StaggeredTrajectory& traj,
                                         const WeightFunction& chi, double T) {
    const LatticeSpec& lat = traj.lattice;
    const int n_top = std::min(lat.n_max, static_cast<int>(std::floor(T / lat.dt)));
    CompensatedSum spatial;
    CompensatedSum temporal;
    for (int n = 0; n <= n_top; ++n) {
        const std::vector<int> indices = sublattice_complement(n, lat);
        for (int j : indices) {
            const double w = chi(lat.x(j - 1));
            const double du = traj.u(n, j + 1) - traj.u(n, j - 1);
            spatial += w * du * du;
            const double dm = traj.u(n + 1, j) - traj.u(n, j - 1);
            const double dp = traj.u(n + 1, j) - traj.u(n, j + 1);
            temporal += w * (dm * dm + dp * dp);
        }
    }
    DissipationSums sums;
    sums.spatial = lat.dx * spatial.value();
    sums.temporal = lat.dx * temporal.value();
    return sums;
}

double psi_weighted_mass(const StaggeredTrajectory& traj, const EntropyPairSpec& pair,
                         const WeightFunction& chi, double T) {
    const LatticeSpec& lat = traj.lattice;
    const int n_top = std::min(lat.n_max, static_cast<int>(std::floor(T / lat.dt)));
    CompensatedSum mass;
    for (int n = 0; n <= n_top; ++n) {
        const EntropyProductionField psi = entropy_production(traj, pair, n);
        for (int j = psi.j_first; j <= psi.j_last(); j += 2) {
            mass += chi(lat.x(j)) * std::abs(psi.value(j));
        }
    }
    return lat.dx * mass.value();
}

} // namespace dflux

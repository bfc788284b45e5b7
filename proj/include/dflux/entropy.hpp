#ifndef DFLUX_ENTROPY_HPP
#define DFLUX_ENTROPY_HPP

#include <Eigen/Core>

#include "dflux/scheme.hpp"
#include "dflux/weight.hpp"

namespace dflux {

/// Constants of the cell-wise entropy-production bounds, assembled from the
/// explicit interpolation-path expressions rather than treated as opaque. With
/// B0 = (lambda/2) ||dS_du|| ||df_dk|| + ||dS_dk||/2 + (lambda/2) ||dQ_dk||
/// (the bound on the end value of the interpolation path) and
/// B1 = (lambda/2) (b-a) ||d2S_duu|| ||df_dk||, the two bounds read
///   Psi <= -(gamma kappa^2/8) dU^2 + (B1 + B0) |dk_x| + ||dS_dk|| |dk_t|,
///   |Psi| <= K2 dU^2 + K3 |dk_x| + K4 |k_j^{n+1} - (k_{j-1}^n+k_{j+1}^n)/2|,
/// where K2 = ||d2S_duu||, K3 = B1 + B0 + ||dS_dk||/2 + ||dS_dk||/2, and
/// K4 = ||dS_dk||.
struct EntropyConstants {
    double gamma = 0.0;
    double kappa = 0.0;
    double diss_coeff_kx = 0.0; // multiplies |k_{j+1}^n - k_{j-1}^n|
    double diss_coeff_kt = 0.0; // multiplies |k_j^{n+1} - k_{j-1}^n|
    double K2 = 0.0;
    double K3 = 0.0;
    double K4 = 0.0;
};

EntropyConstants assemble_entropy_constants(const ProblemSpec& problem,
                                            const LatticeSpec& lattice);

/// Psi_j^n on Omega'_n. Values outside the stored window are exactly zero
/// (constant pads cancel), so whole-line sums over Psi are finite sums.
struct EntropyProductionField {
    int level = 0; // n; defined for j with j+n odd
    int j_first = 0;
    Eigen::ArrayXd values;

    int j_last() const { return j_first + 2 * (static_cast<int>(values.size()) - 1); }

    double value(int j) const {
        if (j < j_first || j > j_last()) return 0.0;
        return values[(j - j_first) / 2];
    }
};

/// Psi_j^n = S_j^{n+1} - (S_{j-1}^n + S_{j+1}^n)/2 + (lambda/2)(Q_{j+1}^n - Q_{j-1}^n),
/// evaluated with S_j^m = S(k_j^m, U_j^m) and likewise for Q.
EntropyProductionField entropy_production(const StaggeredTrajectory& traj,
                                          const EntropyPairSpec& pair, int n);

/// Cell-wise verification of both entropy-production bounds with the
/// assembled constants. Margins are (bound rhs) - Psi and (abs rhs) - |Psi|;
/// both should be >= -1e-12 * scale.
struct DissipationCheck {
    double worst_margin_dissipation = 0.0;
    double worst_margin_abs = 0.0;
    double scale = 0.0; // max over cells of |Psi| and |rhs|
    long cells_checked = 0;
    long violations_dissipation = 0;
    long violations_abs = 0;
    bool convexity_available = false;
};

DissipationCheck check_dissipation_bounds(const StaggeredTrajectory& traj,
                                          const EntropyPairSpec& pair, double gamma,
                                          double tolerance_scale = 1e-12);

/// The two quadratic sums of the a priori dissipation estimate:
///   spatial  = dx sum_{n<=N} sum_{Omega'_n} chi_{j-1} (U_{j+1}^n - U_{j-1}^n)^2,
///   temporal = dx sum_{n<=N} sum_{Omega'_n} chi_{j-1}
///                 [(U_j^{n+1}-U_{j-1}^n)^2 + (U_j^{n+1}-U_{j+1}^n)^2],
/// the temporal one being the half-cell decomposition of the time-difference
/// integral with the weight sampled at x_{j-1} per half-cell.
struct DissipationSums {
    double spatial = 0.0;
    double temporal = 0.0;
};

DissipationSums weighted_dissipation_sum(const StaggeredTrajectory& traj,
                                         const WeightFunction& chi, double T);

/// dx sum_{n<=N} sum_{Omega'_n} chi_j |Psi_j^n|.
double psi_weighted_mass(const StaggeredTrajectory& traj, const EntropyPairSpec& pair,
                         const WeightFunction& chi, double T);

} // namespace dflux

#endif

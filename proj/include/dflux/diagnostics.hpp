#ifndef DFLUX_DIAGNOSTICS_HPP
#define DFLUX_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "dflux/compactness.hpp"
#include "dflux/report.hpp"

namespace dflux {

/// What to compute and the pass thresholds. Thresholds are fixed by the
/// verification plan; the toggles only switch whole diagnostic groups off.
struct DiagnosticsOptions {
    std::vector<int> spatial_shifts = {1, 3, 5};
    std::vector<int> temporal_shifts = {2, 4};
    std::vector<WeightFunction> weights = {WeightFunction::unit(),
                                           WeightFunction::rational_decay(1.0)};
    bool check_identities = true;
    bool check_gamma = true;
    bool check_dissipation = true;
    bool check_moduli = true;
    std::vector<double> spatial_offsets;  // empty: ladder from 4*dx to width/8
    std::vector<double> temporal_offsets; // empty: ladder from 4*dt to T/8
    int modulus_samples = 6;
    double identity_tolerance = 1e-9;
    double margin_tolerance = 1e-12;
    double slope_floor = 0.20;
};

/// Geometric offset ladder from `lo` to `hi`.
std::vector<double> geometric_offsets(double lo, double hi, int count);

/// Offsets for an exponent fit: the preferred window [4*step, extent/8],
/// widened to [step, extent/2] when the preferred one spans less than the
/// decade the fit requires; empty when even that fails.
std::vector<double> modulus_fit_offsets(double step, double extent, int count);

/// All enabled diagnostics for one trajectory.
DiagnosticsReport run_diagnostics(const StaggeredTrajectory& traj,
                                  const DiagnosticsOptions& options);

/// Exact integral of |u_a(x, t) - u_b(x, t)| dx between two reconstructions
/// (meshes may differ).
double l1_distance_at_time(const StaggeredTrajectory& ta, const StaggeredTrajectory& tb,
                           double t);

/// One ladder level of the refinement study.
struct RefineRow {
    int cells = 0;
    double dx = 0.0;
    double dissipation_spatial = 0.0;
    double dissipation_temporal = 0.0;
    double psi_mass = 0.0;
    double modulus_statistic_spatial = 0.0;
    double modulus_statistic_temporal = 0.0;
    double slope_spatial = 0.0;
    double slope_temporal = 0.0;
    double l1_to_finest = 0.0;
};

struct RefinementLadder {
    std::vector<RefineRow> rows;
    double band_ratio_dissipation = 1.0; // max/min across rows
    double band_ratio_temporal = 1.0;
    double band_ratio_psi_mass = 1.0;
    double band_ratio_modulus_stat = 1.0;
    std::string note; // nonempty when the ladder stopped early (memory budget)
    bool bands_within_factor(double factor) const {
        return band_ratio_dissipation <= factor && band_ratio_temporal <= factor &&
               band_ratio_psi_mass <= factor && band_ratio_modulus_stat <= factor;
    }
};

/// Run the problem across increasing cell counts at fixed window and horizon.
/// A level that exceeds the memory budget truncates the ladder with a note
/// instead of failing.
RefinementLadder run_refinement_ladder(const ProblemSpec& problem, double x_left,
                                       double x_right, double kappa, double T,
                                       const std::vector<int>& cell_counts,
                                       const WeightFunction& chi, int modulus_samples = 6,
                                       std::size_t memory_budget_bytes =
                                           kDefaultMemoryBudgetBytes);

} // namespace dflux

#endif

#include "dflux/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dflux/summation.hpp"

namespace dflux {

std::vector<double> geometric_offsets(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
        throw Error("geometric_offsets needs 0 < lo < hi and count >= 2");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    const double ratio = std::pow(hi / lo, 1.0 / (count - 1));
    double v = lo;
    for (int i = 0; i < count; ++i) {
        out.push_back(i + 1 == count ? hi : v);
        v *= ratio;
    }
    return out;
}

namespace {

std::string shift_tag(const char* axis, int amount, const WeightFunction& chi) {
    return std::string(axis) + "_" + std::to_string(amount) + "_" + chi.name();
}

} // namespace

std::vector<double> modulus_fit_offsets(double step, double extent, int count) {
    double lo = 4.0 * step;
    double hi = extent / 8.0;
    if (hi < 10.0 * lo) {
        lo = step;
        hi = extent / 2.0;
    }
    if (hi < 10.0 * lo) return {};
    return geometric_offsets(lo, hi, count);
}

DiagnosticsReport run_diagnostics(const StaggeredTrajectory& traj,
                                  const DiagnosticsOptions& options) {
    const LatticeSpec& lat = traj.lattice;
    const ProblemSpec& problem = traj.problem;
    DiagnosticsReport report;

    report.add_meta("problem", problem.name);
    report.add_scalar("dx", lat.dx);
    report.add_scalar("dt", lat.dt);
    report.add_scalar("lambda", lat.lambda);
    report.add_scalar("kappa", lat.kappa);
    report.add_scalar("T", lat.T);
    report.add_scalar("levels", lat.num_levels());

    const StateRange range = state_range(traj);
    report.add_scalar("u_min", range.min_value);
    report.add_scalar("u_max", range.max_value);

    const MassBudget budget = mass_budget(traj);
    report.add_scalar("mass_budget_rel_drift", budget.max_rel_drift);

    const TrajectoryTables tables(traj, problem.entropy);

    if (options.check_identities) {
        for (const WeightFunction& chi : options.weights) {
            for (int nu : options.spatial_shifts) {
                const IdentityBreakdown identity =
                    interaction_identity_residual_spatial(tables, chi, nu);
                const std::string tag = shift_tag("identity_spatial", nu, chi);
                report.add_scalar(tag, identity.normalized_residual);
                report.add_status(tag,
                                  std::abs(identity.normalized_residual) <=
                                      options.identity_tolerance);
            }
            for (int theta : options.temporal_shifts) {
                const IdentityBreakdown identity =
                    interaction_identity_residual_temporal(tables, chi, theta);
                const std::string tag = shift_tag("identity_temporal", theta, chi);
                report.add_scalar(tag, identity.normalized_residual);
                report.add_status(tag,
                                  std::abs(identity.normalized_residual) <=
                                      options.identity_tolerance);
            }
        }
        // measured anti-difference sup ratios for the first configured shift
        if (!options.spatial_shifts.empty()) {
            const AntiDifferenceStats stats =
                anti_difference_stats(tables, options.weights.front(),
                                      ShiftSpec::spatial(options.spatial_shifts.front()));
            report.add_scalar("anti_A_sup_ratio_spatial", stats.sup_ratio_anti_A);
            report.add_scalar("anti_D_sup_ratio_spatial", stats.sup_ratio_anti_D);
        }
        if (!options.temporal_shifts.empty()) {
            const AntiDifferenceStats stats =
                anti_difference_stats(tables, options.weights.front(),
                                      ShiftSpec::temporal(options.temporal_shifts.front()));
            report.add_scalar("anti_A_sup_ratio_temporal", stats.sup_ratio_anti_A);
            report.add_scalar("anti_D_sup_ratio_temporal", stats.sup_ratio_anti_D);
        }
    }

    if (options.check_gamma) {
        if (problem.entropy.nonlinearity.asserted) {
            const int nu = options.spatial_shifts.empty() ? 1 : options.spatial_shifts.front();
            const GammaCheck gamma = check_gamma_bound(tables, problem.entropy, nu);
            report.add_scalar("gamma_worst_margin", gamma.worst_margin);
            report.add_scalar("gamma_scale", gamma.scale);
            report.add_status("gamma_lower_bound",
                              gamma.worst_margin >=
                                  -options.margin_tolerance * gamma.scale);
        } else {
            report.add_skipped("gamma_lower_bound");
        }
    }

    if (options.check_dissipation) {
        const DissipationCheck check = check_dissipation_bounds(
            traj, problem.entropy, problem.entropy.d2S_duu_lower, options.margin_tolerance);
        report.add_scalar("entropy_abs_worst_margin", check.worst_margin_abs);
        report.add_status("entropy_abs_bound", check.violations_abs == 0);
        if (check.convexity_available) {
            report.add_scalar("entropy_dissipation_worst_margin",
                              check.worst_margin_dissipation);
            report.add_status("entropy_dissipation_bound",
                              check.violations_dissipation == 0);
        } else {
            report.add_skipped("entropy_dissipation_bound");
        }
        for (const WeightFunction& chi : options.weights) {
            const DissipationSums sums = weighted_dissipation_sum(traj, chi, lat.T);
            const double mass = psi_weighted_mass(traj, problem.entropy, chi, lat.T);
            report.add_scalar("dissipation_spatial_" + chi.name(), sums.spatial);
            report.add_scalar("dissipation_temporal_" + chi.name(), sums.temporal);
            report.add_scalar("psi_mass_" + chi.name(), mass);
        }
    }

    if (options.check_moduli) {
        const double mu = problem.entropy.nonlinearity.asserted
                              ? problem.entropy.nonlinearity.modulus_exponent()
                              : 0.25;
        report.add_scalar("mu_theory", mu);
        const double width = lat.user_right - lat.user_left;
        std::vector<double> spatial_offsets = options.spatial_offsets;
        if (spatial_offsets.empty()) {
            spatial_offsets = modulus_fit_offsets(lat.dx, width, options.modulus_samples);
        }
        std::vector<double> temporal_offsets = options.temporal_offsets;
        if (temporal_offsets.empty()) {
            temporal_offsets = modulus_fit_offsets(lat.dt, lat.T, options.modulus_samples);
        }
        if (spatial_offsets.empty() || temporal_offsets.empty()) {
            report.add_skipped("modulus_fit");
            return report;
        }
        for (const WeightFunction& chi : options.weights) {
            ModulusCurve spatial{ModulusCurve::Axis::Spatial, {}, {}, mu};
            auto& spatial_points = report.add_curve("modulus_spatial_" + chi.name()).points;
            for (double h : spatial_offsets) {
                const double m = spatial_translation_modulus(traj, chi, h, lat.T);
                spatial.offsets.push_back(h);
                spatial.values.push_back(m);
                spatial_points.emplace_back(h, m);
            }
            ModulusCurve temporal{ModulusCurve::Axis::Temporal, {}, {}, mu};
            auto& temporal_points = report.add_curve("modulus_temporal_" + chi.name()).points;
            for (double tau : temporal_offsets) {
                const double m = temporal_translation_modulus(traj, chi, tau, lat.T);
                temporal.offsets.push_back(tau);
                temporal.values.push_back(m);
                temporal_points.emplace_back(tau, m);
            }
            const ExponentFit fit_s = fit_exponent(spatial);
            const ExponentFit fit_t = fit_exponent(temporal);
            report.add_scalar("modulus_slope_spatial_" + chi.name(), fit_s.slope);
            report.add_scalar("modulus_slope_temporal_" + chi.name(), fit_t.slope);
            report.add_scalar("modulus_stat_spatial_" + chi.name(),
                              fit_s.boundedness_statistic);
            report.add_scalar("modulus_stat_temporal_" + chi.name(),
                              fit_t.boundedness_statistic);
            report.add_status("modulus_slope_spatial_" + chi.name(),
                              fit_s.slope >= options.slope_floor);
            report.add_status("modulus_slope_temporal_" + chi.name(),
                              fit_t.slope >= options.slope_floor);
        }
    }

    bool finite = true;
    for (const auto& [name, value] : report.scalars) finite = finite && std::isfinite(value);
    report.add_status("report_finite", finite);

    return report;
}

double l1_distance_at_time(const StaggeredTrajectory& ta, const StaggeredTrajectory& tb,
                           double t) {
    const Reconstruction ra(ta);
    const Reconstruction rb(tb);
    const int na = ra.level_of(t);
    const int nb = rb.level_of(t);
    const double dxa = ta.lattice.dx;
    const double dxb = tb.lattice.dx;

    const double lo = std::min(ta.lattice.x(ta.lattice.j_min - 1),
                               tb.lattice.x(tb.lattice.j_min - 1));
    const double hi = std::max(ta.lattice.x(ta.lattice.j_max + 1),
                               tb.lattice.x(tb.lattice.j_max + 1));
    const double tol = 1e-9 * std::min(dxa, dxb);

    // cell edges of level na on mesh a: m*dxa with (m+na) odd; same for b
    auto first_edge = [&](double start, double dx, int level) {
        int m = static_cast<int>(std::ceil(start / dx));
        if (((m + level) % 2 + 2) % 2 == 0) ++m;
        return m;
    };
    int ma = first_edge(lo, dxa, na);
    int mb = first_edge(lo, dxb, nb);

    CompensatedSum acc;
    double cursor = lo;
    while (cursor < hi - tol) {
        const double pa = ma * dxa;
        const double pb = mb * dxb;
        double next = std::min({pa, pb, hi});
        if (pa <= next + tol) ma += 2;
        if (pb <= next + tol) mb += 2;
        if (next - cursor > tol) {
            const double mid = 0.5 * (cursor + next);
            const double diff = ra(mid, t) - rb(mid, t);
            if (diff != 0.0) acc += std::abs(diff) * (next - cursor);
        }
        cursor = next;
    }
    return acc.value();
}

RefinementLadder run_refinement_ladder(const ProblemSpec& problem, double x_left,
                                       double x_right, double kappa, double T,
                                       const std::vector<int>& cell_counts,
                                       const WeightFunction& chi, int modulus_samples,
                                       std::size_t memory_budget_bytes) {
    if (cell_counts.empty()) throw Error("refinement ladder needs at least one cell count");
    for (std::size_t i = 1; i < cell_counts.size(); ++i) {
        if (cell_counts[i] <= cell_counts[i - 1]) {
            throw Error("refinement ladder cell counts must increase");
        }
    }

    RefinementLadder ladder;
    std::vector<StaggeredTrajectory> trajectories;
    trajectories.reserve(cell_counts.size());

    const double width = x_right - x_left;
    for (int cells : cell_counts) {
        const double dx = width / cells;
        LatticeSpec lattice;
        try {
            lattice = build_lattice(x_left, x_right, dx, kappa, problem.flux, T,
                                    memory_budget_bytes);
        } catch (const LatticeError& e) {
            if (trajectories.empty()) throw;
            ladder.note = std::string("ladder truncated at ") + std::to_string(cells) +
                          " cells: " + e.what();
            break;
        }
        trajectories.push_back(run(problem, lattice));

        const StaggeredTrajectory& traj = trajectories.back();
        RefineRow row;
        row.cells = cells;
        row.dx = dx;
        const DissipationSums sums = weighted_dissipation_sum(traj, chi, T);
        row.dissipation_spatial = sums.spatial;
        row.dissipation_temporal = sums.temporal;
        row.psi_mass = psi_weighted_mass(traj, problem.entropy, chi, T);

        const double mu = problem.entropy.nonlinearity.asserted
                              ? problem.entropy.nonlinearity.modulus_exponent()
                              : 0.25;
        ModulusCurve spatial{ModulusCurve::Axis::Spatial, {}, {}, mu};
        for (double h : modulus_fit_offsets(lattice.dx, width, modulus_samples)) {
            spatial.offsets.push_back(h);
            spatial.values.push_back(spatial_translation_modulus(traj, chi, h, T));
        }
        const ExponentFit fit_s = fit_exponent(spatial);
        row.modulus_statistic_spatial = fit_s.boundedness_statistic;
        row.slope_spatial = fit_s.slope;

        // a run too short for a decade of temporal offsets gets no temporal fit
        const std::vector<double> taus = modulus_fit_offsets(lattice.dt, T, modulus_samples);
        if (taus.empty()) {
            row.slope_temporal = std::numeric_limits<double>::quiet_NaN();
            row.modulus_statistic_temporal = std::numeric_limits<double>::quiet_NaN();
        } else {
            ModulusCurve temporal{ModulusCurve::Axis::Temporal, {}, {}, mu};
            for (double tau : taus) {
                temporal.offsets.push_back(tau);
                temporal.values.push_back(temporal_translation_modulus(traj, chi, tau, T));
            }
            const ExponentFit fit_t = fit_exponent(temporal);
            row.modulus_statistic_temporal = fit_t.boundedness_statistic;
            row.slope_temporal = fit_t.slope;
        }
        ladder.rows.push_back(row);
    }

    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        ladder.rows[i].l1_to_finest =
            i + 1 == trajectories.size()
                ? 0.0
                : l1_distance_at_time(trajectories[i], trajectories.back(), T);
    }

    auto band = [&](auto member) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (const RefineRow& row : ladder.rows) {
            const double v = row.*member;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (!(lo > 0.0)) return hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
        return hi / lo;
    };
    ladder.band_ratio_dissipation = band(&RefineRow::dissipation_spatial);
    ladder.band_ratio_temporal = band(&RefineRow::dissipation_temporal);
    ladder.band_ratio_psi_mass = band(&RefineRow::psi_mass);
    ladder.band_ratio_modulus_stat = band(&RefineRow::modulus_statistic_spatial);
    return ladder;
}

} // namespace dflux

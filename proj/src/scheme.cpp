#include "dflux/scheme.hpp"

#include <algorithm>
#include <cmath>

#include "dflux/quadrature.hpp"
#include "dflux/summation.hpp"

namespace dflux {

StaggeredField init_cell_averages(const InitialDataSpec& u0, const LatticeSpec& lattice,
                                  double a, double b) {
    const std::vector<int> indices = sublattice(0, lattice);
    Eigen::ArrayXd values(static_cast<Eigen::Index>(indices.size()));

    const std::vector<double>& breakpoints = u0.breakpoints();
    const double slack = 1e-12 * (1.0 + std::abs(a) + std::abs(b));

    auto check_state = [&](double v, int j) {
        if (!std::isfinite(v) || v < a - slack || v > b + slack) {
            throw ProblemError("initial datum outside [a,b] near x = " +
                               std::to_string(lattice.x(j)));
        }
        return v;
    };

    for (std::size_t idx = 0; idx < indices.size(); ++idx) {
        const int j = indices[idx];
        const double lo = lattice.x(j - 1);
        const double hi = lattice.x(j + 1);

        // breakpoints strictly inside the cell
        std::vector<double> cuts;
        for (double xb : breakpoints) {
            if (xb > lo && xb < hi) cuts.push_back(xb);
        }
        if (!u0.is_step_data()) {
            // generic evaluator may vary anywhere inside its window
            const double radius = u0.support_radius();
            if (hi > -radius && lo < radius) {
                double acc = 0.0;
                double seg_lo = lo;
                for (std::size_t c = 0; c <= cuts.size(); ++c) {
                    const double seg_hi = c < cuts.size() ? cuts[c] : hi;
                    acc += gauss_integrate(kGauss16, seg_lo, seg_hi,
                                           [&](double x) { return u0(x); });
                    seg_lo = seg_hi;
                }
                values[static_cast<Eigen::Index>(idx)] = check_state(acc / (hi - lo), j);
                continue;
            }
            values[static_cast<Eigen::Index>(idx)] = check_state(u0(lattice.x(j)), j);
            continue;
        }
        if (cuts.empty()) {
            // constant on the whole cell: the average is the sample, bit-exact
            values[static_cast<Eigen::Index>(idx)] = check_state(u0(lattice.x(j)), j);
            continue;
        }
        // exact integral of step data: sum of segment length * value
        double acc = 0.0;
        double seg_lo = lo;
        for (std::size_t c = 0; c <= cuts.size(); ++c) {
            const double seg_hi = c < cuts.size() ? cuts[c] : hi;
            acc += (seg_hi - seg_lo) * u0(0.5 * (seg_lo + seg_hi));
            seg_lo = seg_hi;
        }
        values[static_cast<Eigen::Index>(idx)] = check_state(acc / (hi - lo), j);
    }

    return StaggeredField(0, indices.front(), std::move(values), u0.left_pad(), u0.right_pad());
}

StaggeredField sample_coefficient(const CoefficientSpec& k, const LatticeSpec& lattice, int n,
                                  double alpha, double beta) {
    if (n < 0 || n > lattice.n_max + 1) {
        throw NumericsError("coefficient sample level outside 0..N+1");
    }
    const std::vector<int> indices = sublattice(n, lattice);
    const double t = lattice.t(n);
    Eigen::ArrayXd values(static_cast<Eigen::Index>(indices.size()));
    const double slack = 1e-12 * (1.0 + std::abs(alpha) + std::abs(beta));
    for (std::size_t idx = 0; idx < indices.size(); ++idx) {
        const double v = k(lattice.x(indices[idx]), t);
        if (!std::isfinite(v) || v < alpha - slack || v > beta + slack) {
            throw ProblemError("coefficient sample outside [alpha,beta] at x = " +
                               std::to_string(lattice.x(indices[idx])));
        }
        values[static_cast<Eigen::Index>(idx)] = v;
    }
    const double left_pad = values[0];
    const double right_pad = values[values.size() - 1];
    return StaggeredField(n, indices.front(), std::move(values), left_pad, right_pad);
}

StaggeredField lxf_step(const StaggeredField& u_level, const StaggeredField& k_level,
                        const LatticeSpec& lattice, const FluxSpec& flux) {
    const int n = u_level.level();
    const std::vector<int> indices = sublattice(n + 1, lattice);
    Eigen::ArrayXd values(static_cast<Eigen::Index>(indices.size()));
    const double half_lambda = 0.5 * lattice.lambda;

    for (std::size_t idx = 0; idx < indices.size(); ++idx) {
        const int j = indices[idx];
        const double um = u_level.value(j - 1);
        const double up = u_level.value(j + 1);
        const double km = k_level.value(j - 1);
        const double kp = k_level.value(j + 1);
        const double next =
            0.5 * (um + up) - half_lambda * (flux.f(kp, up) - flux.f(km, um));
        if (!std::isfinite(next)) {
            throw NumericsError("numerical blow-up at level " + std::to_string(n + 1) +
                                ", j = " + std::to_string(j));
        }
        values[static_cast<Eigen::Index>(idx)] = next;
    }
    return StaggeredField(n + 1, indices.front(), std::move(values), u_level.left_pad(),
                          u_level.right_pad());
}

StaggeredTrajectory run(const ProblemSpec& problem, const LatticeSpec& lattice) {
    // the exact-truncation guarantee needs the declared window to cover the
    // data and coefficient variation
    const double r_u = problem.init.support_radius();
    const double r_k = problem.coefficient.support_radius(lattice.t(lattice.n_max + 2));
    if (lattice.user_left > -std::max(r_u, r_k) || lattice.user_right < std::max(r_u, r_k)) {
        throw LatticeError("window does not cover the supports of u0 and k variation");
    }

    StaggeredTrajectory traj;
    traj.lattice = lattice;
    traj.problem = snap_problem_to_lattice(problem, lattice.dx);

    const int levels = lattice.num_levels();
    traj.u_levels.reserve(static_cast<std::size_t>(levels));
    traj.k_levels.reserve(static_cast<std::size_t>(levels));

    for (int n = 0; n < levels; ++n) {
        traj.k_levels.push_back(sample_coefficient(traj.problem.coefficient, lattice, n,
                                                   problem.alpha, problem.beta));
    }
    traj.u_levels.push_back(
        init_cell_averages(traj.problem.init, lattice, problem.a, problem.b));
    for (int n = 0; n + 1 < levels; ++n) {
        traj.u_levels.push_back(lxf_step(traj.u_levels.back(),
                                         traj.k_levels[static_cast<std::size_t>(n)], lattice,
                                         problem.flux));
    }
    return traj;
}

int Reconstruction::level_of(double t) const {
    const LatticeSpec& lat = traj_->lattice;
    if (t < 0.0) throw NumericsError("reconstruction time before 0");
    const int n = static_cast<int>(std::floor(t / lat.dt));
    if (n > lat.n_max + 1) {
        throw NumericsError("reconstruction time beyond the computed horizon");
    }
    return n;
}

int Reconstruction::cell_of(double x, int n) const {
    // the unique j with j+n even and x in [x_{j-1}, x_{j+1})
    const double r = x / traj_->lattice.dx;
    const int m = static_cast<int>(std::floor(r));
    return ((m + n) % 2 + 2) % 2 == 0 ? m : m + 1;
}

double Reconstruction::operator()(double x, double t) const {
    const int n = level_of(t);
    return traj_->u(n, cell_of(x, n));
}

MassBudget mass_budget(const StaggeredTrajectory& traj) {
    MassBudget result;
    const LatticeSpec& lat = traj.lattice;
    const int levels = traj.num_levels();
    result.sublattice_sums.reserve(static_cast<std::size_t>(levels));
    result.budget.reserve(static_cast<std::size_t>(levels));

    CompensatedSum accumulated_boundary;
    for (int n = 0; n < levels; ++n) {
        const StaggeredField& u_level = traj.u_levels[static_cast<std::size_t>(n)];
        CompensatedSum sum;
        for (Eigen::Index i = 0; i < u_level.values().size(); ++i) {
            sum += u_level.values()[i];
        }
        result.sublattice_sums.push_back(sum.value());
        result.budget.push_back(sum.value() - accumulated_boundary.value());

        if (n + 1 < levels) {
            const StaggeredField& k_level = traj.k_levels[static_cast<std::size_t>(n)];
            const double lp = u_level.left_pad();
            const double rp = u_level.right_pad();
            const double f_left = traj.problem.flux.f(k_level.left_pad(), lp);
            const double f_right = traj.problem.flux.f(k_level.right_pad(), rp);
            const bool endpoints_stored = ((lat.j_min + n) % 2 + 2) % 2 == 0;
            const double sign = endpoints_stored ? -1.0 : 1.0;
            accumulated_boundary += sign * 0.5 * (lp + rp);
            accumulated_boundary += -0.5 * lat.lambda * (f_right - f_left);
        }
    }

    const double scale = std::max(1.0, std::abs(result.budget.front()));
    for (double bn : result.budget) {
        result.max_rel_drift =
            std::max(result.max_rel_drift, std::abs(bn - result.budget.front()) / scale);
    }
    return result;
}

StateRange state_range(const StaggeredTrajectory& traj) {
    StateRange range;
    bool first = true;
    for (const StaggeredField& level : traj.u_levels) {
        if (level.values().size() == 0) continue;
        const double lo = level.values().minCoeff();
        const double hi = level.values().maxCoeff();
        if (first) {
            range.min_value = lo;
            range.max_value = hi;
            first = false;
        } else {
            range.min_value = std::min(range.min_value, lo);
            range.max_value = std::max(range.max_value, hi);
        }
    }
    return range;
}

} // namespace dflux

#include "dflux/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dflux/quadrature.hpp"
#include "dflux/summation.hpp"

namespace dflux {

namespace {

int lower_with_parity(int j, int parity_of) {
    // largest index <= j with (index + parity_of) even
    return ((j + parity_of) % 2 + 2) % 2 == 0 ? j : j - 1;
}

/// Center index of the level-n cell [x_{j-1}, x_{j+1}) containing x.
int cell_index(double x, int n, double dx) {
    const double r = x / dx;
    const int m = static_cast<int>(std::floor(r));
    return ((m + n) % 2 + 2) % 2 == 0 ? m : m + 1;
}

} // namespace

// ---------------------------------------------------------------------------
// TrajectoryTables

TrajectoryTables::TrajectoryTables(const StaggeredTrajectory& traj, const EntropyPairSpec& pair)
    : traj_(&traj) {
    const int levels = traj.num_levels();
    f_.reserve(static_cast<std::size_t>(levels));
    s_.reserve(static_cast<std::size_t>(levels));
    q_.reserve(static_cast<std::size_t>(levels));
    psi_.reserve(static_cast<std::size_t>(levels - 1));

    const ScalarFn2& flux = traj.problem.flux.f;
    for (int n = 0; n < levels; ++n) {
        const StaggeredField& u_level = traj.u_levels[static_cast<std::size_t>(n)];
        const StaggeredField& k_level = traj.k_levels[static_cast<std::size_t>(n)];
        const Eigen::Index count = u_level.size();
        Eigen::ArrayXd fv(count), sv(count), qv(count);
        for (Eigen::Index i = 0; i < count; ++i) {
            const double uv = u_level.values()[i];
            const double kv = k_level.values()[i];
            fv[i] = flux(kv, uv);
            sv[i] = pair.S(kv, uv);
            qv[i] = pair.Q(kv, uv);
        }
        const int j_first = u_level.j_first();
        const double ul = u_level.left_pad();
        const double ur = u_level.right_pad();
        const double kl = k_level.left_pad();
        const double kr = k_level.right_pad();
        f_.emplace_back(n, j_first, std::move(fv), flux(kl, ul), flux(kr, ur));
        s_.emplace_back(n, j_first, std::move(sv), pair.S(kl, ul), pair.S(kr, ur));
        q_.emplace_back(n, j_first, std::move(qv), pair.Q(kl, ul), pair.Q(kr, ur));
    }
    for (int n = 0; n <= traj.lattice.n_max; ++n) {
        psi_.push_back(entropy_production(traj, pair, n));
    }
}

// ---------------------------------------------------------------------------
// Difference fields

DifferenceFields difference_fields(const TrajectoryTables& tables, const WeightFunction& chi,
                                   ShiftSpec shift, int n) {
    const LatticeSpec& lat = tables.lattice();
    const bool spatial = shift.kind == ShiftSpec::Kind::Spatial;
    if (shift.amount < 0) throw NumericsError("shift must be nonnegative");
    if (!spatial && shift.amount % 2 != 0) {
        throw NumericsError("temporal shift theta must be even");
    }
    const int dj = spatial ? 2 * shift.amount : 0;
    const int dn = spatial ? 0 : shift.amount;
    if (n < 0 || n + dn > lat.n_max + 1) {
        throw NumericsError("shifted level outside the computed trajectory");
    }
    if (dj > lat.j_max - lat.j_min) {
        throw NumericsError("spatial shift exceeds the padded window");
    }
    // C_A, C_D carry Psi terms, available only while n and n+dn stay <= N
    const bool have_c_fields = n + dn <= lat.n_max;

    DifferenceFields fields;
    fields.shift = shift;
    fields.level = n;

    const int lo_even = lower_with_parity(lat.j_min - dj - 4, n);
    const int hi_even = lower_with_parity(lat.j_max + 4, n);
    const int count_even = (hi_even - lo_even) / 2 + 1;
    fields.j_first_even = lo_even;
    fields.A.resize(count_even);
    fields.B.resize(count_even);
    fields.D.resize(count_even);
    fields.E.resize(count_even);

    auto d_u = [&](int j) { return tables.u(n + dn, j + dj) - tables.u(n, j); };
    auto d_f = [&](int j) { return tables.f(n + dn, j + dj) - tables.f(n, j); };
    auto d_s = [&](int j) { return tables.S(n + dn, j + dj) - tables.S(n, j); };
    auto d_q = [&](int j) { return tables.Q(n + dn, j + dj) - tables.Q(n, j); };
    auto d_psi = [&](int j) { return tables.psi(n + dn, j + dj) - tables.psi(n, j); };

    for (int i = 0; i < count_even; ++i) {
        const int j = lo_even + 2 * i;
        const double w = chi(lat.x(j));
        fields.A[i] = w * d_u(j);
        fields.B[i] = w * d_f(j);
        fields.D[i] = w * d_s(j);
        fields.E[i] = w * d_q(j);
    }

    const int lo_odd = lo_even - 1;
    const int hi_odd = hi_even + 1;
    const int count_odd = have_c_fields ? (hi_odd - lo_odd) / 2 + 1 : 0;
    fields.j_first_odd = lo_odd;
    fields.C_A.resize(count_odd);
    fields.C_D.resize(count_odd);

    const double half_lambda = 0.5 * lat.lambda;
    for (int i = 0; i < count_odd; ++i) {
        const int j = lo_odd + 2 * i;
        const double w_m = chi(lat.x(j - 1));
        const double w_0 = chi(lat.x(j));
        const double w_p = chi(lat.x(j + 1));
        const double dw_p = w_p - w_0;
        const double dw_m = w_0 - w_m;
        fields.C_A[i] = -0.5 * d_u(j + 1) * dw_p + 0.5 * d_u(j - 1) * dw_m +
                        half_lambda * d_f(j + 1) * dw_p + half_lambda * d_f(j - 1) * dw_m;
        fields.C_D[i] = -0.5 * d_s(j + 1) * dw_p + 0.5 * d_s(j - 1) * dw_m +
                        half_lambda * d_q(j + 1) * dw_p + half_lambda * d_q(j - 1) * dw_m +
                        w_0 * d_psi(j);
    }
    return fields;
}

// ---------------------------------------------------------------------------
// InteractionState

InteractionState::InteractionState(const DifferenceFields& fields, double dx) {
    j_first_ = fields.j_first_even;
    const Eigen::Index count = fields.A.size();
    prefix_a_.resize(count);
    suffix_d_.resize(count);

    CompensatedSum acc_a;
    for (Eigen::Index i = 0; i < count; ++i) {
        acc_a += fields.A[i];
        prefix_a_[i] = dx * acc_a.value();
    }
    total_a_ = count > 0 ? prefix_a_[count - 1] : 0.0;

    CompensatedSum acc_d;
    for (Eigen::Index i = count - 1; i >= 0; --i) {
        acc_d += fields.D[i];
        suffix_d_[i] = dx * acc_d.value();
    }
    total_d_ = count > 0 ? suffix_d_[0] : 0.0;

    CompensatedSum inter;
    for (Eigen::Index i = 0; i < count; ++i) {
        inter += fields.A[i] * suffix_d_[i];
    }
    interaction_ = dx * inter.value();

    sup_anti_a_ = prefix_a_.size() > 0 ? prefix_a_.abs().maxCoeff() : 0.0;
    sup_anti_d_ = suffix_d_.size() > 0 ? suffix_d_.abs().maxCoeff() : 0.0;
}

double InteractionState::anti_A_at(int j) const {
    if (prefix_a_.size() == 0 || j < j_first_) return 0.0;
    const Eigen::Index idx = (j - j_first_) / 2;
    if (idx >= prefix_a_.size()) return total_a_;
    return prefix_a_[idx];
}

double InteractionState::anti_D_at(int j) const {
    if (suffix_d_.size() == 0 || j > j_first_ + 2 * (static_cast<int>(suffix_d_.size()) - 1)) {
        return 0.0;
    }
    if (j < j_first_) return total_d_;
    return suffix_d_[(j - j_first_) / 2];
}

// ---------------------------------------------------------------------------
// Interaction identities

namespace {

IdentityBreakdown interaction_identity_residual(const TrajectoryTables& tables,
                                                const WeightFunction& chi, ShiftSpec shift,
                                                int N) {
    const LatticeSpec& lat = tables.lattice();
    if (N < 0) N = lat.n_max;
    const int theta = shift.kind == ShiftSpec::Kind::Temporal ? shift.amount : 0;
    const int n_top = N - theta;
    if (n_top < 0) throw NumericsError("temporal shift exceeds the level count");

    const double dx = lat.dx;
    const double dt = lat.dt;
    const double lambda = lat.lambda;

    CompensatedSum lhs_sum, s3_sum, s4_sum, r1_sum, r2_sum, r3_sum, r4_sum;

    DifferenceFields cur = difference_fields(tables, chi, shift, 0);
    InteractionState cur_state(cur, dx);
    const double I_first = cur_state.interaction_functional();

    for (int n = 0; n <= n_top; ++n) {
        DifferenceFields next = difference_fields(tables, chi, shift, n + 1);
        InteractionState next_state(next, dx);

        CompensatedSum lhs_level;
        for (Eigen::Index i = 0; i < cur.A.size(); ++i) {
            lhs_level += cur.A[i] * cur.E[i] - cur.D[i] * cur.B[i];
        }
        lhs_sum += lhs_level.value();

        CompensatedSum s3_level, s4_level, r1_level, r2_level, r3_level, r4_level;
        const int lo_odd = cur.j_first_odd;
        const int count_odd = static_cast<int>(cur.C_A.size());
        for (int i = 0; i < count_odd; ++i) {
            const int j = lo_odd + 2 * i;
            const double c_a = cur.C_A[i];
            const double c_d = cur.C_D[i];
            s4_level += c_d * next_state.anti_A_at(j);
            s3_level += c_a * 0.5 * (cur_state.anti_D_at(j - 1) + cur_state.anti_D_at(j + 1));
            const double e_m = cur.e(j - 1);
            const double b_p = cur.b(j + 1);
            r1_level += e_m * (b_p - cur.b(j - 1));
            r2_level += b_p * (cur.d(j + 1) - cur.d(j - 1));
            r3_level += (cur.d(j - 1) + lambda * e_m) * (cur.a(j + 1) - cur.a(j - 1));
            r4_level += e_m * c_a;
        }
        s3_sum += s3_level.value();
        s4_sum += s4_level.value();
        r1_sum += r1_level.value();
        r2_sum += r2_level.value();
        r3_sum += r3_level.value();
        r4_sum += r4_level.value();

        cur = std::move(next);
        cur_state = std::move(next_state);
    }
    const double I_last = cur_state.interaction_functional();

    IdentityBreakdown out;
    out.lhs = 0.5 * dt * dx * lhs_sum.value();
    out.s3 = -dx * s3_sum.value();
    out.s4 = -dx * s4_sum.value();
    out.I_first = I_first;
    out.I_last = I_last;
    out.r1 = 0.25 * lambda * dt * dx * r1_sum.value();
    out.r2 = -0.25 * dt * dx * r2_sum.value();
    out.r3 = -0.25 / lambda * dt * dx * r3_sum.value();
    out.r4 = -0.5 * dt * dx * r4_sum.value();

    const double rhs =
        out.s3 + out.s4 + out.I_last - out.I_first + out.discretization_term();
    out.residual = out.lhs - rhs;
    out.scale = std::max({std::abs(out.lhs), std::abs(out.s3), std::abs(out.s4),
                          std::abs(out.I_first), std::abs(out.I_last), std::abs(out.r1),
                          std::abs(out.r2), std::abs(out.r3), std::abs(out.r4),
                          std::abs(out.discretization_term()), 1e-300});
    out.normalized_residual = out.residual / out.scale;
    return out;
}

} // namespace

IdentityBreakdown interaction_identity_residual_spatial(const TrajectoryTables& tables,
                                                        const WeightFunction& chi, int nu,
                                                        int N) {
    return interaction_identity_residual(tables, chi, ShiftSpec::spatial(nu), N);
}

IdentityBreakdown interaction_identity_residual_temporal(const TrajectoryTables& tables,
                                                         const WeightFunction& chi, int theta,
                                                         int N) {
    return interaction_identity_residual(tables, chi, ShiftSpec::temporal(theta), N);
}

// ---------------------------------------------------------------------------
// Gamma

GammaField gamma_field(const TrajectoryTables& tables, const EntropyPairSpec& pair, int n,
                       int nu) {
    const LatticeSpec& lat = tables.lattice();
    const StaggeredTrajectory& traj = tables.trajectory();
    const ScalarFn2& flux = traj.problem.flux.f;
    const NonlinearityConstants& nl = pair.nonlinearity;
    const double c_fs = nl.C_fS();
    const double power = nl.power();

    const int dj = 2 * nu;
    const int lo = lower_with_parity(lat.j_min - dj - 4, n);
    const int hi = lower_with_parity(lat.j_max + 4, n);
    const int count = (hi - lo) / 2 + 1;

    GammaField field;
    field.level = n;
    field.j_first = lo;
    field.gamma.resize(count);
    field.bound.resize(count);
    field.margin.resize(count);
    field.cross1.resize(count);
    field.cross2.resize(count);
    field.cross3.resize(count);
    field.cross4.resize(count);

    for (int i = 0; i < count; ++i) {
        const int j = lo + 2 * i;
        const double u0 = traj.u(n, j);
        const double u1 = traj.u(n, j + dj);
        const double k0 = traj.k(n, j);
        const double k1 = traj.k(n, j + dj);
        const double du = u1 - u0;

        const double dq_u = pair.Q(k0, u1) - pair.Q(k0, u0);
        const double ds_u = pair.S(k0, u1) - pair.S(k0, u0);
        const double df_u = flux(k0, u1) - flux(k0, u0);
        const double gamma = du * dq_u - ds_u * df_u;
        const double bound = c_fs * std::pow(std::abs(du), power);

        field.gamma[i] = gamma;
        field.bound[i] = bound;
        field.margin[i] = gamma - bound;

        const double dq_k = pair.Q(k1, u1) - pair.Q(k0, u1);
        const double df_k = flux(k1, u1) - flux(k0, u1);
        const double ds_k = pair.S(k1, u1) - pair.S(k0, u1);
        field.cross1[i] = du * dq_k;
        field.cross2[i] = ds_u * df_k;
        field.cross3[i] = ds_k * df_u;
        field.cross4[i] = ds_k * df_k;
    }
    return field;
}

GammaCheck check_gamma_bound(const TrajectoryTables& tables, const EntropyPairSpec& pair,
                             int nu, double tolerance_scale) {
    GammaCheck check;
    double worst = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    const int levels = tables.trajectory().num_levels();
    for (int n = 0; n < levels; ++n) {
        const GammaField field = gamma_field(tables, pair, n, nu);
        for (Eigen::Index i = 0; i < field.gamma.size(); ++i) {
            worst = std::min(worst, field.margin[i]);
            scale = std::max({scale, std::abs(field.gamma[i]), field.bound[i]});
            ++check.cells_checked;
        }
    }
    check.scale = std::max(scale, 1e-300);
    check.worst_margin = worst;
    if (worst < -tolerance_scale * check.scale) ++check.violations;
    return check;
}

// ---------------------------------------------------------------------------
// Anti-difference statistics

AntiDifferenceStats anti_difference_stats(const TrajectoryTables& tables,
                                          const WeightFunction& chi, ShiftSpec shift) {
    const LatticeSpec& lat = tables.lattice();
    AntiDifferenceStats stats;
    if (shift.amount == 0) return stats;

    if (shift.kind == ShiftSpec::Kind::Spatial) {
        const double h = 2.0 * shift.amount * lat.dx;
        for (int n = 0; n <= lat.n_max + 1; ++n) {
            const DifferenceFields fields = difference_fields(tables, chi, shift, n);
            const InteractionState state(fields, lat.dx);
            stats.sup_ratio_anti_A = std::max(stats.sup_ratio_anti_A,
                                              state.sup_abs_anti_A() / h);
            stats.sup_ratio_anti_D = std::max(stats.sup_ratio_anti_D,
                                              state.sup_abs_anti_D() / h);
        }
        return stats;
    }

    const int theta = shift.amount;
    const double tau = theta * lat.dt;
    for (int n = 0; n + theta <= lat.n_max + 1; ++n) {
        const DifferenceFields fields = difference_fields(tables, chi, shift, n);
        const InteractionState state(fields, lat.dx);
        stats.sup_ratio_anti_A = std::max(stats.sup_ratio_anti_A,
                                          state.sup_abs_anti_A() / tau);
        // the D~ bound carries the entropy mass of the theta intermediate levels
        CompensatedSum psi_mass;
        for (int m = 0; m < theta && n + m <= lat.n_max; ++m) {
            CompensatedSum level_mass;
            const std::vector<int> indices = sublattice_complement(n + m, lat);
            for (int j : indices) {
                level_mass += chi(lat.x(j)) * std::abs(tables.psi(n + m, j));
            }
            psi_mass += level_mass.value();
        }
        const double denom = tau + lat.dx * psi_mass.value();
        stats.sup_ratio_anti_D = std::max(stats.sup_ratio_anti_D,
                                          state.sup_abs_anti_D() / denom);
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Translation moduli

namespace {

/// int chi(x) |u^D(x + shift, t^{n2}) - u^D(x, t^{n1})| dx, exactly over the
/// step-function geometry.
double weighted_x_integral_of_difference(const StaggeredTrajectory& traj,
                                         const WeightFunction& chi, int n1, int n2,
                                         double shift) {
    const LatticeSpec& lat = traj.lattice;
    const double dx = lat.dx;
    const double lo =
        std::min(lat.x(lat.j_min - 1), lat.x(lat.j_min - 1) - shift) - dx;
    const double hi =
        std::max(lat.x(lat.j_max + 1), lat.x(lat.j_max + 1) - shift) + dx;
    const double merge_tol = 1e-9 * dx;

    // edges of the two step functions, each an arithmetic sequence of step 2dx
    auto first_edge_at_or_after = [&](double start, int level, double offset) {
        // edge positions: m*dx - offset with (m + level) odd
        double m = std::ceil((start + offset) / dx);
        int mi = static_cast<int>(m);
        if (((mi + level) % 2 + 2) % 2 == 0) ++mi;
        return mi;
    };

    int m1 = first_edge_at_or_after(lo, n1, 0.0);
    int m2 = first_edge_at_or_after(lo, n2, shift);
    auto pos1 = [&]() { return m1 * dx; };
    auto pos2 = [&]() { return m2 * dx - shift; };

    CompensatedSum acc;
    double cursor = lo;
    while (cursor < hi - merge_tol) {
        const double p1 = pos1();
        const double p2 = pos2();
        double next = std::min({p1, p2, hi});
        if (p1 <= next + merge_tol) m1 += 2;
        if (p2 <= next + merge_tol) m2 += 2;
        if (next - cursor > merge_tol) {
            const double mid = 0.5 * (cursor + next);
            const double diff =
                traj.u(n2, cell_index(mid + shift, n2, dx)) - traj.u(n1, cell_index(mid, n1, dx));
            if (diff != 0.0) {
                const double weight =
                    chi.is_unit() ? (next - cursor)
                                  : gauss_integrate(kGauss4, cursor, next,
                                                    [&](double x) { return chi(x); });
                acc += std::abs(diff) * weight;
            }
        }
        cursor = next;
    }
    return acc.value();
}

} // namespace

double spatial_translation_modulus(const StaggeredTrajectory& traj, const WeightFunction& chi,
                                   double h, double T) {
    const LatticeSpec& lat = traj.lattice;
    if (!(h > 0.0)) throw NumericsError("spatial offset h must be positive");
    if (!(T > 0.0) || T > lat.t(lat.n_max + 2)) {
        throw NumericsError("modulus horizon outside the computed trajectory");
    }
    if (h > lat.x(lat.j_max) - lat.x(lat.j_min)) {
        throw NumericsError("spatial offset exceeds the padded window");
    }
    CompensatedSum acc;
    for (int n = 0; n <= lat.n_max + 1; ++n) {
        const double overlap = std::min(T, lat.t(n + 1)) - lat.t(n);
        if (overlap <= 0.0) break;
        acc += overlap * weighted_x_integral_of_difference(traj, chi, n, n, h);
    }
    return acc.value();
}

double temporal_translation_modulus(const StaggeredTrajectory& traj, const WeightFunction& chi,
                                    double tau, double T) {
    const LatticeSpec& lat = traj.lattice;
    if (!(tau > 0.0)) throw NumericsError("temporal offset tau must be positive");
    if (tau >= T) throw NumericsError("temporal offset must be smaller than the horizon");
    if (T > lat.t(lat.n_max + 2)) {
        throw NumericsError("modulus horizon outside the computed trajectory");
    }

    const double t_top = T - tau;
    const double dt = lat.dt;
    const double merge_tol = 1e-9 * dt;

    // time breakpoints: m*dt and m*dt - tau
    int m1 = 1;
    double m2 = std::ceil(tau / dt);
    int m2i = static_cast<int>(m2);

    CompensatedSum acc;
    double cursor = 0.0;
    while (cursor < t_top - merge_tol) {
        const double p1 = m1 * dt;
        const double p2 = m2i * dt - tau;
        double next = std::min({p1, p2, t_top});
        if (p1 <= next + merge_tol) ++m1;
        if (p2 <= next + merge_tol) ++m2i;
        if (next - cursor > merge_tol) {
            const double mid = 0.5 * (cursor + next);
            const int n1 = static_cast<int>(std::floor(mid / dt));
            const int n2 = static_cast<int>(std::floor((mid + tau) / dt));
            acc += (next - cursor) *
                   weighted_x_integral_of_difference(traj, chi, n1, n2, 0.0);
        }
        cursor = next;
    }
    return acc.value();
}

double discrete_spatial_modulus(const StaggeredTrajectory& traj, const WeightFunction& chi,
                                int nu, int N) {
    const LatticeSpec& lat = traj.lattice;
    if (N < 0) N = lat.n_max;
    CompensatedSum acc;
    for (int n = 0; n <= N; ++n) {
        CompensatedSum level;
        const std::vector<int> indices = sublattice_complement(n, lat);
        for (int j : indices) {
            level += chi(lat.x(j)) * std::abs(traj.u(n, j - 1 + 2 * nu) - traj.u(n, j - 1));
        }
        acc += level.value();
    }
    return 2.0 * lat.dt * lat.dx * acc.value();
}

double discrete_temporal_modulus(const StaggeredTrajectory& traj, const WeightFunction& chi,
                                 int theta, int N) {
    const LatticeSpec& lat = traj.lattice;
    if (N < 0) N = lat.n_max;
    if (theta % 2 != 0) throw NumericsError("theta must be even");
    CompensatedSum acc;
    for (int n = 0; n + theta <= N; ++n) {
        CompensatedSum level;
        const std::vector<int> indices = sublattice(n, lat);
        for (int j : indices) {
            level += chi(lat.x(j)) * std::abs(traj.u(n + theta, j) - traj.u(n, j));
        }
        acc += level.value();
    }
    return 2.0 * lat.dt * lat.dx * acc.value();
}

// ---------------------------------------------------------------------------
// Exponent fit

ExponentFit fit_exponent(const ModulusCurve& curve) {
    std::vector<double> log_h;
    std::vector<double> log_m;
    ExponentFit fit;
    double max_stat = 0.0;
    double min_off = std::numeric_limits<double>::infinity();
    double max_off = 0.0;
    for (std::size_t i = 0; i < curve.offsets.size(); ++i) {
        const double h = curve.offsets[i];
        const double m = curve.values[i];
        if (!(h > 0.0)) throw Error("modulus offsets must be positive");
        if (!(m > 0.0)) {
            ++fit.excluded_samples;
            continue;
        }
        log_h.push_back(std::log(h));
        log_m.push_back(std::log(m));
        if (curve.mu_theory > 0.0) {
            max_stat = std::max(max_stat, m / std::pow(h, curve.mu_theory));
        }
        min_off = std::min(min_off, h);
        max_off = std::max(max_off, h);
    }
    if (log_h.size() < 4) throw Error("exponent fit needs at least 4 positive samples");
    if (max_off < 10.0 * min_off * (1.0 - 1e-12)) {
        throw Error("exponent fit needs offsets spanning at least one decade");
    }

    const double count = static_cast<double>(log_h.size());
    double mean_h = 0.0, mean_m = 0.0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        mean_h += log_h[i];
        mean_m += log_m[i];
    }
    mean_h /= count;
    mean_m /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        sxx += (log_h[i] - mean_h) * (log_h[i] - mean_h);
        sxy += (log_h[i] - mean_h) * (log_m[i] - mean_m);
    }
    fit.slope = sxy / sxx;
    fit.intercept = mean_m - fit.slope * mean_h;
    double ss = 0.0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        const double r = log_m[i] - (fit.intercept + fit.slope * log_h[i]);
        ss += r * r;
    }
    fit.rms_log_residual = std::sqrt(ss / count);
    fit.boundedness_statistic = max_stat;
    return fit;
}

} // namespace dflux

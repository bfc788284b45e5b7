#ifndef DFLUX_COMPACTNESS_HPP
#define DFLUX_COMPACTNESS_HPP

#include <Eigen/Core>
#include <vector>

#include "dflux/entropy.hpp"
#include "dflux/scheme.hpp"
#include "dflux/weight.hpp"

namespace dflux {

/// Per-level tables of U, k, f(k,U), S(k,U), Q(k,U) for levels 0..N+1 and
/// Psi for levels 0..N, all with exact constant-pad extension outside the
/// window. Every section-4/5 diagnostic reads through these tables.
class TrajectoryTables {
public:
    TrajectoryTables(const StaggeredTrajectory& traj, const EntropyPairSpec& pair);

    const StaggeredTrajectory& trajectory() const { return *traj_; }
    const LatticeSpec& lattice() const { return traj_->lattice; }

    double u(int n, int j) const { return traj_->u(n, j); }
    double k(int n, int j) const { return traj_->k(n, j); }
    double f(int n, int j) const { return f_[static_cast<std::size_t>(n)].value(j); }
    double S(int n, int j) const { return s_[static_cast<std::size_t>(n)].value(j); }
    double Q(int n, int j) const { return q_[static_cast<std::size_t>(n)].value(j); }
    double psi(int n, int j) const { return psi_[static_cast<std::size_t>(n)].value(j); }

private:
    const StaggeredTrajectory* traj_;
    std::vector<StaggeredField> f_;
    std::vector<StaggeredField> s_;
    std::vector<StaggeredField> q_;
    std::vector<EntropyProductionField> psi_;
};

/// Discrete translation: nu cells (2*nu indices) in space, or theta levels in
/// time with theta even.
struct ShiftSpec {
    enum class Kind { Spatial, Temporal };
    Kind kind = Kind::Spatial;
    int amount = 0; // nu (spatial) or theta (temporal, even)

    static ShiftSpec spatial(int nu) { return {Kind::Spatial, nu}; }
    static ShiftSpec temporal(int theta) { return {Kind::Temporal, theta}; }
};

/// The weighted difference fields at one level:
///   A = chi_j D U, B = chi_j D f, D = chi_j D S, E = chi_j D Q on Omega_n,
///   C_A, C_D on Omega'_n (C_D carries the chi_j D Psi term),
/// where D is the spatial shift by 2*nu indices or the temporal shift by
/// theta levels. Fields are stored over a window extended by the shift so
/// that every nonzero entry of the whole-line sums is present; reads outside
/// return zero.
struct DifferenceFields {
    ShiftSpec shift;
    int level = 0;
    int j_first_even = 0; // parity of Omega_n
    Eigen::ArrayXd A, B, D, E;
    int j_first_odd = 0; // parity of Omega'_n
    Eigen::ArrayXd C_A, C_D;

    double a(int j) const { return at(A, j_first_even, j); }
    double b(int j) const { return at(B, j_first_even, j); }
    double d(int j) const { return at(D, j_first_even, j); }
    double e(int j) const { return at(E, j_first_even, j); }
    double c_a(int j) const { return at(C_A, j_first_odd, j); }
    double c_d(int j) const { return at(C_D, j_first_odd, j); }

private:
    static double at(const Eigen::ArrayXd& arr, int first, int j) {
        const int idx = (j - first) / 2;
        if (j < first || idx >= arr.size()) return 0.0;
        return arr[idx];
    }
};

DifferenceFields difference_fields(const TrajectoryTables& tables, const WeightFunction& chi,
                                   ShiftSpec shift, int n);

/// Anti-differences and interaction functional of one level:
///   anti_A_at(l) = dx * sum_{j <= l} A_j   (prefix),
///   anti_D_at(j) = dx * sum_{l >= j} D_l   (suffix),
///   I = dx * sum_j A_j * anti_D_at(j)  =  dx^2 * sum sum_{j <= l} A_j D_l.
class InteractionState {
public:
    InteractionState(const DifferenceFields& fields, double dx);

    double anti_A_at(int j) const;
    double anti_D_at(int j) const;
    double interaction_functional() const { return interaction_; }
    double sup_abs_anti_A() const { return sup_anti_a_; }
    double sup_abs_anti_D() const { return sup_anti_d_; }

private:
    int j_first_ = 0;
    Eigen::ArrayXd prefix_a_;
    Eigen::ArrayXd suffix_d_;
    double total_a_ = 0.0;
    double total_d_ = 0.0;
    double interaction_ = 0.0;
    double sup_anti_a_ = 0.0;
    double sup_anti_d_ = 0.0;
};

/// Every named term of the interaction identity.
///   lhs = (1/2) dt dx sum_n sum_{Omega_n} (A E - D B)
///   rhs = s3 + s4 + I_last - I_first + (r1 + r2 + r3 + r4)
/// The residual is lhs - rhs, normalized by the largest participating term.
struct IdentityBreakdown {
    double lhs = 0.0;
    double s3 = 0.0; // - dx sum C_A * (anti_D_{j-1} + anti_D_{j+1})/2
    double s4 = 0.0; // - dx sum C_D * anti_A_j^{n+1}
    double I_first = 0.0;
    double I_last = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    double r4 = 0.0;
    double residual = 0.0;
    double normalized_residual = 0.0;
    double scale = 0.0;

    double discretization_term() const { return r1 + r2 + r3 + r4; }
};

/// Spatial identity, summed over n = 0..N (N defaults to the lattice horizon).
IdentityBreakdown interaction_identity_residual_spatial(const TrajectoryTables& tables,
                                                        const WeightFunction& chi, int nu,
                                                        int N = -1);

/// Temporal identity with even shift theta, summed over n = 0..N-theta.
IdentityBreakdown interaction_identity_residual_temporal(const TrajectoryTables& tables,
                                                         const WeightFunction& chi, int theta,
                                                         int N = -1);

/// Gamma_j^n with all four factors frozen at k_j^n, its lower bound
/// C_fS |dU|^{p_f+p_S+2}, and the four cross-coefficient corrections that
/// the frozen-k decomposition splits off (reported, not folded in):
///   chi_j^2 (Gamma + cross1 - cross2 - cross3 - cross4) = A E - D B.
struct GammaField {
    int level = 0;
    int j_first = 0;
    Eigen::ArrayXd gamma;
    Eigen::ArrayXd bound;
    Eigen::ArrayXd margin; // gamma - bound
    Eigen::ArrayXd cross1, cross2, cross3, cross4;
};

GammaField gamma_field(const TrajectoryTables& tables, const EntropyPairSpec& pair, int n,
                       int nu);

/// Worst Gamma margin over all levels.
struct GammaCheck {
    double worst_margin = 0.0;
    double scale = 0.0;
    long violations = 0;
    long cells_checked = 0;
};

GammaCheck check_gamma_bound(const TrajectoryTables& tables, const EntropyPairSpec& pair,
                             int nu, double tolerance_scale = 1e-12);

/// Measured sup ratios of the anti-difference bounds:
/// spatial: sup |anti_A| / h and sup |anti_D| / h with h = 2 nu dx;
/// temporal: sup |anti_A~| / tau and sup of |anti_D~| relative to
/// tau + dx sum_{m<theta} sum chi |Psi| (the shifted-window entropy mass).
struct AntiDifferenceStats {
    double sup_ratio_anti_A = 0.0;
    double sup_ratio_anti_D = 0.0;
};

AntiDifferenceStats anti_difference_stats(const TrajectoryTables& tables,
                                          const WeightFunction& chi, ShiftSpec shift);

/// Exact weighted L1 modulus of the spatial translate:
///   int_0^T int chi(x) |u(x+h,t) - u(x,t)| dx dt
/// computed segment-by-segment from the step-function geometry; chi is
/// integrated per segment with 4-point Gauss (exactly, for the unit weight).
double spatial_translation_modulus(const StaggeredTrajectory& traj, const WeightFunction& chi,
                                   double h, double T);

/// Exact weighted L1 modulus of the temporal translate:
///   int_0^{T-tau} int chi(x) |u(x,t+tau) - u(x,t)| dx dt.
double temporal_translation_modulus(const StaggeredTrajectory& traj, const WeightFunction& chi,
                                    double tau, double T);

/// Lattice-multiple reductions of the moduli (cross-checks):
///   2 dt dx sum_{n<=N} sum_{Omega'_n} chi_j |U_{j-1+2nu}^n - U_{j-1}^n|,
///   2 dt dx sum_{n<=N-theta} sum_{Omega_n} chi_j |U_j^{n+theta} - U_j^n|.
double discrete_spatial_modulus(const StaggeredTrajectory& traj, const WeightFunction& chi,
                                int nu, int N = -1);
double discrete_temporal_modulus(const StaggeredTrajectory& traj, const WeightFunction& chi,
                                 int theta, int N = -1);

/// A measured modulus curve along one translation axis.
struct ModulusCurve {
    enum class Axis { Spatial, Temporal };
    Axis axis = Axis::Spatial;
    std::vector<double> offsets;
    std::vector<double> values;
    double mu_theory = 0.0; // 1/(p_f + p_S + 2)
};

/// Least-squares log-log fit of a modulus curve. Requires >= 4 positive
/// samples spanning at least one decade; nonpositive samples are excluded
/// and counted.
struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_log_residual = 0.0;
    int excluded_samples = 0;
    double boundedness_statistic = 0.0; // max modulus / offset^{mu_theory}
};

ExponentFit fit_exponent(const ModulusCurve& curve);

} // namespace dflux

#endif

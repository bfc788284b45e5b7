#ifndef DFLUX_PROBLEM_HPP
#define DFLUX_PROBLEM_HPP

#include <functional>
#include <string>
#include <vector>

#include "dflux/errors.hpp"

namespace dflux {

/// Real function of (k, u) on U = [alpha,beta] x [a,b].
using ScalarFn2 = std::function<double(double, double)>;

/// Flux f(k,u) with its partial derivatives and sup norms over U.
/// du_lipschitz / dk_lipschitz are grid maxima inflated by 5%, so every CFL
/// and constant assembled from them is conservative.
struct FluxSpec {
    ScalarFn2 f;
    ScalarFn2 df_du;
    ScalarFn2 df_dk;
    double du_lipschitz = 0.0;
    double dk_lipschitz = 0.0;
    bool zero_at_ends = false; // f(k,a) = f(k,b) = 0 for all k, makes [a,b] invariant
};

/// Quantified strict monotonicity of df_du and dS_du:
///   d_u f(k,v) - d_u f(k,w) >= C_f (v-w)^{p_f}   for a <= w < v <= b,
/// and likewise for S. The derived constant feeds the pointwise lower bound
/// Gamma >= C_fS |dU|^{p_f+p_S+2}.
struct NonlinearityConstants {
    bool asserted = false;
    double C_f = 0.0;
    double p_f = 1.0;
    double C_S = 0.0;
    double p_S = 1.0;

    double C_fS() const {
        return C_f * C_S / ((1.0 + p_f + p_S) * (2.0 + p_f + p_S));
    }
    double power() const { return p_f + p_S + 2.0; }
    double modulus_exponent() const { return 1.0 / power(); }
};

/// Entropy pair (S, Q) with d_u Q = d_u S * d_u f.
struct EntropyPairSpec {
    ScalarFn2 S;
    ScalarFn2 dS_du;
    ScalarFn2 dS_dk;
    ScalarFn2 d2S_duu;
    double d2S_duu_lower = 0.0; // gamma; 0 when uniform convexity is not used
    ScalarFn2 Q;
    ScalarFn2 dQ_dk;
    NonlinearityConstants nonlinearity;
};

/// Discontinuous coefficient k(x,t), right-continuous in x per time slice,
/// constant on each side outside a bounded window.
class CoefficientSpec {
public:
    enum class Kind { Constant, PiecewiseX, JumpLine, Tabulated };

    static CoefficientSpec constant(double value);
    /// values.size() == breakpoints.size() + 1; breakpoints strictly increasing.
    static CoefficientSpec piecewise_x(std::vector<double> breakpoints,
                                       std::vector<double> values);
    /// Jump across the line x = x0 + speed * t.
    static CoefficientSpec jump_line(double x0, double speed, double left, double right);
    /// Samples interpreted as right-continuous steps, constant in t.
    static CoefficientSpec tabulated(std::vector<double> xs, std::vector<double> values);

    double operator()(double x, double t) const;

    Kind kind() const { return kind_; }
    double min_value() const { return min_value_; }
    double max_value() const { return max_value_; }
    /// Total variation in x of the slice k(., t).
    double total_variation_x(double t) const;
    /// Radius R such that k(.,t) is constant on each side of [-R, R] for all
    /// t in [0, t_max].
    double support_radius(double t_max) const;

    /// Copy with x-breakpoints moved to the nearest odd multiple of dx (cell
    /// edges of the even sublattice); ties round toward +inf.
    CoefficientSpec snapped_to_edges(double dx) const;

    double jump_speed() const { return speed_; }

private:
    CoefficientSpec() = default;

    Kind kind_ = Kind::Constant;
    std::vector<double> breakpoints_; // PiecewiseX / Tabulated
    std::vector<double> values_;      // size breakpoints_+1 (PiecewiseX) or == xs (Tabulated)
    double x0_ = 0.0;                 // JumpLine
    double speed_ = 0.0;
    double left_ = 0.0;
    double right_ = 0.0;
    double min_value_ = 0.0;
    double max_value_ = 0.0;
};

/// Initial data u0 with a bounded variation window; constant on each side
/// outside it.
class InitialDataSpec {
public:
    static InitialDataSpec constant(double c);
    static InitialDataSpec riemann(double u_left, double u_right, double x0);
    /// values.size() == breakpoints.size() + 1.
    static InitialDataSpec steps(std::vector<double> breakpoints, std::vector<double> values);
    /// Generic evaluator; fn(x) must equal pad for |x| >= support_radius.
    static InitialDataSpec function(std::function<double(double)> fn, double support_radius,
                                    double pad);

    double operator()(double x) const;

    double support_radius() const;
    double left_pad() const;
    double right_pad() const;
    bool is_step_data() const { return !fn_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    InitialDataSpec snapped_to_edges(double dx) const;

private:
    InitialDataSpec() = default;

    std::vector<double> breakpoints_;
    std::vector<double> values_;
    std::function<double(double)> fn_;
    double support_radius_ = 0.0;
    double pad_ = 0.0;
};

/// Sup norms over U, taken on a 512x512 tensor grid and inflated by 5%.
struct SupNorms {
    double df_du = 0.0;
    double df_dk = 0.0;
    double dS_du = 0.0;
    double dS_dk = 0.0;
    double d2S_duu = 0.0;
    double dQ_dk = 0.0;
};

struct ProblemSpec {
    std::string name;
    FluxSpec flux;
    EntropyPairSpec entropy;
    CoefficientSpec coefficient = CoefficientSpec::constant(1.0);
    InitialDataSpec init = InitialDataSpec::constant(0.0);
    double a = 0.0; // state bounds
    double b = 1.0;
    double alpha = 1.0; // coefficient bounds
    double beta = 1.0;
    SupNorms norms;

    /// True when the scheme's maximum principle applies: either (ass:f_to)
    /// holds or the coefficient is constant.
    bool invariant_region_asserted() const {
        return flux.zero_at_ends || coefficient.kind() == CoefficientSpec::Kind::Constant;
    }
};

/// Compute sup norms of all stored derivative evaluators over U.
SupNorms compute_sup_norms(const FluxSpec& flux, const EntropyPairSpec& entropy, double alpha,
                           double beta, double a, double b);

/// Complete an entropy (S given, Q empty) into a pair via
///   Q(k,u) = int_a^u dS_du(k,s) * df_du(k,s) ds
/// using composite 8-point Gauss with `quadrature_points` panels over [a,u];
/// baseline Q(k,a) = 0. dQ_dk is produced by centered differences of Q.
EntropyPairSpec entropy_flux_from_entropy(const EntropyPairSpec& entropy_only,
                                          const FluxSpec& flux, int quadrature_points, double a,
                                          double b);

struct ValidationItem {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string message; // witnessing sample point on failure
};

struct ValidationReport {
    std::vector<ValidationItem> items;

    bool all_pass() const {
        for (const auto& item : items)
            if (!item.pass && !item.skipped) return false;
        return true;
    }
};

/// Check every declared assumption on a deterministic sample grid of U.
/// Failures are reported, not thrown.
ValidationReport validate_problem(const ProblemSpec& problem);

/// Built-in problems: burgers-riemann, twoflux-convex, twoflux-traffic,
/// moving-jump. Throws ProblemError for unknown names.
ProblemSpec builtin_problem(const std::string& name);

/// Copy of `problem` with initial-data and coefficient breakpoints snapped to
/// the nearest cell edge of the even sublattice. Applied by run preparation;
/// the raw sampling operations evaluate unsnapped specs.
ProblemSpec snap_problem_to_lattice(const ProblemSpec& problem, double dx);

} // namespace dflux

#endif

#include "dflux/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dflux/quadrature.hpp"

namespace dflux {

namespace {

double step_lookup(const std::vector<double>& breakpoints, const std::vector<double>& values,
                   double x) {
    // right-continuous: value index = number of breakpoints <= x
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

bool strictly_increasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) return false;
    }
    return true;
}

double snap_to_odd_edge(double x, double dx) {
    // nearest odd multiple of dx; ties round toward +inf
    const double r = x / dx;
    const double m = std::floor((r - 1.0) / 2.0 + 0.5);
    return (2.0 * m + 1.0) * dx;
}

std::vector<double> snap_breakpoints(const std::vector<double>& breakpoints, double dx) {
    std::vector<double> snapped;
    snapped.reserve(breakpoints.size());
    for (double x : breakpoints) snapped.push_back(snap_to_odd_edge(x, dx));
    for (std::size_t i = 1; i < snapped.size(); ++i) {
        if (!(snapped[i] > snapped[i - 1])) {
            throw ProblemError("breakpoint snapping collapsed two breakpoints; refine the grid");
        }
    }
    return snapped;
}

std::string format_point(double k, double u) {
    std::ostringstream out;
    out << "(k=" << k << ", u=" << u << ")";
    return out.str();
}

} // namespace

// ---------------------------------------------------------------------------
// CoefficientSpec

CoefficientSpec CoefficientSpec::constant(double value) {
    CoefficientSpec spec;
    spec.kind_ = Kind::Constant;
    spec.values_ = {value};
    spec.min_value_ = spec.max_value_ = value;
    return spec;
}

CoefficientSpec CoefficientSpec::piecewise_x(std::vector<double> breakpoints,
                                             std::vector<double> values) {
    if (values.size() != breakpoints.size() + 1) {
        throw ProblemError("piecewise coefficient needs one more value than breakpoints");
    }
    if (!strictly_increasing(breakpoints)) {
        throw ProblemError("coefficient breakpoints must be strictly increasing");
    }
    CoefficientSpec spec;
    spec.kind_ = Kind::PiecewiseX;
    spec.breakpoints_ = std::move(breakpoints);
    spec.values_ = std::move(values);
    spec.min_value_ = *std::min_element(spec.values_.begin(), spec.values_.end());
    spec.max_value_ = *std::max_element(spec.values_.begin(), spec.values_.end());
    return spec;
}

CoefficientSpec CoefficientSpec::jump_line(double x0, double speed, double left, double right) {
    CoefficientSpec spec;
    spec.kind_ = Kind::JumpLine;
    spec.x0_ = x0;
    spec.speed_ = speed;
    spec.left_ = left;
    spec.right_ = right;
    spec.min_value_ = std::min(left, right);
    spec.max_value_ = std::max(left, right);
    return spec;
}

CoefficientSpec CoefficientSpec::tabulated(std::vector<double> xs, std::vector<double> values) {
    if (xs.size() != values.size() || xs.empty()) {
        throw ProblemError("tabulated coefficient needs matching nonempty xs/values");
    }
    if (!strictly_increasing(xs)) {
        throw ProblemError("tabulated sample positions must be strictly increasing");
    }
    CoefficientSpec spec;
    spec.kind_ = Kind::Tabulated;
    // sample at xs[i] extends right-continuously; before xs[0] the first value holds
    spec.breakpoints_.assign(xs.begin() + 1, xs.end());
    spec.values_ = std::move(values);
    spec.min_value_ = *std::min_element(spec.values_.begin(), spec.values_.end());
    spec.max_value_ = *std::max_element(spec.values_.begin(), spec.values_.end());
    return spec;
}

double CoefficientSpec::operator()(double x, double t) const {
    switch (kind_) {
    case Kind::Constant:
        return values_[0];
    case Kind::PiecewiseX:
    case Kind::Tabulated:
        return step_lookup(breakpoints_, values_, x);
    case Kind::JumpLine:
        return x < x0_ + speed_ * t ? left_ : right_;
    }
    throw ProblemError("invalid coefficient kind");
}

double CoefficientSpec::total_variation_x(double) const {
    switch (kind_) {
    case Kind::Constant:
        return 0.0;
    case Kind::PiecewiseX:
    case Kind::Tabulated: {
        double tv = 0.0;
        for (std::size_t i = 1; i < values_.size(); ++i) {
            tv += std::abs(values_[i] - values_[i - 1]);
        }
        return tv;
    }
    case Kind::JumpLine:
        return std::abs(right_ - left_);
    }
    throw ProblemError("invalid coefficient kind");
}

double CoefficientSpec::support_radius(double t_max) const {
    switch (kind_) {
    case Kind::Constant:
        return 0.0;
    case Kind::PiecewiseX:
    case Kind::Tabulated: {
        double radius = 0.0;
        for (double x : breakpoints_) radius = std::max(radius, std::abs(x));
        return radius;
    }
    case Kind::JumpLine:
        return std::abs(x0_) + std::abs(speed_) * std::max(t_max, 0.0);
    }
    throw ProblemError("invalid coefficient kind");
}

CoefficientSpec CoefficientSpec::snapped_to_edges(double dx) const {
    CoefficientSpec spec = *this;
    switch (kind_) {
    case Kind::Constant:
        break;
    case Kind::PiecewiseX:
    case Kind::Tabulated:
        spec.breakpoints_ = snap_breakpoints(breakpoints_, dx);
        break;
    case Kind::JumpLine:
        spec.x0_ = snap_to_odd_edge(x0_, dx);
        break;
    }
    return spec;
}

// ---------------------------------------------------------------------------
// InitialDataSpec

InitialDataSpec InitialDataSpec::constant(double c) {
    InitialDataSpec spec;
    spec.values_ = {c};
    spec.pad_ = c;
    return spec;
}

InitialDataSpec InitialDataSpec::riemann(double u_left, double u_right, double x0) {
    return steps({x0}, {u_left, u_right});
}

InitialDataSpec InitialDataSpec::steps(std::vector<double> breakpoints,
                                       std::vector<double> values) {
    if (values.size() != breakpoints.size() + 1) {
        throw ProblemError("step initial data needs one more value than breakpoints");
    }
    if (!strictly_increasing(breakpoints)) {
        throw ProblemError("initial-data breakpoints must be strictly increasing");
    }
    InitialDataSpec spec;
    spec.breakpoints_ = std::move(breakpoints);
    spec.values_ = std::move(values);
    for (double x : spec.breakpoints_) {
        spec.support_radius_ = std::max(spec.support_radius_, std::abs(x));
    }
    return spec;
}

InitialDataSpec InitialDataSpec::function(std::function<double(double)> fn,
                                          double support_radius, double pad) {
    InitialDataSpec spec;
    spec.fn_ = std::move(fn);
    spec.support_radius_ = support_radius;
    spec.pad_ = pad;
    return spec;
}

double InitialDataSpec::operator()(double x) const {
    if (fn_) return fn_(x);
    if (breakpoints_.empty()) return values_[0];
    return step_lookup(breakpoints_, values_, x);
}

double InitialDataSpec::support_radius() const { return support_radius_; }

double InitialDataSpec::left_pad() const {
    if (fn_ || breakpoints_.empty()) return fn_ ? pad_ : values_[0];
    return values_.front();
}

double InitialDataSpec::right_pad() const {
    if (fn_ || breakpoints_.empty()) return fn_ ? pad_ : values_[0];
    return values_.back();
}

InitialDataSpec InitialDataSpec::snapped_to_edges(double dx) const {
    if (fn_ || breakpoints_.empty()) return *this;
    InitialDataSpec spec = *this;
    spec.breakpoints_ = snap_breakpoints(breakpoints_, dx);
    spec.support_radius_ = 0.0;
    for (double x : spec.breakpoints_) {
        spec.support_radius_ = std::max(spec.support_radius_, std::abs(x));
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Sup norms

SupNorms compute_sup_norms(const FluxSpec& flux, const EntropyPairSpec& entropy, double alpha,
                           double beta, double a, double b) {
    constexpr int kGridPoints = 512;
    constexpr double kInflation = 1.05;

    auto grid_max = [&](const ScalarFn2& fn) {
        if (!fn) return 0.0;
        double best = 0.0;
        for (int i = 0; i < kGridPoints; ++i) {
            const double k =
                alpha == beta ? alpha : alpha + (beta - alpha) * i / (kGridPoints - 1);
            for (int j = 0; j < kGridPoints; ++j) {
                const double u = a + (b - a) * j / (kGridPoints - 1);
                const double v = std::abs(fn(k, u));
                if (!std::isfinite(v)) {
                    throw ProblemError("non-finite derivative sample at " + format_point(k, u));
                }
                best = std::max(best, v);
            }
            if (alpha == beta) break;
        }
        return best * kInflation;
    };

    SupNorms norms;
    norms.df_du = grid_max(flux.df_du);
    norms.df_dk = grid_max(flux.df_dk);
    norms.dS_du = grid_max(entropy.dS_du);
    norms.dS_dk = grid_max(entropy.dS_dk);
    norms.d2S_duu = grid_max(entropy.d2S_duu);
    norms.dQ_dk = grid_max(entropy.dQ_dk);
    return norms;
}

// ---------------------------------------------------------------------------
// Entropy flux from entropy

EntropyPairSpec entropy_flux_from_entropy(const EntropyPairSpec& entropy_only,
                                          const FluxSpec& flux, int quadrature_points, double a,
                                          double b) {
    if (quadrature_points <= 0) throw ProblemError("quadrature_points must be positive");
    if (!entropy_only.dS_du || !flux.df_du) {
        throw ProblemError("entropy_flux_from_entropy needs dS_du and df_du");
    }

    EntropyPairSpec pair = entropy_only;
    const ScalarFn2 dS_du = entropy_only.dS_du;
    const ScalarFn2 df_du = flux.df_du;
    const int panels = quadrature_points;

    auto q_fn = [dS_du, df_du, panels, a](double k, double u) {
        const double value =
            gauss_integrate_composite(kGauss8, a, u, panels, [&](double s) {
                const double integrand = dS_du(k, s) * df_du(k, s);
                if (!std::isfinite(integrand)) {
                    throw ProblemError("non-finite entropy-flux integrand at " +
                                       format_point(k, s));
                }
                return integrand;
            });
        return value;
    };
    pair.Q = q_fn;

    pair.dQ_dk = [q_fn](double k, double u) {
        const double step = 1e-6 * (1.0 + std::abs(k));
        return (q_fn(k + step, u) - q_fn(k - step, u)) / (2.0 * step);
    };
    (void)b;
    return pair;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_problem(const ProblemSpec& p) {
    ValidationReport report;
    auto add = [&](std::string name, bool pass, std::string message = {}) {
        report.items.push_back({std::move(name), pass, false, std::move(message)});
    };
    auto add_skipped = [&](std::string name, std::string message) {
        report.items.push_back({std::move(name), true, true, std::move(message)});
    };

    constexpr int kSamplesU = 50;
    constexpr int kSamplesK = 20;
    auto u_at = [&](int i) { return p.a + (p.b - p.a) * i / (kSamplesU - 1); };
    auto k_at = [&](int i) {
        return p.alpha == p.beta ? p.alpha : p.alpha + (p.beta - p.alpha) * i / (kSamplesK - 1);
    };
    const int n_k = p.alpha == p.beta ? 1 : kSamplesK;

    // initial data bounds (ass on u0)
    {
        bool pass = true;
        std::string witness;
        const double radius = std::max(p.init.support_radius(), 1.0) * 1.5;
        for (int i = 0; i < 400 && pass; ++i) {
            const double x = -radius + 2.0 * radius * i / 399.0;
            const double u = p.init(x);
            if (!(u >= p.a && u <= p.b) || !std::isfinite(u)) {
                pass = false;
                std::ostringstream out;
                out << "u0(" << x << ") = " << u << " outside [" << p.a << ", " << p.b << "]";
                witness = out.str();
            }
        }
        add("init_data_bounds", pass, witness);
    }

    // coefficient bounds + BV window (ass on k)
    {
        bool pass = true;
        std::string witness;
        const double radius = std::max(p.coefficient.support_radius(10.0), 1.0) * 1.5;
        for (int i = 0; i < 200 && pass; ++i) {
            const double x = -radius + 2.0 * radius * i / 199.0;
            for (int m = 0; m < 5 && pass; ++m) {
                const double t = 2.5 * m;
                const double k = p.coefficient(x, t);
                if (!(k >= p.alpha && k <= p.beta) || !std::isfinite(k)) {
                    pass = false;
                    std::ostringstream out;
                    out << "k(" << x << ", " << t << ") = " << k << " outside [" << p.alpha
                        << ", " << p.beta << "]";
                    witness = out.str();
                }
            }
        }
        add("coefficient_bounds", pass, witness);
        add("coefficient_bv", std::isfinite(p.coefficient.total_variation_x(0.0)));
    }

    // flux derivative consistency (f in C^1)
    {
        bool pass = true;
        std::string witness;
        const double du = 1e-6 * (p.b - p.a);
        const double dk = 1e-6 * std::max(p.beta - p.alpha, 1.0);
        for (int ik = 0; ik < n_k && pass; ++ik) {
            for (int iu = 1; iu + 1 < kSamplesU && pass; ++iu) {
                const double k = k_at(ik);
                const double u = u_at(iu);
                const double fd_u = (p.flux.f(k, u + du) - p.flux.f(k, u - du)) / (2 * du);
                const double tol_u = 1e-6 * (1.0 + std::abs(p.flux.df_du(k, u)));
                if (std::abs(fd_u - p.flux.df_du(k, u)) > tol_u) {
                    pass = false;
                    witness = "df_du mismatch at " + format_point(k, u);
                }
                if (p.alpha < p.beta && k - dk >= p.alpha && k + dk <= p.beta) {
                    const double fd_k = (p.flux.f(k + dk, u) - p.flux.f(k - dk, u)) / (2 * dk);
                    const double tol_k = 1e-6 * (1.0 + std::abs(p.flux.df_dk(k, u)));
                    if (std::abs(fd_k - p.flux.df_dk(k, u)) > tol_k) {
                        pass = false;
                        witness = "df_dk mismatch at " + format_point(k, u);
                    }
                }
            }
        }
        add("flux_derivatives", pass, witness);
    }

    // invariant-region flux condition (ass:f_to)
    if (p.flux.zero_at_ends) {
        bool pass = true;
        std::string witness;
        const double scale = 1.0 + std::abs(p.flux.f(p.alpha, 0.5 * (p.a + p.b)));
        for (int ik = 0; ik < n_k && pass; ++ik) {
            const double k = k_at(ik);
            if (std::abs(p.flux.f(k, p.a)) > 1e-14 * scale ||
                std::abs(p.flux.f(k, p.b)) > 1e-14 * scale) {
                pass = false;
                witness = "f not zero at state bounds for k = " + std::to_string(k);
            }
        }
        add("flux_zero_at_ends", pass, witness);
    } else {
        add_skipped("flux_zero_at_ends", "not declared");
    }

    // entropy pair compatibility (d_u Q == d_u S * d_u f)
    {
        bool pass = true;
        std::string witness;
        const double du = 1e-6 * (p.b - p.a);
        const double tol = 1e-6 * (1.0 + p.norms.dS_du * p.norms.df_du);
        for (int ik = 0; ik < n_k && pass; ++ik) {
            for (int iu = 1; iu + 1 < kSamplesU && pass; ++iu) {
                const double k = k_at(ik);
                const double u = u_at(iu);
                const double dq = (p.entropy.Q(k, u + du) - p.entropy.Q(k, u - du)) / (2 * du);
                const double expected = p.entropy.dS_du(k, u) * p.flux.df_du(k, u);
                if (std::abs(dq - expected) > tol) {
                    pass = false;
                    witness = "entropy-flux compatibility fails at " + format_point(k, u);
                }
            }
        }
        add("entropy_pair_compatibility", pass, witness);
    }

    // uniform convexity of S when declared
    if (p.entropy.d2S_duu_lower > 0.0) {
        bool pass = true;
        std::string witness;
        for (int ik = 0; ik < n_k && pass; ++ik) {
            for (int iu = 0; iu < kSamplesU && pass; ++iu) {
                const double k = k_at(ik);
                const double u = u_at(iu);
                if (p.entropy.d2S_duu(k, u) < p.entropy.d2S_duu_lower - 1e-12) {
                    pass = false;
                    witness = "d2S_duu below declared gamma at " + format_point(k, u);
                }
            }
        }
        add("entropy_convexity", pass, witness);
    } else {
        add_skipped("entropy_convexity", "gamma not declared");
    }

    // genuine nonlinearity constants
    if (p.entropy.nonlinearity.asserted) {
        const auto& nl = p.entropy.nonlinearity;
        bool pass = nl.C_f > 0.0 && nl.C_S > 0.0 && nl.p_f >= 1.0 && nl.p_S >= 1.0;
        std::string witness = pass ? "" : "constants outside admissible ranges";
        constexpr int kPairSamples = 40;
        for (int ik = 0; ik < n_k && pass; ++ik) {
            const double k = k_at(ik);
            for (int iw = 0; iw < kPairSamples && pass; ++iw) {
                for (int iv = iw + 1; iv < kPairSamples && pass; ++iv) {
                    const double w = p.a + (p.b - p.a) * iw / (kPairSamples - 1);
                    const double v = p.a + (p.b - p.a) * iv / (kPairSamples - 1);
                    const double slack = 1e-12 * (1.0 + p.norms.df_du + p.norms.dS_du);
                    const double gap_f = p.flux.df_du(k, v) - p.flux.df_du(k, w);
                    if (gap_f < nl.C_f * std::pow(v - w, nl.p_f) - slack) {
                        pass = false;
                        witness = "df_du gap below C_f(v-w)^p_f at k=" + std::to_string(k) +
                                  " w=" + std::to_string(w) + " v=" + std::to_string(v);
                    }
                    const double gap_s = p.entropy.dS_du(k, v) - p.entropy.dS_du(k, w);
                    if (pass && gap_s < nl.C_S * std::pow(v - w, nl.p_S) - slack) {
                        pass = false;
                        witness = "dS_du gap below C_S(v-w)^p_S at k=" + std::to_string(k) +
                                  " w=" + std::to_string(w) + " v=" + std::to_string(v);
                    }
                }
            }
        }
        add("genuine_nonlinearity", pass, witness);
    } else {
        add_skipped("genuine_nonlinearity", "not asserted");
    }

    // pads must be admissible steady states
    {
        const double lp = p.init.left_pad();
        const double rp = p.init.right_pad();
        const bool pass = (lp == p.a || lp == p.b) && (rp == p.a || rp == p.b);
        add("padding_states", pass,
            pass ? "" : "initial-data pad values must equal a or b");
    }

    return report;
}

// ---------------------------------------------------------------------------
// Built-ins

namespace {

ProblemSpec make_burgers_riemann() {
    ProblemSpec p;
    p.name = "burgers-riemann";
    p.a = 0.0;
    p.b = 1.0;
    p.alpha = 1.0;
    p.beta = 1.0;
    p.flux.f = [](double, double u) { return 0.5 * u * u; };
    p.flux.df_du = [](double, double u) { return u; };
    p.flux.df_dk = [](double, double) { return 0.0; };
    p.flux.zero_at_ends = false;
    p.entropy.S = p.flux.f;
    p.entropy.dS_du = p.flux.df_du;
    p.entropy.dS_dk = p.flux.df_dk;
    p.entropy.d2S_duu = [](double, double) { return 1.0; };
    p.entropy.d2S_duu_lower = 1.0;
    p.entropy.Q = [](double, double u) { return u * u * u / 3.0; };
    p.entropy.dQ_dk = [](double, double) { return 0.0; };
    p.entropy.nonlinearity = {true, 1.0, 1.0, 1.0, 1.0};
    p.coefficient = CoefficientSpec::constant(1.0);
    p.init = InitialDataSpec::riemann(1.0, 0.0, 0.0);
    return p;
}

ProblemSpec make_twoflux_convex() {
    ProblemSpec p;
    p.name = "twoflux-convex";
    p.a = 0.0;
    p.b = 1.0;
    p.alpha = 1.0;
    p.beta = 2.0;
    p.flux.f = [](double k, double u) { return k * u * (u - 1.0); };
    p.flux.df_du = [](double k, double u) { return k * (2.0 * u - 1.0); };
    p.flux.df_dk = [](double, double u) { return u * (u - 1.0); };
    p.flux.zero_at_ends = true;
    p.entropy.S = p.flux.f;
    p.entropy.dS_du = p.flux.df_du;
    p.entropy.dS_dk = p.flux.df_dk;
    p.entropy.d2S_duu = [](double k, double) { return 2.0 * k; };
    p.entropy.d2S_duu_lower = 2.0; // 2*alpha
    // d_u Q = k^2 (2u-1)^2  =>  Q = k^2 ((2u-1)^3 + 1) / 6, Q(k,0) = 0
    p.entropy.Q = [](double k, double u) {
        const double w = 2.0 * u - 1.0;
        return k * k * (w * w * w + 1.0) / 6.0;
    };
    p.entropy.dQ_dk = [](double k, double u) {
        const double w = 2.0 * u - 1.0;
        return k * (w * w * w + 1.0) / 3.0;
    };
    p.entropy.nonlinearity = {true, 2.0, 1.0, 2.0, 1.0}; // C = 2*alpha
    p.coefficient = CoefficientSpec::piecewise_x({0.0}, {1.0, 2.0});
    p.init = InitialDataSpec::steps({-0.5, 0.0, 0.5}, {0.0, 0.8, 0.3, 0.0});
    return p;
}

ProblemSpec make_twoflux_traffic() {
    ProblemSpec p;
    p.name = "twoflux-traffic";
    p.a = 0.0;
    p.b = 1.0;
    p.alpha = 1.0;
    p.beta = 2.0;
    p.flux.f = [](double k, double u) { return k * u * (1.0 - u); };
    p.flux.df_du = [](double k, double u) { return k * (1.0 - 2.0 * u); };
    p.flux.df_dk = [](double, double u) { return u * (1.0 - u); };
    p.flux.zero_at_ends = true;
    // concave flux: genuine nonlinearity not asserted; S = u^2/2 still gives
    // a valid pair for the entropy-production diagnostics
    p.entropy.S = [](double, double u) { return 0.5 * u * u; };
    p.entropy.dS_du = [](double, double u) { return u; };
    p.entropy.dS_dk = [](double, double) { return 0.0; };
    p.entropy.d2S_duu = [](double, double) { return 1.0; };
    p.entropy.d2S_duu_lower = 1.0;
    p.entropy.Q = [](double k, double u) { return k * (0.5 * u * u - 2.0 * u * u * u / 3.0); };
    p.entropy.dQ_dk = [](double, double u) { return 0.5 * u * u - 2.0 * u * u * u / 3.0; };
    p.entropy.nonlinearity.asserted = false;
    p.coefficient = CoefficientSpec::piecewise_x({0.0}, {1.0, 2.0});
    p.init = InitialDataSpec::steps({-0.5, 0.5}, {0.0, 0.7, 0.0});
    return p;
}

ProblemSpec make_moving_jump() {
    ProblemSpec p = make_twoflux_convex();
    p.name = "moving-jump";
    p.coefficient = CoefficientSpec::jump_line(0.0, 0.25, 1.0, 2.0);
    return p;
}

} // namespace

ProblemSpec builtin_problem(const std::string& name) {
    ProblemSpec p;
    if (name == "burgers-riemann") {
        p = make_burgers_riemann();
    } else if (name == "twoflux-convex") {
        p = make_twoflux_convex();
    } else if (name == "twoflux-traffic") {
        p = make_twoflux_traffic();
    } else if (name == "moving-jump") {
        p = make_moving_jump();
    } else {
        throw ProblemError("unknown built-in problem '" + name + "'");
    }
    p.flux.du_lipschitz = 0.0;
    p.norms = compute_sup_norms(p.flux, p.entropy, p.alpha, p.beta, p.a, p.b);
    p.flux.du_lipschitz = p.norms.df_du;
    p.flux.dk_lipschitz = p.norms.df_dk;
    return p;
}

ProblemSpec snap_problem_to_lattice(const ProblemSpec& problem, double dx) {
    ProblemSpec snapped = problem;
    snapped.init = problem.init.snapped_to_edges(dx);
    snapped.coefficient = problem.coefficient.snapped_to_edges(dx);
    return snapped;
}

} // namespace dflux

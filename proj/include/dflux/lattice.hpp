#ifndef DFLUX_LATTICE_HPP
#define DFLUX_LATTICE_HPP

#include <Eigen/Core>
#include <vector>

#include "dflux/errors.hpp"
#include "dflux/problem.hpp"

namespace dflux {

/// Staggered space-time grid. Values live at (x_j, t^n) with j+n even; the
/// index window [j_min, j_max] is inflated so that the stencil's domain of
/// dependence never reaches cells that differ from the constant pads, making
/// every truncated whole-line sum exact.
struct LatticeSpec {
    double dx = 0.0;
    double dt = 0.0;
    double lambda = 0.0; // dt/dx
    double kappa = 0.0;  // CFL margin, lambda*||df_du|| <= 1-kappa
    double T = 0.0;      // horizon
    int j_min = 0;       // even
    int j_max = 0;       // even
    int n_max = 0;       // N = floor(T/dt); levels 0..N+1 are computed
    double user_left = 0.0;  // declared window before inflation
    double user_right = 0.0;

    double x(int j) const { return j * dx; }
    double t(int n) const { return n * dt; }
    int num_levels() const { return n_max + 2; }

    double cfl_number(double du_lipschitz) const { return lambda * du_lipschitz; }
};

/// Comparability clip range for lambda = dt/dx.
inline constexpr double kLambdaMin = 0.1;
inline constexpr double kLambdaMax = 10.0;

/// Default memory budget for stored trajectories (both U and k levels).
inline constexpr std::size_t kDefaultMemoryBudgetBytes = std::size_t(6) << 30;

/// Build a lattice: dt = (1-kappa)*dx/||df_du||, lambda clipped to
/// [0.1, 10], window inflated by N+4 cells beyond the declared window.
/// Throws LatticeError when ||df_du|| = 0, when no admissible lambda
/// satisfies the CFL condition, or when the inflated window exceeds the
/// memory budget.
LatticeSpec build_lattice(double x_left, double x_right, double dx, double kappa,
                          const FluxSpec& flux, double T,
                          std::size_t memory_budget_bytes = kDefaultMemoryBudgetBytes);

/// Indices of Omega_n = {j in [j_min, j_max] : j+n even}, ascending.
std::vector<int> sublattice(int n, const LatticeSpec& spec);

/// Indices of Omega'_n = {j in [j_min, j_max] : j+n odd}, ascending.
std::vector<int> sublattice_complement(int n, const LatticeSpec& spec);

/// One time level of a staggered grid function. Values are stored only at
/// indices with j+level even; reads outside the window return the constant
/// pad for that side, which the window-inflation invariant makes exact.
class StaggeredField {
public:
    StaggeredField() = default;

    StaggeredField(int level, int j_first, Eigen::ArrayXd values, double left_pad,
                   double right_pad)
        : level_(level),
          j_first_(j_first),
          values_(std::move(values)),
          left_pad_(left_pad),
          right_pad_(right_pad) {
        if ((j_first_ + level_) % 2 != 0) {
            throw LatticeError("staggered field indices must satisfy j+n even");
        }
    }

    int level() const { return level_; }
    int j_first() const { return j_first_; }
    int j_last() const { return j_first_ + 2 * (static_cast<int>(values_.size()) - 1); }
    Eigen::Index size() const { return values_.size(); }

    double value(int j) const {
        if (j < j_first_) return left_pad_;
        if (j > j_last()) return right_pad_;
        return values_[(j - j_first_) / 2];
    }

    double left_pad() const { return left_pad_; }
    double right_pad() const { return right_pad_; }

    const Eigen::ArrayXd& values() const { return values_; }
    Eigen::ArrayXd& values() { return values_; }

    /// Padding integrity: first and last stored entries equal their pads.
    bool padding_intact() const {
        return values_.size() == 0 ||
               (values_[0] == left_pad_ && values_[values_.size() - 1] == right_pad_);
    }

private:
    int level_ = 0;
    int j_first_ = 0;
    Eigen::ArrayXd values_;
    double left_pad_ = 0.0;
    double right_pad_ = 0.0;
};

} // namespace dflux

#endif

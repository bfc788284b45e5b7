#ifndef DFLUX_IO_HPP
#define DFLUX_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "dflux/compactness.hpp"
#include "dflux/scheme.hpp"

namespace dflux {

/// Trajectory CSV: header "n,j,x_j,t_n,U,k", one row per stored grid point,
/// levels ascending, indices ascending, doubles in shortest round-trip form.
void write_trajectory_csv(const StaggeredTrajectory& traj, const std::string& path);

/// Binary dump (little-endian):
///   bytes 0..7   magic "DFLXTRJ1"
///   doubles      dx, dt, lambda, kappa, T
///   int64        j_min, j_max, n_max
///   per level n = 0..N+1:
///     int64 j_first, int64 count,
///     count doubles U, count doubles k.
void write_trajectory_binary(const StaggeredTrajectory& traj, const std::string& path);

/// Per-cell entropy production with both bound right-hand sides:
/// "n,j,Psi,bound_rhs_dissipation,bound_rhs_abs,margin"; margin is the worst
/// one of the enabled bounds (the dissipation bound requires gamma > 0).
void write_entropy_csv(const StaggeredTrajectory& traj, const EntropyPairSpec& pair,
                       double gamma, const std::string& path);

/// Per-cell lower-bound margins of one level shift: "n,j,gamma,bound,margin".
void write_gamma_csv(const TrajectoryTables& tables, const EntropyPairSpec& pair, int nu,
                     const std::string& path);

/// Named interaction-identity terms, one row per term: "shift,term,value".
void write_identity_terms_csv(
    const std::vector<std::pair<std::string, IdentityBreakdown>>& breakdowns,
    const std::string& path);

} // namespace dflux

#endif

#include "dflux/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "dflux/csv.hpp"

namespace dflux {

void write_trajectory_csv(const StaggeredTrajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write trajectory to '" + path + "'");
    out << "n,j,x_j,t_n,U,k\n";
    const LatticeSpec& lat = traj.lattice;
    for (int n = 0; n < traj.num_levels(); ++n) {
        const StaggeredField& u_level = traj.u_levels[static_cast<std::size_t>(n)];
        const StaggeredField& k_level = traj.k_levels[static_cast<std::size_t>(n)];
        for (Eigen::Index i = 0; i < u_level.size(); ++i) {
            const int j = u_level.j_first() + 2 * static_cast<int>(i);
            out << n << "," << j << "," << format_double(lat.x(j)) << ","
                << format_double(lat.t(n)) << "," << format_double(u_level.values()[i]) << ","
                << format_double(k_level.values()[i]) << "\n";
        }
    }
}

namespace {

template <typename T>
void write_raw(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

} // namespace

void write_trajectory_binary(const StaggeredTrajectory& traj, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write trajectory to '" + path + "'");
    const char magic[8] = {'D', 'F', 'L', 'X', 'T', 'R', 'J', '1'};
    out.write(magic, sizeof(magic));
    const LatticeSpec& lat = traj.lattice;
    write_raw(out, lat.dx);
    write_raw(out, lat.dt);
    write_raw(out, lat.lambda);
    write_raw(out, lat.kappa);
    write_raw(out, lat.T);
    write_raw(out, static_cast<std::int64_t>(lat.j_min));
    write_raw(out, static_cast<std::int64_t>(lat.j_max));
    write_raw(out, static_cast<std::int64_t>(lat.n_max));
    for (int n = 0; n < traj.num_levels(); ++n) {
        const StaggeredField& u_level = traj.u_levels[static_cast<std::size_t>(n)];
        const StaggeredField& k_level = traj.k_levels[static_cast<std::size_t>(n)];
        write_raw(out, static_cast<std::int64_t>(u_level.j_first()));
        write_raw(out, static_cast<std::int64_t>(u_level.size()));
        out.write(reinterpret_cast<const char*>(u_level.values().data()),
                  static_cast<std::streamsize>(sizeof(double)) * u_level.size());
        out.write(reinterpret_cast<const char*>(k_level.values().data()),
                  static_cast<std::streamsize>(sizeof(double)) * k_level.size());
    }
}

} // namespace dflux

namespace dflux {

void write_entropy_csv(const StaggeredTrajectory& traj, const EntropyPairSpec& pair,
                       double gamma, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write entropy diagnostics to '" + path + "'");
    out << "n,j,Psi,bound_rhs_dissipation,bound_rhs_abs,margin\n";
    const LatticeSpec& lat = traj.lattice;
    const EntropyConstants constants = assemble_entropy_constants(traj.problem, lat);
    const double quad_coeff = gamma * constants.kappa * constants.kappa / 8.0;
    for (int n = 0; n <= lat.n_max; ++n) {
        const EntropyProductionField psi = entropy_production(traj, pair, n);
        for (int j = psi.j_first; j <= psi.j_last(); j += 2) {
            const double psi_v = psi.value(j);
            const double du = traj.u(n, j + 1) - traj.u(n, j - 1);
            const double dk_x = std::abs(traj.k(n, j + 1) - traj.k(n, j - 1));
            const double dk_t = std::abs(traj.k(n + 1, j) - traj.k(n, j - 1));
            const double dk_half = std::abs(traj.k(n + 1, j) -
                                            0.5 * (traj.k(n, j - 1) + traj.k(n, j + 1)));
            const double rhs_diss = -quad_coeff * du * du + constants.diss_coeff_kx * dk_x +
                                    constants.diss_coeff_kt * dk_t;
            const double rhs_abs = constants.K2 * du * du + constants.K3 * dk_x +
                                   constants.K4 * dk_half;
            double margin = rhs_abs - std::abs(psi_v);
            if (gamma > 0.0) margin = std::min(margin, rhs_diss - psi_v);
            out << n << "," << j << "," << format_double(psi_v) << ","
                << format_double(rhs_diss) << "," << format_double(rhs_abs) << ","
                << format_double(margin) << "\n";
        }
    }
}

void write_gamma_csv(const TrajectoryTables& tables, const EntropyPairSpec& pair, int nu,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write gamma margins to '" + path + "'");
    out << "n,j,gamma,bound,margin\n";
    const int levels = tables.trajectory().num_levels();
    for (int n = 0; n < levels; ++n) {
        const GammaField field = gamma_field(tables, pair, n, nu);
        for (Eigen::Index i = 0; i < field.gamma.size(); ++i) {
            const int j = field.j_first + 2 * static_cast<int>(i);
            out << n << "," << j << "," << format_double(field.gamma[i]) << ","
                << format_double(field.bound[i]) << "," << format_double(field.margin[i])
                << "\n";
        }
    }
}

void write_identity_terms_csv(
    const std::vector<std::pair<std::string, IdentityBreakdown>>& breakdowns,
    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write identity terms to '" + path + "'");
    out << "shift,term,value\n";
    for (const auto& [shift, identity] : breakdowns) {
        auto row = [&](const char* term, double value) {
            out << shift << "," << term << "," << format_double(value) << "\n";
        };
        row("lhs", identity.lhs);
        row("s3", identity.s3);
        row("s4", identity.s4);
        row("I_first", identity.I_first);
        row("I_last", identity.I_last);
        row("r1", identity.r1);
        row("r2", identity.r2);
        row("r3", identity.r3);
        row("r4", identity.r4);
        row("residual", identity.residual);
        row("normalized_residual", identity.normalized_residual);
    }
}

} // namespace dflux

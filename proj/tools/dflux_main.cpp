#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "dflux/config.hpp"
#include "dflux/csv.hpp"
#include "dflux/diagnostics.hpp"
#include "dflux/io.hpp"

namespace {

using namespace dflux;

struct CommonArgs {
    std::string problem = "twoflux-convex";
    std::string config_path;
    std::string out_dir = ".";
    int cells = 400;
    double kappa = 0.1;
    double T = 0.5;
    double xmin = 0.0; // 0/0 means: derive from problem supports
    double xmax = 0.0;
    std::string weight = "unit";
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--problem", args.problem,
                    "built-in problem name (burgers-riemann, twoflux-convex, twoflux-traffic, "
                    "moving-jump)");
    cmd->add_option("--config", args.config_path, "problem/run config file");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--cells", args.cells, "cell count across the declared window");
    cmd->add_option("--kappa", args.kappa, "CFL margin in (0,1)");
    cmd->add_option("--T", args.T, "time horizon");
    cmd->add_option("--xmin", args.xmin, "window left edge");
    cmd->add_option("--xmax", args.xmax, "window right edge");
    cmd->add_option("--weight", args.weight, "weight function: unit or decay:N");
}

struct Prepared {
    ProblemSpec problem;
    LatticeSpec lattice;
    WeightFunction chi = WeightFunction::unit();
    DiagnosticsOptions options;
    std::string out_dir;
    std::vector<int> ladder;
};

std::vector<int> to_int_list(const std::vector<double>& values) {
    std::vector<int> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(static_cast<int>(v));
    return out;
}

Prepared prepare(const CLI::App* cmd, CommonArgs& args,
                 const std::vector<double>& spatial_offsets,
                 const std::vector<double>& temporal_offsets,
                 const std::vector<int>& shifts, const std::vector<int>& ladder) {
    Prepared prep;

    if (!args.config_path.empty()) {
        const ConfigFile config = ConfigFile::parse_file(args.config_path);
        if (config.has("flux.name")) {
            prep.problem = problem_from_config(config);
        } else {
            prep.problem = builtin_problem(config.get_or("problem.name", args.problem));
        }
        if (cmd->count("--cells") == 0) {
            args.cells = static_cast<int>(config.get_long_or("run.cells", args.cells));
        }
        if (cmd->count("--kappa") == 0) args.kappa = config.get_double_or("run.kappa", args.kappa);
        if (cmd->count("--T") == 0) args.T = config.get_double_or("run.T", args.T);
        if (cmd->count("--xmin") == 0) {
            args.xmin = config.get_double_or("run.window_left", args.xmin);
        }
        if (cmd->count("--xmax") == 0) {
            args.xmax = config.get_double_or("run.window_right", args.xmax);
        }
        if (cmd->count("--weight") == 0) args.weight = config.get_or("run.weight", args.weight);
        if (cmd->count("--out") == 0) args.out_dir = config.get_or("run.out", args.out_dir);
        if (shifts.empty() && config.has("run.spatial_shifts")) {
            prep.options.spatial_shifts = to_int_list(config.get_list("run.spatial_shifts"));
        }
        if (config.has("run.temporal_shifts")) {
            prep.options.temporal_shifts = to_int_list(config.get_list("run.temporal_shifts"));
        }
        if (ladder.empty() && config.has("run.ladder")) {
            prep.ladder = to_int_list(config.get_list("run.ladder"));
        }
    } else {
        prep.problem = builtin_problem(args.problem);
    }

    if (args.cells <= 0) throw ConfigError("cell count must be positive");
    if (args.xmin == 0.0 && args.xmax == 0.0) {
        const double r_u = prep.problem.init.support_radius();
        const double r_k = prep.problem.coefficient.support_radius(args.T);
        const double radius = std::max({r_u, r_k, 0.0}) + 0.5;
        args.xmin = -radius;
        args.xmax = radius;
    }
    if (!(args.xmax > args.xmin)) throw ConfigError("window requires xmax > xmin");

    const double dx = (args.xmax - args.xmin) / args.cells;
    prep.lattice =
        build_lattice(args.xmin, args.xmax, dx, args.kappa, prep.problem.flux, args.T);
    prep.chi = WeightFunction::parse(args.weight);
    prep.options.weights = {prep.chi};
    if (!shifts.empty()) prep.options.spatial_shifts = shifts;
    if (!spatial_offsets.empty()) prep.options.spatial_offsets = spatial_offsets;
    if (!temporal_offsets.empty()) prep.options.temporal_offsets = temporal_offsets;
    if (prep.ladder.empty() && !ladder.empty()) prep.ladder = ladder;
    prep.out_dir = args.out_dir;
    std::filesystem::create_directories(prep.out_dir);
    return prep;
}

void print_validation(const ValidationReport& report) {
    for (const auto& item : report.items) {
        std::cout << (item.skipped ? "SKIP " : item.pass ? "ok   " : "FAIL ") << item.name;
        if (!item.message.empty()) std::cout << "  (" << item.message << ")";
        std::cout << "\n";
    }
}

int cmd_run(const CLI::App* cmd, CommonArgs& args, bool binary) {
    Prepared prep = prepare(cmd, args, {}, {}, {}, {});

    const ValidationReport validation = validate_problem(prep.problem);
    print_validation(validation);
    if (!validation.all_pass()) {
        std::cerr << "problem validation failed\n";
        return 1;
    }

    const StaggeredTrajectory traj = run(prep.problem, prep.lattice);
    const std::string csv_path = prep.out_dir + "/trajectory.csv";
    write_trajectory_csv(traj, csv_path);
    if (binary) write_trajectory_binary(traj, prep.out_dir + "/trajectory.bin");

    const StateRange range = state_range(traj);
    const MassBudget budget = mass_budget(traj);
    std::cout << "problem   " << prep.problem.name << "\n"
              << "dx        " << format_double(prep.lattice.dx) << "\n"
              << "dt        " << format_double(prep.lattice.dt) << "\n"
              << "lambda    " << format_double(prep.lattice.lambda) << "\n"
              << "levels    " << prep.lattice.num_levels() << "\n"
              << "u range   [" << format_double(range.min_value) << ", "
              << format_double(range.max_value) << "]\n"
              << "mass budget drift " << format_double(budget.max_rel_drift) << "\n"
              << "wrote     " << csv_path << "\n";
    return 0;
}

int cmd_diagnose(const CLI::App* cmd, CommonArgs& args, const std::vector<int>& shifts,
                 const std::vector<double>& spatial_offsets,
                 const std::vector<double>& temporal_offsets) {
    Prepared prep = prepare(cmd, args, spatial_offsets, temporal_offsets, shifts, {});
    const StaggeredTrajectory traj = run(prep.problem, prep.lattice);
    const DiagnosticsReport report = run_diagnostics(traj, prep.options);
    report.save(prep.out_dir + "/diagnostics.csv");

    write_entropy_csv(traj, prep.problem.entropy, prep.problem.entropy.d2S_duu_lower,
                      prep.out_dir + "/entropy.csv");
    const TrajectoryTables tables(traj, prep.problem.entropy);
    if (prep.problem.entropy.nonlinearity.asserted && !prep.options.spatial_shifts.empty()) {
        write_gamma_csv(tables, prep.problem.entropy, prep.options.spatial_shifts.front(),
                        prep.out_dir + "/gamma.csv");
    }
    std::vector<std::pair<std::string, IdentityBreakdown>> breakdowns;
    for (int nu : prep.options.spatial_shifts) {
        breakdowns.emplace_back("spatial_" + std::to_string(nu),
                                interaction_identity_residual_spatial(tables, prep.chi, nu));
    }
    for (int theta : prep.options.temporal_shifts) {
        breakdowns.emplace_back(
            "temporal_" + std::to_string(theta),
            interaction_identity_residual_temporal(tables, prep.chi, theta));
    }
    write_identity_terms_csv(breakdowns, prep.out_dir + "/identity_terms.csv");

    for (const auto& [name, value] : report.scalars) {
        std::cout << name << " = " << format_double(value) << "\n";
    }
    for (const auto& [name, status] : report.statuses) {
        std::cout << status << "  " << name << "\n";
    }
    std::cout << "wrote " << prep.out_dir << "/diagnostics.csv\n";
    return report.has_failures() ? 2 : 0;
}

int cmd_refine(const CLI::App* cmd, CommonArgs& args, const std::vector<int>& ladder_arg) {
    Prepared prep = prepare(cmd, args, {}, {}, {}, ladder_arg);
    if (prep.ladder.empty()) prep.ladder = {50, 100, 200, 400};

    const RefinementLadder ladder =
        run_refinement_ladder(prep.problem, prep.lattice.user_left, prep.lattice.user_right,
                              args.kappa, args.T, prep.ladder, prep.chi);

    std::ofstream out(prep.out_dir + "/ladder.csv");
    out << "cells,dx,dissipation_spatial,dissipation_temporal,psi_mass,modulus_stat_spatial,"
           "modulus_stat_temporal,slope_spatial,slope_temporal,l1_to_finest\n";
    for (const RefineRow& row : ladder.rows) {
        out << row.cells << "," << format_double(row.dx) << ","
            << format_double(row.dissipation_spatial) << ","
            << format_double(row.dissipation_temporal) << "," << format_double(row.psi_mass)
            << "," << format_double(row.modulus_statistic_spatial) << ","
            << format_double(row.modulus_statistic_temporal) << ","
            << format_double(row.slope_spatial) << "," << format_double(row.slope_temporal)
            << "," << format_double(row.l1_to_finest) << "\n";
        std::cout << "cells " << row.cells << "  dissipation " << row.dissipation_spatial
                  << "  psi_mass " << row.psi_mass << "  stat "
                  << row.modulus_statistic_spatial << "  l1_to_finest " << row.l1_to_finest
                  << "\n";
    }
    if (!ladder.note.empty()) std::cout << "note: " << ladder.note << "\n";
    const bool pass = ladder.bands_within_factor(10.0);
    std::cout << (pass ? "PASS" : "FAIL") << "  factor-10 band across ladder\n";
    return pass ? 0 : 2;
}

int cmd_translate(const CLI::App* cmd, CommonArgs& args,
                  const std::vector<double>& spatial_offsets,
                  const std::vector<double>& temporal_offsets) {
    Prepared prep = prepare(cmd, args, spatial_offsets, temporal_offsets, {}, {});
    prep.options.check_identities = false;
    prep.options.check_gamma = false;
    prep.options.check_dissipation = false;
    const StaggeredTrajectory traj = run(prep.problem, prep.lattice);
    const DiagnosticsReport report = run_diagnostics(traj, prep.options);
    report.save(prep.out_dir + "/moduli.csv");
    for (const auto& curve : report.curves) {
        for (const auto& [offset, value] : curve.points) {
            std::cout << curve.name << "  " << format_double(offset) << "  "
                      << format_double(value) << "\n";
        }
    }
    for (const auto& [name, value] : report.scalars) {
        if (name.rfind("modulus_", 0) == 0 || name == "mu_theory") {
            std::cout << name << " = " << format_double(value) << "\n";
        }
    }
    std::cout << "wrote " << prep.out_dir << "/moduli.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"staggered Lax-Friedrichs solver and compactness diagnostics"};
    app.require_subcommand(1);

    CommonArgs run_args, diag_args, refine_args, translate_args;
    bool binary = false;
    std::vector<int> shifts, ladder;
    std::vector<double> offsets, temporal_offsets;

    CLI::App* c_run = app.add_subcommand("run", "solve and export the trajectory");
    add_common_flags(c_run, run_args);
    c_run->add_flag("--binary", binary, "also write the binary dump");

    CLI::App* c_diag = app.add_subcommand("diagnose", "solve and run the full diagnostics");
    add_common_flags(c_diag, diag_args);
    c_diag->add_option("--shifts", shifts, "spatial shift list (nu values)")
        ->delimiter(',');
    c_diag->add_option("--offsets", offsets, "spatial modulus offsets")->delimiter(',');
    c_diag->add_option("--temporal-offsets", temporal_offsets, "temporal modulus offsets")
        ->delimiter(',');

    CLI::App* c_refine = app.add_subcommand("refine", "run a refinement ladder");
    add_common_flags(c_refine, refine_args);
    c_refine->add_option("--ladder", ladder, "increasing cell counts")->delimiter(',');

    CLI::App* c_translate = app.add_subcommand("translate", "translation moduli only");
    add_common_flags(c_translate, translate_args);
    c_translate->add_option("--offsets", offsets, "spatial modulus offsets")->delimiter(',');
    c_translate->add_option("--temporal-offsets", temporal_offsets,
                            "temporal modulus offsets")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
        if (c_run->parsed()) return cmd_run(c_run, run_args, binary);
        if (c_diag->parsed()) {
            return cmd_diagnose(c_diag, diag_args, shifts, offsets, temporal_offsets);
        }
        if (c_refine->parsed()) return cmd_refine(c_refine, refine_args, ladder);
        if (c_translate->parsed()) {
            return cmd_translate(c_translate, translate_args, offsets, temporal_offsets);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const dflux::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const dflux::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

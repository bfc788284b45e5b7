#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dflux/config.hpp"
#include "dflux/csv.hpp"
#include "dflux/io.hpp"
#include "dflux/report.hpp"
#include "dflux/scheme.hpp"

using namespace dflux;

namespace {

const char* kTwofluxConfig = R"(
# twoflux-convex written out longhand
[flux]
name = quadratic

[entropy]
name = same-as-flux

[coefficient]
kind = piecewise-x
breakpoints = 0.0
values = 1.0, 2.0

[init]
kind = steps
breakpoints = -0.5, 0.0, 0.5
values = 0.0, 0.8, 0.3, 0.0

[bounds]
a = 0
b = 1
alpha = 1
beta = 2

[nonlinearity]
Cf = 2
pf = 1
CS = 2
pS = 1
)";

} // namespace

TEST_CASE("config parsing: sections, comments, errors") {
    const ConfigFile config = ConfigFile::parse_string("[s]\nkey = 1.5 # c\nname=x\n");
    CHECK(config.get_double("s.key") == 1.5);
    CHECK(config.get("s.name") == "x");
    CHECK(config.get_or("s.missing", "d") == "d");
    CHECK_THROWS_AS(config.get("s.missing"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse_string("[s\nx=1\n"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse_string("[s]\nnokey\n"), ConfigError);
    CHECK(parse_number_list("1, 2.5,3") == std::vector<double>{1.0, 2.5, 3.0});
}

TEST_CASE("config problem matches the built-in") {
    const ProblemSpec from_config =
        problem_from_config(ConfigFile::parse_string(kTwofluxConfig));
    const ProblemSpec builtin = builtin_problem("twoflux-convex");
    CHECK(validate_problem(from_config).all_pass());
    CHECK(from_config.entropy.nonlinearity.C_fS() ==
          doctest::Approx(builtin.entropy.nonlinearity.C_fS()));
    for (double u : {0.1, 0.6}) {
        for (double k : {1.0, 1.7}) {
            CHECK(from_config.flux.f(k, u) == builtin.flux.f(k, u));
            CHECK(from_config.entropy.Q(k, u) == doctest::Approx(builtin.entropy.Q(k, u)));
        }
    }

    // identical dynamics
    const LatticeSpec lat = build_lattice(-1.0, 1.0, 0.05, 0.1, from_config.flux, 0.1);
    const StaggeredTrajectory ta = run(from_config, lat);
    const StaggeredTrajectory tb = run(builtin, lat);
    for (int n = 0; n < ta.num_levels(); ++n) {
        CHECK((ta.u_levels[n].values() == tb.u_levels[n].values()).all());
    }
}

TEST_CASE("quadrature-built entropy flux from config is compatible") {
    std::string text = kTwofluxConfig;
    text.replace(text.find("name = same-as-flux"), 19, "name = quadratic   ");
    text.replace(text.find("CS = 2"), 6, "CS = 1"); // dS_du = u has unit slope
    const ProblemSpec p = problem_from_config(ConfigFile::parse_string(text));
    // compatibility (d_u Q = d_u S d_u f) is part of validation
    CHECK(validate_problem(p).all_pass());
}

TEST_CASE("shortest round-trip double formatting") {
    for (double v : {1.0 / 3.0, 0.1, 1e-300, -2.5e17, 0.0, 123456.789}) {
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK_THROWS_AS(parse_double("not-a-number"), ConfigError);
}

TEST_CASE("diagnostics report round-trips losslessly") {
    DiagnosticsReport report;
    report.add_meta("problem", "twoflux-convex");
    report.add_scalar("residual", 1.0 / 3.0);
    report.add_scalar("tiny", 5e-324);
    auto& curve = report.add_curve("modulus_spatial_unit");
    curve.points.emplace_back(0.01, 0.123456789012345678);
    curve.points.emplace_back(0.1, 2.0 / 7.0);
    report.add_status("identity", true);
    report.add_skipped("gamma");

    std::ostringstream out;
    report.write_csv(out);
    std::istringstream in(out.str());
    const DiagnosticsReport reparsed = DiagnosticsReport::read_csv(in);
    CHECK(reparsed == report);
    CHECK(reparsed.scalar("residual") == 1.0 / 3.0);
    CHECK_FALSE(reparsed.has_failures());

    DiagnosticsReport failing;
    failing.add_status("x", false);
    CHECK(failing.has_failures());
}

TEST_CASE("trajectory CSV has the documented header and is deterministic") {
    const ProblemSpec p = builtin_problem("twoflux-convex");
    const LatticeSpec lat = build_lattice(-1.0, 1.0, 0.05, 0.1, p.flux, 0.1);
    const StaggeredTrajectory traj = run(p, lat);

    const std::string path_a = "traj_a.csv";
    const std::string path_b = "traj_b.csv";
    write_trajectory_csv(traj, path_a);
    write_trajectory_csv(run(p, lat), path_b);

    std::ifstream in_a(path_a);
    std::string header;
    std::getline(in_a, header);
    CHECK(header == "n,j,x_j,t_n,U,k");

    std::ostringstream rest_a;
    rest_a << in_a.rdbuf();
    std::ifstream in_b(path_b);
    std::ostringstream all_b;
    all_b << in_b.rdbuf();
    CHECK(header + "\n" + rest_a.str() == all_b.str());
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
}

TEST_CASE("binary dump layout") {
    const ProblemSpec p = builtin_problem("burgers-riemann");
    const LatticeSpec lat = build_lattice(-1.0, 1.0, 0.1, 0.1, p.flux, 0.2);
    const StaggeredTrajectory traj = run(p, lat);
    const std::string path = "traj.bin";
    write_trajectory_binary(traj, path);

    std::ifstream in(path, std::ios::binary);
    char magic[8];
    in.read(magic, 8);
    CHECK(std::string(magic, 8) == "DFLXTRJ1");
    double header[5];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    CHECK(header[0] == lat.dx);
    CHECK(header[1] == lat.dt);
    std::int64_t ints[3];
    in.read(reinterpret_cast<char*>(ints), sizeof(ints));
    CHECK(ints[0] == lat.j_min);
    CHECK(ints[2] == lat.n_max);
    std::int64_t j_first = 0, count = 0;
    in.read(reinterpret_cast<char*>(&j_first), 8);
    in.read(reinterpret_cast<char*>(&count), 8);
    CHECK(j_first == traj.u_levels[0].j_first());
    CHECK(count == traj.u_levels[0].size());
    std::vector<double> u_values(static_cast<std::size_t>(count));
    in.read(reinterpret_cast<char*>(u_values.data()), 8 * count);
    CHECK(u_values.front() == traj.u_levels[0].values()[0]);
    std::remove(path.c_str());
}

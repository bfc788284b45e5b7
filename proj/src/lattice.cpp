#include "dflux/lattice.hpp"

#include <cmath>

namespace dflux {

LatticeSpec build_lattice(double x_left, double x_right, double dx, double kappa,
                          const FluxSpec& flux, double T, std::size_t memory_budget_bytes) {
    if (!(dx > 0.0)) throw LatticeError("dx must be positive");
    if (!(kappa > 0.0 && kappa < 1.0)) {
        throw LatticeError("CFL margin kappa must lie in (0,1): the CFL condition "
                           "lambda*||df_du|| <= 1-kappa is infeasible otherwise");
    }
    if (!(x_right > x_left)) throw LatticeError("window must have positive width");
    if (!(T > 0.0)) throw LatticeError("horizon T must be positive");
    if (!(flux.du_lipschitz > 0.0)) {
        throw LatticeError("||df_du|| = 0: flux is linearly degenerate, lambda unbounded");
    }

    LatticeSpec spec;
    spec.dx = dx;
    spec.kappa = kappa;
    spec.T = T;
    spec.user_left = x_left;
    spec.user_right = x_right;

    double lambda = (1.0 - kappa) / flux.du_lipschitz;
    if (lambda > kLambdaMax) lambda = kLambdaMax;
    if (lambda < kLambdaMin) lambda = kLambdaMin;
    if (lambda * flux.du_lipschitz > 1.0 - kappa + 1e-15) {
        throw LatticeError("CFL condition infeasible within the lambda comparability range");
    }
    spec.lambda = lambda;
    spec.dt = lambda * dx;
    spec.n_max = static_cast<int>(std::floor(T / spec.dt));

    // inflate so the domain of dependence of every computed level stays in
    // the constant-pad region, with a small extra margin
    const int margin = spec.n_max + 4;
    int j_min = static_cast<int>(std::floor(x_left / dx)) - margin;
    int j_max = static_cast<int>(std::ceil(x_right / dx)) + margin;
    if (j_min % 2 != 0) --j_min;
    if (j_max % 2 != 0) ++j_max;
    spec.j_min = j_min;
    spec.j_max = j_max;

    const std::size_t values_per_level = static_cast<std::size_t>((j_max - j_min) / 2 + 1);
    const std::size_t bytes =
        2 * values_per_level * static_cast<std::size_t>(spec.num_levels()) * sizeof(double);
    if (bytes > memory_budget_bytes) {
        throw LatticeError("inflated window exceeds the memory budget");
    }
    return spec;
}

namespace {

std::vector<int> indices_with_parity(int n, int parity_offset, const LatticeSpec& spec) {
    std::vector<int> out;
    int j = spec.j_min;
    if (((j + n + parity_offset) % 2 + 2) % 2 != 0) ++j;
    out.reserve(static_cast<std::size_t>((spec.j_max - j) / 2 + 1));
    for (; j <= spec.j_max; j += 2) out.push_back(j);
    return out;
}

} // namespace

std::vector<int> sublattice(int n, const LatticeSpec& spec) {
    return indices_with_parity(n, 0, spec);
}

std::vector<int> sublattice_complement(int n, const LatticeSpec& spec) {
    return indices_with_parity(n, 1, spec);
}

} // namespace dflux

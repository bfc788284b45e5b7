#ifndef DFLUX_ERRORS_HPP
#define DFLUX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dflux {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed problem data (non-finite samples, bounds violations, unknown names).
struct ProblemError : Error {
    using Error::Error;
};

/// Grid construction failures (CFL infeasible, window/memory budget).
struct LatticeError : Error {
    using Error::Error;
};

/// Runtime numerical failures (blow-up, invalid evaluation range).
struct NumericsError : Error {
    using Error::Error;
};

/// Config file / CLI usage problems.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace dflux

#endif

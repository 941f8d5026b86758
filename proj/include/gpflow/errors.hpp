#ifndef GPFLOW_ERRORS_HPP
#define GPFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gpflow {

/** Base class for all library errors. */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A bisection bracket whose endpoints do not enclose a sign change. */
struct BadBracket : Error {
    using Error::Error;
};

/** A state component became NaN/Inf during integration. */
struct NonFinite : Error {
    using Error::Error;
};

/** An iteration cap was reached before the tolerance was met. */
struct NoConvergence : Error {
    using Error::Error;
};

/** No interior extrema were found on the sampled grid. */
struct NoExtrema : Error {
    using Error::Error;
};

/** The joint-node scan exhausted the grid. */
struct NoJoint : Error {
    using Error::Error;
};

/** A grid size that is not a power of two, or inconsistent pad counts. */
struct BadCount : Error {
    using Error::Error;
};

/** A profile that does not meet an operation's structural precondition. */
struct BadProfile : Error {
    using Error::Error;
};

/** The trajectory did not decay; the initial pair is not admissible. */
struct NotAdmissible : Error {
    using Error::Error;
};

/** Spectral mode magnitudes exceeded the overflow bound. */
struct Instability : Error {
    Instability(const std::string& what, double t_fail) : Error(what), t(t_fail) {}
    double t;
};

/** A required grid node (typically s = 0) is absent. */
struct NodeMissing : Error {
    using Error::Error;
};

/** An invalid run configuration. */
struct ConfigError : Error {
    using Error::Error;
};

} // namespace gpflow

#endif

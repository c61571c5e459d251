#ifndef XXZBATH_ERRORS_HPP
#define XXZBATH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xxzbath {

// Exit-code mapping used by the CLI: ConfigError -> 1, InvariantViolation -> 2,
// NumericalFailure -> 3.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by operations whose analytic validity domain is narrower than the
// parameter space (e.g. closed forms requiring d_z = 0 on resonance).
struct PreconditionViolation : ConfigError {
    explicit PreconditionViolation(const std::string& msg) : ConfigError(msg) {}
};

// Signals that the special-case X-state concurrence cannot be used and the
// caller should route through the generic routine.
struct FallbackToGeneric : std::domain_error {
    explicit FallbackToGeneric(const std::string& msg) : std::domain_error(msg) {}
};

} // namespace xxzbath

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace grushin {

// Every failure mode gets its own type so callers (and the CLI exit-code
// mapping) can tell them apart.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPositiveAlpha : Error {
    using Error::Error;
};
struct MeasureExponentNonIntegrable : Error {
    using Error::Error;
};
struct InvalidParameter : Error {
    using Error::Error;
};
struct SingularAxis : Error {
    using Error::Error;
};
struct NonPositiveScale : Error {
    using Error::Error;
};
struct GridTooCoarse : Error {
    using Error::Error;
};
struct TruncationTooSmall : Error {
    using Error::Error;
};
struct EigenSolveFailure : Error {
    using Error::Error;
};
struct TailDominates : Error {
    using Error::Error;
};
struct QuadratureFailure : Error {
    using Error::Error;
};
struct NoPlateau : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace grushin

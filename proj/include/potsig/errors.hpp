#pragma once

#include <stdexcept>
#include <string>

namespace potsig {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct InvalidGraphError : Error {
    using Error::Error;
};

struct InvalidSequenceError : Error {
    using Error::Error;
};

struct NotGraphicalError : Error {
    using Error::Error;
};

// A requested size exceeds a hard cap (oracle cap, canonical form, graph width).
struct SizeLimitError : Error {
    using Error::Error;
};

struct RejectedSwitchError : Error {
    using Error::Error;
};

struct ReattachmentError : Error {
    using Error::Error;
};

struct NoThresholdError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

// The 2-switch ladder ran out of subcases without creating the requested edge.
struct NormalizationStuckError : Error {
    using Error::Error;
};

// The constructive engine and the exhaustive engine reached contradicting
// conclusions. Never expected; surfaced rather than papered over.
struct InconsistencyError : Error {
    using Error::Error;
};

}  // namespace potsig

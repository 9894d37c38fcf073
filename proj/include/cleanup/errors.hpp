#pragma once
#include <stdexcept>

namespace cleanup {

// Invalid or inconsistent configuration; the message names the offending field(s).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke an interface contract (wrong action count, bad team slot, ...).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation not valid in the current phase (e.g. stepping a finished episode).
struct LifecycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unknown agent or record id.
struct LookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem or stream failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cleanup

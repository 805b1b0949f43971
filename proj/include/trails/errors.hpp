#pragma once

#include <stdexcept>
#include <string>

namespace trails {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input documents or invalid generator parameters.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Precondition of an operation violated by the caller.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// An enumeration size guard was exceeded.
struct GuardError : Error {
    explicit GuardError(const std::string& what) : Error(what) {}
};

// A claim the constructions rely on failed at runtime.  This is kept
// distinct from ordinary errors so the CLI can report it with its own
// exit code: it means a search or case analysis that is supposed to be
// total came up empty.
struct FalsificationError : Error {
    explicit FalsificationError(const std::string& what) : Error(what) {}
};

}  // namespace trails

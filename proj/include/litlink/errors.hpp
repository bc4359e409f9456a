#pragma once

#include <stdexcept>
#include <string>

namespace litlink {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data (record lines, alias tables, config files).
struct ParseError : Error {
    using Error::Error;
};

/// Structurally valid input that violates a documented invariant.
struct ValidationError : Error {
    using Error::Error;
};

/// A request that cannot be served as posed (e.g. an all-empty query).
struct InputError : Error {
    using Error::Error;
};

/// Lookup of an identifier that does not exist.
struct LookupError : Error {
    using Error::Error;
};

}  // namespace litlink

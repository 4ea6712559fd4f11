#pragma once

#include <stdexcept>
#include <string>

namespace movecrdt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation references an OpId that is neither the root nor present.
struct MissingDependency : Error {
    using Error::Error;
};

/// Two operations share an OpId but differ in payload.
struct ConflictingDuplicate : Error {
    using Error::Error;
};

/// A serialized record could not be decoded.
struct MalformedRecord : Error {
    using Error::Error;
};

/// A list operation targeted an object that is not a list.
struct NotAList : Error {
    using Error::Error;
};

/// conflict_values found nothing visible at the requested location.
struct NoVisibleValue : Error {
    using Error::Error;
};

/// parent_at was asked about an object with no lifecycle timeline.
struct UnknownObject : Error {
    using Error::Error;
};

/// A local edit intent targets an invisible or type-mismatched location.
struct InvalidTarget : Error {
    using Error::Error;
};

}  // namespace movecrdt

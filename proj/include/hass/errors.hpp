#pragma once

#include <stdexcept>
#include <string>

namespace hass {

// Base class for all library errors so callers can catch hass failures
// separately from generic std exceptions.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// Prime/parameter search ran past its configured bound.
struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& what) : Error(what) {}
};

// Protocol resampling hit the retry bound without an accepted instance.
struct RetryExhausted : Error {
    explicit RetryExhausted(const std::string& what) : Error(what) {}
};

// Exhaustive-enumeration budget would be exceeded.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

struct NonCoprimeModuli : Error {
    explicit NonCoprimeModuli(const std::string& what) : Error(what) {}
};

struct UnsupportedModulus : Error {
    explicit UnsupportedModulus(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct UnknownIndex : Error {
    explicit UnknownIndex(const std::string& what) : Error(what) {}
};

struct NotAuthorized : Error {
    explicit NotAuthorized(const std::string& what) : Error(what) {}
};

struct InconsistentBundle : Error {
    explicit InconsistentBundle(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace hass

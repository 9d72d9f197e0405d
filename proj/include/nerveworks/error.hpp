#pragma once

#include <stdexcept>
#include <string>

namespace nw {

/// Precondition violated by the caller (index out of range, mismatched shapes, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside what the toolkit computes (e.g. pushout along two non-injective legs).
class UnsupportedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A derived structure failed a consistency check it is required to pass.
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document; carries the offending field path.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

}  // namespace nw

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alcq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Concept/role text that does not conform to the grammar. `offset` is the
// byte position of the offending token in the input.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

// Input concept lies outside the fragment an operation supports.
struct FragmentError : Error {
    using Error::Error;
};

// Boolean role combination mixes chains of different lengths.
struct MixedLengthError : Error {
    using Error::Error;
};

// An inverse role occurs where only atomic chains are allowed.
struct InverseInDnfError : Error {
    using Error::Error;
};

// A configured search/enumeration budget was exhausted. Never a verdict.
struct ResourceLimitError : Error {
    using Error::Error;
};

struct IllegalMergeError : Error {
    using Error::Error;
};

struct NotApplicableError : Error {
    using Error::Error;
};

struct NotCompleteError : Error {
    using Error::Error;
};

struct HasClashError : Error {
    using Error::Error;
};

// Malformed input data (tiling systems, interpretation files, ABox edits).
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace alcq

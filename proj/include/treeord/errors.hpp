#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treeord {

/// Base class of all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A node word lies outside the tree domain it is used with.
struct DomainError : Error {
    using Error::Error;
};

/// An argument violates a precondition (bad bindings, non-member trees, ...).
struct ArgumentError : Error {
    using Error::Error;
};

/// Malformed serialized data (tree/automaton text, invalid convolutions).
struct FormatError : Error {
    using Error::Error;
};

/// Wrong convolution arity for the requested operation.
struct ArityError : Error {
    using Error::Error;
};

/// A configured cap (tower height, level k, search depth) was exceeded.
struct ResourceError : Error {
    using Error::Error;
};

/// Unknown relation symbol or arity mismatch against a signature.
struct SignatureError : Error {
    using Error::Error;
};

/// Feature outside the supported fragment (free ∃∞ under compilation).
struct UnsupportedError : Error {
    using Error::Error;
};

/// Text parse failure; carries a 0-based character position.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// A structural check failed on engine output; carries the witness.
struct VerificationError : Error {
    std::string witness;
    VerificationError(const std::string& what, std::string witness_text)
        : Error(what), witness(std::move(witness_text)) {}
};

}  // namespace treeord

#pragma once

#include <stdexcept>
#include <string>

namespace eqbundle {

/// Base class of all errors thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A group closure or table exceeded the configured maximum order.
struct OrderExceeded : Error {
    explicit OrderExceeded(const std::string& what) : Error(what) {}
};

/// A permutation input was not a bijection.
struct NotBijective : Error {
    explicit NotBijective(const std::string& what) : Error(what) {}
};

/// Generator images do not extend to a homomorphism; the message names a witness pair.
struct NotAHomomorphism : Error {
    explicit NotAHomomorphism(const std::string& what) : Error(what) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// A class function that is not the character of a genuine representation.
struct NotACharacter : Error {
    explicit NotACharacter(const std::string& what) : Error(what) {}
};

/// A character that was required to be invariant is moved by some group element.
struct NotInvariant : Error {
    explicit NotInvariant(const std::string& what) : Error(what) {}
};

struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

/// Malformed input text (action files, fiber specifications, permutation strings).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// A structural invariant failed; indicates a bug, not bad input.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace eqbundle

#pragma once

#include <stdexcept>
#include <string>

namespace degradex {

/** Base class for all recoverable data/usage errors raised by the library. */
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
    using Error::Error;
};

// A symbol outside {A,C,G,T} was found under the reject policy.
struct AmbiguousBase : Error {
    AmbiguousBase(const std::string& what, std::size_t position)
        : Error(what), position(position) {}
    std::size_t position;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct OrderMismatch : Error {
    using Error::Error;
};

struct GenomeTooShort : Error {
    using Error::Error;
};

struct HammingWithIndels : Error {
    using Error::Error;
};

struct DegenerateDesign : Error {
    using Error::Error;
};

struct TooFewRows : Error {
    using Error::Error;
};

struct BadK : Error {
    using Error::Error;
};

struct BadRange : Error {
    using Error::Error;
};

struct DegenerateData : Error {
    using Error::Error;
};

struct AsymmetricInput : Error {
    using Error::Error;
};

struct IdMismatch : Error {
    using Error::Error;
};

struct CountTooLarge : Error {
    using Error::Error;
};

struct CorpusEmpty : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace degradex

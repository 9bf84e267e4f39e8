#pragma once

#include <stdexcept>
#include <string>

namespace residue_forge {

// Base of everything this library throws deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input from the caller (CLI maps these to exit code 2).
struct InputError : Error {
    using Error::Error;
};

// A configured resource ceiling was exceeded (CLI exit code 3).
struct CeilingError : Error {
    using Error::Error;
};

// Broken internal assumption; seeing one of these is a bug (CLI exit code 4).
struct InternalError : Error {
    using Error::Error;
};

struct NotPrimeError : InputError {
    using InputError::InputError;
};

struct EvenPrimeError : InputError {
    using InputError::InputError;
};

struct NotCoprimeError : InputError {
    using InputError::InputError;
};

struct BadMultiplierError : InputError {
    using InputError::InputError;
};

struct WrongPrimeClassError : InputError {
    using InputError::InputError;
};

struct NotAResidueError : InputError {
    using InputError::InputError;
};

struct ReducibleFormError : InputError {
    using InputError::InputError;
};

struct VanishingFactorError : InputError {
    using InputError::InputError;
};

struct NotASquareError : InputError {
    using InputError::InputError;
};

struct BadDivisorClassError : InputError {
    using InputError::InputError;
};

struct TooLargeError : CeilingError {
    using CeilingError::CeilingError;
};

} // namespace residue_forge

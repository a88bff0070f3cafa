#ifndef NCCF_ERRORS_HPP
#define NCCF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nccf {

// Base of every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Word / JSON surface syntax violations.
struct ParseError : Error {
    using Error::Error;
};

// A word set whose factor closure fails; carries one witness word.
struct NotFactorClosed : Error {
    std::string witness;
    std::string missing_factor;
    NotFactorClosed(std::string w, std::string missing)
        : Error("word set is not factor-closed: " + w + " is present but its factor " +
                missing + " is not"),
          witness(std::move(w)),
          missing_factor(std::move(missing)) {}
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotIsometry : Error {
    using Error::Error;
};

// A shift weight was supplied on an edge that leaves the segment.
struct InvalidKey : Error {
    using Error::Error;
};

struct SingularResolvent : Error {
    using Error::Error;
};

// Polynomial has coefficients on words outside the initial segment.
struct UnsupportedSupport : Error {
    using Error::Error;
};

// A certified inequality failed beyond tolerance; signals an implementation
// bug, not a math failure.
struct ViolationError : Error {
    using Error::Error;
};

}  // namespace nccf

#endif

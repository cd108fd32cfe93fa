#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "bergman/point.hpp"

namespace bergman {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PointOutsideDomain : Error {
    using Error::Error;
};

/// Constants-only domains refuse kernel/metric evaluation.
struct KernelUnavailable : Error {
    using Error::Error;
};

struct BetaOutOfRange : Error {
    using Error::Error;
};

struct ParameterOutOfRange : Error {
    using Error::Error;
};

struct UnsupportedDomain : Error {
    using Error::Error;
};

struct ArityMismatch : Error {
    using Error::Error;
};

/// Carries the sample point at which an integrand or map blew up.
struct EvaluationError : Error {
    EvaluationError(const std::string& msg, CPoint w)
        : Error(msg + " at " + w.str()), witness(std::move(w)) {}
    CPoint witness;
};

struct ImageOutsideDomain : Error {
    ImageOutsideDomain(const std::string& msg, CPoint preimage_, CPoint image_)
        : Error(msg + ": " + preimage_.str() + " -> " + image_.str()),
          preimage(std::move(preimage_)),
          image(std::move(image_)) {}
    CPoint preimage;
    CPoint image;
};

/// Syntax error with input offset and the token class that was expected.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos, std::string expected_)
        : Error(msg + " at position " + std::to_string(pos) +
                (expected_.empty() ? "" : " (expected " + expected_ + ")")),
          position(pos),
          expected(std::move(expected_)) {}
    std::size_t position;
    std::string expected;
};

}  // namespace bergman

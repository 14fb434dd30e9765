#pragma once

#include <stdexcept>
#include <string>

namespace mlfrac {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Series or iteration failed to meet the requested tolerance.
struct NonConvergenceError : Error {
    using Error::Error;
};

// Gamma pole, vanishing A/B denominator, or Laplace denominator too close to zero.
struct PoleError : Error {
    using Error::Error;
};

// Operation requires all root multiplicities equal to one.
struct MultiplicityError : Error {
    using Error::Error;
};

// Characteristic polynomial has a root at (or numerically indistinguishable
// from) zero, violating the standing hypothesis eta_j != 0.
struct ZeroRootError : Error {
    using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance.
struct QuadratureError : Error {
    explicit QuadratureError(const std::string& msg, double achieved)
        : Error(msg), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

struct InvalidArgumentError : Error {
    using Error::Error;
};

}  // namespace mlfrac

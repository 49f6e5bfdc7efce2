#pragma once

#include <stdexcept>
#include <string>

namespace g2m {

/// Caller-supplied data violates a precondition: wrong degree, singular
/// lattice, non-positive form, malformed model or scenario.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation could not reach its accuracy target: quadrature failed to
/// converge, finite-difference step out of range, ill-conditioned solve.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace g2m

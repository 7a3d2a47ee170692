#pragma once

#include <stdexcept>
#include <string>

namespace lagsum {

/// A gamma function or hypergeometric denominator was evaluated at a pole.
class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// A SumSpec (or other parameter bundle) violates one of its invariants.
class InvalidSpec : public std::invalid_argument {
public:
    explicit InvalidSpec(const std::string& what) : std::invalid_argument(what) {}
};

/// The requested closed form does not cover these parameters (e.g. sign_p = - with m > p).
class ConstraintError : public std::domain_error {
public:
    explicit ConstraintError(const std::string& what) : std::domain_error(what) {}
};

/// A hypergeometric block inside a closed form hit its term limit.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lagsum

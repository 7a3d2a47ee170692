#pragma once

#include <cstddef>
#include <optional>

namespace lagsum {

/// Snapping tolerance used when deciding that an argument sits on a pole.
inline constexpr double kPoleTolerance = 1e-12;

/// If x lies within kPoleTolerance of a non-positive integer -k, returns k.
std::optional<long> nonpositive_integer_index(double x, double tol = kPoleTolerance);

/// Gamma function. Throws PoleError at x = 0, -1, -2, ...
///
/// Integers and half-integers up to |x| = 40 are built by exact recursion
/// from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi); arguments within 1e-12 of
/// one snap to it with a first-order digamma correction. Everything else goes
/// through the C library's tgamma, which uses reflection for negative
/// arguments.
double gamma(double x);

/// Reciprocal gamma 1/Gamma(x). Total: exactly 0 at the poles of Gamma.
double rgamma(double x);

/// log|Gamma(x)|, and the sign of Gamma(x). Both are thread-safe.
double log_abs_gamma(double x);
int gamma_sign(double x);

/// Gamma(top) / Gamma(bottom) assembled as gamma(top) * rgamma(bottom).
/// An integer offset top - bottom is evaluated as a Pochhammer product;
/// otherwise switches to log space once either argument exceeds 30.
double gamma_ratio(double top, double bottom);

/// sin(pi x) with exact argument reduction, so that arguments differing by
/// an integer or mirrored about a half-integer give bitwise equal magnitudes.
double sin_pi(double x);

/// Gamma(top) / Gamma(bottom) for bottom < 0 through the reflection formula,
/// as (Gamma(top) * Gamma(1 - bottom)) * sin(pi bottom) / pi. Two ratios whose
/// arguments swap under top <-> 1 - bottom come out bitwise equal up to sign.
/// Falls back to gamma(top) * rgamma(bottom) when the product would overflow.
double reflected_gamma_ratio(double top, double bottom);

/// Rising factorial a (a+1) ... (a+n-1) by direct product, so that a
/// non-positive integer base -k gives an exact zero for n > k.
double pochhammer(double a, std::size_t n);

/// Binomial coefficient, exact for n <= 60. Throws std::out_of_range if k > n.
double binomial(unsigned n, unsigned k);

}  // namespace lagsum

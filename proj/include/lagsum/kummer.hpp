#pragma once

#include <optional>
#include <string>

#include "lagsum/pfq.hpp"

namespace lagsum {

/// Generalized Kummer summation, denominator raised by j:
///   2F1[a, b; 1 + a - b + j; -1].
/// Gamma ratios are assembled as gamma(top) * rgamma(bottom) so that terms
/// with a reciprocal-gamma zero drop out. Throws PoleError if a non-reciprocal
/// gamma lands on a pole.
double kummer_plus(double a, double b, unsigned j);

/// Generalized Kummer summation, denominator lowered by j:
///   2F1[a, b; 1 + a - b - j; -1].
double kummer_minus(double a, double b, unsigned j);

/// The four terminating specializations 2F1[-n, -n - nu; c; -1]:
///   plus_nu_plus_j    c = 1 + nu + j
///   minus_nu_plus_j   c = 1 - nu + j
///   plus_nu_minus_j   c = 1 + nu - j
///   minus_nu_minus_j  c = 1 - nu - j
enum class KummerVariant { plus_nu_plus_j, minus_nu_plus_j, plus_nu_minus_j, minus_nu_minus_j };

struct KummerCase {
    KummerVariant variant = KummerVariant::plus_nu_plus_j;
    unsigned n = 0;
    double nu = 0.0;
    unsigned j = 0;

    [[nodiscard]] double denominator() const;
};

std::optional<std::string> find_violation(const KummerCase& kc, double tol = kPoleTolerance);

/// Closed form for the case. Coupled poles (a gamma on a pole against a
/// reciprocal gamma on a zero, both moving with nu) are resolved in the limit,
/// so e.g. plus_nu_minus_j at nu = 1/2 is finite. Throws InvalidSpec if the
/// case violates its invariant.
double kummer_special(const KummerCase& kc);

/// The same 2F1 by terminating series through pfq_eval.
EvalResult kummer_series(const KummerCase& kc);

}  // namespace lagsum

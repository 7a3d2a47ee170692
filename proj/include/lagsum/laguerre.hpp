#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lagsum/gamma.hpp"
#include "lagsum/pfq.hpp"

namespace lagsum {

enum class Sign { plus, minus };

constexpr double apply(Sign s, double v) { return s == Sign::plus ? v : -v; }
char to_char(Sign s);

/// One instance of the sum
///   S_m(+-nu, +-p) = e^{-x} sum_n x^n L_n^{(nu)}(x) (f+m)_n / ((1 +- nu +- p)_n (f)_n).
struct SumSpec {
    unsigned m = 0;
    unsigned p = 0;
    Sign sign_nu = Sign::plus;
    Sign sign_p = Sign::plus;
    double nu = 0.0;
    double f = 1.0;
    double x = 0.0;

    /// 1 +- nu +- p
    [[nodiscard]] double denominator_base() const { return 1.0 + apply(sign_nu, nu) + apply(sign_p, p); }
    /// Signed integer offset +-p.
    [[nodiscard]] int signed_p() const { return sign_p == Sign::plus ? static_cast<int>(p) : -static_cast<int>(p); }
};

/// Variant label used in tables: "+nu+p", "+nu-p", "-nu+p" or "-nu-p".
std::string variant_label(const SumSpec& spec);

/// Describes the first violated SumSpec invariant, or nullopt if the spec is
/// admissible. `tol` widens the forbidden neighbourhoods around poles.
std::optional<std::string> find_violation(const SumSpec& spec, double tol = kPoleTolerance);

/// Throws InvalidSpec naming the violated invariant.
void validate(const SumSpec& spec);

struct LaguerreSeq {
    double nu = 0.0;
    std::vector<double> values;  // L_0 .. L_N at a fixed x
};

/// Forward three-term recurrence
///   n L_n = (2n - 1 + nu - x) L_{n-1} - (n - 1 + nu) L_{n-2},  L_0 = 1, L_1 = 1 - x + nu.
LaguerreSeq laguerre_seq(double nu, double x, std::size_t n_max);

/// Brute-force summation of the defining series. Uses the same stopping rule
/// as pfq_eval; the e^{-x} factor is applied at the end.
EvalResult oracle_sum(const SumSpec& spec, const SeriesControl& control = {});

}  // namespace lagsum

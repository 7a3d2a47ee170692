#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "lagsum/pole_limit.hpp"

namespace lagsum {

/// Generalized hypergeometric series pFq[a_1..a_P; b_1..b_Q; z].
struct PFQSpec {
    std::vector<double> num_params;
    std::vector<double> den_params;
    double argument = 0.0;
};

enum class SeriesStatus { converged, terminated, max_terms_hit };

std::string_view to_string(SeriesStatus s);

struct EvalResult {
    double value = 0.0;
    std::size_t terms_used = 0;
    double trunc_estimate = 0.0;  // |first neglected term|; 0 when terminated
    SeriesStatus status = SeriesStatus::converged;
};

struct SeriesControl {
    double tol = 1e-14;
    std::size_t max_terms = 400;
};

/// Sums the defining series with the running-ratio recurrence
///   t_{n+1} = t_n * prod(a_i + n) / prod(b_j + n) * z / (n + 1).
///
/// Stops once three consecutive terms satisfy |t| <= tol * max(1, |partial|)
/// and the next one does too (that next term is the truncation estimate), or
/// when a numerator parameter hits zero. Throws PoleError if a denominator
/// factor vanishes before termination.
EvalResult pfq_eval(const PFQSpec& spec, const SeriesControl& control = {});

/// Smallest n such that some numerator parameter equals -n (within 1e-12).
std::optional<std::size_t> is_terminating(const PFQSpec& spec);

/// Same series with parameters that move with nu, scaled by a Laurent
/// prefactor, evaluated in the limit. This is the regularized form used when
/// a closed form pairs rgamma(b) with a denominator parameter b on a pole.
struct TrackedPFQ {
    std::vector<Affine> num_params;
    std::vector<Affine> den_params;
    double argument = 0.0;
};

EvalResult pfq_eval_scaled(Laurent scale, const TrackedPFQ& spec, const SeriesControl& control = {});

}  // namespace lagsum

#include "lagsum/pfq.hpp"

#include <algorithm>
#include <cmath>

#include "lagsum/compensated_sum.hpp"

namespace lagsum {

std::string_view to_string(SeriesStatus s) {
    switch (s) {
        case SeriesStatus::converged:
            return "converged";
        case SeriesStatus::terminated:
            return "terminated";
        case SeriesStatus::max_terms_hit:
            return "max_terms_hit";
    }
    return "unknown";
}

EvalResult pfq_eval_scaled(Laurent scale, const TrackedPFQ& spec, const SeriesControl& control) {
    // A moving denominator parameter -k lowers the term order at index k+1;
    // before that point zero-valued terms say nothing about convergence.
    std::size_t last_drop = 0;
    for (const Affine& b : spec.den_params) {
        if (b.slope == 0.0) {
            continue;
        }
        if (const auto k = nonpositive_integer_index(b.value)) {
            last_drop = std::max(last_drop, static_cast<std::size_t>(*k) + 1);
        }
    }

    CompensatedSum sum;
    Laurent term = scale;
    int small_streak = 0;
    EvalResult out;

    for (std::size_t n = 0;; ++n) {
        if (term.exact_zero() || (term.order() > 0 && n >= last_drop)) {
            out.status = SeriesStatus::terminated;
            out.terms_used = n;
            out.trunc_estimate = 0.0;
            break;
        }
        const double v = term.value();
        const double threshold = control.tol * std::max(1.0, std::abs(sum.value()));
        const bool small = std::abs(v) <= threshold;
        if (n >= control.max_terms) {
            out.status = SeriesStatus::max_terms_hit;
            out.terms_used = n;
            out.trunc_estimate = std::abs(v);
            break;
        }
        if (small && small_streak >= 3 && n >= last_drop) {
            out.status = SeriesStatus::converged;
            out.terms_used = n;
            out.trunc_estimate = std::abs(v);
            break;
        }
        sum += v;
        small_streak = small ? small_streak + 1 : 0;

        const double dn = static_cast<double>(n);
        for (const Affine& a : spec.num_params) {
            term *= factor_limit(a + Affine(dn));
        }
        if (term.exact_zero()) {
            // Terminated; a denominator zero at the same index is never reached.
            continue;
        }
        for (const Affine& b : spec.den_params) {
            term /= factor_limit(b + Affine(dn));
        }
        term *= spec.argument / (dn + 1.0);
    }
    out.value = sum.value();
    return out;
}

EvalResult pfq_eval(const PFQSpec& spec, const SeriesControl& control) {
    TrackedPFQ tracked;
    tracked.argument = spec.argument;
    tracked.num_params.assign(spec.num_params.begin(), spec.num_params.end());
    tracked.den_params.assign(spec.den_params.begin(), spec.den_params.end());
    return pfq_eval_scaled(Laurent(1.0), tracked, control);
}

std::optional<std::size_t> is_terminating(const PFQSpec& spec) {
    std::optional<std::size_t> best;
    for (double a : spec.num_params) {
        if (const auto k = nonpositive_integer_index(a)) {
            const auto n = static_cast<std::size_t>(*k);
            if (!best || n < *best) {
                best = n;
            }
        }
    }
    return best;
}

}  // namespace lagsum

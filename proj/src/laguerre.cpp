#include "lagsum/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lagsum/compensated_sum.hpp"
#include "lagsum/errors.hpp"

namespace lagsum {

namespace {

// Streams L_0, L_1, ... without storing them.
class LaguerreRecurrence {
public:
    LaguerreRecurrence(double nu, double x) : nu_(nu), x_(x) {}

    double next() {
        double out = 0.0;
        if (n_ == 0) {
            out = 1.0;
        } else if (n_ == 1) {
            out = 1.0 - x_ + nu_;
        } else {
            const double n = static_cast<double>(n_);
            out = ((2.0 * n - 1.0 + nu_ - x_) * prev_ - (n - 1.0 + nu_) * prev2_) / n;
        }
        prev2_ = prev_;
        prev_ = out;
        ++n_;
        return out;
    }

private:
    double nu_;
    double x_;
    std::size_t n_ = 0;
    double prev_ = 0.0;
    double prev2_ = 0.0;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

std::string variant_label(const SumSpec& spec) {
    std::string out;
    out += to_char(spec.sign_nu);
    out += "nu";
    out += to_char(spec.sign_p);
    out += "p";
    return out;
}

std::optional<std::string> find_violation(const SumSpec& spec, double tol) {
    if (!std::isfinite(spec.nu) || !std::isfinite(spec.f) || !std::isfinite(spec.x)) {
        return std::string("nu, f and x must be finite");
    }
    if (nonpositive_integer_index(spec.f, tol)) {
        return "f must not be a non-positive integer (f = " + fmt(spec.f) + ")";
    }
    const double c = spec.denominator_base();
    for (unsigned r = 0; r <= spec.m; ++r) {
        const double shifted = c + static_cast<double>(r);
        if (nonpositive_integer_index(shifted, tol)) {
            std::string what = "1" + std::string(1, to_char(spec.sign_nu)) + "nu" +
                               std::string(1, to_char(spec.sign_p)) + "p";
            if (r > 0) {
                what += "+" + std::to_string(r);
            }
            return what + " must not be a non-positive integer (value " + fmt(shifted) + ")";
        }
    }
    return std::nullopt;
}

void validate(const SumSpec& spec) {
    if (auto v = find_violation(spec)) {
        throw InvalidSpec(*v);
    }
}

LaguerreSeq laguerre_seq(double nu, double x, std::size_t n_max) {
    LaguerreSeq out{nu, {}};
    out.values.reserve(n_max + 1);
    LaguerreRecurrence rec(nu, x);
    for (std::size_t n = 0; n <= n_max; ++n) {
        out.values.push_back(rec.next());
    }
    return out;
}

EvalResult oracle_sum(const SumSpec& spec, const SeriesControl& control) {
    validate(spec);
    const double c = spec.denominator_base();
    const double f = spec.f;
    const double fm = spec.f + static_cast<double>(spec.m);

    LaguerreRecurrence laguerre(spec.nu, spec.x);
    CompensatedSum sum;
    double weight = 1.0;  // x^n (f+m)_n / ((c)_n (f)_n)
    int small_streak = 0;
    EvalResult out;

    for (std::size_t n = 0;; ++n) {
        const double term = weight * laguerre.next();
        const double threshold = control.tol * std::max(1.0, std::abs(sum.value()));
        const bool small = std::abs(term) <= threshold;
        if (n >= control.max_terms) {
            out.status = SeriesStatus::max_terms_hit;
            out.terms_used = n;
            out.trunc_estimate = std::abs(term);
            break;
        }
        if (small && small_streak >= 3) {
            out.status = SeriesStatus::converged;
            out.terms_used = n;
            out.trunc_estimate = std::abs(term);
            break;
        }
        sum += term;
        small_streak = small ? small_streak + 1 : 0;
        const double dn = static_cast<double>(n);
        weight *= spec.x * (fm + dn) / ((c + dn) * (f + dn));
    }
    const double damping = std::exp(-spec.x);
    out.value = damping * sum.value();
    out.trunc_estimate *= damping;
    return out;
}

}  // namespace lagsum

#include "lagsum/kummer.hpp"

#include <cmath>
#include <string>

#include "lagsum/compensated_sum.hpp"
#include "lagsum/errors.hpp"
#include "lagsum/gamma.hpp"
#include "lagsum/pole_limit.hpp"

namespace lagsum {

namespace {

double pow2(double e) { return std::exp2(e); }

// Gamma(b - j) / Gamma(b) = 1 / (b - j)_j
double falling_gamma_ratio(double b, unsigned j) {
    const double poch = pochhammer(b - static_cast<double>(j), j);
    if (poch == 0.0) {
        throw PoleError("kummer: Gamma(b - j) / Gamma(b) at a pole");
    }
    return 1.0 / poch;
}

// sum_s sign^s C(j,s) Gamma(top + s/2) / Gamma(bottom + s/2)
double half_step_sum(double top, double bottom, unsigned j, bool alternating) {
    CompensatedSum sum;
    for (unsigned s = 0; s <= j; ++s) {
        const double half_s = 0.5 * static_cast<double>(s);
        const double r = rgamma(bottom + half_s);
        if (r == 0.0) {
            continue;  // parity zero: skip the partner gamma
        }
        double term = binomial(j, s) * reflected_gamma_ratio(top + half_s, bottom + half_s);
        if (alternating && (s % 2 == 1)) {
            term = -term;
        }
        sum += term;
    }
    return sum.value();
}

// Same sum for the specializations, with nu-dependent arguments tracked so
// that coupled poles resolve to their limit. Each summand must be finite.
double half_step_sum_limit(Laurent prefactor, Affine top, Affine bottom, unsigned j, bool alternating) {
    CompensatedSum sum;
    for (unsigned s = 0; s <= j; ++s) {
        const Affine shift(0.5 * static_cast<double>(s));
        const Laurent r = rgamma_limit(bottom + shift);
        if (r.exact_zero()) {
            continue;
        }
        const Laurent g = gamma_limit(top + shift);
        // Off the poles, reflect so that mirrored pairs cancel exactly.
        const Laurent term = (g.order() == 0 && r.order() == 0)
                                 ? prefactor * Laurent(reflected_gamma_ratio((top + shift).value, (bottom + shift).value))
                                 : prefactor * g * r;
        double v = binomial(j, s) * term.value();
        if (alternating && (s % 2 == 1)) {
            v = -v;
        }
        sum += v;
    }
    return sum.value();
}

Laurent pochhammer_limit(Affine a, unsigned n) {
    Laurent out(1.0);
    for (unsigned i = 0; i < n; ++i) {
        out *= factor_limit(a + Affine(static_cast<double>(i)));
    }
    return out;
}

}  // namespace

double kummer_plus(double a, double b, unsigned j) {
    const double dj = static_cast<double>(j);
    const double pre = pow2(-2.0 * b + dj) * falling_gamma_ratio(b, j) * gamma(1.0 + a - b + dj) *
                       rgamma(a - 2.0 * b + dj + 1.0);
    if (pre == 0.0) {
        return 0.0;
    }
    return pre * half_step_sum(0.5 * a - b + 0.5 * dj + 0.5, 0.5 * a - 0.5 * dj + 0.5, j, true);
}

double kummer_minus(double a, double b, unsigned j) {
    const double dj = static_cast<double>(j);
    const double pre = pow2(-2.0 * b - dj) * gamma(1.0 + a - b - dj) * rgamma(a - 2.0 * b - dj + 1.0);
    if (pre == 0.0) {
        return 0.0;
    }
    return pre * half_step_sum(0.5 * a - b - 0.5 * dj + 0.5, 0.5 * a - 0.5 * dj + 0.5, j, false);
}

double KummerCase::denominator() const {
    const double dj = static_cast<double>(j);
    switch (variant) {
        case KummerVariant::plus_nu_plus_j:
            return 1.0 + nu + dj;
        case KummerVariant::minus_nu_plus_j:
            return 1.0 - nu + dj;
        case KummerVariant::plus_nu_minus_j:
            return 1.0 + nu - dj;
        case KummerVariant::minus_nu_minus_j:
            return 1.0 - nu - dj;
    }
    return 0.0;
}

std::optional<std::string> find_violation(const KummerCase& kc, double tol) {
    if (!std::isfinite(kc.nu)) {
        return std::string("nu must be finite");
    }
    if (nonpositive_integer_index(kc.denominator(), tol)) {
        return "2F1 denominator parameter " + std::to_string(kc.denominator()) + " is a non-positive integer";
    }
    return std::nullopt;
}

double kummer_special(const KummerCase& kc) {
    if (auto v = find_violation(kc)) {
        throw InvalidSpec(*v);
    }
    const Affine nu = nu_variable(kc.nu);
    const double n = kc.n;
    const double j = kc.j;
    const Affine half_nu = 0.5 * nu;

    switch (kc.variant) {
        case KummerVariant::plus_nu_plus_j: {
            // 2^{2n+2nu+j} (-1)^j Gamma(1+nu+j) / ((1+n+nu)_j Gamma(n+2nu+j+1))
            Laurent pre = Laurent(pow2(2.0 * n + 2.0 * kc.nu + j) * ((kc.j % 2 == 0) ? 1.0 : -1.0));
            pre *= gamma_limit(Affine(1.0 + j) + nu);
            pre /= pochhammer_limit(Affine(1.0 + n) + nu, kc.j);
            pre *= rgamma_limit(Affine(n + j + 1.0) + 2.0 * nu);
            return half_step_sum_limit(pre, Affine(0.5 * n + 0.5 * j + 0.5) + nu, Affine(-0.5 * n - 0.5 * j + 0.5),
                                       kc.j, true);
        }
        case KummerVariant::minus_nu_plus_j: {
            // 2^{2n+j} (-1)^j n! / (j! (1+j)_n (1-nu+j)_n)
            Laurent pre = Laurent(pow2(2.0 * n + j) * ((kc.j % 2 == 0) ? 1.0 : -1.0) * gamma(n + 1.0) /
                                  (gamma(j + 1.0) * pochhammer(1.0 + j, kc.n)));
            pre /= pochhammer_limit(Affine(1.0 + j) - nu, kc.n);
            return half_step_sum_limit(pre, Affine(0.5 * n + 0.5 * j + 0.5) - half_nu,
                                       Affine(-0.5 * n - 0.5 * j + 0.5) - half_nu, kc.j, true);
        }
        case KummerVariant::plus_nu_minus_j: {
            // 2^{2n+2nu-j} Gamma(1+nu-j) / Gamma(n+2nu-j+1)
            Laurent pre = Laurent(pow2(2.0 * n + 2.0 * kc.nu - j));
            pre *= gamma_limit(Affine(1.0 - j) + nu);
            pre *= rgamma_limit(Affine(n - j + 1.0) + 2.0 * nu);
            return half_step_sum_limit(pre, Affine(0.5 * n - 0.5 * j + 0.5) + nu, Affine(-0.5 * n - 0.5 * j + 0.5),
                                       kc.j, false);
        }
        case KummerVariant::minus_nu_minus_j: {
            // 2^{2n-j} / (1-nu-j)_n
            Laurent pre = Laurent(pow2(2.0 * n - j));
            pre /= pochhammer_limit(Affine(1.0 - j) - nu, kc.n);
            return half_step_sum_limit(pre, Affine(0.5 * n - 0.5 * j + 0.5) - half_nu,
                                       Affine(-0.5 * n - 0.5 * j + 0.5) - half_nu, kc.j, false);
        }
    }
    return 0.0;
}

EvalResult kummer_series(const KummerCase& kc) {
    if (auto v = find_violation(kc)) {
        throw InvalidSpec(*v);
    }
    const double n = kc.n;
    PFQSpec spec{{-n, -n - kc.nu}, {kc.denominator()}, -1.0};
    return pfq_eval(spec, SeriesControl{1e-16, kc.n + 8});
}

}  // namespace lagsum

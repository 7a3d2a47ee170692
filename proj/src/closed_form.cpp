#include "lagsum/closed_form.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "lagsum/compensated_sum.hpp"
#include "lagsum/errors.hpp"
#include "lagsum/gamma.hpp"
#include "lagsum/kummer.hpp"

namespace lagsum {

namespace {

// Which generalized Kummer sum a shift r leads to: the 2F1 denominator is
// 1 +- nu + j (raised) or 1 +- nu - j (lowered), j >= 0.
enum class Family { raised, lowered };

double signed_pow2(int e, bool negative) {
    const double v = std::ldexp(1.0, e);
    return negative ? -v : v;
}

double parity(unsigned k) { return (k % 2 == 0) ? 1.0 : -1.0; }

Laurent pochhammer_limit(Affine a, unsigned n) {
    Laurent out(1.0);
    for (unsigned i = 0; i < n; ++i) {
        out *= factor_limit(a + Affine(static_cast<double>(i)));
    }
    return out;
}

// Parameter lists of F_r^{(which)} written in terms of the Kummer offset j
// (j = p + r for blocks 1, 2, 5, 6 and j = p - r for 3, 4, 7, 8).
TrackedPFQ block_params(unsigned which, unsigned r, unsigned j, unsigned s, Affine nu, double x) {
    const Affine hn = 0.5 * nu;
    const double hr = 0.5 * r;
    const double hj = 0.5 * j;
    const double hs = 0.5 * s;
    TrackedPFQ b;
    b.argument = -x * x;
    switch (which) {
        case 1:
            b.num_params = {Affine(0.5 + hr) + hn, Affine(1.0 + hr) + hn, Affine(0.5 + hj + hs) + nu,
                            Affine(0.5 + hj - hs)};
            b.den_params = {Affine(0.5), Affine(0.5 + hj) + hn, Affine(1.0 + hj) + hn, Affine(0.5 + hj) + nu,
                            Affine(1.0 + hj) + nu};
            break;
        case 2:
            b.num_params = {Affine(1.0 + hr) + hn, Affine(1.5 + hr) + hn, Affine(1.0 + hj + hs) + nu,
                            Affine(1.0 + hj - hs)};
            b.den_params = {Affine(1.5), Affine(1.0 + hj) + hn, Affine(1.5 + hj) + hn, Affine(1.0 + hj) + nu,
                            Affine(1.5 + hj) + nu};
            break;
        case 3:
            b.num_params = {Affine(0.5 + hr) + hn, Affine(1.0 + hr) + hn, Affine(0.5 - hj + hs) + nu,
                            Affine(0.5 + hj - hs)};
            b.den_params = {Affine(0.5), Affine(0.5) + hn, Affine(1.0) + hn, Affine(0.5 - hj) + nu,
                            Affine(1.0 - hj) + nu};
            break;
        case 4:
            b.num_params = {Affine(1.0 + hr) + hn, Affine(1.5 + hr) + hn, Affine(1.0 - hj + hs) + nu,
                            Affine(1.0 + hj - hs)};
            b.den_params = {Affine(1.5), Affine(1.0) + hn, Affine(1.5) + hn, Affine(1.0 - hj) + nu,
                            Affine(1.5 - hj) + nu};
            break;
        case 5:
            b.num_params = {Affine(1.0), Affine(0.5 + hr) + hn, Affine(1.0 + hr) + hn, Affine(0.5 + hj + hs) - hn,
                            Affine(0.5 + hj - hs) + hn};
            b.den_params = {Affine(0.5) + hn, Affine(1.0) + hn, Affine(0.5 + hj),
                            Affine(1.0 + hj),  Affine(0.5 + hj) - hn, Affine(1.0 + hj) - hn};
            break;
        case 6:
            b.num_params = {Affine(1.0), Affine(1.0 + hr) + hn, Affine(1.5 + hr) + hn, Affine(1.0 + hj + hs) - hn,
                            Affine(1.0 + hj - hs) + hn};
            b.den_params = {Affine(1.0) + hn, Affine(1.5) + hn, Affine(1.0 + hj),
                            Affine(1.5 + hj),  Affine(1.0 + hj) - hn, Affine(1.5 + hj) - hn};
            break;
        case 7:
            b.num_params = {Affine(0.5 + hr) + hn, Affine(1.0 + hr) + hn, Affine(0.5 - hj + hs) - hn,
                            Affine(0.5 + hj - hs) + hn};
            b.den_params = {Affine(0.5), Affine(0.5) + hn, Affine(1.0) + hn, Affine(0.5 - hj) - hn,
                            Affine(1.0 - hj) - hn};
            break;
        case 8:
            b.num_params = {Affine(1.0 + hr) + hn, Affine(1.5 + hr) + hn, Affine(1.0 - hj + hs) - hn,
                            Affine(1.0 + hj - hs) + hn};
            b.den_params = {Affine(1.5), Affine(1.0) + hn, Affine(1.5) + hn, Affine(1.0 - hj) - hn,
                            Affine(1.5 - hj) - hn};
            break;
        default:
            throw std::invalid_argument("hyper_block: which must be in 1..8");
    }
    return b;
}

// F_0^{(which)} with the cancelling pairs removed; p is the unsigned |p|.
TrackedPFQ block_params_m0(unsigned which, unsigned s, unsigned p, Affine nu, double x) {
    const Affine hn = 0.5 * nu;
    const double hp = 0.5 * p;
    const double hs = 0.5 * s;
    TrackedPFQ b;
    b.argument = -x * x;
    switch (which) {
        case 1:
            b.num_params = {Affine(0.5) + hn, Affine(1.0) + hn, Affine(0.5 + hp + hs) + nu, Affine(0.5 + hp - hs)};
            b.den_params = {Affine(0.5), Affine(0.5 + hp) + hn, Affine(1.0 + hp) + hn, Affine(0.5 + hp) + nu,
                            Affine(1.0 + hp) + nu};
            break;
        case 2:
            b.num_params = {Affine(1.0) + hn, Affine(1.5) + hn, Affine(1.0 + hp + hs) + nu, Affine(1.0 + hp - hs)};
            b.den_params = {Affine(1.5), Affine(1.0 + hp) + hn, Affine(1.5 + hp) + hn, Affine(1.0 + hp) + nu,
                            Affine(1.5 + hp) + nu};
            break;
        case 3:
            b.num_params = {Affine(0.5 - hp + hs) + nu, Affine(0.5 + hp - hs)};
            b.den_params = {Affine(0.5), Affine(0.5 - hp) + nu, Affine(1.0 - hp) + nu};
            break;
        case 4:
            b.num_params = {Affine(1.0 - hp + hs) + nu, Affine(1.0 + hp - hs)};
            b.den_params = {Affine(1.5), Affine(1.0 - hp) + nu, Affine(1.5 - hp) + nu};
            break;
        case 5:
            b.num_params = {Affine(1.0), Affine(0.5 + hp + hs) - hn, Affine(0.5 + hp - hs) + hn};
            b.den_params = {Affine(0.5 + hp), Affine(1.0 + hp), Affine(0.5 + hp) - hn, Affine(1.0 + hp) - hn};
            break;
        case 6:
            b.num_params = {Affine(1.0), Affine(1.0 + hp + hs) - hn, Affine(1.0 + hp - hs) + hn};
            b.den_params = {Affine(1.0 + hp), Affine(1.5 + hp), Affine(1.0 + hp) - hn, Affine(1.5 + hp) - hn};
            break;
        case 7:
            b.num_params = {Affine(0.5 - hp + hs) - hn, Affine(0.5 + hp - hs) + hn};
            b.den_params = {Affine(0.5), Affine(0.5 - hp) - hn, Affine(1.0 - hp) - hn};
            break;
        case 8:
            b.num_params = {Affine(1.0 - hp + hs) - hn, Affine(1.0 + hp - hs) + hn};
            b.den_params = {Affine(1.5), Affine(1.0 - hp) - hn, Affine(1.5 - hp) - hn};
            break;
        default:
            throw std::invalid_argument("hyper_block_m0: which must be in 1..8");
    }
    return b;
}

PFQSpec strip(const TrackedPFQ& t) {
    PFQSpec out;
    out.argument = t.argument;
    for (const Affine& a : t.num_params) {
        out.num_params.push_back(a.value);
    }
    for (const Affine& b : t.den_params) {
        out.den_params.push_back(b.value);
    }
    return out;
}

// Drops numerator/denominator pairs that are identical (value and slope),
// as happens at r = 0. Pairs sitting on a non-positive integer are kept:
// there the pair decides between termination and a pole.
TrackedPFQ contract(const TrackedPFQ& block) {
    TrackedPFQ out;
    out.argument = block.argument;
    std::vector<bool> used(block.den_params.size(), false);
    for (const Affine& a : block.num_params) {
        bool cancelled = false;
        if (!nonpositive_integer_index(a.value)) {
            for (std::size_t i = 0; i < block.den_params.size(); ++i) {
                const Affine& b = block.den_params[i];
                if (!used[i] && b.value == a.value && b.slope == a.slope) {
                    used[i] = true;
                    cancelled = true;
                    break;
                }
            }
        }
        if (!cancelled) {
            out.num_params.push_back(a);
        }
    }
    for (std::size_t i = 0; i < block.den_params.size(); ++i) {
        if (!used[i]) {
            out.den_params.push_back(block.den_params[i]);
        }
    }
    return out;
}

double block_value(Laurent scale, const TrackedPFQ& block, const SeriesControl& control) {
    if (scale.exact_zero()) {
        return 0.0;  // pole-killed coefficient
    }
    const EvalResult res = pfq_eval_scaled(scale, contract(block), control);
    if (res.status == SeriesStatus::max_terms_hit) {
        throw ConvergenceError("hypergeometric block did not converge within " + std::to_string(control.max_terms) +
                               " terms");
    }
    return res.value;
}

// Coefficients depend on (r, p) only through the Kummer offset j, so the
// raised family is K_j(+-nu, 0) and the lowered family K_0(+-nu, -j).
Laurent family_coefficient(CoefficientKind kind, Family fam, unsigned j, unsigned s, Sign sign_nu, double nu) {
    const int ij = static_cast<int>(j);
    CoefficientSet c{kind, fam == Family::raised ? ij : 0, s, sign_nu, nu, fam == Family::raised ? 0 : -ij};
    return coefficient_limit(c);
}

// The r-th term of the closed form for S_m, expanded over s.
double shift_term(const SumSpec& spec, unsigned r, Family fam, unsigned j, const SeriesControl& control) {
    const Affine nu = nu_variable(spec.nu);
    const int q = spec.signed_p();
    const double x = spec.x;
    const double dr = r;
    const double dj = j;
    const bool plus_nu = spec.sign_nu == Sign::plus;
    const Affine c = plus_nu ? Affine(1.0 + q) + nu : Affine(1.0 + q) - nu;
    const double outer = binomial(spec.m, r) / pochhammer(spec.f, r);

    Laurent pre(1.0);
    Laurent second_extra(1.0);  // the x-coefficient of the second block, without 4x
    unsigned first_block = 0;
    CoefficientKind first_kind = CoefficientKind::A;
    CoefficientKind second_kind = CoefficientKind::B;
    if (plus_nu && fam == Family::raised) {
        // (-2)^j 2^{2nu} x^r Gamma(1+nu+r) / ((c)_r Gamma(1+2nu+j))
        pre = Laurent(outer * signed_pow2(static_cast<int>(j), j % 2 == 1) * std::exp2(2.0 * spec.nu) *
                      std::pow(x, dr));
        pre *= gamma_limit(Affine(1.0 + dr) + nu);
        pre /= pochhammer_limit(c, r);
        pre *= rgamma_limit(Affine(1.0 + dj) + 2.0 * nu);
        second_extra = factor_limit(Affine(1.0 + dr) + nu) /
                       (factor_limit(Affine(1.0 + dj) + nu) * factor_limit(Affine(1.0 + dj) + 2.0 * nu));
        first_block = 1;
    } else if (plus_nu) {
        // 2^{2nu+q} Gamma(1+nu+q) (2x)^r (1+nu)_r / Gamma(1+2nu-j)
        pre = Laurent(outer * std::exp2(2.0 * spec.nu + q) * std::pow(2.0 * x, dr));
        pre *= gamma_limit(c);
        pre *= pochhammer_limit(Affine(1.0) + nu, r);
        pre *= rgamma_limit(Affine(1.0 - dj) + 2.0 * nu);
        second_extra = factor_limit(Affine(1.0 + dr) + nu) /
                       (factor_limit(Affine(1.0) + nu) * factor_limit(Affine(1.0 - dj) + 2.0 * nu));
        first_block = 3;
    } else if (fam == Family::raised) {
        // (-2)^j x^r (1+nu)_r / ((c)_r j!)
        pre = Laurent(outer * signed_pow2(static_cast<int>(j), j % 2 == 1) * std::pow(x, dr) / gamma(dj + 1.0));
        pre *= pochhammer_limit(Affine(1.0) + nu, r);
        pre /= pochhammer_limit(c, r);
        second_extra = factor_limit(Affine(1.0 + dr) + nu) /
                       (factor_limit(Affine(1.0) + nu) * factor_limit(Affine(1.0 + dj) - nu) * Laurent(1.0 + dj));
        first_block = 5;
        first_kind = CoefficientKind::C;
        second_kind = CoefficientKind::D;
    } else {
        // 2^q (2x)^r (1+nu)_r / (c)_r
        pre = Laurent(outer * std::ldexp(1.0, q) * std::pow(2.0 * x, dr));
        pre *= pochhammer_limit(Affine(1.0) + nu, r);
        pre /= pochhammer_limit(c, r);
        second_extra =
            factor_limit(Affine(1.0 + dr) + nu) / (factor_limit(Affine(1.0) + nu) * factor_limit(Affine(1.0 - dj) - nu));
        first_block = 7;
        first_kind = CoefficientKind::C;
        second_kind = CoefficientKind::D;
    }
    if (pre.exact_zero()) {
        return 0.0;
    }

    const bool alternating = fam == Family::raised;
    CompensatedSum sum;
    for (unsigned s = 0; s <= j; ++s) {
        const double weight = binomial(j, s) * (alternating ? parity(s) : 1.0);
        const Laurent first_scale = pre * Laurent(weight) *
                                    family_coefficient(first_kind, fam, j, s, spec.sign_nu, spec.nu);
        const Laurent second_scale = pre * Laurent(-4.0 * x * weight) * second_extra *
                                     family_coefficient(second_kind, fam, j, s, spec.sign_nu, spec.nu);
        sum += block_value(first_scale, block_params(first_block, r, j, s, nu, x), control);
        sum += block_value(second_scale, block_params(first_block + 1, r, j, s, nu, x), control);
    }
    return sum.value();
}

// Gamma(base + top) / Gamma(base + bottom) with exact half-integer offsets.
// A whole-number gap away from poles is a Pochhammer product, which keeps
// e.g. D = z exact to rounding.
double shifted_ratio(double base, double top, double bottom) {
    const double gap = top - bottom;
    if (gap >= 0.0 && gap <= 64.0 && gap == std::floor(gap) && !nonpositive_integer_index(base + top) &&
        !nonpositive_integer_index(base + bottom)) {
        return pochhammer(base + bottom, static_cast<std::size_t>(gap));
    }
    return gamma_ratio(base + top, base + bottom);
}

Laurent shifted_ratio_limit(Affine base, double top, double bottom) {
    if (!nonpositive_integer_index(base.value + top) && !nonpositive_integer_index(base.value + bottom)) {
        return Laurent(shifted_ratio(base.value, top, bottom));
    }
    return gamma_limit(base + Affine(top)) * rgamma_limit(base + Affine(bottom));
}

KummerVariant kummer_variant(Sign sign_nu, Family fam) {
    if (sign_nu == Sign::plus) {
        return fam == Family::raised ? KummerVariant::plus_nu_plus_j : KummerVariant::plus_nu_minus_j;
    }
    return fam == Family::raised ? KummerVariant::minus_nu_plus_j : KummerVariant::minus_nu_minus_j;
}

}  // namespace

// ---------------------------------------------------------------------------

Laurent coefficient_limit(const CoefficientSet& c) {
    const double slope = c.sign_nu == Sign::plus ? 1.0 : -1.0;
    const Affine nu(slope * c.nu, slope);
    const double hp = 0.5 * c.p;
    const double habs_p = 0.5 * std::abs(c.p);
    const double hr = 0.5 * c.r;
    const double habs_r = 0.5 * std::abs(c.r);
    const double hs = 0.5 * c.s;
    switch (c.kind) {
        case CoefficientKind::A:
            return gamma_limit(nu + Affine(hp + habs_r + hs + 0.5)) * rgamma_limit(Affine(hs - habs_p - hr + 0.5));
        case CoefficientKind::B:
            return gamma_limit(nu + Affine(hp + habs_r + hs + 1.0)) * rgamma_limit(Affine(hs - habs_p - hr));
        case CoefficientKind::C:
            return shifted_ratio_limit(0.5 * nu, hp + habs_r + hs + 0.5, -habs_p - hr + hs + 0.5);
        case CoefficientKind::D:
            return shifted_ratio_limit(0.5 * nu, hp + habs_r + hs + 1.0, -habs_p - hr + hs);
    }
    return Laurent(0.0);
}

double coefficient(const CoefficientSet& c) {
    const double nu = c.sign_nu == Sign::plus ? c.nu : -c.nu;
    const double hp = 0.5 * c.p;
    const double habs_p = 0.5 * std::abs(c.p);
    const double hr = 0.5 * c.r;
    const double habs_r = 0.5 * std::abs(c.r);
    const double hs = 0.5 * c.s;
    switch (c.kind) {
        case CoefficientKind::A:
            return gamma(nu + hp + habs_r + hs + 0.5) * rgamma(hs - habs_p - hr + 0.5);
        case CoefficientKind::B:
            return gamma(nu + hp + habs_r + hs + 1.0) * rgamma(hs - habs_p - hr);
        case CoefficientKind::C:
            return shifted_ratio(0.5 * nu, hp + habs_r + hs + 0.5, -habs_p - hr + hs + 0.5);
        case CoefficientKind::D:
            return shifted_ratio(0.5 * nu, hp + habs_r + hs + 1.0, -habs_p - hr + hs);
    }
    return 0.0;
}

PFQSpec hyper_block(unsigned which, unsigned r, unsigned s, unsigned p, double nu, double x) {
    const bool lowered = which == 3 || which == 4 || which == 7 || which == 8;
    if (lowered && r > p) {
        throw ConstraintError("hyper_block: blocks 3, 4, 7, 8 need r <= p");
    }
    const unsigned j = lowered ? p - r : p + r;
    return strip(block_params(which, r, j, s, nu_variable(nu), x));
}

PFQSpec hyper_block_m0(unsigned which, unsigned s, unsigned p, double nu, double x) {
    return strip(block_params_m0(which, s, p, nu_variable(nu), x));
}

double s0_closed(const SumSpec& spec, const SeriesControl& control) {
    validate(spec);
    if (spec.m != 0) {
        throw ConstraintError("s0_closed needs m = 0");
    }
    const Affine nu = nu_variable(spec.nu);
    const unsigned p = spec.p;
    const int ip = static_cast<int>(p);
    const double x = spec.x;
    const double dp = p;

    Laurent pre(1.0);
    Laurent second_extra(1.0);
    unsigned first_block = 0;
    CoefficientKind first_kind = CoefficientKind::A;
    CoefficientKind second_kind = CoefficientKind::B;
    int coef_p = ip;
    bool alternating = false;
    if (spec.sign_nu == Sign::plus && spec.sign_p == Sign::plus) {
        // (-1)^p 2^{2nu+p} Gamma(1+nu) / Gamma(1+2nu+p)
        pre = Laurent(parity(p) * std::exp2(2.0 * spec.nu + dp));
        pre *= gamma_limit(Affine(1.0) + nu);
        pre *= rgamma_limit(Affine(1.0 + dp) + 2.0 * nu);
        second_extra = factor_limit(Affine(1.0) + nu) /
                       (factor_limit(Affine(1.0 + dp) + nu) * factor_limit(Affine(1.0 + dp) + 2.0 * nu));
        first_block = 1;
        alternating = true;
    } else if (spec.sign_nu == Sign::plus) {
        // 2^{2nu-p} Gamma(1+nu-p) / Gamma(1+2nu-p)
        pre = Laurent(std::exp2(2.0 * spec.nu - dp));
        pre *= gamma_limit(Affine(1.0 - dp) + nu);
        pre *= rgamma_limit(Affine(1.0 - dp) + 2.0 * nu);
        second_extra = Laurent(1.0) / factor_limit(Affine(1.0 - dp) + 2.0 * nu);
        first_block = 3;
        coef_p = -ip;
    } else if (spec.sign_p == Sign::plus) {
        // (-2)^p / p!
        pre = Laurent(signed_pow2(ip, p % 2 == 1) / gamma(dp + 1.0));
        second_extra = Laurent(1.0 / (1.0 + dp)) / factor_limit(Affine(1.0 + dp) - nu);
        first_block = 5;
        first_kind = CoefficientKind::C;
        second_kind = CoefficientKind::D;
        alternating = true;
    } else {
        pre = Laurent(std::ldexp(1.0, -ip));
        second_extra = Laurent(1.0) / factor_limit(Affine(1.0 - dp) - nu);
        first_block = 7;
        first_kind = CoefficientKind::C;
        second_kind = CoefficientKind::D;
        coef_p = -ip;
    }
    if (pre.exact_zero()) {
        return 0.0;
    }

    CompensatedSum sum;
    for (unsigned s = 0; s <= p; ++s) {
        const double weight = binomial(p, s) * (alternating ? parity(s) : 1.0);
        const Laurent a = coefficient_limit({first_kind, 0, s, spec.sign_nu, spec.nu, coef_p});
        const Laurent b = coefficient_limit({second_kind, 0, s, spec.sign_nu, spec.nu, coef_p});
        sum += block_value(pre * Laurent(weight) * a, block_params_m0(first_block, s, p, nu, x), control);
        sum += block_value(pre * Laurent(-4.0 * x * weight) * second_extra * b,
                           block_params_m0(first_block + 1, s, p, nu, x), control);
    }
    return sum.value();
}

double sm_closed(const SumSpec& spec, const SeriesControl& control) {
    validate(spec);
    if (spec.sign_p == Sign::minus && spec.m > spec.p) {
        throw ConstraintError("sm_closed: sign_p = - requires p >= m (m = " + std::to_string(spec.m) +
                              ", p = " + std::to_string(spec.p) + "); use sm_split");
    }
    CompensatedSum sum;
    for (unsigned r = 0; r <= spec.m; ++r) {
        if (spec.sign_p == Sign::plus) {
            sum += shift_term(spec, r, Family::raised, spec.p + r, control);
        } else {
            sum += shift_term(spec, r, Family::lowered, spec.p - r, control);
        }
    }
    return sum.value();
}

double sm_split(const SumSpec& spec, const SeriesControl& control) {
    validate(spec);
    if (spec.sign_p != Sign::minus || spec.m <= spec.p) {
        throw ConstraintError("sm_split needs sign_p = - and m > p");
    }
    CompensatedSum sum;
    for (unsigned r = 0; r <= spec.m; ++r) {
        if (r <= spec.p) {
            sum += shift_term(spec, r, Family::lowered, spec.p - r, control);
        } else {
            sum += shift_term(spec, r, Family::raised, r - spec.p, control);
        }
    }
    return sum.value();
}

EvalResult lemma_sum(const SumSpec& spec, const SeriesControl& control) {
    validate(spec);
    const double x = spec.x;
    const double c = spec.denominator_base();
    const int q = spec.signed_p();

    CompensatedSum total;
    EvalResult out;
    out.status = SeriesStatus::converged;
    for (unsigned r = 0; r <= spec.m; ++r) {
        if (r > 0 && x == 0.0) {
            break;
        }
        const int offset = q + static_cast<int>(r);
        const bool raised = offset > 0 || (offset == 0 && spec.sign_p == Sign::plus);
        const Family fam = raised ? Family::raised : Family::lowered;
        KummerCase kc{kummer_variant(spec.sign_nu, fam), 0, spec.nu, static_cast<unsigned>(std::abs(offset))};

        const double pre =
            binomial(spec.m, r) * std::pow(x, static_cast<double>(r)) / (pochhammer(spec.f, r) * pochhammer(c, r));
        CompensatedSum sum;
        double weight = 1.0;  // (-x)^n / n!
        int small_streak = 0;
        for (std::size_t n = 0;; ++n) {
            kc.n = static_cast<unsigned>(n);
            const double term =
                weight == 0.0 ? 0.0 : pre * weight * pochhammer(static_cast<double>(n) + spec.nu + 1.0, r) *
                                          kummer_special(kc);
            const double threshold = control.tol * std::max(1.0, std::abs(sum.value()));
            const bool small = std::abs(term) <= threshold;
            if (n >= control.max_terms) {
                out.status = SeriesStatus::max_terms_hit;
                out.terms_used = std::max(out.terms_used, n);
                out.trunc_estimate += std::abs(term);
                break;
            }
            if (small && small_streak >= 3) {
                out.terms_used = std::max(out.terms_used, n);
                out.trunc_estimate += std::abs(term);
                break;
            }
            sum += term;
            small_streak = small ? small_streak + 1 : 0;
            weight *= -x / static_cast<double>(n + 1);
        }
        total += sum.value();
    }
    out.value = total.value();
    return out;
}

double bessel_special(double nu, double f, double x, const SeriesControl& control) {
    if (!(nu > -1.0) || !std::isfinite(nu)) {
        throw InvalidSpec("bessel_special needs nu > -1");
    }
    if (!std::isfinite(f) || nonpositive_integer_index(f)) {
        throw InvalidSpec("bessel_special: f must not be a non-positive integer");
    }
    if (!std::isfinite(x)) {
        throw InvalidSpec("bessel_special: x must be finite");
    }
    const double z = -x * x;
    const EvalResult lo = pfq_eval({{}, {1.0 + nu}, z}, control);
    const EvalResult hi = pfq_eval({{}, {2.0 + nu}, z}, control);
    if (lo.status == SeriesStatus::max_terms_hit || hi.status == SeriesStatus::max_terms_hit) {
        throw ConvergenceError("bessel_special: 0F1 did not converge");
    }
    return (1.0 + x / f) * lo.value - x * x / ((1.0 + nu) * f) * hi.value;
}

std::string_view to_string(Dispatch d) {
    switch (d) {
        case Dispatch::s0:
            return "s0";
        case Dispatch::sm:
            return "sm";
        case Dispatch::split:
            return "split";
    }
    return "unknown";
}

Dispatch select_dispatch(const SumSpec& spec) {
    if (spec.m == 0) {
        return Dispatch::s0;
    }
    if (spec.sign_p == Sign::minus && spec.m > spec.p) {
        return Dispatch::split;
    }
    return Dispatch::sm;
}

ClosedResult closed_sum(const SumSpec& spec, const SeriesControl& control) {
    const Dispatch d = select_dispatch(spec);
    if (spec.x == 0.0) {
        validate(spec);
        return {1.0, d};  // only the n = 0 term survives
    }
    switch (d) {
        case Dispatch::s0:
            return {s0_closed(spec, control), d};
        case Dispatch::split:
            return {sm_split(spec, control), d};
        case Dispatch::sm:
            break;
    }
    return {sm_closed(spec, control), d};
}

}  // namespace lagsum

#pragma once

#include <string_view>

#include "lagsum/laguerre.hpp"
#include "lagsum/pfq.hpp"
#include "lagsum/pole_limit.hpp"

namespace lagsum {

// ---------------------------------------------------------------------------
// Coefficients

enum class CoefficientKind { A, B, C, D };

/// K_r(+-nu, p) for K in {A, B, C, D}, with signed shift index r and signed p:
///
///   A = Gamma(nu' + p/2 + |r|/2 + s/2 + 1/2) / Gamma(s/2 - |p|/2 - r/2 + 1/2)
///   B = Gamma(nu' + p/2 + |r|/2 + s/2 + 1)   / Gamma(s/2 - |p|/2 - r/2)
///   C = Gamma(nu'/2 + p/2 + |r|/2 + s/2 + 1/2) / Gamma(nu'/2 - |p|/2 - r/2 + s/2 + 1/2)
///   D = Gamma(nu'/2 + p/2 + |r|/2 + s/2 + 1)   / Gamma(nu'/2 - |p|/2 - r/2 + s/2)
///
/// where nu' = +nu or -nu. Negative r is the C_{-r} notation of the
/// (-nu, -p) sums; the A_{-r}, B_{-r} of the (nu, -p) sums use the same
/// convention.
struct CoefficientSet {
    CoefficientKind kind = CoefficientKind::A;
    int r = 0;
    unsigned s = 0;
    Sign sign_nu = Sign::plus;
    double nu = 0.0;
    int p = 0;
};

/// Leading behaviour as nu moves; coupled poles give a finite order-0 value.
Laurent coefficient_limit(const CoefficientSet& c);

/// Plain gamma(top) * rgamma(bottom). Throws PoleError on a pole.
double coefficient(const CoefficientSet& c);

// ---------------------------------------------------------------------------
// Hypergeometric blocks

/// F_r^{(which)}, which in 1..8, with argument -x^2: the 4F5 / 5F6 blocks of
/// the m >= 0 closed forms. Blocks 1, 2, 5, 6 belong to the +p sums, blocks
/// 3, 4, 7, 8 to the -p sums (where they require r <= p).
PFQSpec hyper_block(unsigned which, unsigned r, unsigned s, unsigned p, double nu, double x);

/// F_0^{(which)} exactly as listed for m = 0, i.e. with the cancelling
/// parameter pairs already removed (4F5, 4F5, 2F3, 2F3, 3F4, 3F4, 2F3, 2F3).
PFQSpec hyper_block_m0(unsigned which, unsigned s, unsigned p, double nu, double x);

// ---------------------------------------------------------------------------
// Evaluators

/// S_0(+-nu, +-p) by the m = 0 closed forms. Requires spec.m == 0.
double s0_closed(const SumSpec& spec, const SeriesControl& control = {});

/// S_m(+-nu, +-p) by the general closed forms. For sign_p = - this requires
/// p >= m; otherwise throws ConstraintError (use sm_split).
double sm_closed(const SumSpec& spec, const SeriesControl& control = {});

/// S_m(+-nu, -p) for m > p: shifts r <= p use the lowered Kummer sums,
/// shifts r > p the raised ones, each in closed hypergeometric form.
double sm_split(const SumSpec& spec, const SeriesControl& control = {});

/// Mixed representation: finite sum over r of n-series whose terms are
/// 2F1(-1) values from kummer_special.
EvalResult lemma_sum(const SumSpec& spec, const SeriesControl& control = {});

/// S_1(nu, 0) = (1 + x/f) 0F1[; 1+nu; -x^2] - x^2 / ((1+nu) f) 0F1[; 2+nu; -x^2].
double bessel_special(double nu, double f, double x, const SeriesControl& control = {});

enum class Dispatch { s0, sm, split };

std::string_view to_string(Dispatch d);

/// m = 0 -> s0; sign_p = - and m > p -> split; otherwise sm.
Dispatch select_dispatch(const SumSpec& spec);

struct ClosedResult {
    double value = 0.0;
    Dispatch dispatch = Dispatch::sm;
};

/// Closed-form value through the dispatch rule. At x = 0 the value is exactly 1.
ClosedResult closed_sum(const SumSpec& spec, const SeriesControl& control = {});

}  // namespace lagsum

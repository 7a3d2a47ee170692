#pragma once

// Coupled-pole evaluation.
//
// Several closed forms multiply a gamma function sitting on a pole by a
// reciprocal gamma sitting on a zero, e.g. Gamma(1/2 n + nu - 1/2 j + ...)
// against 1/Gamma(n + 2 nu - j + 1) at nu = 1/2. Both arguments move with nu,
// so the product has a finite limit that depends on their relative rates.
//
// Affine carries an argument together with its derivative along nu. Laurent
// is the leading term c * eps^k of a quantity as nu -> nu0 + eps, which is
// all we need: orders add under multiplication and only order-0 terms
// survive in the limit.

#include "lagsum/gamma.hpp"

namespace lagsum {

struct Affine {
    double value = 0.0;
    double slope = 0.0;  // d(value)/d(nu)

    constexpr Affine() = default;
    constexpr Affine(double v, double s = 0.0) : value(v), slope(s) {}  // NOLINT(google-explicit-constructor)

    friend constexpr Affine operator+(Affine a, Affine b) { return {a.value + b.value, a.slope + b.slope}; }
    friend constexpr Affine operator-(Affine a, Affine b) { return {a.value - b.value, a.slope - b.slope}; }
    friend constexpr Affine operator-(Affine a) { return {-a.value, -a.slope}; }
    friend constexpr Affine operator*(double k, Affine a) { return {k * a.value, k * a.slope}; }
    friend constexpr Affine operator*(Affine a, double k) { return k * a; }
};

/// The symbolic variable nu itself, evaluated at `nu`.
constexpr Affine nu_variable(double nu) { return {nu, 1.0}; }

class Laurent {
public:
    constexpr Laurent() = default;
    constexpr Laurent(double coefficient, int order = 0)  // NOLINT(google-explicit-constructor)
        : coef_(coefficient), order_(order) {}

    [[nodiscard]] constexpr double coefficient() const { return coef_; }
    [[nodiscard]] constexpr int order() const { return order_; }
    [[nodiscard]] constexpr bool exact_zero() const { return coef_ == 0.0; }

    /// Limit value. Order > 0 vanishes; an exact zero stays zero against any
    /// pole; order < 0 with a nonzero coefficient throws PoleError.
    [[nodiscard]] double value() const;

    Laurent& operator*=(Laurent rhs) {
        coef_ *= rhs.coef_;
        order_ += rhs.order_;
        return *this;
    }
    Laurent& operator/=(Laurent rhs);

    friend Laurent operator*(Laurent a, Laurent b) { return a *= b; }
    friend Laurent operator/(Laurent a, Laurent b) { return a /= b; }

private:
    double coef_ = 1.0;
    int order_ = 0;
};

/// The argument itself; order 1 when it vanishes and moves with nu.
Laurent factor_limit(Affine a);

/// Gamma(a): order -1 at a pole that moves with nu. PoleError at a fixed pole.
Laurent gamma_limit(Affine a);

/// 1/Gamma(a): order +1 at a moving pole, exact zero at a fixed one.
Laurent rgamma_limit(Affine a);

}  // namespace lagsum

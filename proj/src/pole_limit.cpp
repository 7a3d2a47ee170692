#include "lagsum/pole_limit.hpp"

#include <cmath>
#include <string>

#include "lagsum/errors.hpp"

namespace lagsum {

namespace {

double signed_factorial(long k) {
    // (-1)^k k!
    const double f = gamma(static_cast<double>(k) + 1.0);
    return (k % 2 == 0) ? f : -f;
}

}  // namespace

double Laurent::value() const {
    if (coef_ == 0.0 || order_ > 0) {
        return 0.0;
    }
    if (order_ < 0) {
        throw PoleError("unresolved pole of order " + std::to_string(-order_));
    }
    return coef_;
}

Laurent& Laurent::operator/=(Laurent rhs) {
    if (rhs.coef_ == 0.0) {
        throw PoleError("division by an exact zero");
    }
    coef_ /= rhs.coef_;
    order_ -= rhs.order_;
    return *this;
}

Laurent factor_limit(Affine a) {
    if (std::abs(a.value) <= kPoleTolerance && a.slope != 0.0) {
        return {a.slope, 1};
    }
    return {a.value, 0};
}

Laurent gamma_limit(Affine a) {
    if (const auto k = nonpositive_integer_index(a.value)) {
        if (a.slope == 0.0) {
            throw PoleError("gamma: fixed pole at " + std::to_string(-*k));
        }
        // Gamma(-k + s eps) ~ (-1)^k / (k! s eps)
        return {1.0 / (signed_factorial(*k) * a.slope), -1};
    }
    return {gamma(a.value), 0};
}

Laurent rgamma_limit(Affine a) {
    if (const auto k = nonpositive_integer_index(a.value)) {
        if (a.slope == 0.0) {
            return {0.0, 0};
        }
        // 1/Gamma(-k + s eps) ~ (-1)^k k! s eps
        return {signed_factorial(*k) * a.slope, 1};
    }
    return {rgamma(a.value), 0};
}

}  // namespace lagsum

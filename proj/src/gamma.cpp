#include "lagsum/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lagsum/errors.hpp"

namespace lagsum {

namespace {

constexpr double kHalfIntegerLimit = 40.0;

// Gamma(twice / 2) for an integer `twice`, by exact recursion.
double gamma_half_integer(long twice) {
    if (twice % 2 == 0) {
        const long n = twice / 2;
        if (n <= 0) {
            throw PoleError("gamma: pole at " + std::to_string(n));
        }
        double r = 1.0;
        for (long i = 2; i < n; ++i) {
            r *= static_cast<double>(i);
        }
        return r;
    }
    // Odd: start at Gamma(1/2) and walk up or down in unit steps.
    double r = std::sqrt(std::numbers::pi);
    double x = 0.5;
    const double target = 0.5 * static_cast<double>(twice);
    while (x < target) {
        r *= x;
        x += 1.0;
    }
    while (x > target) {
        x -= 1.0;
        r /= x;
    }
    return r;
}

// Digamma at twice / 2 by the same kind of recursion, from
// psi(1) = -euler and psi(1/2) = -euler - 2 ln 2.
double digamma_half_integer(long twice) {
    double psi = -std::numbers::egamma;
    double x = 1.0;
    if (twice % 2 != 0) {
        psi -= 2.0 * std::numbers::ln2;
        x = 0.5;
    }
    const double target = 0.5 * static_cast<double>(twice);
    while (x < target) {
        psi += 1.0 / x;
        x += 1.0;
    }
    while (x > target) {
        x -= 1.0;
        psi -= 1.0 / x;
    }
    return psi;
}

std::optional<long> half_integer_twice(double x) {
    if (std::abs(x) > kHalfIntegerLimit) {
        return std::nullopt;
    }
    const double twice = 2.0 * x;
    const double nearest = std::round(twice);
    // Arguments next to (but not on) a pole are left to tgamma.
    if (std::abs(twice - nearest) <= 2.0 * kPoleTolerance &&
        !(nearest <= 0.0 && std::fmod(nearest, 2.0) == 0.0)) {
        return static_cast<long>(nearest);
    }
    return std::nullopt;
}

}  // namespace

std::optional<long> nonpositive_integer_index(double x, double tol) {
    if (x > 0.5) {
        return std::nullopt;
    }
    const double nearest = std::round(x);
    if (nearest <= 0.0 && std::abs(x - nearest) <= tol * std::max(1.0, std::abs(x))) {
        return static_cast<long>(-nearest);
    }
    return std::nullopt;
}

double gamma(double x) {
    if (std::isnan(x)) {
        return x;
    }
    if (x <= 0.0 && x == std::floor(x)) {
        throw PoleError("gamma: pole at " + std::to_string(x));
    }
    if (const auto twice = half_integer_twice(x)) {
        // first-order correction for the snapped offset, |delta| <= 1e-12
        const double delta = x - 0.5 * static_cast<double>(*twice);
        const double g = gamma_half_integer(*twice);
        return delta == 0.0 ? g : g * (1.0 + digamma_half_integer(*twice) * delta);
    }
    return std::tgamma(x);
}

double rgamma(double x) {
    if (std::isnan(x)) {
        return x;
    }
    if (x <= 0.0 && x == std::floor(x)) {
        return 0.0;
    }
    if (x > 170.0) {
        return std::exp(-log_abs_gamma(x));
    }
    return 1.0 / gamma(x);
}

double log_abs_gamma(double x) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

int gamma_sign(double x) {
    if (x > 0.0) {
        return 1;
    }
    if (x == std::floor(x)) {
        return 0;
    }
    // Gamma alternates sign between consecutive negative integers; on
    // (-1, 0) it is negative.
    const auto k = static_cast<long>(std::floor(-x));
    return (k % 2 == 0) ? -1 : 1;
}

double gamma_ratio(double top, double bottom) {
    const double r = rgamma(bottom);
    if (r == 0.0) {
        return 0.0;
    }
    // Integer offset: a Pochhammer product, unless top itself is a pole.
    const double d = top - bottom;
    if (std::abs(d) <= 64.0 && d == std::floor(d) && !nonpositive_integer_index(top, 0.0)) {
        const auto k = static_cast<std::size_t>(std::abs(d));
        return d >= 0.0 ? pochhammer(bottom, k) : 1.0 / pochhammer(top, k);
    }
    if (top > 30.0 || bottom > 30.0) {
        if (top <= 0.0 && top == std::floor(top)) {
            throw PoleError("gamma_ratio: pole at " + std::to_string(top));
        }
        const int sign = gamma_sign(top) * gamma_sign(bottom);
        return sign * std::exp(log_abs_gamma(top) - log_abs_gamma(bottom));
    }
    return gamma(top) * r;
}

double sin_pi(double x) {
    double r = std::fmod(x, 2.0);
    if (r < 0.0) {
        r += 2.0;
    }
    double sign = 1.0;
    if (r >= 1.0) {
        r -= 1.0;
        sign = -1.0;
    }
    if (r > 0.5) {
        r = 1.0 - r;
    }
    return sign * std::sin(std::numbers::pi * r);
}

double reflected_gamma_ratio(double top, double bottom) {
    if (bottom <= 0.0 && bottom == std::floor(bottom)) {
        return 0.0;
    }
    if (bottom >= 0.0 || top > 100.0 || bottom < -100.0) {
        return gamma(top) * rgamma(bottom);
    }
    const double product = gamma(top) * gamma(1.0 - bottom);
    if (!std::isfinite(product)) {
        return gamma(top) * rgamma(bottom);
    }
    return product * (sin_pi(bottom) / std::numbers::pi);
}

double pochhammer(double a, std::size_t n) {
    double r = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double factor = a + static_cast<double>(i);
        if (factor == 0.0) {
            return 0.0;
        }
        r *= factor;
    }
    return r;
}

double binomial(unsigned n, unsigned k) {
    if (k > n) {
        throw std::out_of_range("binomial: k=" + std::to_string(k) + " > n=" + std::to_string(n));
    }
    k = std::min(k, n - k);
    if (n <= 60) {
        std::uint64_t r = 1;
        for (unsigned i = 0; i < k; ++i) {
            // Stays integral: r * (n - i) is divisible by (i + 1).
            r = r * (n - i) / (i + 1);
        }
        return static_cast<double>(r);
    }
    double r = 1.0;
    for (unsigned i = 0; i < k; ++i) {
        r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return std::round(r);
}

}  // namespace lagsum

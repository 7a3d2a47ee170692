#include <doctest.h>

#include <cmath>

#include "lagsum/errors.hpp"
#include "lagsum/kummer.hpp"
#include "reference.hpp"

using namespace lagsum;
using reference::rel_err;

namespace {

constexpr KummerVariant kVariants[] = {KummerVariant::plus_nu_plus_j, KummerVariant::minus_nu_plus_j,
                                       KummerVariant::plus_nu_minus_j, KummerVariant::minus_nu_minus_j};

double direct(const KummerCase& kc) {
    const int j = static_cast<int>(kc.j);
    switch (kc.variant) {
        case KummerVariant::plus_nu_plus_j:
            return reference::kummer_direct(kc.n, kc.nu, 1, j);
        case KummerVariant::minus_nu_plus_j:
            return reference::kummer_direct(kc.n, kc.nu, -1, j);
        case KummerVariant::plus_nu_minus_j:
            return reference::kummer_direct(kc.n, kc.nu, 1, -j);
        case KummerVariant::minus_nu_minus_j:
            return reference::kummer_direct(kc.n, kc.nu, -1, -j);
    }
    return 0.0;
}

}  // namespace

TEST_SUITE("kummer") {
    TEST_CASE("kummer_plus j = 0 example") {
        CHECK(rel_err(kummer_plus(-4.0, -4.3, 0), reference::terminating_2f1_minus1(4, -4.3, 1.3)) <= 1e-13);
    }

    TEST_CASE("kummer_plus j = 0 is the classical Kummer theorem") {
        for (unsigned n = 1; n <= 10; ++n) {
            for (double nu : {0.25, 1.5}) {
                const double a = -static_cast<double>(n);
                const double b = a - nu;
                CAPTURE(n);
                CAPTURE(nu);
                CHECK(rel_err(kummer_plus(a, b, 0), reference::terminating_2f1_minus1(n, b, 1.0 + a - b)) <= 1e-12);
                CHECK(rel_err(kummer_minus(a, b, 0), kummer_plus(a, b, 0)) <= 1e-12);
            }
        }
    }

    TEST_CASE("kummer_minus example") {
        CHECK(rel_err(kummer_minus(-3.0, -3.7, 2), reference::terminating_2f1_minus1(3, -3.7, 1.0 + 0.7 - 2.0)) <= 1e-13);
    }

    TEST_CASE("a = 0 gives one") {
        for (unsigned j = 0; j <= 4; ++j) {
            CHECK(rel_err(kummer_plus(0.0, -0.6, j), 1.0) <= 1e-14);
            CHECK(rel_err(kummer_minus(0.0, -0.6, j), 1.0) <= 1e-14);
        }
    }

    TEST_CASE("generic parameters: spot checks against the 2F1(-1) series") {
        // Non-terminating cases with c - a - b > 1, where the alternating series
        // at z = -1 converges fast enough to sum directly.
        struct Point {
            double a, b;
            unsigned j;
            bool plus;
        };
        const Point pts[] = {{0.3, 0.2, 1, true}, {-0.4, 0.6, 2, true}, {0.3, -0.9, 1, false}, {1.2, -0.7, 0, true}};
        for (const Point& p : pts) {
            const double c = 1.0 + p.a - p.b + (p.plus ? 1.0 : -1.0) * p.j;
            reference::Wide term = 1;
            reference::Wide sum = 1;
            reference::Wide prev = 0;
            // average of consecutive partial sums tames the alternating tail
            for (int k = 0; k < 20000; ++k) {
                term *= (reference::Wide(p.a) + k) * (reference::Wide(p.b) + k) / ((reference::Wide(c) + k) * (k + 1)) * -1;
                prev = sum;
                sum += term;
            }
            const double ref = static_cast<double>((sum + prev) / 2);
            const double v = p.plus ? kummer_plus(p.a, p.b, p.j) : kummer_minus(p.a, p.b, p.j);
            CAPTURE(p.a);
            CAPTURE(p.b);
            CAPTURE(p.j);
            CHECK(rel_err(v, ref) <= 1e-8);
        }
    }

    TEST_CASE("specializations: examples") {
        for (unsigned j = 0; j <= 3; ++j) {
            CHECK(rel_err(kummer_special({KummerVariant::plus_nu_plus_j, 0, 0.4, j}), 1.0) <= 1e-14);
        }
        const KummerCase b{KummerVariant::minus_nu_plus_j, 2, 0.6, 1};
        CHECK(rel_err(kummer_special(b), reference::kummer_direct(2, 0.6, -1, 1)) <= 1e-13);
        const KummerCase c{KummerVariant::plus_nu_minus_j, 3, 2.5, 1};
        CHECK(rel_err(kummer_special(c), reference::kummer_direct(3, 2.5, 1, -1)) <= 1e-13);
    }

    TEST_CASE("specializations agree with direct sums, n <= 25, j <= 6") {
        for (KummerVariant v : kVariants) {
            for (double nu : {0.3, 0.5, 1.25, 2.8}) {
                for (unsigned j = 0; j <= 6; ++j) {
                    for (unsigned n = 0; n <= 25; ++n) {
                        const KummerCase kc{v, n, nu, j};
                        if (find_violation(kc)) {
                            CHECK_THROWS_AS(kummer_special(kc), InvalidSpec);
                            continue;
                        }
                        const double value = kummer_special(kc);
                        CAPTURE(static_cast<int>(v));
                        CAPTURE(nu);
                        CAPTURE(j);
                        CAPTURE(n);
                        REQUIRE(std::isfinite(value));
                        CHECK(rel_err(value, direct(kc)) <= 1e-11);
                    }
                }
            }
        }
    }

    TEST_CASE("raised +nu case equals kummer_plus with a = -n, b = -n - nu") {
        for (double nu : {0.3, 1.25, 2.8}) {
            for (unsigned j = 0; j <= 6; ++j) {
                for (unsigned n = 0; n <= 20; ++n) {
                    const double dn = n;
                    CAPTURE(nu);
                    CAPTURE(j);
                    CAPTURE(n);
                    const double special = kummer_special({KummerVariant::plus_nu_plus_j, n, nu, j});
                    CHECK(rel_err(special, kummer_plus(-dn, -dn - nu, j)) <= 1e-12 * std::max(1.0, std::abs(special)));
                }
            }
        }
    }

    TEST_CASE("lowered +nu case at nu = 1/2 resolves the coupled pole") {
        // Gamma(1 + nu - j) and 1/Gamma(n + 2 nu - j + 1) both sit on poles here.
        for (unsigned j = 2; j <= 6; ++j) {
            for (unsigned n = 0; n <= 10; ++n) {
                const KummerCase kc{KummerVariant::plus_nu_minus_j, n, 0.5, j};
                CAPTURE(j);
                CAPTURE(n);
                CHECK(rel_err(kummer_special(kc), direct(kc)) <= 1e-11);
            }
        }
    }

    TEST_CASE("series route") {
        const KummerCase kc{KummerVariant::minus_nu_minus_j, 7, 0.3, 2};
        const EvalResult r = kummer_series(kc);
        CHECK(r.status == SeriesStatus::terminated);
        CHECK(std::abs(r.value - direct(kc)) <= 1e-13 * std::pow(2.0, 14));
    }

    TEST_CASE("invalid case") {
        CHECK_THROWS_AS(kummer_special({KummerVariant::plus_nu_minus_j, 2, 1.0, 2}), InvalidSpec);
        CHECK(find_violation({KummerVariant::minus_nu_minus_j, 2, 1.0, 0}));
    }
}

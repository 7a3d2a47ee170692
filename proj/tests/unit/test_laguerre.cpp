#include <doctest.h>

#include <cmath>

#include "lagsum/errors.hpp"
#include "lagsum/laguerre.hpp"
#include "reference.hpp"

using namespace lagsum;
using reference::rel_err;

TEST_SUITE("laguerre-oracle") {
    TEST_CASE("first three polynomials") {
        const double nu = 0.5;
        const double x = 1.2;
        const LaguerreSeq seq = laguerre_seq(nu, x, 2);
        REQUIRE(seq.values.size() == 3);
        CHECK(seq.values[0] == 1.0);
        CHECK(seq.values[1] == 1.0 - x + nu);
        const double l2 = 0.5 * x * x - (nu + 2.0) * x + 0.5 * (nu + 1.0) * (nu + 2.0);
        CHECK(rel_err(seq.values[2], l2) <= 1e-15);
    }

    TEST_CASE("recurrence matches the 1F1 form through n = 8") {
        const double points[6][2] = {{0.0, 0.3}, {0.5, 1.2}, {1.7, 2.0}, {-0.5, 0.7}, {2.8, 5.0}, {0.3, 9.5}};
        for (const auto& pt : points) {
            const LaguerreSeq seq = laguerre_seq(pt[0], pt[1], 8);
            for (unsigned n = 0; n <= 8; ++n) {
                CAPTURE(pt[0]);
                CAPTURE(pt[1]);
                CAPTURE(n);
                const double ref = reference::laguerre_1f1(n, pt[0], pt[1]);
                CHECK(std::abs(seq.values[n] - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
            }
        }
    }

    TEST_CASE("oracle at x = 0 is exactly one") {
        for (Sign sn : {Sign::plus, Sign::minus}) {
            for (Sign sp : {Sign::plus, Sign::minus}) {
                const EvalResult r = oracle_sum({2, 3, sn, sp, 0.3, 1.7, 0.0});
                CHECK(r.value == 1.0);
            }
        }
    }

    TEST_CASE("oracle m = 0, p = 0 reproduces the Bessel function") {
        const double nu = 0.5;
        const double x = 0.3;
        const EvalResult r = oracle_sum({0, 0, Sign::plus, Sign::plus, nu, 1.0, x});
        CHECK(r.status == SeriesStatus::converged);
        CHECK(rel_err(r.value, reference::scaled_bessel(nu, x)) <= 1e-14);
    }

    TEST_CASE("oracle golden value S_1(0.5, 0) at f = 2, x = 0.7") {
        // frozen from oracle_sum at tol 1e-14; the Bessel form agrees to 1e-16
        const double golden = 0.8167737164302789;
        const EvalResult r = oracle_sum({1, 0, Sign::plus, Sign::plus, 0.5, 2.0, 0.7}, {1e-14, 400});
        CHECK(rel_err(r.value, golden) <= 4e-16);
        CHECK(rel_err(golden, reference::s1_bessel(0.5, 2.0, 0.7)) <= 1e-15);
    }

    TEST_CASE("m = 0 oracle does not depend on f") {
        for (Sign sn : {Sign::plus, Sign::minus}) {
            for (Sign sp : {Sign::plus, Sign::minus}) {
                for (double x : {0.1, 1.0, 5.0}) {
                    const double base = oracle_sum({0, 2, sn, sp, 0.3, 0.7, x}).value;
                    for (double f : {2.3, 10.1}) {
                        CHECK(std::abs(oracle_sum({0, 2, sn, sp, 0.3, f, x}).value - base) <= 1e-13 * std::abs(base));
                    }
                }
            }
        }
    }

    TEST_CASE("oracle converges across the verification grid up to x = 10") {
        for (double nu : {0.3, 0.5, 1.7}) {
            for (double x : {0.1, 2.0, 5.0, 10.0}) {
                for (unsigned m = 0; m <= 3; ++m) {
                    for (unsigned p = 0; p <= 4; ++p) {
                        for (Sign sn : {Sign::plus, Sign::minus}) {
                            for (Sign sp : {Sign::plus, Sign::minus}) {
                                const EvalResult r = oracle_sum({m, p, sn, sp, nu, 0.7, x}, {1e-16, 400});
                                CHECK(r.status == SeriesStatus::converged);
                                CHECK(r.terms_used < 200);
                            }
                        }
                    }
                }
            }
        }
    }

    TEST_CASE("invalid specs name the violated invariant") {
        CHECK_THROWS_WITH_AS(oracle_sum({0, 0, Sign::plus, Sign::plus, 0.3, -2.0, 1.0}),
                             doctest::Contains("f must not be a non-positive integer"), InvalidSpec);
        CHECK_THROWS_WITH_AS(oracle_sum({0, 2, Sign::plus, Sign::minus, 1.0, 1.0, 1.0}),
                             doctest::Contains("1+nu-p"), InvalidSpec);
        CHECK(find_violation({0, 0, Sign::plus, Sign::minus, -1.0 + 1e-8, 1.0, 1.0}, 1e-6));
        CHECK_FALSE(find_violation({0, 0, Sign::plus, Sign::minus, -1.0 + 1e-8, 1.0, 1.0}));
    }

    TEST_CASE("variant labels") {
        CHECK(variant_label({0, 0, Sign::plus, Sign::minus, 0.3, 1.0, 1.0}) == "+nu-p");
        CHECK(variant_label({0, 0, Sign::minus, Sign::plus, 0.3, 1.0, 1.0}) == "-nu+p");
    }
}

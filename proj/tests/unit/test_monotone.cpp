#include <cmath>
#include <vector>

#include "doctest.h"
#include "nconvex/error.hpp"
#include "nconvex/monotone.hpp"
#include "nconvex/oracle.hpp"
#include "testkit.hpp"

using namespace nconvex;

namespace {

std::vector<double> grid(Interval d, int k) {
    std::vector<double> xs;
    for (int i = 1; i <= k; ++i) xs.push_back(d.lo + d.width() * i / (k + 1));
    return xs;
}

}  // namespace

TEST_CASE("monotone_from_beta examples") {
    const Interval d{-1.0, 2.0};
    const MonotoneFn ramp = monotone_from_beta(Measure::dirac(d, 0.0, 1.0), 2);
    CHECK(ramp(-0.5) == 0.0);
    CHECK(ramp(0.75) == 0.75);
    const MonotoneFn clipped = monotone_from_beta(Measure::uniform_density(d, {0.0, 1.0}, 1.0), 1);
    CHECK(clipped(0.5) == doctest::Approx(0.5));
    CHECK(clipped(1.5) == doctest::Approx(1.0));
    CHECK(clipped(-0.5) == 0.0);
    const MonotoneFn half_square = monotone_from_beta(Measure::dirac(d, 0.0, 1.0), 3);
    CHECK(half_square(1.0) == doctest::Approx(0.5));
    CHECK(half_square.top_derivative(1.0) == 1.0);
    CHECK_THROWS_AS(monotone_from_beta(Measure::uniform_density(d, {-1.0, 0.0}, 1.0), 2), InvalidInput);
}

TEST_CASE("check_multimonotone examples") {
    const Interval d{-1.0, 2.0};
    auto ramp = [](double x) { return std::max(x, 0.0); };
    const std::vector<double> ones{1.0, 1.0};
    CHECK(iterated_diff(ramp, d, -0.5, ones) == 0.5);
    const std::vector<double> at{-0.5};
    CHECK(check_multimonotone(ramp, 2, Direction::nondecreasing, d, at).pass);

    const Interval unit{0.0, 1.0};
    const auto v = check_multimonotone([](double x) { return -x; }, 1, Direction::nondecreasing, unit, grid(unit, 21));
    CHECK_FALSE(v.pass);
    REQUIRE(v.witness);

    const Interval c{-0.5, 1.5};
    const MonotoneFn cm = monotone_from_beta(Measure::cantor(c, {0.0, 1.0}, 1.0), 2);
    MonotoneOptions o;
    o.trials = 200;
    CHECK(check_multimonotone(cm, 2, Direction::nondecreasing, c, grid(c, 51), o).pass);
    CHECK_THROWS_AS(check_multimonotone(cm, 2, Direction::nondecreasing, c, std::vector<double>{}), InvalidInput);
}

TEST_CASE("monotone_from_beta passes for every k <= n on random beta") {
    testkit::Rng rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const Interval d = testkit::random_domain(rng);
        const Interval region{d.lo + 0.1 * d.width(), d.hi};
        const Measure beta = testkit::random_measure(rng, d, region, testkit::uniform_int(rng, 0, 3),
                                                     testkit::uniform_int(rng, 0, 2), testkit::uniform_int(rng, 0, 1),
                                                     std::nullopt);
        const int n = testkit::uniform_int(rng, 1, 4);
        const MonotoneFn f = monotone_from_beta(beta, n);
        for (int k = 1; k <= n; ++k) {
            MonotoneOptions o;
            o.seed = static_cast<std::uint64_t>(trial);
            CHECK(check_multimonotone(f, k, Direction::nondecreasing, d, grid(d, 31), o).pass);
        }
    }
}

TEST_CASE("reflection duality") {
    testkit::Rng rng(67);
    for (int trial = 0; trial < 30; ++trial) {
        const Interval d{-1.0, 1.0};
        const Interval mirrored{-1.0, 1.0};
        const double a = testkit::uniform(rng, -2.0, 2.0);
        auto g = [a](double x) { return std::exp(a * x) + (a < 0.0 ? 0.1 * x : 0.0); };
        auto g_reflected = [&](double y) { return g(-y); };
        const auto xs = grid(d, 21);
        std::vector<double> ys;
        for (double x : xs) ys.push_back(-x);
        const int n = testkit::uniform_int(rng, 1, 3);
        const bool up = check_multimonotone(g, n, Direction::nondecreasing, d, xs).pass;
        const bool down = check_multimonotone(g_reflected, n, Direction::nonincreasing, mirrored, ys).pass;
        CHECK(up == down);
    }
}

TEST_CASE("decompose_multimonotone examples") {
    const Interval d{-1.0, 1.0};
    const NConvexFn abs_fn({1, d, 0.0, Measure::dirac(d, 0.0, 1.0), Measure::dirac(d, 0.0, 1.0), Polynomial{}});
    const auto dec = decompose_multimonotone(abs_fn);
    CHECK(dec.xi == 0.0);
    CHECK(dec.q.is_zero());
    CHECK(evaluate(dec.m1, -0.5) == 0.5);
    CHECK(evaluate(dec.m1, 0.5) == 0.0);
    CHECK(evaluate(dec.m2, 0.5) == 0.5);
    CHECK(evaluate(dec.m2, -0.5) == 0.0);

    const Interval u{0.0, 1.0};
    const NConvexFn cube({2, u, 0.0, Measure::zero(u), Measure::uniform_density(u, {0.0, 1.0}, 1.0), Polynomial{}});
    const auto dc = decompose_multimonotone(cube);
    CHECK(convexity_measure(dc.m1).is_zero());
    CHECK(dc.c_n == 0.0);
    for (double x : grid(u, 11)) CHECK(evaluate(dc.m2, x) == doctest::Approx(x * x * x / 6.0));

    const auto w = wright_decompose_continuous(abs_fn);
    CHECK(w.p.is_zero());
    CHECK(w.parts.xi == 0.0);
}

TEST_CASE("random decompositions re-sum and are multiply monotone") {
    testkit::Rng rng(71);
    int case_a = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = testkit::random_form(rng);
        const NConvexFn f(s);
        const auto dec = decompose_multimonotone(f);
        const int n = s.n;
        for (double x : grid(s.domain, 101)) {
            const double sum = evaluate(dec.m1, x) + evaluate(dec.m2, x) + dec.q(x);
            CHECK(testkit::rel_gap(sum, evaluate(f, x)) <= 1e-9);
        }
        const bool m1_zero = convexity_measure(dec.m1).is_zero();
        const bool m2_zero = convexity_measure(dec.m2).is_zero();
        if (m1_zero && !m2_zero) CHECK(dec.c_n >= 0.0);
        if (m2_zero && !m1_zero) CHECK(dec.c_n <= 0.0);
        if (!m1_zero && !m2_zero) {
            ++case_a;
            CHECK(dec.c_n == 0.0);
            CHECK(evaluate(dec.m2, dec.xi) == 0.0);
            CHECK(evaluate(dec.m1, dec.xi) == 0.0);
        }
        // (-1)^(n+1) M1 is (n+1)-times monotone nonincreasing left of xi, M2
        // nondecreasing right of it.
        const double sign = (n + 1) % 2 == 0 ? 1.0 : -1.0;
        std::vector<double> left;
        std::vector<double> right;
        for (double x : grid(s.domain, 101)) {
            if (x < dec.xi) left.push_back(x);
            if (x > dec.xi) right.push_back(x);
        }
        if (!left.empty() && dec.xi > s.domain.lo)
            CHECK(check_multimonotone([&](double x) { return sign * evaluate(dec.m1, x); }, n + 1, Direction::nonincreasing,
                                      {s.domain.lo, dec.xi}, left)
                      .pass);
        if (!right.empty() && dec.xi < s.domain.hi)
            CHECK(check_multimonotone([&](double x) { return evaluate(dec.m2, x); }, n + 1, Direction::nondecreasing,
                                      {dec.xi, s.domain.hi}, right)
                      .pass);
    }
    CHECK(case_a > 0);
}

#include <cmath>
#include <vector>

#include "doctest.h"
#include "nconvex/error.hpp"
#include "nconvex/polynomial.hpp"
#include "testkit.hpp"

using namespace nconvex;

TEST_CASE("polynomial arithmetic and evaluation") {
    const Polynomial p{1.0, -2.0, 1.0};
    CHECK(p.degree() == 2);
    CHECK(p(3.0) == doctest::Approx(4.0));
    CHECK(p.derivative_at(3.0, 1) == doctest::Approx(4.0));
    CHECK(p.derivative_at(3.0, 2) == doctest::Approx(2.0));
    CHECK(p.derivative_at(3.0, 3) == 0.0);
    CHECK(Polynomial{0.0, 0.0}.is_zero());
    CHECK(Polynomial{0.0, 0.0}.degree() == -1);
    const Polynomial q = p * Polynomial{1.0, 1.0};
    CHECK(q.coeffs() == std::vector<double>{1.0, -1.0, -1.0, 1.0});
    CHECK((q - q).is_zero());
    CHECK(p.antiderivative().derivative() == p);
    // p(x0 + s t) with x0 = 1, s = 2 is 4 t^2.
    CHECK(p.recentered(1.0, 2.0) == Polynomial{0.0, 0.0, 4.0});
}

TEST_CASE("piecewise polynomial validation") {
    const PiecewisePoly d({0.0, 0.5, 1.0}, {Polynomial{1.0}, Polynomial{0.0, 2.0}});
    CHECK(d(0.25) == 1.0);
    CHECK(d(0.75) == 1.5);
    CHECK(d(1.0) == 2.0);
    CHECK(d(1.5) == 0.0);
    CHECK_THROWS_AS(PiecewisePoly({0.0, 0.0}, {Polynomial{1.0}}), InvalidInput);
    CHECK_THROWS_AS(PiecewisePoly({0.0, 1.0}, {Polynomial{0, 0, 0, 0, 1}}), InvalidInput);
    CHECK_THROWS_AS(PiecewisePoly({0.0, 1.0, 2.0}, {Polynomial{1.0}}), InvalidInput);
}

TEST_CASE("hermite_interpolate examples") {
    SUBCASE("p(0) = p'(0) = 0, p(1) = 1 gives x^2") {
        const std::vector<HermiteNode> nodes{{0.0, {0.0, 0.0}}, {1.0, {1.0}}};
        const Polynomial p = hermite_interpolate(nodes, 2);
        CHECK(p.degree() == 2);
        CHECK(p.coeff(0) == doctest::Approx(0.0));
        CHECK(p.coeff(1) == doctest::Approx(0.0));
        CHECK(p.coeff(2) == doctest::Approx(1.0));
    }
    SUBCASE("single value, n = 0") {
        const std::vector<HermiteNode> nodes{{0.0, {5.0}}};
        CHECK(hermite_interpolate(nodes, 0) == Polynomial{5.0});
    }
    SUBCASE("x^3/6 data against a generalized Vandermonde solve") {
        auto f = [](double x) { return x * x * x / 6.0; };
        auto df = [](double x) { return x * x / 2.0; };
        const std::vector<HermiteNode> nodes{{0.5, {f(0.5), df(0.5)}}, {1.5, {f(1.5)}}};
        const Polynomial p = hermite_interpolate(nodes, 2);
        const auto ref = testkit::vandermonde_hermite(nodes, 2);
        for (int i = 0; i <= 2; ++i) CHECK(p.coeff(i) == doctest::Approx(ref[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
    SUBCASE("errors") {
        const std::vector<HermiteNode> dup{{0.0, {1.0}}, {0.0, {2.0}}};
        CHECK_THROWS_AS(hermite_interpolate(dup, 1), InvalidInput);
        const std::vector<HermiteNode> short_nodes{{0.0, {1.0}}};
        CHECK_THROWS_AS(hermite_interpolate(short_nodes, 2), ArityMismatch);
    }
}

TEST_CASE("hermite_interpolate reproduces random derivative data") {
    testkit::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = testkit::uniform_int(rng, 0, 6);
        std::vector<HermiteNode> nodes;
        int left = n + 1;
        double x = testkit::uniform(rng, -2.0, -1.0);
        while (left > 0) {
            const int l = testkit::uniform_int(rng, 1, left);
            HermiteNode node{x, {}};
            for (int i = 0; i < l; ++i) node.values.push_back(testkit::uniform(rng, -3.0, 3.0));
            nodes.push_back(node);
            left -= l;
            x += testkit::uniform(rng, 0.3, 1.0);
        }
        const Polynomial p = hermite_interpolate(nodes, n);
        CHECK(p.degree() <= n);
        for (const auto& node : nodes) {
            for (std::size_t i = 0; i < node.values.size(); ++i) {
                CHECK(testkit::rel_gap(p.derivative_at(node.x, static_cast<int>(i)), node.values[i]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("lagrange and chebyshev helpers") {
    const auto xs = chebyshev_nodes(5, {-1.0, 3.0});
    REQUIRE(xs.size() == 5);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) CHECK(xs[i] < xs[i + 1]);
    CHECK(xs.front() > -1.0);
    CHECK(xs.back() < 3.0);
    const Polynomial target{2.0, -1.0, 0.5, 0.25};
    std::vector<double> ys;
    for (double x : chebyshev_nodes(4, {-1.0, 3.0})) ys.push_back(target(x));
    const Polynomial p = lagrange_interpolate(chebyshev_nodes(4, {-1.0, 3.0}), ys);
    for (int i = 0; i <= 3; ++i) CHECK(p.coeff(i) == doctest::Approx(target.coeff(i)).epsilon(1e-12));
}

TEST_CASE("is_nonnegative_on examples") {
    CHECK(is_nonnegative_on(Polynomial{1.0, -2.0, 1.0}, {0.0, 2.0}));
    CHECK_FALSE(is_nonnegative_on(Polynomial{-0.5, 1.0}, {0.0, 1.0}));
    CHECK(is_nonnegative_on(Polynomial{}, {-1.0, 1.0}));
    CHECK_THROWS_AS(is_nonnegative_on(Polynomial{1.0}, {1.0, 1.0}), InvalidInput);
    // Interior dip that never shows at the endpoints.
    CHECK_FALSE(is_nonnegative_on(Polynomial{0.01, 0.0, -1.0, 0.0, 10.0}, {-1.0, 1.0}));
    CHECK(is_nonnegative_on(Polynomial{0.03, 0.0, -1.0, 0.0, 10.0}, {-1.0, 1.0}));
}

TEST_CASE("sign_change_roots and minimum_on") {
    const Polynomial p = Polynomial{-1.0, 1.0} * Polynomial{-2.0, 1.0} * Polynomial{-3.0, 1.0};
    const auto roots = sign_change_roots(p, {0.0, 4.0});
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(1.0));
    CHECK(roots[1] == doctest::Approx(2.0));
    CHECK(roots[2] == doctest::Approx(3.0));
    // Double root: no sign change.
    CHECK(sign_change_roots(Polynomial{1.0, -2.0, 1.0}, {0.0, 2.0}).empty());
    CHECK(minimum_on(Polynomial{1.0, -2.0, 1.0}, {-3.0, 3.0}) == doctest::Approx(0.0));
}

TEST_CASE("nonnegative both ways implies tiny magnitude") {
    testkit::Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> c(static_cast<std::size_t>(testkit::uniform_int(rng, 1, 8)));
        const double size = std::pow(10.0, testkit::uniform(rng, -16.0, 0.0));
        for (double& v : c) v = testkit::uniform(rng, -size, size);
        const Polynomial p(c);
        const Interval iv{-1.0, 1.0};
        if (is_nonnegative_on(p, iv) && is_nonnegative_on(-p, iv)) {
            for (int i = 0; i <= 200; ++i) CHECK(std::abs(p(-1.0 + i / 100.0)) <= kPolyEpsilon * (1 + 1e-9));
        }
    }
}

TEST_CASE("kernel_moment examples") {
    const Polynomial one{1.0};
    CHECK(kernel_moment(one, {0.0, 1.0}, 0.5, 2, KernelSide::plus) == doctest::Approx(1.0 / 48.0).epsilon(1e-14));
    CHECK(kernel_moment(one, {0.0, 1.0}, 1.5, 2, KernelSide::plus) ==
          doctest::Approx((1.5 * 1.5 * 1.5 - 0.5 * 0.5 * 0.5) / 6.0).epsilon(1e-14));
    CHECK(kernel_moment(Polynomial{0.3, 1.0, 0.0, 2.0}, {0.0, 1.0}, 0.0, 3, KernelSide::plus) == 0.0);
    CHECK(kernel_moment(Polynomial{0.3, 1.0, 0.0, 2.0}, {0.0, 1.0}, -0.5, 1, KernelSide::plus) == 0.0);
    // Minus side, n = 1: \int (u - x)_+ du over [0, 1] at x = 0.5, sign (-1)^2.
    CHECK(kernel_moment(one, {0.0, 1.0}, 0.5, 1, KernelSide::minus) == doctest::Approx(0.125));
    // n = 2 flips the sign of the minus kernel.
    CHECK(kernel_moment(one, {0.0, 1.0}, 0.5, 2, KernelSide::minus) == doctest::Approx(-1.0 / 48.0));
}

TEST_CASE("kernel_moment agrees with adaptive quadrature") {
    testkit::Rng rng(17);
    for (int trial = 0; trial < 400; ++trial) {
        const double c = testkit::uniform(rng, -2.0, 1.0);
        const Interval piece{c, c + testkit::uniform(rng, 0.1, 2.0)};
        std::vector<double> coeffs(static_cast<std::size_t>(testkit::uniform_int(rng, 1, 4)));
        for (double& v : coeffs) v = testkit::uniform(rng, -2.0, 2.0);
        const Polynomial dens(coeffs);
        const int n = testkit::uniform_int(rng, 1, 4);
        const double x = testkit::uniform(rng, piece.lo - 0.5, piece.hi + 0.5);
        const bool plus = testkit::uniform(rng, 0.0, 1.0) < 0.5;
        const double got = kernel_moment(dens, piece, x, n, plus ? KernelSide::plus : KernelSide::minus);
        auto integrand = [&](double u) {
            const double t = plus ? x - u : u - x;
            if (t <= 0.0) return 0.0;
            return dens(u) * std::pow(t, n) / factorial(n);
        };
        const double lo = plus ? piece.lo : std::max(piece.lo, x);
        const double hi = plus ? std::min(piece.hi, x) : piece.hi;
        double ref = testkit::adaptive_simpson(integrand, lo, hi, 1e-15);
        if (!plus && (n + 1) % 2 == 1) ref = -ref;
        // Relative to the integral of |integrand|, the natural size of the value.
        auto abs_integrand = [&](double u) { return std::abs(integrand(u)); };
        const double size = testkit::adaptive_simpson(abs_integrand, lo, hi, 1e-15);
        CHECK(std::abs(got - ref) <= 1e-9 * std::max(size, 1e-300) + 1e-15);
    }
}

TEST_CASE("factorial and binomial") {
    CHECK(factorial(0) == 1.0);
    CHECK(factorial(5) == 120.0);
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(4, 0) == 1.0);
}

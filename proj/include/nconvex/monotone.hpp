#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nconvex/measure.hpp"
#include "nconvex/oracle.hpp"
#include "nconvex/spectral.hpp"

namespace nconvex {

/// f(x) = \int (x-u)_+^{n-1} / (n-1)! dbeta(u): n-times monotone nondecreasing,
/// identically zero near the left end of the domain.
class MonotoneFn {
public:
    MonotoneFn(Measure beta, int n);

    double operator()(double x) const;
    /// f^(n-1)(x), the right-continuous cumulative of beta.
    double top_derivative(double x) const;
    int order() const { return n_; }
    const Measure& beta() const { return beta_; }

private:
    Measure beta_;
    int n_;
};

/// Requires beta to vanish on a neighbourhood of the left endpoint.
MonotoneFn monotone_from_beta(const Measure& beta, int n);

enum class Direction { nondecreasing, nonincreasing };

struct MonotoneWitness {
    int k = 0;  ///< 0 means the value f(x) itself was negative
    double x = 0.0;
    std::vector<double> steps;
    bool equal_steps = false;
    double value = 0.0;
    double scale = 0.0;
};

struct MonotoneVerdict {
    bool pass = true;
    int checks = 0;
    std::optional<MonotoneWitness> witness;
};

struct MonotoneOptions {
    int trials = 200;
    double tol = 1e-9;
    std::uint64_t seed = 7;
};

/// Difference-operator test of n-times monotonicity: f >= 0 on the grid, and
/// for each trial a grid point x and, for every k = 1..n, random positive
/// steps with sum <= min((b-a)/2, 0.999 (b-x)) plus k equal steps of the same
/// total. A value v passes if v >= -tol * (sum of |f| over the points it uses).
/// The nonincreasing direction is tested on g(y) = f(-y) over the mirrored grid.
MonotoneVerdict check_multimonotone(const Evaluator& f, int n, Direction direction, Interval domain,
                                    std::span<const double> grid, const MonotoneOptions& options = {});

/// f = M1 + M2 + Q with M1 = Psi_- and M2 = Psi_+ of the canonical form.
struct MonotoneDecomposition {
    NConvexFn m1;
    NConvexFn m2;
    Polynomial q;
    double xi;
    /// n! times the x^n coefficient of q.
    double c_n;
};

MonotoneDecomposition decompose_multimonotone(const NConvexFn& f);

/// Continuous case of the Wright-convex decomposition: the additive
/// polynomial-function part vanishes.
struct WrightDecomposition {
    MonotoneDecomposition parts;
    Polynomial p;  ///< always zero
};

WrightDecomposition wright_decompose_continuous(const NConvexFn& f);

}  // namespace nconvex

#include "nconvex/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nconvex/error.hpp"

namespace nconvex {

MonotoneFn::MonotoneFn(Measure beta, int n) : beta_(std::move(beta)), n_(n) {
    if (n_ < 1) throw InvalidInput("monotone_from_beta: n must be at least 1");
    if (auto hull = beta_.support_hull(); hull && !(hull->lo > beta_.domain().lo))
        throw InvalidInput("monotone_from_beta: beta must vanish near the left endpoint");
}

double MonotoneFn::operator()(double x) const {
    if (!beta_.domain().contains_open(x)) throw OutOfDomain("monotone function evaluated outside its domain");
    return truncated_power_integral(beta_, x, n_ - 1, KernelSide::plus, Continuity::right);
}

double MonotoneFn::top_derivative(double x) const {
    if (!beta_.domain().contains_open(x)) throw OutOfDomain("monotone function evaluated outside its domain");
    return truncated_power_integral(beta_, x, 0, KernelSide::plus, Continuity::right);
}

MonotoneFn monotone_from_beta(const Measure& beta, int n) { return MonotoneFn(beta, n); }

namespace {

MonotoneVerdict check_nondecreasing(const Evaluator& f, int n, Interval domain, std::span<const double> grid,
                                    const MonotoneOptions& options) {
    MonotoneVerdict verdict;
    auto fail = [&](MonotoneWitness w) {
        if (verdict.pass) {
            verdict.pass = false;
            verdict.witness = std::move(w);
        }
    };
    std::vector<double> values;
    double grid_scale = 0.0;
    for (double x : grid) {
        values.push_back(f(x));
        grid_scale = std::max(grid_scale, std::abs(values.back()));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ++verdict.checks;
        if (values[i] < -options.tol * grid_scale) fail({0, grid[i], {}, false, values[i], grid_scale});
    }
    // Every value the difference operators touch feeds the scale.
    double scale = 0.0;
    const Evaluator tracked = [&](double y) {
        const double v = f(y);
        scale += std::abs(v);
        return v;
    };
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < options.trials; ++t) {
        const double x = grid[pick(rng)];
        const double room = std::min(0.5 * domain.width(), 0.999 * (domain.hi - x));
        if (!(room > 0.0)) continue;
        for (int k = 1; k <= n; ++k) {
            const double total = room * (0.05 + 0.95 * unit(rng));
            std::vector<double> w(static_cast<std::size_t>(k));
            double sum = 0.0;
            for (auto& wi : w) {
                wi = 0.05 + unit(rng);
                sum += wi;
            }
            std::vector<double> steps;
            for (double wi : w) steps.push_back(total * wi / sum);
            scale = 0.0;
            const double v = iterated_diff(tracked, domain, x, steps);
            ++verdict.checks;
            if (v < -options.tol * scale) fail({k, x, steps, false, v, scale});
            const double h = total / k;
            scale = 0.0;
            const double ve = equal_step_diff(tracked, domain, x, h, k);
            ++verdict.checks;
            if (ve < -options.tol * scale) fail({k, x, std::vector<double>(static_cast<std::size_t>(k), h), true, ve, scale});
        }
    }
    return verdict;
}

}  // namespace

MonotoneVerdict check_multimonotone(const Evaluator& f, int n, Direction direction, Interval domain,
                                    std::span<const double> grid, const MonotoneOptions& options) {
    if (grid.empty()) throw InvalidInput("check_multimonotone: empty grid");
    if (n < 1) throw InvalidInput("check_multimonotone: n must be at least 1");
    for (double x : grid) {
        if (!domain.contains_open(x)) throw InvalidInput("check_multimonotone: grid point outside the domain");
    }
    if (direction == Direction::nondecreasing) return check_nondecreasing(f, n, domain, grid, options);
    std::vector<double> mirrored(grid.begin(), grid.end());
    for (auto& x : mirrored) x = -x;
    const Evaluator g = [&](double y) { return f(-y); };
    MonotoneVerdict v = check_nondecreasing(g, n, {-domain.hi, -domain.lo}, mirrored, options);
    if (v.witness) {
        // Report the witness in the original coordinates: points x - sum(steps) .. x.
        v.witness->x = -v.witness->x;
    }
    return v;
}

MonotoneDecomposition decompose_multimonotone(const NConvexFn& f) {
    const NConvexFn c = canonicalize(f.form());
    const auto& s = c.form();
    const Measure zero(s.domain);
    NConvexFn m1({s.n, s.domain, s.xi, s.mu_minus, zero, {}});
    NConvexFn m2({s.n, s.domain, s.xi, zero, s.mu_plus, {}});
    return {std::move(m1), std::move(m2), s.q, s.xi, factorial(s.n) * s.q.coeff(s.n)};
}

WrightDecomposition wright_decompose_continuous(const NConvexFn& f) { return {decompose_multimonotone(f), {}}; }

}  // namespace nconvex

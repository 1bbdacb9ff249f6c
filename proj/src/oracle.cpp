#include "nconvex/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nconvex/error.hpp"

namespace nconvex {

DividedDifferenceTable::DividedDifferenceTable(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)) {
    if (nodes_.size() != values.size()) throw ArityMismatch("divided differences: node and value counts differ");
    if (nodes_.size() < 2) throw InvalidInput("divided differences need at least two points");
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        if (nodes_[i] == nodes_[i + 1]) throw InvalidInput("divided differences: duplicate node");
        if (nodes_[i] > nodes_[i + 1]) throw InvalidInput("divided differences: nodes must be increasing");
    }
    columns_.push_back(std::move(values));
    const std::size_t m = nodes_.size();
    for (std::size_t k = 1; k < m; ++k) {
        const auto& prev = columns_.back();
        std::vector<double> col(m - k);
        for (std::size_t i = 0; i + k < m; ++i) col[i] = (prev[i + 1] - prev[i]) / (nodes_[i + k] - nodes_[i]);
        columns_.push_back(std::move(col));
    }
}

double DividedDifferenceTable::entry(int k, int i) const {
    if (k < 0 || k >= size() || i < 0 || i + k >= size()) throw InvalidInput("divided difference entry out of range");
    return columns_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
}

double divided_difference(std::span<const double> points, std::span<const double> values) {
    return DividedDifferenceTable({points.begin(), points.end()}, {values.begin(), values.end()}).top();
}

double divided_difference_scale(std::span<const double> points, std::span<const double> values) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double w = 1.0;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j != i) w *= std::abs(points[i] - points[j]);
        }
        s += std::abs(values[i]) / w;
    }
    return s;
}

namespace {

class GridSampler {
public:
    GridSampler(Interval domain, int count, std::uint64_t seed, std::vector<double> focus)
        : domain_(domain), count_(count), rng_(seed), focus_(std::move(focus)) {
        std::erase_if(focus_, [&](double p) { return !domain_.contains(p); });
    }

    std::vector<double> next(int trial) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            std::vector<double> pts;
            switch (focus_.empty() ? trial % 2 : trial % 3) {
                case 0: pts = uniform(domain_); break;
                case 1: pts = chebyshev_cluster(); break;
                default: pts = focus_cluster(); break;
            }
            if (acceptable(pts)) return pts;
        }
        return uniform(domain_);
    }

private:
    double width() {
        // Log-uniform between 1e-3 and 1 times the domain length.
        std::uniform_real_distribution<double> e(-3.0, 0.0);
        return domain_.width() * std::pow(10.0, e(rng_));
    }

    Interval inner(double lo, double hi) const {
        const double margin = 1e-9 * domain_.width();
        return {std::max(lo, domain_.lo + margin), std::min(hi, domain_.hi - margin)};
    }

    std::vector<double> uniform(Interval iv) {
        iv = inner(iv.lo, iv.hi);
        std::uniform_real_distribution<double> u(iv.lo, iv.hi);
        std::vector<double> pts(static_cast<std::size_t>(count_));
        for (auto& p : pts) p = u(rng_);
        std::sort(pts.begin(), pts.end());
        return pts;
    }

    std::vector<double> chebyshev_cluster() {
        const double w = width();
        std::uniform_real_distribution<double> u(domain_.lo, domain_.hi - w);
        const double lo = w >= domain_.width() ? domain_.lo : u(rng_);
        const Interval iv = inner(lo, lo + w);
        if (!(iv.lo < iv.hi)) return {};
        return chebyshev_nodes(count_, iv);
    }

    std::vector<double> focus_cluster() {
        std::uniform_int_distribution<std::size_t> pick(0, focus_.size() - 1);
        const double c = focus_[pick(rng_)];
        const double w = width();
        std::uniform_real_distribution<double> shift(-0.5, 0.5);
        const double center = c + w * shift(rng_);
        // Alternate random points with Chebyshev nodes: well-spread nodes keep
        // the rounding scale small, so narrow sign changes stay visible.
        if (++focus_draws_ % 2 == 0) {
            const Interval iv = inner(center - 0.5 * w, center + 0.5 * w);
            if (!(iv.lo < iv.hi)) return {};
            return chebyshev_nodes(count_, iv);
        }
        return uniform({center - 0.5 * w, center + 0.5 * w});
    }

    bool acceptable(const std::vector<double>& pts) const {
        if (pts.size() != static_cast<std::size_t>(count_)) return false;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!domain_.contains_open(pts[i])) return false;
            if (i > 0 && !(pts[i] - pts[i - 1] > 1e-12 * std::max(1.0, std::abs(pts[i])))) return false;
        }
        return true;
    }

    Interval domain_;
    int count_;
    std::mt19937_64 rng_;
    std::vector<double> focus_;
    int focus_draws_ = 0;
};

}  // namespace

OracleVerdict check_n_convex(const Evaluator& f, int n, Interval domain, const OracleOptions& options) {
    if (options.trials < 1) throw InvalidInput("oracle: trials must be at least 1");
    if (n < 0) throw InvalidInput("oracle: order must be nonnegative");
    if (!(domain.lo < domain.hi)) throw InvalidInput("oracle: degenerate domain");
    GridSampler sampler(domain, n + 2, options.seed, options.focus);
    OracleVerdict verdict;
    for (int t = 0; t < options.trials; ++t) {
        const auto pts = sampler.next(t);
        std::vector<double> vals;
        vals.reserve(pts.size());
        for (double x : pts) vals.push_back(f(x));
        const double dd = divided_difference(pts, vals);
        double scale = 0.0;
        if (options.magnitude) {
            std::vector<double> mags;
            for (double x : pts) mags.push_back(options.magnitude(x));
            scale = divided_difference_scale(pts, mags);
        } else {
            scale = divided_difference_scale(pts, vals);
        }
        ++verdict.trials_run;
        if (dd < 0.0 && scale > 0.0) verdict.worst_ratio = std::min(verdict.worst_ratio, dd / scale);
        if (dd < -options.tol * scale && verdict.pass) {
            verdict.pass = false;
            verdict.witness = ConvexityWitness{pts, vals, dd, scale};
        }
    }
    return verdict;
}

namespace {

double eval_inside(const Evaluator& f, Interval domain, double x) {
    if (!domain.contains_open(x)) throw OutOfDomain("difference operator leaves the domain at x = " + std::to_string(x));
    return f(x);
}

double iterated(const Evaluator& f, Interval domain, double x, std::span<const double> steps, std::size_t k, double off) {
    if (k == 0) return eval_inside(f, domain, x + off);
    return iterated(f, domain, x, steps, k - 1, off + steps[k - 1]) - iterated(f, domain, x, steps, k - 1, off);
}

}  // namespace

double iterated_diff(const Evaluator& f, Interval domain, double x, std::span<const double> steps) {
    return iterated(f, domain, x, steps, steps.size(), 0.0);
}

double equal_step_diff(const Evaluator& f, Interval domain, double x, double h, int k) {
    if (k < 0) throw InvalidInput("equal_step_diff: k must be nonnegative");
    std::vector<double> d;
    double off = 0.0;
    for (int j = 0; j <= k; ++j) {
        d.push_back(eval_inside(f, domain, x + off));
        off = off + h;
    }
    for (int level = 0; level < k; ++level) {
        for (std::size_t i = 0; i + 1 < d.size() - static_cast<std::size_t>(level); ++i) d[i] = d[i + 1] - d[i];
    }
    return d.front();
}

}  // namespace nconvex

#include "nconvex/support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "nconvex/error.hpp"
#include "nconvex/order.hpp"

namespace nconvex {

void validate(const SupportSpec& spec, int n, Interval domain) {
    if (spec.nodes.empty()) throw InvalidInput("support spec needs at least one node");
    if (static_cast<int>(spec.nodes.size()) > n + 1) throw InvalidInput("support spec has more than n+1 nodes");
    int total = 0;
    for (std::size_t j = 0; j < spec.nodes.size(); ++j) {
        const auto& node = spec.nodes[j];
        if (!domain.contains_open(node.x)) throw InvalidInput("support node " + std::to_string(node.x) + " is outside the domain");
        if (node.multiplicity < 1) throw InvalidInput("support multiplicities must be at least 1");
        if (j > 0 && !(spec.nodes[j - 1].x < node.x)) throw InvalidInput("support nodes must be strictly increasing");
        total += node.multiplicity;
    }
    if (total != n + 1)
        throw ArityMismatch("support multiplicities sum to " + std::to_string(total) + ", expected n+1 = " +
                            std::to_string(n + 1));
}

int expected_sign(const SupportSpec& spec, int n, std::size_t j) {
    int used = 0;
    for (std::size_t i = 0; i < j; ++i) used += spec.nodes[i].multiplicity;
    return (n + 1 - used) % 2 == 0 ? 1 : -1;
}

namespace {

using Fn = std::function<double(double)>;

// Checks sign(upper - lower) against the chain on every interval.
void verify(SupportResult& r, const SupportSpec& spec, int n, Interval domain, const Fn& upper, const Fn& lower,
            const SupportOptions& o) {
    std::vector<double> cuts{domain.lo};
    for (const auto& node : spec.nodes) cuts.push_back(node.x);
    cuts.push_back(domain.hi);
    const double band = o.band * domain.width();
    struct Sample {
        std::size_t interval;
        double x;
        double diff;
    };
    std::vector<Sample> samples;
    r.scale = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        const double lo = cuts[j] + band;
        const double hi = cuts[j + 1] - band;
        r.intervals.push_back({{cuts[j], cuts[j + 1]}, expected_sign(spec, n, j), true, 0.0, std::nullopt});
        if (!(lo < hi)) continue;
        for (int i = 0; i < o.grid; ++i) {
            const double x = o.grid == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (o.grid - 1);
            const double u = upper(x);
            const double l = lower(x);
            r.scale = std::max({r.scale, std::abs(u), std::abs(l)});
            samples.push_back({j, x, u - l});
        }
    }
    const double scale = std::max(r.scale, 1e-300);
    for (const auto& s : samples) {
        auto& iv = r.intervals[s.interval];
        const double violation = -iv.expected_sign * s.diff / scale;
        if (violation > iv.max_violation) {
            iv.max_violation = violation;
            if (violation > o.sign_tol) {
                if (iv.ok) iv.witness = s.x;
                iv.ok = false;
            }
        }
    }
    double node_res = 0.0;
    for (const auto& node : spec.nodes) {
        const double u = upper(node.x);
        node_res = std::max(node_res, std::abs(u - lower(node.x)) / std::max(1.0, std::abs(u)));
    }
    r.node_residual = node_res;
    r.right_of_last = r.intervals.back().ok && r.intervals.back().expected_sign == 1;
    r.even_nodes_same_side = true;
    for (std::size_t j = 0; j < spec.nodes.size(); ++j) {
        if (spec.nodes[j].multiplicity % 2 != 0) continue;
        const auto& left = r.intervals[j];
        const auto& right = r.intervals[j + 1];
        if (!(left.ok && right.ok && left.expected_sign == right.expected_sign)) r.even_nodes_same_side = false;
    }
    r.pass = node_res <= o.node_tol &&
             std::all_of(r.intervals.begin(), r.intervals.end(), [](const IntervalVerdict& v) { return v.ok; });
}

Polynomial interpolate_right_derivatives(const NConvexFn& f, const SupportSpec& spec) {
    std::vector<HermiteNode> nodes;
    for (const auto& node : spec.nodes) {
        HermiteNode h{node.x, {}};
        for (int i = 0; i < node.multiplicity; ++i) h.values.push_back(derivative(f, i, node.x, Side::right));
        nodes.push_back(std::move(h));
    }
    return hermite_interpolate(nodes, f.order());
}

}  // namespace

SupportResult support_polynomial(const NConvexFn& f, const SupportSpec& spec, const SupportOptions& options) {
    validate(spec, f.order(), f.domain());
    SupportResult r;
    r.p = interpolate_right_derivatives(f, spec);
    verify(r, spec, f.order(), f.domain(), [&](double x) { return evaluate(f, x); }, [&](double x) { return r.p(x); },
           options);
    return r;
}

SupportResult relative_support(const NConvexFn& f, const NConvexFn& g, const SupportSpec& spec,
                               const SupportOptions& options) {
    require_compatible(f, g, "relative_support");
    validate(spec, f.order(), f.domain());
    if (relative_convex(f, g) != Decision::yes)
        throw PreconditionFailure("relative_support: f is not n-convex relative to g");
    const NConvexFn h = difference(f, g);
    SupportResult r;
    r.p = interpolate_right_derivatives(h, spec);
    verify(r, spec, f.order(), f.domain(), [&](double x) { return evaluate(f, x); },
           [&](double x) { return evaluate(g, x) + r.p(x); }, options);
    return r;
}

}  // namespace nconvex

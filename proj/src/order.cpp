#include "nconvex/order.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cantor_detail.hpp"
#include "nconvex/error.hpp"
#include "nconvex/oracle.hpp"

namespace nconvex {

const char* to_string(CriterionStatus s) {
    switch (s) {
        case CriterionStatus::holds: return "holds";
        case CriterionStatus::fails: return "fails";
        case CriterionStatus::not_applicable: return "not-applicable";
        case CriterionStatus::undecidable: return "undecidable";
    }
    return "?";
}

Decision relative_convex(const NConvexFn& f, const NConvexFn& g) {
    require_compatible(f, g, "relative_convex");
    return leq(convexity_measure(g), convexity_measure(f));
}

namespace {

CriterionStatus from_bool(bool b) { return b ? CriterionStatus::holds : CriterionStatus::fails; }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CriterionResult criterion_a(const NConvexFn& f, const NConvexFn& g, const Measure& mf, const Measure& mg,
                            const CriteriaOptions& options) {
    OracleOptions oo;
    oo.trials = options.grids;
    oo.tol = options.tol;
    oo.seed = options.seed;
    oo.focus = mf.feature_points();
    const auto more = mg.feature_points();
    oo.focus.insert(oo.focus.end(), more.begin(), more.end());
    oo.magnitude = [&](double x) { return std::abs(evaluate(f, x)) + std::abs(evaluate(g, x)); };
    const auto v = check_n_convex([&](double x) { return evaluate(f, x) - evaluate(g, x); }, f.order(), f.domain(), oo);
    std::string detail = std::to_string(v.trials_run) + " grids";
    if (v.witness) detail += ", negative divided difference " + fmt(v.witness->divided_difference) + " at x0 = " +
                             fmt(v.witness->points.front());
    return {'a', "divided differences of f - g", from_bool(v.pass), detail};
}

// Partition of the open domain that isolates every place where the measure
// difference can change sign.
std::vector<double> sign_partition(const Measure& mf, const Measure& mg) {
    std::vector<double> pts = mf.feature_points();
    const auto more = mg.feature_points();
    pts.insert(pts.end(), more.begin(), more.end());
    if (mf.density() || mg.density()) {
        std::vector<double> cuts;
        for (const auto* d : {&mf.density(), &mg.density()}) {
            if (*d) cuts.insert(cuts.end(), (*d)->breakpoints().begin(), (*d)->breakpoints().end());
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (!(cuts[i] < cuts[i + 1])) continue;
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            auto piece = [&](const std::optional<PiecewisePoly>& d) {
                if (!d || mid < d->breakpoints().front() || mid >= d->breakpoints().back()) return Polynomial{};
                auto it = std::upper_bound(d->breakpoints().begin(), d->breakpoints().end(), mid);
                return d->pieces()[static_cast<std::size_t>(it - d->breakpoints().begin()) - 1];
            };
            for (double r : sign_change_roots(piece(mf.density()) - piece(mg.density()), {cuts[i], cuts[i + 1]}))
                pts.push_back(r);
        }
    }
    // Cantor regions of constant rate, subdivided until the Cantor mass of a
    // cell dominates any density mass on it.
    detail::for_each_rate_region(mf.cantor_parts(), mg.cantor_parts(), [&](const CantorPart& region, double, double) {
        std::vector<Interval> cells{region.cell()};
        for (int level = 0; level < 10; ++level) {
            if (cells.front().width() < 1e-9 * std::max(1.0, std::abs(cells.front().lo))) break;
            std::vector<Interval> next;
            for (const auto& c : cells) {
                const double t = c.width() / 3.0;
                next.push_back({c.lo, c.lo + t});
                next.push_back({c.hi - t, c.hi});
            }
            cells = std::move(next);
        }
        for (const auto& c : cells) {
            pts.push_back(c.lo);
            pts.push_back(c.hi);
        }
        return true;
    });
    const Interval d = mf.domain();
    std::erase_if(pts, [&](double x) { return !d.contains_open(x); });
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double x : pts) {
        if (out.empty() || std::abs(x - out.back()) > Measure::kLocationTol * std::max(1.0, std::abs(x))) out.push_back(x);
    }
    return out;
}

CriterionResult criterion_c(const NConvexFn& f, const NConvexFn& g, const Measure& mf, const Measure& mg,
                            const CriteriaOptions& options) {
    const int n = f.order();
    auto diff = [&](double x, Side s) { return derivative(f, n, x, s) - derivative(g, n, x, s); };
    const double scale = std::max({1.0, mf.total_mass(), mg.total_mass()});
    const double tol = options.tol * scale;
    const Interval d = f.domain();
    std::vector<double> pts = sign_partition(mf, mg);
    // Interior stand-ins for the endpoints.
    const double eps = 1e-9 * d.width();
    pts.insert(pts.begin(), d.lo + eps);
    pts.push_back(d.hi - eps);
    std::sort(pts.begin(), pts.end());
    for (double x : pts) {
        const double jump = diff(x, Side::right) - diff(x, Side::left);
        if (jump < -tol)
            return {'c', "f^(n+1) >= g^(n+1) as measures", CriterionStatus::fails,
                    "negative jump " + fmt(jump) + " at x = " + fmt(x)};
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i] < pts[i + 1])) continue;
        const double inc = diff(pts[i + 1], Side::left) - diff(pts[i], Side::right);
        if (inc < -tol)
            return {'c', "f^(n+1) >= g^(n+1) as measures", CriterionStatus::fails,
                    "negative increment " + fmt(inc) + " on (" + fmt(pts[i]) + ", " + fmt(pts[i + 1]) + ")"};
    }
    return {'c', "f^(n+1) >= g^(n+1) as measures", CriterionStatus::holds,
            std::to_string(pts.size()) + " partition points"};
}

CriterionResult criterion_d(const Measure& mf, const Measure& mg) {
    const auto rn = radon_nikodym_sup(mg, mf);
    const char* name = "d mu_g / d mu_f <= 1";
    if (rn.aligned == Decision::undecidable) return {'d', name, CriterionStatus::undecidable, "Cantor parts not aligned"};
    if (!rn.absolutely_continuous)
        return {'d', name, CriterionStatus::not_applicable, "mu_g is not absolutely continuous w.r.t. mu_f"};
    return {'d', name, from_bool(rn.sup <= 1.0 + 1e-9), "sup = " + fmt(rn.sup)};
}

}  // namespace

std::string format_report(const CriteriaReport& report) {
    std::ostringstream os;
    for (const auto& item : report.items) {
        os << "  " << item.label << ") " << item.name;
        for (std::size_t i = item.name.size(); i < 34; ++i) os << ' ';
        os << to_string(item.status);
        if (!item.detail.empty()) os << "  (" << item.detail << ")";
        os << '\n';
    }
    return os.str();
}

CriteriaReport criteria_report(const NConvexFn& f, const NConvexFn& g, const CriteriaOptions& options) {
    require_compatible(f, g, "criteria_report");
    const Measure mf = convexity_measure(f);
    const Measure mg = convexity_measure(g);
    CriteriaReport report;
    report.verdict = leq(mg, mf);
    report.items[0] = criterion_a(f, g, mf, mg, options);
    const char* b_name = "mu_f >= mu_g";
    if (report.verdict == Decision::undecidable) {
        report.items[1] = {'b', b_name, CriterionStatus::undecidable, "Cantor parts not aligned"};
        report.items[2] = {'c', "f^(n+1) >= g^(n+1) as measures", CriterionStatus::undecidable, "depends on b)"};
        report.items[3] = {'d', "d mu_g / d mu_f <= 1", CriterionStatus::undecidable, "depends on b)"};
        return report;
    }
    report.items[1] = {'b', b_name, from_bool(report.verdict == Decision::yes), "partwise comparison"};
    report.items[2] = criterion_c(f, g, mf, mg, options);
    report.items[3] = criterion_d(mf, mg);
    const CriterionStatus expected = report.items[1].status;
    for (const auto& item : report.items) {
        if (item.status == CriterionStatus::not_applicable) continue;
        if (item.status != expected)
            throw ConsistencyError("relative convexity criteria disagree:\n" + format_report(report));
    }
    return report;
}

namespace {

double midpoint(const Interval& d) { return 0.5 * (d.lo + d.hi); }

}  // namespace

NConvexFn lattice_max(const NConvexFn& f, const NConvexFn& g) {
    require_compatible(f, g, "lattice_max");
    return from_measure(f.order(), lattice_join(convexity_measure(f), convexity_measure(g)), midpoint(f.domain()), {});
}

NConvexFn lattice_min(const NConvexFn& f, const NConvexFn& g) {
    require_compatible(f, g, "lattice_min");
    return from_measure(f.order(), lattice_meet(convexity_measure(f), convexity_measure(g)), midpoint(f.domain()), {});
}

PartsComparison compare_by_parts(const NConvexFn& f, const NConvexFn& g) {
    require_compatible(f, g, "compare_by_parts");
    const LebesgueParts pf = lebesgue_split(convexity_measure(f));
    const LebesgueParts pg = lebesgue_split(convexity_measure(g));
    return {leq(pg.cont, pf.cont), leq(pg.sing, pf.sing), leq(pg.pp, pf.pp)};
}

double strong_modulus(const NConvexFn& f) {
    const Measure mu = convexity_measure(f);
    const auto& d = mu.density();
    if (!d) return 0.0;
    const Interval dom = f.domain();
    if (d->support().lo > dom.lo || d->support().hi < dom.hi) return 0.0;
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d->size(); ++i) m = std::min(m, minimum_on(d->pieces()[i], d->piece_interval(i)));
    return std::max(0.0, m);
}

bool is_strongly_convex(const NConvexFn& f, double c) {
    if (!(c > 0.0)) throw InvalidInput("is_strongly_convex: modulus must be positive");
    return strong_modulus(f) >= c * (1.0 - 1e-12);
}

}  // namespace nconvex

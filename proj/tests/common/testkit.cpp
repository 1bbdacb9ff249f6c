#include "testkit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace testkit {

using nconvex::Atom;
using nconvex::CantorPart;
using nconvex::PiecewisePoly;
using nconvex::SpectralForm;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Interval random_domain(Rng& rng) {
    const double a = uniform(rng, -2.0, 0.0);
    return {a, a + uniform(rng, 1.0, 3.0)};
}

Polynomial random_nonnegative_cubic(Rng& rng, Interval iv) {
    // Local form in t = x - lo with nonnegative terms, then shifted to global x.
    const int degree = uniform_int(rng, 0, 3);
    std::vector<double> local(static_cast<std::size_t>(degree) + 1);
    local[0] = uniform(rng, 0.05, 2.0);
    for (int i = 1; i <= degree; ++i) local[static_cast<std::size_t>(i)] = uniform(rng, 0.0, 1.5);
    if (degree >= 2 && uniform(rng, 0.0, 1.0) < 0.5) {
        // (c0 + c1 t)^2-type term with a possible interior minimum.
        const double r = uniform(rng, 0.0, iv.width());
        const double s = uniform(rng, 0.2, 1.5);
        local[0] += s * r * r;
        local[1] += -2.0 * s * r;
        local[2] += s;
    }
    return Polynomial(local).recentered(-iv.lo);
}

namespace {

Interval cell_of(Interval base, const std::string& path) {
    for (char c : path) {
        const double third = (base.hi - base.lo) / 3.0;
        if (c == 'L') {
            base.hi = base.lo + third;
        } else {
            base.lo = base.hi - third;
        }
    }
    return base;
}

std::vector<double> sorted_points(Rng& rng, Interval iv, int k) {
    std::vector<double> pts;
    for (int i = 0; i < k; ++i) pts.push_back(uniform(rng, iv.lo, iv.hi));
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

Measure random_measure(Rng& rng, Interval domain, Interval region, int atoms, int pieces, int cantor,
                       const std::optional<Interval>& cantor_base) {
    std::vector<Atom> as;
    if (region.width() > 0.0) {
        const Interval inner{std::max(region.lo, domain.lo + 1e-3 * domain.width()),
                             std::min(region.hi, domain.hi - 1e-3 * domain.width())};
        if (inner.lo < inner.hi) {
            for (double x : sorted_points(rng, inner, atoms)) as.push_back({x, uniform(rng, 0.1, 2.0)});
        }
    }
    std::optional<PiecewisePoly> density;
    if (pieces > 0 && region.width() > 0.0) {
        auto bps = sorted_points(rng, region, pieces + 1);
        bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
        if (bps.size() >= 2) {
            std::vector<Polynomial> ps;
            for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
                ps.push_back(random_nonnegative_cubic(rng, {bps[i], bps[i + 1]}));
            }
            density = PiecewisePoly(bps, ps);
        }
    }
    std::vector<CantorPart> cs;
    for (int i = 0; i < cantor && region.width() > 0.0; ++i) {
        const double mass = uniform(rng, 0.2, 2.0);
        if (cantor_base) {
            // Walk random paths until a cell fits inside the region.
            std::optional<std::string> found;
            for (int attempt = 0; attempt < 12 && !found; ++attempt) {
                std::string path;
                const int depth = uniform_int(rng, 0, 4);
                for (int d = 0; d < depth; ++d) path += uniform(rng, 0.0, 1.0) < 0.5 ? 'L' : 'R';
                const Interval cell = cell_of(*cantor_base, path);
                if (region.lo <= cell.lo && cell.hi <= region.hi) found = path;
            }
            if (found) cs.push_back({*cantor_base, *found, mass});
        } else {
            const auto ends = sorted_points(rng, region, 2);
            if (ends[1] - ends[0] > 1e-3 * region.width()) cs.push_back({{ends[0], ends[1]}, "", mass});
        }
    }
    return Measure(domain, std::move(as), std::move(density), std::move(cs));
}

SpectralForm random_form_on(Rng& rng, int n, Interval domain, const FormShape& shape) {
    const double r = uniform(rng, 0.0, 1.0);
    double xi = uniform(rng, domain.lo + 0.1 * domain.width(), domain.hi - 0.1 * domain.width());
    if (r < 0.15) xi = domain.lo;
    if (r > 0.85) xi = domain.hi;
    const int atoms = uniform_int(rng, 0, shape.max_atoms);
    const int pieces = uniform_int(rng, 0, shape.max_density_pieces);
    const int cantor = uniform_int(rng, 0, shape.max_cantor);
    const int atoms_minus = uniform_int(rng, 0, atoms);
    const int pieces_minus = uniform_int(rng, 0, pieces);
    const int cantor_minus = uniform_int(rng, 0, cantor);
    const Interval left{domain.lo, xi};
    const Interval right{xi, domain.hi};
    Measure minus = random_measure(rng, domain, left, xi > domain.lo ? atoms_minus : 0, xi > domain.lo ? pieces_minus : 0,
                                   xi > domain.lo ? cantor_minus : 0, shape.cantor_base);
    const bool all_plus = xi <= domain.lo;
    const bool all_minus = xi >= domain.hi;
    Measure plus = random_measure(rng, domain, right, all_minus ? 0 : (all_plus ? atoms : atoms - atoms_minus),
                                  all_minus ? 0 : (all_plus ? pieces : pieces - pieces_minus),
                                  all_minus ? 0 : (all_plus ? cantor : cantor - cantor_minus), shape.cantor_base);
    if (all_minus) {
        minus = random_measure(rng, domain, left, atoms, pieces, cantor, shape.cantor_base);
    }
    std::vector<double> q(static_cast<std::size_t>(n) + 1);
    for (double& c : q) c = uniform(rng, -1.0, 1.0);
    return {n, domain, xi, std::move(minus), std::move(plus), Polynomial(q)};
}

SpectralForm random_form(Rng& rng, const FormShape& shape) {
    const int n = shape.n > 0 ? shape.n : uniform_int(rng, 1, 4);
    return random_form_on(rng, n, random_domain(rng), shape);
}

namespace {

Measure nonzero_extra(Rng& rng, Interval domain, const FormShape& shape) {
    for (;;) {
        Measure m = random_measure(rng, domain, domain, uniform_int(rng, 0, 2), uniform_int(rng, 0, 2),
                                   uniform_int(rng, 0, shape.max_cantor), shape.cantor_base);
        if (!m.is_zero()) return m;
    }
}

std::vector<double> random_q(Rng& rng, int n) {
    std::vector<double> q(static_cast<std::size_t>(n) + 1);
    for (double& c : q) c = uniform(rng, -1.0, 1.0);
    return q;
}

double random_xi(Rng& rng, Interval d) { return uniform(rng, d.lo + 0.05 * d.width(), d.hi - 0.05 * d.width()); }

}  // namespace

Pair comparable_pair(Rng& rng, int n, Interval domain, const FormShape& shape) {
    NConvexFn g(random_form_on(rng, n, domain, shape));
    const Measure mu_f = nconvex::add(nconvex::convexity_measure(g), nonzero_extra(rng, domain, shape));
    NConvexFn f = nconvex::from_measure(n, mu_f, random_xi(rng, domain), Polynomial(random_q(rng, n)));
    return {std::move(f), std::move(g)};
}

Pair incomparable_pair(Rng& rng, int n, Interval domain, const FormShape& shape) {
    const Measure base = random_measure(rng, domain, domain, uniform_int(rng, 0, 2), uniform_int(rng, 0, 1),
                                        uniform_int(rng, 0, shape.max_cantor), shape.cantor_base);
    const double w = domain.width();
    auto inner = [&] { return uniform(rng, domain.lo + 0.05 * w, domain.hi - 0.05 * w); };
    Measure ef(domain);
    Measure eg(domain);
    switch (uniform_int(rng, 0, 3)) {
        case 0: {  // atoms at different places
            const double p = inner();
            double q = inner();
            while (std::abs(q - p) < 0.01 * w) q = inner();
            ef = Measure::dirac(domain, p, uniform(rng, 0.2, 2.0));
            eg = Measure::dirac(domain, q, uniform(rng, 0.2, 2.0));
            break;
        }
        case 1: {  // crossing densities on a common interval
            double lo = inner();
            double hi = inner();
            if (lo > hi) std::swap(lo, hi);
            if (hi - lo < 0.05 * w) hi = std::min(domain.hi, lo + 0.05 * w);
            const double c = uniform(rng, 0.2, 2.0);
            ef = Measure::uniform_density(domain, {lo, hi}, c);
            const Polynomial ramp = Polynomial{0.0, 2.0 * c / (hi - lo)}.recentered(-lo);
            eg = Measure(domain, {}, PiecewisePoly({lo, hi}, {ramp}), {});
            break;
        }
        case 2: {  // atom against density
            const double p = inner();
            double lo = inner();
            double hi = inner();
            if (lo > hi) std::swap(lo, hi);
            if (hi - lo < 0.05 * w) hi = std::min(domain.hi, lo + 0.05 * w);
            ef = Measure::dirac(domain, p, uniform(rng, 0.2, 2.0));
            eg = Measure::uniform_density(domain, {lo, hi}, uniform(rng, 0.2, 2.0));
            break;
        }
        default: {  // larger atom against extra density
            const double p = inner();
            const double m = uniform(rng, 0.5, 2.0);
            ef = Measure::dirac(domain, p, 2.0 * m);
            eg = nconvex::add(Measure::dirac(domain, p, m),
                              Measure::uniform_density(domain, {domain.lo + 0.1 * w, domain.hi - 0.1 * w}, 0.5));
            break;
        }
    }
    NConvexFn f = nconvex::from_measure(n, nconvex::add(base, ef), random_xi(rng, domain), Polynomial(random_q(rng, n)));
    NConvexFn g = nconvex::from_measure(n, nconvex::add(base, eg), random_xi(rng, domain), Polynomial(random_q(rng, n)));
    if (uniform(rng, 0.0, 1.0) < 0.5) return {std::move(g), std::move(f)};
    return {std::move(f), std::move(g)};
}

namespace {

double simpson_step(const std::function<double(double)>& g, double lo, double hi, double flo, double fmid, double fhi,
                    double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double both = left + right;
    if (depth <= 0 || std::abs(both - whole) <= 15.0 * tol) return both + (both - whole) / 15.0;
    return simpson_step(g, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
           simpson_step(g, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi, double tol) {
    if (!(lo < hi)) return 0.0;
    const double flo = g(lo);
    const double fhi = g(hi);
    const double fmid = g(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return simpson_step(g, lo, hi, flo, fmid, fhi, whole, tol, 40);
}

namespace {

double truncated(double t, int p) {
    if (p == 0) return t > 0.0 ? 1.0 : 0.0;
    if (t <= 0.0) return 0.0;
    double v = 1.0;
    for (int i = 1; i <= p; ++i) v *= t / i;
    return v;
}

}  // namespace

double cantor_kernel_by_atoms(Interval cell, double mass, double x, int p, bool plus_side, int depth) {
    std::vector<double> lows{cell.lo};
    double width = cell.width();
    for (int d = 0; d < depth; ++d) {
        const double third = width / 3.0;
        std::vector<double> next;
        next.reserve(lows.size() * 2);
        for (double lo : lows) {
            next.push_back(lo);
            next.push_back(lo + 2.0 * third);
        }
        lows.swap(next);
        width = third;
    }
    const double w = mass / static_cast<double>(lows.size());
    double sum = 0.0;
    for (double lo : lows) {
        const double u = lo + 0.5 * width;
        sum += w * truncated(plus_side ? x - u : u - x, p);
    }
    return sum;
}

namespace {

double side_value(const Measure& m, double x, int n, bool plus_side) {
    const double sign = plus_side ? 1.0 : ((n + 1) % 2 == 0 ? 1.0 : -1.0);
    double sum = 0.0;
    for (const auto& a : m.atoms()) sum += a.mass * truncated(plus_side ? x - a.location : a.location - x, n);
    if (const auto& d = m.density()) {
        for (std::size_t i = 0; i < d->size(); ++i) {
            const Interval iv = d->piece_interval(i);
            const Polynomial& p = d->pieces()[i];
            auto integrand = [&](double u) { return p(u) * truncated(plus_side ? x - u : u - x, n); };
            const double lo = plus_side ? iv.lo : std::max(iv.lo, x);
            const double hi = plus_side ? std::min(iv.hi, x) : iv.hi;
            sum += adaptive_simpson(integrand, lo, hi, 1e-15);
        }
    }
    for (const auto& c : m.cantor_parts()) {
        sum += cantor_kernel_by_atoms(cell_of(c.base, c.path), c.mass, x, n, plus_side, 14);
    }
    return sign * sum;
}

}  // namespace

double brute_evaluate(const SpectralForm& s, double x) {
    return side_value(s.mu_minus, x, s.n, false) + side_value(s.mu_plus, x, s.n, true) + s.q(x);
}

std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs) {
    const std::size_t m = rhs.size();
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (a[piv][col] == 0.0) throw std::runtime_error("singular system");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < m; ++c) a[r][c] -= factor * a[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<double> x(m);
    for (std::size_t i = m; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t c = i + 1; c < m; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

std::vector<double> vandermonde_hermite(const std::vector<nconvex::HermiteNode>& nodes, int n) {
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (const auto& node : nodes) {
        for (std::size_t i = 0; i < node.values.size(); ++i) {
            std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
            for (int k = static_cast<int>(i); k <= n; ++k) {
                double c = 1.0;
                for (int j = 0; j < static_cast<int>(i); ++j) c *= k - j;
                row[static_cast<std::size_t>(k)] = c * std::pow(node.x, k - static_cast<int>(i));
            }
            rows.push_back(row);
            rhs.push_back(node.values[i]);
        }
    }
    return solve_dense(rows, rhs);
}

double rel_gap(double x, double y) { return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}); }

}  // namespace testkit

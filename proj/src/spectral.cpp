#include "nconvex/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nconvex/error.hpp"

namespace nconvex {

const char* to_string(Case c) {
    switch (c) {
        case Case::A: return "A";
        case Case::B: return "B";
        case Case::C: return "C";
    }
    return "?";
}

void validate(const SpectralForm& form) {
    if (form.n < 1) throw InvalidInput("order n must be at least 1");
    const Interval& d = form.domain;
    if (!(std::isfinite(d.lo) && std::isfinite(d.hi) && d.lo < d.hi))
        throw InvalidInput("domain must be a finite interval (a, b) with a < b");
    if (!(form.mu_minus.domain() == d) || !(form.mu_plus.domain() == d))
        throw InvalidInput("spectral measures must live on the form's domain");
    if (!std::isfinite(form.xi) || !d.contains(form.xi)) throw InvalidInput("xi must lie in [a, b]");
    // Same slack as atom co-location: cells split at xi may overhang by ulps.
    const double slack = Measure::kLocationTol * std::max(1.0, std::abs(form.xi));
    if (auto hull = form.mu_minus.support_hull(); hull && hull->hi > form.xi + slack)
        throw InvalidInput("mu_minus has mass to the right of xi");
    if (auto hull = form.mu_plus.support_hull(); hull && hull->lo < form.xi - slack)
        throw InvalidInput("mu_plus has mass to the left of xi");
    if (form.q.degree() > form.n) throw InvalidInput("polynomial part has degree above n");
    for (double c : form.q.coeffs()) {
        if (!std::isfinite(c)) throw InvalidInput("polynomial coefficients must be finite");
    }
}

NConvexFn::NConvexFn(SpectralForm form) : form_(std::move(form)) { validate(form_); }

double NConvexFn::operator()(double x) const { return evaluate(*this, x); }

namespace {

void require_inside(const NConvexFn& f, double x) {
    if (!f.domain().contains_open(x))
        throw OutOfDomain("x = " + std::to_string(x) + " is outside the open domain");
}

// Psi_- + Psi_+ differentiated m times.
double psi(const SpectralForm& s, int m, double x, Continuity cont) {
    const int p = s.n - m;
    const double plus = truncated_power_integral(s.mu_plus, x, p, KernelSide::plus, cont);
    const double minus = truncated_power_integral(s.mu_minus, x, p, KernelSide::minus, cont);
    const bool negative = (s.n + 1 + m) % 2 == 1;
    return plus + (negative ? -minus : minus);
}

double psi_value(const SpectralForm& s, double x) { return psi(s, 0, x, Continuity::right); }

// Q recovered from f - Psi at n+1 Chebyshev nodes; the leading coefficient is
// replaced by the known exact value.
Polynomial recover_q(const NConvexFn& f, const SpectralForm& target, double leading) {
    const int n = target.n;
    const auto xs = chebyshev_nodes(n + 1, target.domain);
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back(evaluate(f, x) - psi_value(target, x));
    std::vector<double> c = lagrange_interpolate(xs, ys).coeffs();
    c.resize(static_cast<std::size_t>(n) + 1, 0.0);
    c[static_cast<std::size_t>(n)] = leading;
    return Polynomial(std::move(c));
}

double measure_scale(const SpectralForm& s) {
    return std::max({1.0, factorial(s.n) * std::abs(s.q.coeff(s.n)), s.mu_minus.total_mass(), s.mu_plus.total_mass()});
}

}  // namespace

double evaluate(const NConvexFn& f, double x) {
    require_inside(f, x);
    return psi_value(f.form(), x) + f.form().q(x);
}

double derivative(const NConvexFn& f, int m, double x, Side side) {
    const int n = f.order();
    if (m < 0) throw InvalidInput("derivative order must be nonnegative");
    if (m > n) throw Unsupported("f^(m) for m > n exists only almost everywhere; use the convexity measure");
    require_inside(f, x);
    const Continuity cont = side == Side::right ? Continuity::right : Continuity::left;
    return psi(f.form(), m, x, cont) + f.form().q.derivative_at(x, m);
}

double nth_derivative_at_a(const NConvexFn& f) {
    const auto& s = f.form();
    return factorial(s.n) * s.q.coeff(s.n) - s.mu_minus.total_mass();
}

double nth_derivative_at_b(const NConvexFn& f) {
    const auto& s = f.form();
    return factorial(s.n) * s.q.coeff(s.n) + s.mu_plus.total_mass();
}

Case classify(const NConvexFn& f) {
    const double tol = 1e-13 * measure_scale(f.form());
    if (nth_derivative_at_a(f) >= -tol) return Case::B;
    if (nth_derivative_at_b(f) <= tol) return Case::C;
    return Case::A;
}

NConvexFn canonicalize(const SpectralForm& form) {
    const NConvexFn f(form);
    const int n = form.n;
    const Interval d = form.domain;
    const Measure mu = add(form.mu_minus, form.mu_plus);
    SpectralForm out{n, d, d.lo, Measure(d), Measure(d), {}};
    double leading = 0.0;
    switch (classify(f)) {
        case Case::B:
            out.xi = d.lo;
            out.mu_plus = mu;
            leading = std::max(0.0, nth_derivative_at_a(f)) / factorial(n);
            break;
        case Case::C:
            out.xi = d.hi;
            out.mu_minus = mu;
            leading = std::min(0.0, nth_derivative_at_b(f)) / factorial(n);
            break;
        case Case::A: {
            // inf { x : f^(n)(x+) >= 0 } by bisection on the right derivative.
            double lo = d.lo;
            double hi = d.hi;
            for (int it = 0; it < 400; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                if (derivative(f, n, mid, Side::right) >= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            double xi = hi;
            for (const auto& a : mu.atoms()) {
                if (std::abs(a.location - hi) <= 2.0 * Measure::kLocationTol * std::max(1.0, std::abs(a.location))) {
                    xi = a.location;
                    break;
                }
            }
            const double jump = mu.atom_mass_at(xi);
            const double right_share = std::clamp(derivative(f, n, xi, Side::right), 0.0, jump);
            out.xi = xi;
            out.mu_minus = mu.restricted_left(xi, jump - right_share);
            out.mu_plus = mu.restricted_right(xi, right_share);
            leading = 0.0;
            break;
        }
    }
    if (out.xi == form.xi && out.mu_minus.equals(form.mu_minus, 0.0) && out.mu_plus.equals(form.mu_plus, 0.0) &&
        form.q.coeff(n) == leading) {
        return f;
    }
    out.q = recover_q(f, out, leading);
    return NConvexFn(std::move(out));
}

SpectralForm re_anchor(const NConvexFn& f, double xi_new) {
    if (!f.domain().contains_open(xi_new)) throw InvalidInput("re_anchor: the new anchor must lie strictly inside (a, b)");
    const int n = f.order();
    const Measure mu = convexity_measure(f);
    SpectralForm out{n, f.domain(), xi_new, mu.restricted_left(xi_new, mu.atom_mass_at(xi_new)),
                     mu.restricted_right(xi_new, 0.0), {}};
    const double leading = derivative(f, n, xi_new, Side::right) / factorial(n);
    out.q = recover_q(f, out, leading);
    validate(out);
    return out;
}

Measure convexity_measure(const NConvexFn& f) { return add(f.form().mu_minus, f.form().mu_plus); }

void require_compatible(const NConvexFn& f, const NConvexFn& g, const char* what) {
    if (f.order() != g.order())
        throw DomainMismatch(std::string(what) + ": orders differ (" + std::to_string(f.order()) + " vs " +
                             std::to_string(g.order()) + ")");
    if (!(f.domain() == g.domain())) throw DomainMismatch(std::string(what) + ": domains differ");
}

bool mod_pi_n_equal(const NConvexFn& f, const NConvexFn& g) {
    require_compatible(f, g, "mod_pi_n_equal");
    return convexity_measure(f).equals(convexity_measure(g));
}

FunctionParts lebesgue_parts(const NConvexFn& f) {
    const auto& s = f.form();
    const LebesgueParts lm = lebesgue_split(s.mu_minus);
    const LebesgueParts lp = lebesgue_split(s.mu_plus);
    return {NConvexFn({s.n, s.domain, s.xi, lm.cont, lp.cont, s.q}),
            NConvexFn({s.n, s.domain, s.xi, lm.sing, lp.sing, {}}),
            NConvexFn({s.n, s.domain, s.xi, lm.pp, lp.pp, {}})};
}

NConvexFn from_measure(int n, const Measure& mu, double xi, Polynomial q) {
    const Interval d = mu.domain();
    if (xi <= d.lo) return NConvexFn({n, d, d.lo, Measure(d), mu, std::move(q)});
    if (xi >= d.hi) return NConvexFn({n, d, d.hi, mu, Measure(d), std::move(q)});
    return NConvexFn({n, d, xi, mu.restricted_left(xi, mu.atom_mass_at(xi)), mu.restricted_right(xi, 0.0), std::move(q)});
}

namespace {

double midpoint(const Interval& d) { return 0.5 * (d.lo + d.hi); }

}  // namespace

NConvexFn combine(const NConvexFn& f, const NConvexFn& g, double alpha, double beta) {
    require_compatible(f, g, "combine");
    if (!(alpha >= 0.0 && beta >= 0.0)) throw InvalidInput("combine: coefficients must be nonnegative");
    const double xi = midpoint(f.domain());
    const SpectralForm a = re_anchor(f, xi);
    const SpectralForm b = re_anchor(g, xi);
    return NConvexFn({f.order(), f.domain(), xi, add(a.mu_minus.scaled(alpha), b.mu_minus.scaled(beta)),
                      add(a.mu_plus.scaled(alpha), b.mu_plus.scaled(beta)), a.q * alpha + b.q * beta});
}

NConvexFn difference(const NConvexFn& f, const NConvexFn& g) {
    require_compatible(f, g, "difference");
    const Decision d = leq(convexity_measure(g), convexity_measure(f));
    if (d != Decision::yes)
        throw PreconditionFailure(std::string("difference: f - g is not n-convex (measure order is ") + to_string(d) + ")");
    const double xi = midpoint(f.domain());
    const SpectralForm a = re_anchor(f, xi);
    const SpectralForm b = re_anchor(g, xi);
    return NConvexFn({f.order(), f.domain(), xi, subtract(a.mu_minus, b.mu_minus), subtract(a.mu_plus, b.mu_plus),
                      a.q - b.q});
}

}  // namespace nconvex

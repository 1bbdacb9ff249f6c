#pragma once

#include "nconvex/measure.hpp"
#include "nconvex/polynomial.hpp"

namespace nconvex {

/// Sign behaviour of f^(n): A changes sign, B is >= 0, C is <= 0.
enum class Case { A, B, C };

const char* to_string(Case c);

enum class Side { right, left };

/// f(x) = Psi_-(x) + Psi_+(x) + Q(x) with
///   Psi_-(x) = \int_{(a, xi]} (-1)^{n+1} (u-x)_+^n / n! dmu_minus(u),
///   Psi_+(x) = \int_{[xi, b)} (x-u)_+^n / n! dmu_plus(u).
struct SpectralForm {
    int n = 1;
    Interval domain{0.0, 1.0};
    double xi = 0.0;
    Measure mu_minus;
    Measure mu_plus;
    Polynomial q;
};

/// Throws InvalidInput unless the form satisfies the support and degree rules.
void validate(const SpectralForm& form);

/// An n-convex function given by a validated SpectralForm.
class NConvexFn {
public:
    explicit NConvexFn(SpectralForm form);

    const SpectralForm& form() const { return form_; }
    int order() const { return form_.n; }
    const Interval& domain() const { return form_.domain; }

    double operator()(double x) const;

private:
    SpectralForm form_;
};

double evaluate(const NConvexFn& f, double x);

/// m-th derivative, 0 <= m <= n. For m = n the one-sided value selected by
/// `side`; for m < n the derivative is continuous and `side` is ignored.
double derivative(const NConvexFn& f, int m, double x, Side side = Side::right);

/// Limits of f^(n) at the endpoints: f^(n)(a+) and f^(n)(b-).
double nth_derivative_at_a(const NConvexFn& f);
double nth_derivative_at_b(const NConvexFn& f);

Case classify(const NConvexFn& f);

/// Canonical anchor and measures: B has xi = a and mu_minus = 0, C has xi = b
/// and mu_plus = 0, A splits at the first point where f^(n) turns nonnegative.
NConvexFn canonicalize(const SpectralForm& form);

/// Representation anchored at a < xi_new < b. The atom at xi_new (if any)
/// goes to the minus measure and Q absorbs f^(n)(xi_new+).
SpectralForm re_anchor(const NConvexFn& f, double xi_new);

/// mu_minus + mu_plus.
Measure convexity_measure(const NConvexFn& f);

/// True iff f - g is a polynomial of degree <= n.
bool mod_pi_n_equal(const NConvexFn& f, const NConvexFn& g);

struct FunctionParts {
    NConvexFn cont;
    NConvexFn sing;
    NConvexFn pp;
};

/// Split by the Lebesgue parts of both spectral measures; Q goes to `cont`.
FunctionParts lebesgue_parts(const NConvexFn& f);

/// The function whose convexity measure is mu, anchored at xi (atom at xi
/// assigned to the minus side), with polynomial part q.
NConvexFn from_measure(int n, const Measure& mu, double xi, Polynomial q);

/// alpha f + beta g for alpha, beta >= 0.
NConvexFn combine(const NConvexFn& f, const NConvexFn& g, double alpha, double beta);

/// f - g; requires convexity_measure(g) <= convexity_measure(f).
NConvexFn difference(const NConvexFn& f, const NConvexFn& g);

/// Throws DomainMismatch unless f and g share order and domain.
void require_compatible(const NConvexFn& f, const NConvexFn& g, const char* what);

}  // namespace nconvex

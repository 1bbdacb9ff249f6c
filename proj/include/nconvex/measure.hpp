#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nconvex/polynomial.hpp"

namespace nconvex {

/// Three-valued answer for comparisons that are not always decidable.
enum class Decision { no, yes, undecidable };

const char* to_string(Decision d);

enum class Continuity { left, right };

/// Standard Cantor function on [0, 1], computed from the exact ternary digits
/// of the binary floating-point argument.
double cantor_function(double t);

/// E[U^k] for U distributed by the standard Cantor measure on [0, 1].
double cantor_moment(int k);

struct Atom {
    double location = 0.0;
    double mass = 0.0;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Cantor measure affinely mapped onto a cell of a base interval, scaled to
/// `mass`. The cell is addressed by a path of 'L'/'R' choices: each letter
/// keeps the left or right closed third of the previous cell. An empty path is
/// the whole base interval.
struct CantorPart {
    Interval base;
    std::string path;
    double mass = 0.0;

    Interval cell() const;
    int depth() const { return static_cast<int>(path.size()); }
    /// Mass the part would carry if spread uniformly (in Cantor sense) over the
    /// whole base: mass * 2^depth. Aligned comparisons work on rates.
    double rate() const;
    friend bool operator==(const CantorPart&, const CantorPart&) = default;
};

/// Nonnegative Borel measure on a finite open interval, stored as
/// atoms + piecewise-polynomial density + Cantor-type singular parts.
///
/// Invariants enforced at construction:
///  - atoms strictly increasing and strictly inside the domain, masses > 0;
///  - density pieces inside the closed domain and nonnegative;
///  - Cantor cells inside the closed domain, masses > 0; cells sharing a base
///    are normalized to disjoint maximal cells.
class Measure {
public:
    /// Co-location tolerance for atoms: |dx| <= kLocationTol * max(1, |x|).
    static constexpr double kLocationTol = 1e-12;

    explicit Measure(Interval domain = {0.0, 1.0});
    Measure(Interval domain, std::vector<Atom> atoms, std::optional<PiecewisePoly> density,
            std::vector<CantorPart> cantor);

    static Measure zero(Interval domain) { return Measure(domain); }
    static Measure dirac(Interval domain, double location, double mass);
    static Measure uniform_density(Interval domain, Interval support, double value);
    static Measure cantor(Interval domain, Interval base, double mass);

    const Interval& domain() const { return domain_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<PiecewisePoly>& density() const { return density_; }
    const std::vector<CantorPart>& cantor_parts() const { return cantor_; }

    bool is_zero() const;
    double total_mass() const;
    /// Mass of (lo, hi] (or the convention given by the flags).
    double mass_between(double lo, double hi, bool include_lo, bool include_hi) const;
    /// Mass of the atom at x (0 if none).
    double atom_mass_at(double x) const;
    /// Smallest closed interval holding all mass; nullopt for the zero measure.
    std::optional<Interval> support_hull() const;
    /// Points where the measure changes character: atoms, density breakpoints,
    /// Cantor cell endpoints.
    std::vector<double> feature_points() const;

    Measure scaled(double s) const;
    /// Restriction to the part strictly left of x, keeping `atom_mass_at_x` of the
    /// atom at x (ignored when there is no atom at x).
    Measure restricted_left(double x, double atom_mass_at_x) const;
    /// Restriction to the part strictly right of x, keeping `atom_mass_at_x` of the atom at x.
    Measure restricted_right(double x, double atom_mass_at_x) const;

    /// Parts equal within a relative tolerance (0 means bitwise-equal numbers).
    bool equals(const Measure& other, double tol = 1e-12) const;

private:
    void normalize();
    Interval domain_;
    std::vector<Atom> atoms_;
    std::optional<PiecewisePoly> density_;
    std::vector<CantorPart> cantor_;
};

/// Sum of two measures on the same domain.
Measure add(const Measure& mu, const Measure& nu);
/// mu - nu; requires leq(nu, mu) == yes.
Measure subtract(const Measure& mu, const Measure& nu);
/// nu <= mu, decided partwise (atoms, density, aligned Cantor cells).
Decision leq(const Measure& nu, const Measure& mu);
/// Least upper bound max(dmu/dsigma, dnu/dsigma) * sigma with sigma = mu + nu.
/// Throws Undecidable on non-aligned singular overlap.
Measure lattice_join(const Measure& mu, const Measure& nu);
/// Greatest lower bound min(dmu/dsigma, dnu/dsigma) * sigma.
Measure lattice_meet(const Measure& mu, const Measure& nu);

struct LebesgueParts {
    Measure cont;
    Measure sing;
    Measure pp;
};
LebesgueParts lebesgue_split(const Measure& mu);

/// Radon-Nikodym derivative d nu / d mu, if nu << mu within the representation.
struct RadonNikodymBound {
    bool absolutely_continuous = false;
    /// Essential supremum of d nu / d mu over the support of mu (0 if nu = 0).
    double sup = 0.0;
    Decision aligned = Decision::yes;  ///< undecidable when singular parts are not aligned
};
RadonNikodymBound radon_nikodym_sup(const Measure& nu, const Measure& mu);

/// Signed cumulative distribution of a measure anchored at xi:
///   right-continuous: G(x) = mu((xi, x]) for x >= xi, -mu((x, xi]) for x < xi;
///   left-continuous:  G(x) = mu([xi, x)) for x > xi, -mu([x, xi)) for x <= xi.
class DistributionFn {
public:
    DistributionFn(Measure mu, double xi, Continuity continuity);
    double operator()(double x) const;
    double anchor() const { return xi_; }
    Continuity continuity() const { return continuity_; }
    const Measure& measure() const { return mu_; }

private:
    Measure mu_;
    double xi_;
    Continuity continuity_;
};

DistributionFn cdf(const Measure& mu, double xi, Continuity continuity);

/// \int (x-u)_+^p/p! dmu(u) (plus) or \int (u-x)_+^p/p! dmu(u) (minus).
/// For p = 0 the kernel is the indicator of u <= x (plus) / u > x (minus) under
/// right continuity, and u < x / u >= x under left continuity.
double truncated_power_integral(const Measure& mu, double x, int p, KernelSide side,
                                Continuity continuity = Continuity::right);

}  // namespace nconvex

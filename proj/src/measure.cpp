#include "nconvex/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cantor_detail.hpp"
#include "nconvex/error.hpp"

namespace nconvex {

const char* to_string(Decision d) {
    switch (d) {
        case Decision::no: return "false";
        case Decision::yes: return "true";
        case Decision::undecidable: return "undecidable";
    }
    return "?";
}

namespace {

bool colocated(double a, double b) { return std::abs(a - b) <= Measure::kLocationTol * std::max(1.0, std::abs(a)); }

bool close_rel(double a, double b, double tol) {
    if (tol == 0.0) return a == b;
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

Polynomial piece_at(const PiecewisePoly& d, double x) {
    const auto& bp = d.breakpoints();
    if (x < bp.front() || x >= bp.back()) return {};
    auto it = std::upper_bound(bp.begin(), bp.end(), x);
    return d.pieces()[static_cast<std::size_t>(it - bp.begin()) - 1];
}

struct RefinedPiece {
    Interval iv;
    Polynomial a;
    Polynomial b;
};

// Common refinement of two densities over the union of their supports; a
// missing density reads as zero.
std::vector<RefinedPiece> refine(const std::optional<PiecewisePoly>& a, const std::optional<PiecewisePoly>& b) {
    std::vector<double> cuts;
    if (a) cuts.insert(cuts.end(), a->breakpoints().begin(), a->breakpoints().end());
    if (b) cuts.insert(cuts.end(), b->breakpoints().begin(), b->breakpoints().end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<RefinedPiece> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        out.push_back({{cuts[i], cuts[i + 1]}, a ? piece_at(*a, mid) : Polynomial{}, b ? piece_at(*b, mid) : Polynomial{}});
    }
    return out;
}

// Builds a density from contiguous pieces: fuses equal neighbours and drops
// zero pieces at both ends.
std::optional<PiecewisePoly> build_density(const std::vector<Interval>& ivs, const std::vector<Polynomial>& polys) {
    std::vector<double> bp;
    std::vector<Polynomial> pieces;
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        if (!pieces.empty() && bp.back() == ivs[i].lo && pieces.back() == polys[i]) {
            bp.back() = ivs[i].hi;
            continue;
        }
        if (!pieces.empty() && bp.back() != ivs[i].lo) {
            // Gap: represent it by an explicit zero piece.
            pieces.emplace_back();
            bp.push_back(ivs[i].lo);
        }
        if (bp.empty()) bp.push_back(ivs[i].lo);
        pieces.push_back(polys[i]);
        bp.push_back(ivs[i].hi);
    }
    while (!pieces.empty() && pieces.front().is_zero()) {
        pieces.erase(pieces.begin());
        bp.erase(bp.begin());
    }
    while (!pieces.empty() && pieces.back().is_zero()) {
        pieces.pop_back();
        bp.pop_back();
    }
    if (pieces.empty()) return std::nullopt;
    return PiecewisePoly(std::move(bp), std::move(pieces));
}

double poly_scale(const Polynomial& p, Interval iv) {
    double s = 0.0;
    for (int i = 0; i <= 4; ++i) s = std::max(s, std::abs(p(iv.lo + iv.width() * i / 4.0)));
    return s;
}

double density_scale(const std::vector<RefinedPiece>& pieces) {
    double s = 0.0;
    for (const auto& rp : pieces) s = std::max({s, poly_scale(rp.a, rp.iv), poly_scale(rp.b, rp.iv)});
    return s;
}

double nonneg_eps(double scale) { return kPolyEpsilon * std::max(1.0, scale); }

void require_same_domain(const Measure& a, const Measure& b, const char* what) {
    if (!(a.domain() == b.domain())) throw DomainMismatch(std::string(what) + ": measures live on different domains");
}

double density_mass(const PiecewisePoly& d, double lo, double hi) {
    double total = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Interval iv = d.piece_interval(i);
        const double l = std::max(lo, iv.lo);
        const double r = std::min(hi, iv.hi);
        if (!(l < r)) continue;
        const Polynomial anti = d.pieces()[i].antiderivative();
        total += anti(r) - anti(l);
    }
    return total;
}

std::optional<PiecewisePoly> cut_density(const std::optional<PiecewisePoly>& d, double x, bool keep_left) {
    if (!d) return std::nullopt;
    std::vector<Interval> ivs;
    std::vector<Polynomial> polys;
    for (std::size_t i = 0; i < d->size(); ++i) {
        Interval iv = d->piece_interval(i);
        if (keep_left) {
            iv.hi = std::min(iv.hi, x);
        } else {
            iv.lo = std::max(iv.lo, x);
        }
        if (!(iv.lo < iv.hi)) continue;
        ivs.push_back(iv);
        polys.push_back(d->pieces()[i]);
    }
    return build_density(ivs, polys);
}

}  // namespace

// --- Measure ----------------------------------------------------------------

Measure::Measure(Interval domain) : domain_(domain) {
    if (!(std::isfinite(domain.lo) && std::isfinite(domain.hi) && domain.lo < domain.hi))
        throw InvalidInput("measure domain must be a finite interval (a, b) with a < b");
}

Measure::Measure(Interval domain, std::vector<Atom> atoms, std::optional<PiecewisePoly> density,
                 std::vector<CantorPart> cantor)
    : Measure(domain) {
    for (const auto& a : atoms) {
        if (!std::isfinite(a.location) || !domain_.contains_open(a.location))
            throw InvalidInput("atom location " + std::to_string(a.location) + " is not inside the domain");
        if (!std::isfinite(a.mass) || a.mass < 0.0) throw InvalidInput("atom mass must be finite and nonnegative");
    }
    atoms_ = std::move(atoms);
    if (density) {
        if (density->breakpoints().front() < domain_.lo || density->breakpoints().back() > domain_.hi)
            throw InvalidInput("density breakpoints leave the domain");
        std::vector<Interval> ivs;
        double scale = 0.0;
        for (std::size_t i = 0; i < density->size(); ++i) {
            ivs.push_back(density->piece_interval(i));
            scale = std::max(scale, poly_scale(density->pieces()[i], ivs.back()));
        }
        for (std::size_t i = 0; i < density->size(); ++i) {
            if (!is_nonnegative_on(density->pieces()[i], ivs[i], nonneg_eps(scale)))
                throw InvalidInput("density piece " + std::to_string(i) + " is negative somewhere on its interval");
        }
        density_ = build_density(ivs, density->pieces());
    }
    for (const auto& c : cantor) {
        if (!(std::isfinite(c.base.lo) && std::isfinite(c.base.hi) && c.base.lo < c.base.hi))
            throw InvalidInput("Cantor base must be a nondegenerate interval");
        if (c.path.find_first_not_of("LR") != std::string::npos)
            throw InvalidInput("Cantor path may only contain 'L' and 'R'");
        const Interval cell = c.cell();
        if (cell.lo < domain_.lo || cell.hi > domain_.hi) throw InvalidInput("Cantor part leaves the domain");
        if (!std::isfinite(c.mass) || c.mass < 0.0) throw InvalidInput("Cantor mass must be finite and nonnegative");
    }
    cantor_ = std::move(cantor);
    normalize();
}

void Measure::normalize() {
    std::erase_if(atoms_, [](const Atom& a) { return a.mass == 0.0; });
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.location < y.location; });
    std::vector<Atom> merged;
    for (const auto& a : atoms_) {
        if (!merged.empty() && colocated(merged.back().location, a.location)) {
            merged.back().mass += a.mass;
        } else {
            merged.push_back(a);
        }
    }
    atoms_ = std::move(merged);
    std::erase_if(cantor_, [](const CantorPart& c) { return c.mass == 0.0; });
    cantor_ = detail::normalize_cantor(cantor_);
}

Measure Measure::dirac(Interval domain, double location, double mass) {
    return Measure(domain, {{location, mass}}, std::nullopt, {});
}

Measure Measure::uniform_density(Interval domain, Interval support, double value) {
    return Measure(domain, {}, PiecewisePoly({support.lo, support.hi}, {Polynomial::constant(value)}), {});
}

Measure Measure::cantor(Interval domain, Interval base, double mass) {
    return Measure(domain, {}, std::nullopt, {CantorPart{base, "", mass}});
}

bool Measure::is_zero() const { return atoms_.empty() && !density_ && cantor_.empty(); }

double Measure::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.mass;
    if (density_) m += density_mass(*density_, density_->support().lo, density_->support().hi);
    for (const auto& c : cantor_) m += c.mass;
    return m;
}

double Measure::mass_between(double lo, double hi, bool include_lo, bool include_hi) const {
    if (hi < lo) return 0.0;
    if (colocated(lo, hi)) return include_lo && include_hi ? atom_mass_at(lo) : 0.0;
    double m = 0.0;
    for (const auto& a : atoms_) {
        const bool at_lo = colocated(a.location, lo);
        const bool at_hi = colocated(a.location, hi);
        if (at_lo || at_hi) {
            if ((at_lo && include_lo) || (at_hi && include_hi)) m += a.mass;
            continue;
        }
        if (a.location > lo && a.location < hi) m += a.mass;
    }
    if (density_) m += density_mass(*density_, lo, hi);
    for (const auto& c : cantor_) m += detail::cantor_mass_below(c, hi) - detail::cantor_mass_below(c, lo);
    return m;
}

double Measure::atom_mass_at(double x) const {
    for (const auto& a : atoms_) {
        if (colocated(a.location, x)) return a.mass;
    }
    return 0.0;
}

std::optional<Interval> Measure::support_hull() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& a : atoms_) {
        lo = std::min(lo, a.location);
        hi = std::max(hi, a.location);
    }
    if (density_) {
        lo = std::min(lo, density_->support().lo);
        hi = std::max(hi, density_->support().hi);
    }
    for (const auto& c : cantor_) {
        lo = std::min(lo, c.cell().lo);
        hi = std::max(hi, c.cell().hi);
    }
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
}

std::vector<double> Measure::feature_points() const {
    std::set<double> pts;
    for (const auto& a : atoms_) pts.insert(a.location);
    if (density_) pts.insert(density_->breakpoints().begin(), density_->breakpoints().end());
    for (const auto& c : cantor_) {
        pts.insert(c.cell().lo);
        pts.insert(c.cell().hi);
    }
    return {pts.begin(), pts.end()};
}

Measure Measure::scaled(double s) const {
    if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidInput("measures can only be scaled by finite s >= 0");
    if (s == 0.0) return Measure(domain_);
    Measure out(domain_);
    for (auto a : atoms_) out.atoms_.push_back({a.location, a.mass * s});
    if (density_) {
        std::vector<Polynomial> pieces;
        for (const auto& p : density_->pieces()) pieces.push_back(p * s);
        out.density_ = PiecewisePoly(density_->breakpoints(), std::move(pieces));
    }
    for (auto c : cantor_) {
        c.mass *= s;
        out.cantor_.push_back(c);
    }
    out.normalize();
    return out;
}

Measure Measure::restricted_left(double x, double atom_mass_at_x) const {
    Measure out(domain_);
    for (const auto& a : atoms_) {
        if (colocated(a.location, x)) {
            if (atom_mass_at_x > 0.0) out.atoms_.push_back({a.location, atom_mass_at_x});
        } else if (a.location < x) {
            out.atoms_.push_back(a);
        }
    }
    out.density_ = cut_density(density_, x, true);
    std::vector<CantorPart> right;
    for (const auto& c : cantor_) detail::split_cantor(c, x, out.cantor_, right);
    out.normalize();
    return out;
}

Measure Measure::restricted_right(double x, double atom_mass_at_x) const {
    Measure out(domain_);
    for (const auto& a : atoms_) {
        if (colocated(a.location, x)) {
            if (atom_mass_at_x > 0.0) out.atoms_.push_back({a.location, atom_mass_at_x});
        } else if (a.location > x) {
            out.atoms_.push_back(a);
        }
    }
    out.density_ = cut_density(density_, x, false);
    std::vector<CantorPart> left;
    for (const auto& c : cantor_) detail::split_cantor(c, x, left, out.cantor_);
    out.normalize();
    return out;
}

bool Measure::equals(const Measure& other, double tol) const {
    if (!(domain_ == other.domain_)) return false;
    if (atoms_.size() != other.atoms_.size()) return false;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!colocated(atoms_[i].location, other.atoms_[i].location)) return false;
        if (!close_rel(atoms_[i].mass, other.atoms_[i].mass, tol)) return false;
    }
    const auto pieces = refine(density_, other.density_);
    const double scale = density_scale(pieces);
    for (const auto& rp : pieces) {
        if (tol == 0.0) {
            if (!(rp.a == rp.b)) return false;
            continue;
        }
        for (double t : chebyshev_nodes(4, rp.iv)) {
            if (std::abs(rp.a(t) - rp.b(t)) > tol * std::max(1.0, scale)) return false;
        }
    }
    return detail::for_each_rate_region(cantor_, other.cantor_, [&](const CantorPart&, double ra, double rb) {
        return close_rel(ra, rb, tol);
    });
}

// --- Arithmetic and order -----------------------------------------------------

Measure add(const Measure& mu, const Measure& nu) {
    require_same_domain(mu, nu, "add");
    std::vector<Atom> atoms = mu.atoms();
    atoms.insert(atoms.end(), nu.atoms().begin(), nu.atoms().end());
    std::vector<Interval> ivs;
    std::vector<Polynomial> polys;
    for (const auto& rp : refine(mu.density(), nu.density())) {
        ivs.push_back(rp.iv);
        polys.push_back(rp.a + rp.b);
    }
    auto cantor = detail::combine_cantor(mu.cantor_parts(), nu.cantor_parts(), [](double a, double b) { return a + b; });
    return Measure(mu.domain(), std::move(atoms), build_density(ivs, polys), std::move(cantor));
}

namespace {

// Drops differences that are rounding noise relative to the larger operand.
double snapped_difference(double a, double b) {
    const double d = a - b;
    return d <= 1e-12 * std::max(std::abs(a), std::abs(b)) ? 0.0 : d;
}

Decision leq_cantor(const Measure& nu, const Measure& mu) {
    Decision out = Decision::yes;
    detail::for_each_rate_region(nu.cantor_parts(), mu.cantor_parts(), [&](const CantorPart& region, double rn, double rm) {
        if (rn <= rm * (1.0 + 1e-12)) return true;
        // nu has more mass here than mu carries on the same base. Only a
        // Cantor part of mu on a different base could still cover it.
        const Interval cell = region.cell();
        for (const auto& other : mu.cantor_parts()) {
            if (other.base == region.base) continue;
            const Interval oc = other.cell();
            if (std::min(oc.hi, cell.hi) > std::max(oc.lo, cell.lo)) {
                out = Decision::undecidable;
                return true;
            }
        }
        out = Decision::no;
        return false;
    });
    return out;
}

}  // namespace

Decision leq(const Measure& nu, const Measure& mu) {
    require_same_domain(nu, mu, "leq");
    for (const auto& a : nu.atoms()) {
        if (a.mass > mu.atom_mass_at(a.location) * (1.0 + 1e-12)) return Decision::no;
    }
    const auto pieces = refine(mu.density(), nu.density());
    const double eps = nonneg_eps(density_scale(pieces));
    for (const auto& rp : pieces) {
        if (!is_nonnegative_on(rp.a - rp.b, rp.iv, eps)) return Decision::no;
    }
    return leq_cantor(nu, mu);
}

Measure subtract(const Measure& mu, const Measure& nu) {
    require_same_domain(mu, nu, "subtract");
    if (leq(nu, mu) != Decision::yes) throw PreconditionFailure("subtract: the subtrahend is not below the measure");
    std::vector<Atom> atoms;
    for (const auto& a : mu.atoms()) {
        const double m = snapped_difference(a.mass, nu.atom_mass_at(a.location));
        if (m > 0.0) atoms.push_back({a.location, m});
    }
    std::vector<Interval> ivs;
    std::vector<Polynomial> polys;
    for (const auto& rp : refine(mu.density(), nu.density())) {
        ivs.push_back(rp.iv);
        polys.push_back(rp.a == rp.b ? Polynomial{} : rp.a - rp.b);
    }
    auto cantor = detail::combine_cantor(mu.cantor_parts(), nu.cantor_parts(), snapped_difference);
    return Measure(mu.domain(), std::move(atoms), build_density(ivs, polys), std::move(cantor));
}

namespace {

template <class Pick>
Measure lattice_op(const Measure& mu, const Measure& nu, Pick pick, bool take_max, const char* what) {
    require_same_domain(mu, nu, what);
    if (detail::has_unaligned_overlap(mu.cantor_parts(), nu.cantor_parts()))
        throw Undecidable(std::string(what) + ": Cantor parts overlap without a common base");
    std::vector<Atom> atoms;
    for (const auto& a : mu.atoms()) atoms.push_back({a.location, pick(a.mass, nu.atom_mass_at(a.location))});
    for (const auto& a : nu.atoms()) {
        if (mu.atom_mass_at(a.location) == 0.0) atoms.push_back({a.location, pick(a.mass, 0.0)});
    }
    std::erase_if(atoms, [](const Atom& a) { return a.mass == 0.0; });
    std::vector<Interval> ivs;
    std::vector<Polynomial> polys;
    for (const auto& rp : refine(mu.density(), nu.density())) {
        std::vector<double> cuts{rp.iv.lo};
        for (double r : sign_change_roots(rp.a - rp.b, rp.iv)) cuts.push_back(r);
        cuts.push_back(rp.iv.hi);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            const bool a_larger = rp.a(mid) >= rp.b(mid);
            ivs.push_back({cuts[i], cuts[i + 1]});
            polys.push_back(a_larger == take_max ? rp.a : rp.b);
        }
    }
    auto cantor = detail::combine_cantor(mu.cantor_parts(), nu.cantor_parts(), pick);
    return Measure(mu.domain(), std::move(atoms), build_density(ivs, polys), std::move(cantor));
}

}  // namespace

Measure lattice_join(const Measure& mu, const Measure& nu) {
    return lattice_op(mu, nu, [](double a, double b) { return std::max(a, b); }, true, "lattice_join");
}

Measure lattice_meet(const Measure& mu, const Measure& nu) {
    return lattice_op(mu, nu, [](double a, double b) { return std::min(a, b); }, false, "lattice_meet");
}

LebesgueParts lebesgue_split(const Measure& mu) {
    return {Measure(mu.domain(), {}, mu.density(), {}), Measure(mu.domain(), {}, std::nullopt, mu.cantor_parts()),
            Measure(mu.domain(), mu.atoms(), std::nullopt, {})};
}

namespace {

// Smallest t with t*m - v >= 0 on the piece; infinity if none.
double density_ratio_sup(const Polynomial& v, const Polynomial& m, Interval iv, double eps) {
    if (is_nonnegative_on(-v, iv, eps)) return 0.0;
    auto ok = [&](double t) { return is_nonnegative_on(m * t - v, iv, eps); };
    double hi = 1.0;
    while (!ok(hi)) {
        hi *= 2.0;
        if (hi > 1e15) return std::numeric_limits<double>::infinity();
    }
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ok(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace

RadonNikodymBound radon_nikodym_sup(const Measure& nu, const Measure& mu) {
    require_same_domain(nu, mu, "radon_nikodym_sup");
    RadonNikodymBound out;
    out.absolutely_continuous = true;
    for (const auto& a : nu.atoms()) {
        const double m = mu.atom_mass_at(a.location);
        if (m == 0.0) {
            out.absolutely_continuous = false;
            continue;
        }
        out.sup = std::max(out.sup, a.mass / m);
    }
    const auto pieces = refine(mu.density(), nu.density());
    const double eps = nonneg_eps(density_scale(pieces));
    for (const auto& rp : pieces) {
        if (is_nonnegative_on(-rp.b, rp.iv, eps)) continue;  // nu has no density here
        if (is_nonnegative_on(-rp.a, rp.iv, eps)) {
            out.absolutely_continuous = false;
            continue;
        }
        out.sup = std::max(out.sup, density_ratio_sup(rp.b, rp.a, rp.iv, eps));
    }
    detail::for_each_rate_region(nu.cantor_parts(), mu.cantor_parts(), [&](const CantorPart& region, double rn, double rm) {
        if (rn == 0.0) return true;
        if (rm > 0.0) {
            out.sup = std::max(out.sup, rn / rm);
            return true;
        }
        const Interval cell = region.cell();
        for (const auto& other : mu.cantor_parts()) {
            if (other.base == region.base) continue;
            const Interval oc = other.cell();
            if (std::min(oc.hi, cell.hi) > std::max(oc.lo, cell.lo)) {
                out.aligned = Decision::undecidable;
                return true;
            }
        }
        out.absolutely_continuous = false;
        return true;
    });
    return out;
}

// --- Distribution functions ---------------------------------------------------

DistributionFn::DistributionFn(Measure mu, double xi, Continuity continuity)
    : mu_(std::move(mu)), xi_(xi), continuity_(continuity) {
    if (!mu_.domain().contains(xi)) throw InvalidInput("distribution anchor must lie in the closed domain");
}

double DistributionFn::operator()(double x) const {
    if (continuity_ == Continuity::right) {
        if (x >= xi_) return mu_.mass_between(xi_, x, false, true);
        return -mu_.mass_between(x, xi_, false, true);
    }
    if (x > xi_) return mu_.mass_between(xi_, x, true, false);
    return -mu_.mass_between(x, xi_, true, false);
}

DistributionFn cdf(const Measure& mu, double xi, Continuity continuity) { return DistributionFn(mu, xi, continuity); }

}  // namespace nconvex

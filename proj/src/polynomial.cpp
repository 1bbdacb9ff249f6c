#include "nconvex/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "nconvex/error.hpp"

namespace nconvex {

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

// --- Polynomial -------------------------------------------------------------

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree, double c) {
    std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(i)];
}

double Polynomial::operator()(double x) const {
    double y = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) y = y * x + *it;
    return y;
}

double Polynomial::derivative_at(double x, int k) const {
    if (k == 0) return (*this)(x);
    const int deg = degree();
    double y = 0.0;
    for (int i = deg; i >= k; --i) {
        double falling = 1.0;
        for (int j = 0; j < k; ++j) falling *= (i - j);
        y = y * x + falling * coeffs_[static_cast<std::size_t>(i)];
    }
    return y;
}

Polynomial Polynomial::derivative(int k) const {
    if (k <= 0) return *this;
    if (degree() < k) return {};
    std::vector<double> out(coeffs_.size() - static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < out.size(); ++i) {
        double falling = 1.0;
        for (int j = 0; j < k; ++j) falling *= static_cast<double>(i + static_cast<std::size_t>(k) - static_cast<std::size_t>(j));
        out[i] = falling * coeffs_[i + static_cast<std::size_t>(k)];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative() const {
    if (is_zero()) return {};
    std::vector<double> out(coeffs_.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
    return Polynomial(std::move(out));
}

Polynomial Polynomial::recentered(double x0, double s) const {
    // Repeated synthetic division gives the Taylor coefficients at x0.
    std::vector<double> c = coeffs_;
    const std::size_t m = c.size();
    for (std::size_t k = 0; k + 1 < m; ++k) {
        for (std::size_t i = m - 1; i > k; --i) c[i - 1] += x0 * c[i];
    }
    double scale = 1.0;
    for (double& v : c) {
        v *= scale;
        scale *= s;
    }
    return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

// --- PiecewisePoly ----------------------------------------------------------

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints, std::vector<Polynomial> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InvalidInput("piecewise polynomial needs at least one piece");
    if (breakpoints_.size() != pieces_.size() + 1)
        throw InvalidInput("piecewise polynomial: expected " + std::to_string(pieces_.size() + 1) +
                           " breakpoints, got " + std::to_string(breakpoints_.size()));
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            throw InvalidInput("piecewise polynomial: breakpoints must be strictly increasing");
    }
    for (const auto& p : pieces_) {
        if (p.degree() > kMaxPieceDegree)
            throw InvalidInput("piecewise polynomial: piece degree exceeds " + std::to_string(kMaxPieceDegree));
    }
}

double PiecewisePoly::operator()(double x) const {
    if (x < breakpoints_.front() || x > breakpoints_.back()) return 0.0;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
    i = i == 0 ? 0 : i - 1;
    if (i >= pieces_.size()) i = pieces_.size() - 1;
    return pieces_[i](x);
}

// --- Interpolation ----------------------------------------------------------

Polynomial hermite_interpolate(std::span<const HermiteNode> nodes, int n) {
    if (nodes.empty()) throw InvalidInput("hermite_interpolate: no nodes");
    std::size_t total = 0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (nodes[j].values.empty()) throw InvalidInput("hermite_interpolate: node without values");
        if (!std::isfinite(nodes[j].x)) throw InvalidInput("hermite_interpolate: non-finite node");
        if (j > 0 && !(nodes[j - 1].x < nodes[j].x)) {
            throw InvalidInput(nodes[j - 1].x == nodes[j].x ? "hermite_interpolate: duplicate node"
                                                            : "hermite_interpolate: nodes must be increasing");
        }
        total += nodes[j].values.size();
    }
    if (n < 0 || total != static_cast<std::size_t>(n) + 1)
        throw ArityMismatch("hermite_interpolate: " + std::to_string(total) + " conditions for degree " +
                            std::to_string(n));

    // Confluent divided differences; repeated abscissae use derivative data.
    std::vector<double> z;
    std::vector<std::size_t> owner;
    for (std::size_t j = 0; j < nodes.size(); ++j)
        for (std::size_t i = 0; i < nodes[j].values.size(); ++i) {
            z.push_back(nodes[j].x);
            owner.push_back(j);
        }
    const std::size_t m = z.size();
    std::vector<double> col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = nodes[owner[i]].values[0];
    std::vector<double> newton{col[0]};
    for (std::size_t k = 1; k < m; ++k) {
        for (std::size_t i = 0; i + k < m; ++i) {
            if (owner[i] == owner[i + k]) {
                col[i] = nodes[owner[i]].values[k] / factorial(static_cast<int>(k));
            } else {
                col[i] = (col[i + 1] - col[i]) / (z[i + k] - z[i]);
            }
        }
        newton.push_back(col[0]);
    }
    // Expand the Newton form around the centre of the nodes, then shift back.
    const double c = 0.5 * (z.front() + z.back());
    Polynomial p = Polynomial::constant(newton.back());
    for (std::size_t k = m - 1; k-- > 0;) {
        p = p * Polynomial{c - z[k], 1.0} + Polynomial::constant(newton[k]);
    }
    return p.recentered(-c);
}

Polynomial lagrange_interpolate(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty()) throw InvalidInput("lagrange_interpolate: size mismatch");
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<HermiteNode> nodes;
    nodes.reserve(xs.size());
    for (std::size_t i : order) nodes.push_back({xs[i], {ys[i]}});
    return hermite_interpolate(nodes, static_cast<int>(xs.size()) - 1);
}

std::vector<double> chebyshev_nodes(int k, Interval iv) {
    std::vector<double> out;
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.5 * (iv.hi - iv.lo);
    for (int i = k - 1; i >= 0; --i)
        out.push_back(mid + half * std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * k)));
    return out;
}

// --- Roots and signs --------------------------------------------------------

namespace {

double bisect(const Polynomial& p, double lo, double hi, double flo) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> sign_change_roots(const Polynomial& p, Interval iv) {
    if (!(iv.lo < iv.hi)) throw InvalidInput("sign_change_roots: degenerate interval");
    std::vector<double> roots;
    if (p.degree() <= 0) return roots;
    if (p.degree() == 1) {
        const double r = -p.coeff(0) / p.coeff(1);
        if (r > iv.lo && r < iv.hi) roots.push_back(r);
        return roots;
    }
    std::vector<double> cuts{iv.lo};
    for (double c : sign_change_roots(p.derivative(), iv)) cuts.push_back(c);
    cuts.push_back(iv.hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double fl = p(cuts[i]);
        const double fr = p(cuts[i + 1]);
        if (fl == 0.0 && i > 0) {
            // Exact zero at an extremum of p: not a sign change.
            continue;
        }
        if ((fl < 0.0 && fr > 0.0) || (fl > 0.0 && fr < 0.0)) {
            roots.push_back(bisect(p, cuts[i], cuts[i + 1], fl));
        }
    }
    std::vector<double> out;
    for (double r : roots) {
        if (r <= iv.lo || r >= iv.hi) continue;
        if (!out.empty() && std::abs(r - out.back()) <= 1e-14 * std::max(1.0, std::abs(r))) continue;
        out.push_back(r);
    }
    return out;
}

double minimum_on(const Polynomial& p, Interval iv) {
    if (!(iv.lo < iv.hi)) throw InvalidInput("minimum_on: degenerate interval");
    double m = std::min(p(iv.lo), p(iv.hi));
    if (p.degree() >= 2) {
        for (double c : sign_change_roots(p.derivative(), iv)) m = std::min(m, p(c));
    }
    return m;
}

bool is_nonnegative_on(const Polynomial& p, Interval iv, double eps) {
    if (!(iv.lo < iv.hi)) throw InvalidInput("is_nonnegative_on: degenerate interval");
    if (p.is_zero()) return true;
    return minimum_on(p, iv) >= -eps;
}

// --- Kernel moments ---------------------------------------------------------

double truncated_power_moment(const Polynomial& density, Interval piece, double x, int p, KernelSide side) {
    if (!(piece.lo < piece.hi)) throw InvalidInput("kernel_moment: degenerate piece");
    if (density.is_zero()) return 0.0;
    double t0 = 0.0;
    double t1 = 0.0;
    Polynomial local;
    if (side == KernelSide::plus) {
        if (x <= piece.lo) return 0.0;
        // t = x - u, u in [lo, min(hi, x)].
        t0 = x - std::min(piece.hi, x);
        t1 = x - piece.lo;
        local = density.recentered(x, -1.0);
    } else {
        if (x >= piece.hi) return 0.0;
        // s = u - x, u in [max(lo, x), hi].
        t0 = std::max(piece.lo, x) - x;
        t1 = piece.hi - x;
        local = density.recentered(x, 1.0);
    }
    double sum = 0.0;
    const auto& r = local.coeffs();
    for (std::size_t k = 0; k < r.size(); ++k) {
        const int e = p + static_cast<int>(k) + 1;
        sum += r[k] * (std::pow(t1, e) - std::pow(t0, e)) / e;
    }
    return sum / factorial(p);
}

double kernel_moment(const Polynomial& density, Interval piece, double x, int n, KernelSide side) {
    const double v = truncated_power_moment(density, piece, x, n, side);
    if (side == KernelSide::plus) return v;
    return (n % 2 == 1) ? v : -v;  // (-1)^{n+1}
}

}  // namespace nconvex

#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace nconvex {

/// Closed interval [lo, hi]; also used for open domains (a, b) where noted.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains_open(double x) const { return lo < x && x < hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Real polynomial with ascending coefficients. Trailing zeros are stripped,
/// so the zero polynomial has no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);
    Polynomial(std::initializer_list<double> coeffs);

    static Polynomial constant(double c);
    static Polynomial monomial(int degree, double c = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int i) const;

    double operator()(double x) const;
    /// k-th derivative evaluated at x, without building the derivative.
    double derivative_at(double x, int k) const;

    Polynomial derivative(int k = 1) const;
    Polynomial antiderivative() const;
    /// Coefficients of q(t) = p(x0 + s t), i.e. Taylor data around x0 scaled by s.
    Polynomial recentered(double x0, double s = 1.0) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(double s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const { return *this * -1.0; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<double> coeffs_;
};

/// Piecewise polynomial on b_0 < ... < b_m; piece i covers [b_i, b_{i+1}).
/// Piece coefficients are in the global variable x, not a local one.
class PiecewisePoly {
public:
    static constexpr int kMaxPieceDegree = 3;

    PiecewisePoly(std::vector<double> breakpoints, std::vector<Polynomial> pieces);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<Polynomial>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    Interval piece_interval(std::size_t i) const { return {breakpoints_[i], breakpoints_[i + 1]}; }
    Interval support() const { return {breakpoints_.front(), breakpoints_.back()}; }

    /// Value at x; zero outside [b_0, b_m). The last piece is closed on the right.
    double operator()(double x) const;

private:
    std::vector<double> breakpoints_;
    std::vector<Polynomial> pieces_;
};

/// One Hermite interpolation node: values[i] is the prescribed i-th derivative.
struct HermiteNode {
    double x = 0.0;
    std::vector<double> values;
};

/// Unique p of degree <= n with p^(i)(x_j) = values_j[i]. Nodes must be strictly
/// increasing and carry n+1 conditions in total.
Polynomial hermite_interpolate(std::span<const HermiteNode> nodes, int n);

/// Interpolant through (x_i, y_i) with distinct abscissae.
Polynomial lagrange_interpolate(std::span<const double> xs, std::span<const double> ys);

/// The k Chebyshev points of the first kind mapped to [lo, hi], ascending.
std::vector<double> chebyshev_nodes(int k, Interval iv);

/// Default absolute tolerance of the nonnegativity test.
inline constexpr double kPolyEpsilon = 1e-12;

/// Real roots of p where p changes sign in [lo, hi], ascending. Found by a
/// derivative cascade: roots of p' split the interval into monotone runs,
/// each bisected where the sign changes.
std::vector<double> sign_change_roots(const Polynomial& p, Interval iv);

/// Minimum of p over [lo, hi] (endpoints plus interior critical points).
double minimum_on(const Polynomial& p, Interval iv);

/// True iff p(x) >= -eps for every x in [c, d].
bool is_nonnegative_on(const Polynomial& p, Interval iv, double eps = kPolyEpsilon);

enum class KernelSide { plus, minus };

/// Closed form of
///   plus:  \int_c^d (x-u)_+^n / n! density(u) du
///   minus: \int_c^d (-1)^{n+1} [-(x-u)]_+^n / n! density(u) du
/// over one density piece. n = 0 gives the indicator kernels.
double kernel_moment(const Polynomial& density, Interval piece, double x, int n, KernelSide side);

/// Unsigned variant used internally: \int (x-u)_+^p/p! or \int (u-x)_+^p/p!.
double truncated_power_moment(const Polynomial& density, Interval piece, double x, int p, KernelSide side);

double factorial(int n);
double binomial(int n, int k);

}  // namespace nconvex

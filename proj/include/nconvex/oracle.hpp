#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nconvex/polynomial.hpp"

namespace nconvex {

using Evaluator = std::function<double(double)>;

/// Newton triangle: column k holds the divided differences of order k.
class DividedDifferenceTable {
public:
    DividedDifferenceTable(std::vector<double> nodes, std::vector<double> values);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return columns_.front(); }
    int size() const { return static_cast<int>(nodes_.size()); }
    /// [x_i, ..., x_{i+k}] f.
    double entry(int k, int i) const;
    /// [x_0, ..., x_{m-1}] f.
    double top() const { return columns_.back().front(); }

private:
    std::vector<double> nodes_;
    std::vector<std::vector<double>> columns_;
};

/// Highest-order divided difference of the data.
double divided_difference(std::span<const double> points, std::span<const double> values);

/// sum_i |f_i| / prod_{j != i} |x_i - x_j|: the magnitude the divided difference
/// is formed from, and hence the scale of its rounding error.
double divided_difference_scale(std::span<const double> points, std::span<const double> values);

struct OracleOptions {
    int trials = 500;
    double tol = 1e-9;
    std::uint64_t seed = 42;
    /// Points worth sampling around (atoms, breakpoints, cell endpoints).
    std::vector<double> focus;
    /// If set, |f| in the scale is replaced by this magnitude (useful when f is
    /// a difference whose rounding error follows its operands).
    Evaluator magnitude;
};

struct ConvexityWitness {
    std::vector<double> points;
    std::vector<double> values;
    double divided_difference = 0.0;
    double scale = 0.0;
};

struct OracleVerdict {
    bool pass = true;
    int trials_run = 0;
    /// Most negative divided difference relative to its scale (0 if none negative).
    double worst_ratio = 0.0;
    std::optional<ConvexityWitness> witness;
};

/// Samples (n+2)-point grids in the open domain and checks that every
/// (n+1)-st divided difference is >= -tol * scale. Grids alternate between
/// uniform draws, Chebyshev clusters on random subintervals and clusters
/// around focus points. Deterministic for a given seed.
OracleVerdict check_n_convex(const Evaluator& f, int n, Interval domain, const OracleOptions& options = {});

/// Delta_{h_k} ... Delta_{h_1} f(x). Throws OutOfDomain if a point leaves the open domain.
double iterated_diff(const Evaluator& f, Interval domain, double x, std::span<const double> steps);

/// (Delta_h)^k f(x) from a forward-difference table; bitwise equal to
/// iterated_diff with k equal steps.
double equal_step_diff(const Evaluator& f, Interval domain, double x, double h, int k);

}  // namespace nconvex

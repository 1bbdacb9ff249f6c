#pragma once

#include <optional>
#include <vector>

#include "nconvex/spectral.hpp"

namespace nconvex {

struct SupportNode {
    double x = 0.0;
    int multiplicity = 1;
};

/// Nodes x_1 < ... < x_k inside the domain with multiplicities summing to n+1.
struct SupportSpec {
    std::vector<SupportNode> nodes;
};

/// Throws InvalidInput / ArityMismatch unless the nodes fit order n on the domain.
void validate(const SupportSpec& spec, int n, Interval domain);

/// Verdict on one interval I_j of the partition a < x_1 < ... < x_k < b.
struct IntervalVerdict {
    Interval iv;
    int expected_sign = 1;
    bool ok = true;
    /// Largest violation -sign * (f - p), relative to the scale.
    double max_violation = 0.0;
    std::optional<double> witness;
};

struct SupportResult {
    Polynomial p;
    std::vector<IntervalVerdict> intervals;
    /// max |f(x_j) - p(x_j)| / max(1, |f(x_j)|) over the nodes.
    double node_residual = 0.0;
    /// max(|f|, |p|) over the verification grid.
    double scale = 0.0;
    /// f >= p to the right of the last node.
    bool right_of_last = true;
    /// At nodes of even multiplicity the graph stays on the same side.
    bool even_nodes_same_side = true;
    bool pass = true;
};

struct SupportOptions {
    int grid = 300;
    double band = 1e-8;          ///< excluded half-width around nodes, times the domain length
    double sign_tol = 1e-8;      ///< allowed violation, times the scale
    double node_tol = 1e-9;
};

/// Hermite interpolation of the right derivatives f^(i)(x_j), i < l_j, then a
/// grid check of the sign chain (-1)^{n+1-(l_1+...+l_j)} of f - p on I_j.
SupportResult support_polynomial(const NConvexFn& f, const SupportSpec& spec, const SupportOptions& options = {});

/// Support of f - g (requires f >=_n g); the checks run on f - (g + p).
SupportResult relative_support(const NConvexFn& f, const NConvexFn& g, const SupportSpec& spec,
                               const SupportOptions& options = {});

/// Sign expected on I_j (j = 0..k).
int expected_sign(const SupportSpec& spec, int n, std::size_t j);

}  // namespace nconvex

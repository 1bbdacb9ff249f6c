#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nconvex/measure.hpp"
#include "nconvex/spectral.hpp"

namespace nconvex {

/// f >=_n g, i.e. f - g is n-convex: convexity_measure(g) <= convexity_measure(f).
Decision relative_convex(const NConvexFn& f, const NConvexFn& g);

enum class CriterionStatus { holds, fails, not_applicable, undecidable };

const char* to_string(CriterionStatus s);

struct CriterionResult {
    char label = 'a';
    std::string name;
    CriterionStatus status = CriterionStatus::not_applicable;
    std::string detail;
};

struct CriteriaReport {
    Decision verdict = Decision::undecidable;
    std::array<CriterionResult, 4> items;
};

struct CriteriaOptions {
    int grids = 500;
    double tol = 1e-9;
    std::uint64_t seed = 42;
};

/// The four equivalent descriptions of f >=_n g:
///  a) divided differences of f - g are nonnegative (sampled);
///  b) measure order of the convexity measures;
///  c) (f - g)^(n) is nondecreasing: jumps and increments across a partition
///     that separates atoms, density sign changes and Cantor cells;
///  d) d mu_g / d mu_f <= 1 (not applicable unless mu_g << mu_f).
/// Throws ConsistencyError if applicable items disagree on a decidable input.
CriteriaReport criteria_report(const NConvexFn& f, const NConvexFn& g, const CriteriaOptions& options = {});

/// Plain-text table of a report.
std::string format_report(const CriteriaReport& report);

/// Join / meet of the convexity measures, anchored at the midpoint, Q = 0.
/// The bound properties hold within the representable measure class.
NConvexFn lattice_max(const NConvexFn& f, const NConvexFn& g);
NConvexFn lattice_min(const NConvexFn& f, const NConvexFn& g);

struct PartsComparison {
    Decision cont = Decision::yes;
    Decision sing = Decision::yes;
    Decision pp = Decision::yes;
};

/// Relative convexity of the absolutely continuous, singular continuous and
/// pure point parts separately.
PartsComparison compare_by_parts(const NConvexFn& f, const NConvexFn& g);

/// Essential infimum of the density of the convexity measure over (a, b);
/// 0 when the density does not cover the whole domain.
double strong_modulus(const NConvexFn& f);

/// strong_modulus(f) >= c, for c > 0.
bool is_strongly_convex(const NConvexFn& f, double c);

}  // namespace nconvex

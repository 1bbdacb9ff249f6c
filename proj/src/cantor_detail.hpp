#pragma once

// Cantor-cell bookkeeping shared by measure.cpp and kernel.cpp.

#include <functional>
#include <vector>

#include "nconvex/measure.hpp"

namespace nconvex::detail {

/// Splits a part at x into cells wholly left / right of x. Exact while x sits
/// in a gap; once a straddling cell is narrower than a few ulps it is assigned
/// to the side holding its midpoint.
void split_cantor(const CantorPart& part, double x, std::vector<CantorPart>& left,
                  std::vector<CantorPart>& right);

/// Canonical form: cells sharing a base are merged into disjoint maximal
/// cells (sibling cells with equal rate fuse into their parent).
std::vector<CantorPart> normalize_cantor(const std::vector<CantorPart>& parts);

/// Per-base rate combination. `op(ra, rb)` returns the new rate of a region
/// where a has rate ra and b has rate rb. Result is normalized.
std::vector<CantorPart> combine_cantor(const std::vector<CantorPart>& a, const std::vector<CantorPart>& b,
                                       const std::function<double(double, double)>& op);

/// Visits every region of the common refinement of same-base cells with the
/// pair of rates (ra, rb). Returns false as soon as `visit` does.
bool for_each_rate_region(const std::vector<CantorPart>& a, const std::vector<CantorPart>& b,
                          const std::function<bool(const CantorPart& region, double ra, double rb)>& visit);

/// True if some cell of `a` overlaps (positive length) a cell of `b` with a
/// different base.
bool has_unaligned_overlap(const std::vector<CantorPart>& a, const std::vector<CantorPart>& b);

/// Mass of the part in (-inf, x].
double cantor_mass_below(const CantorPart& part, double x);

/// \int (x-u)_+^p/p! or \int (u-x)_+^p/p! against the part.
double cantor_truncated_power(const CantorPart& part, double x, int p, KernelSide side);

}  // namespace nconvex::detail

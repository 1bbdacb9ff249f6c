#include <cmath>

#include "cantor_detail.hpp"
#include "nconvex/error.hpp"
#include "nconvex/measure.hpp"

namespace nconvex {

namespace {

double atom_kernel(double u, double x, int p, KernelSide side, Continuity continuity) {
    const bool same = std::abs(u - x) <= Measure::kLocationTol * std::max(1.0, std::abs(u));
    if (p == 0) {
        if (same) return (side == KernelSide::plus) == (continuity == Continuity::right) ? 1.0 : 0.0;
        return side == KernelSide::plus ? (u < x ? 1.0 : 0.0) : (u > x ? 1.0 : 0.0);
    }
    const double d = side == KernelSide::plus ? x - u : u - x;
    return d > 0.0 ? std::pow(d, p) / factorial(p) : 0.0;
}

}  // namespace

double truncated_power_integral(const Measure& mu, double x, int p, KernelSide side, Continuity continuity) {
    if (p < 0) throw InvalidInput("truncated_power_integral: negative power");
    double sum = 0.0;
    for (const auto& a : mu.atoms()) sum += a.mass * atom_kernel(a.location, x, p, side, continuity);
    if (const auto& d = mu.density()) {
        for (std::size_t i = 0; i < d->size(); ++i) sum += truncated_power_moment(d->pieces()[i], d->piece_interval(i), x, p, side);
    }
    for (const auto& c : mu.cantor_parts()) sum += detail::cantor_truncated_power(c, x, p, side);
    return sum;
}

}  // namespace nconvex

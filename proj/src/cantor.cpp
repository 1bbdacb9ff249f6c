#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <tuple>

#include "cantor_detail.hpp"
#include "nconvex/error.hpp"

namespace nconvex {

double cantor_function(double t) {
    if (!(t > 0.0)) return 0.0;
    if (t >= 1.0) return 1.0;
    int e = 0;
    const double m = std::frexp(t, &e);  // t = m * 2^e, m in [0.5, 1)
    std::uint64_t mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
    int denom_bits = 53 - e;  // t = mant / 2^denom_bits exactly
    constexpr int kMaxBits = 120;
    if (denom_bits > kMaxBits) {
        const int shift = denom_bits - kMaxBits;
        mant = shift >= 64 ? 0 : (mant >> shift);
        denom_bits = kMaxBits;
    }
    __extension__ typedef unsigned __int128 u128;
    u128 num = mant;
    const u128 mask = (u128{1} << denom_bits) - 1;
    double value = 0.0;
    double weight = 0.5;
    // Inputs within a few ulps of a cell boundary or gap endpoint take the
    // value there; the band widens by 3 per digit and is dropped once coarse.
    double band = 8.0 * std::numeric_limits<double>::epsilon();
    for (int k = 0; k < 90 && num != 0; ++k) {
        if (band < 1e-3) {
            const double r = std::ldexp(static_cast<double>(num), -denom_bits);
            if (std::abs(r - 1.0) <= band) return value + 2.0 * weight;
            if (std::abs(r - 1.0 / 3.0) <= band || std::abs(r - 2.0 / 3.0) <= band) return value + weight;
            if (r <= band) return value;
        }
        band *= 3.0;
        num *= 3;
        const auto digit = static_cast<unsigned>(num >> denom_bits);
        num &= mask;
        if (digit == 1) return value + weight;
        if (digit == 2) value += weight;
        weight *= 0.5;
    }
    return value;
}

double cantor_moment(int k) {
    static const auto table = [] {
        std::array<double, 41> m{};
        m[0] = 1.0;
        for (int n = 1; n <= 40; ++n) {
            // U = U/3 or (U+2)/3 with probability 1/2 each.
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += binomial(n, j) * std::pow(2.0, n - j) * m[static_cast<std::size_t>(j)];
            const double third = std::pow(3.0, -n);
            m[static_cast<std::size_t>(n)] = 0.5 * third * s / (1.0 - third);
        }
        return m;
    }();
    if (k < 0 || k > 40) throw InvalidInput("cantor_moment: order out of range");
    return table[static_cast<std::size_t>(k)];
}

Interval CantorPart::cell() const {
    double lo = base.lo;
    double hi = base.hi;
    for (char c : path) {
        const double third = (hi - lo) / 3.0;
        if (c == 'L') {
            hi = lo + third;
        } else {
            lo = hi - third;
        }
    }
    return {lo, hi};
}

double CantorPart::rate() const { return std::ldexp(mass, depth()); }

namespace detail {

namespace {

using Key = std::pair<double, double>;

Key key_of(const Interval& b) { return {b.lo, b.hi}; }

using RateMap = std::map<std::string, double>;

std::map<Key, RateMap> group(const std::vector<CantorPart>& parts) {
    std::map<Key, RateMap> out;
    for (const auto& p : parts) out[key_of(p.base)][p.path] += p.rate();
    return out;
}

bool has_strict_descendant(const RateMap& m, const std::string& path) {
    auto it = m.upper_bound(path);
    return it != m.end() && it->first.size() > path.size() && it->first.compare(0, path.size(), path) == 0;
}

double own(const RateMap& m, const std::string& path) {
    auto it = m.find(path);
    return it == m.end() ? 0.0 : it->second;
}

template <class Visit>
bool walk(const RateMap& a, const RateMap& b, const std::string& path, double ra, double rb, Visit& visit) {
    ra += own(a, path);
    rb += own(b, path);
    if (!has_strict_descendant(a, path) && !has_strict_descendant(b, path)) return visit(path, ra, rb);
    return walk(a, b, path + 'L', ra, rb, visit) && walk(a, b, path + 'R', ra, rb, visit);
}

std::vector<CantorPart> merge_siblings(const Interval& base, std::map<std::string, double> leaves) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = leaves.begin(); it != leaves.end(); ++it) {
            const std::string& p = it->first;
            if (p.empty() || p.back() != 'L') continue;
            std::string sib = p;
            sib.back() = 'R';
            auto jt = leaves.find(sib);
            if (jt == leaves.end() || jt->second != it->second) continue;
            const double r = it->second;
            std::string parent = p.substr(0, p.size() - 1);
            leaves.erase(jt);
            leaves.erase(it);
            leaves[parent] = r;
            changed = true;
            break;
        }
    }
    std::vector<CantorPart> out;
    for (const auto& [path, r] : leaves) {
        CantorPart part{base, path, std::ldexp(r, -static_cast<int>(path.size()))};
        out.push_back(std::move(part));
    }
    return out;
}

void sort_parts(std::vector<CantorPart>& parts) {
    std::sort(parts.begin(), parts.end(), [](const CantorPart& x, const CantorPart& y) {
        const Interval cx = x.cell();
        const Interval cy = y.cell();
        return std::tie(cx.lo, cx.hi, x.base.lo, x.base.hi) < std::tie(cy.lo, cy.hi, y.base.lo, y.base.hi);
    });
}

}  // namespace

bool for_each_rate_region(const std::vector<CantorPart>& a, const std::vector<CantorPart>& b,
                          const std::function<bool(const CantorPart& region, double ra, double rb)>& visit) {
    auto ga = group(a);
    auto gb = group(b);
    std::map<Key, int> bases;
    for (const auto& [k, _] : ga) bases[k] = 1;
    for (const auto& [k, _] : gb) bases[k] = 1;
    static const RateMap empty;
    for (const auto& [k, _] : bases) {
        const RateMap& ma = ga.count(k) ? ga.at(k) : empty;
        const RateMap& mb = gb.count(k) ? gb.at(k) : empty;
        const Interval base{k.first, k.second};
        auto adapter = [&](const std::string& path, double ra, double rb) {
            CantorPart region{base, path, std::ldexp(1.0, -static_cast<int>(path.size()))};
            return visit(region, ra, rb);
        };
        if (!walk(ma, mb, std::string{}, 0.0, 0.0, adapter)) return false;
    }
    return true;
}

std::vector<CantorPart> combine_cantor(const std::vector<CantorPart>& a, const std::vector<CantorPart>& b,
                                       const std::function<double(double, double)>& op) {
    std::map<Key, std::map<std::string, double>> leaves;
    for_each_rate_region(a, b, [&](const CantorPart& region, double ra, double rb) {
        const double r = op(ra, rb);
        if (r > 0.0) leaves[key_of(region.base)][region.path] = r;
        return true;
    });
    std::vector<CantorPart> out;
    for (auto& [k, l] : leaves) {
        auto merged = merge_siblings(Interval{k.first, k.second}, std::move(l));
        out.insert(out.end(), merged.begin(), merged.end());
    }
    sort_parts(out);
    return out;
}

std::vector<CantorPart> normalize_cantor(const std::vector<CantorPart>& parts) {
    return combine_cantor(parts, {}, [](double ra, double) { return ra; });
}

bool has_unaligned_overlap(const std::vector<CantorPart>& a, const std::vector<CantorPart>& b) {
    for (const auto& pa : a) {
        const Interval ca = pa.cell();
        for (const auto& pb : b) {
            if (pa.base == pb.base) continue;
            const Interval cb = pb.cell();
            if (std::min(ca.hi, cb.hi) > std::max(ca.lo, cb.lo)) return true;
        }
    }
    return false;
}

void split_cantor(const CantorPart& part, double x, std::vector<CantorPart>& left, std::vector<CantorPart>& right) {
    const Interval c = part.cell();
    if (c.hi <= x) {
        left.push_back(part);
        return;
    }
    if (c.lo >= x) {
        right.push_back(part);
        return;
    }
    const double ulp = std::nextafter(std::max(std::abs(c.lo), std::abs(c.hi)), INFINITY) -
                       std::max(std::abs(c.lo), std::abs(c.hi));
    if (c.hi - c.lo <= 8.0 * ulp || part.depth() >= 60) {
        (0.5 * (c.lo + c.hi) <= x ? left : right).push_back(part);
        return;
    }
    split_cantor(CantorPart{part.base, part.path + 'L', 0.5 * part.mass}, x, left, right);
    split_cantor(CantorPart{part.base, part.path + 'R', 0.5 * part.mass}, x, left, right);
}

double cantor_mass_below(const CantorPart& part, double x) {
    const Interval c = part.cell();
    if (x < c.lo) return 0.0;
    if (x >= c.hi) return part.mass;
    // Evaluated in base coordinates so that every cell of a base shares one
    // Cantor function; the cell's own range starts at the dyadic value of its path.
    double start = 0.0;
    double step = 0.5;
    for (char ch : part.path) {
        if (ch == 'R') start += step;
        step *= 0.5;
    }
    const double t = (x - part.base.lo) / (part.base.hi - part.base.lo);
    const double share = std::ldexp(cantor_function(t) - start, part.depth());
    return part.mass * std::clamp(share, 0.0, 1.0);
}

namespace {

// Full-cell integral of (x-u)^p (plus, x >= hi) or (u-x)^p (minus, x <= lo),
// expanded around the near endpoint so every term is nonnegative. Uses the
// reflection symmetry of the Cantor measure.
double full_cell(double lo, double hi, double mass, double x, int p, KernelSide side) {
    const double w = hi - lo;
    const double gap = side == KernelSide::plus ? x - hi : lo - x;
    double s = 0.0;
    for (int j = 0; j <= p; ++j) s += binomial(p, j) * std::pow(gap, p - j) * std::pow(w, j) * cantor_moment(j);
    return mass * s / factorial(p);
}

double cell_power(double lo, double hi, double mass, double x, int p, KernelSide side, int depth) {
    if (side == KernelSide::plus) {
        if (x <= lo) return 0.0;
        if (x >= hi) return full_cell(lo, hi, mass, x, p, side);
    } else {
        if (x >= hi) return 0.0;
        if (x <= lo) return full_cell(lo, hi, mass, x, p, side);
    }
    const double w = hi - lo;
    if (depth >= 60 || w <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        const double d = side == KernelSide::plus ? x - mid : mid - x;
        return d > 0.0 ? mass * std::pow(d, p) / factorial(p) : 0.0;
    }
    const double third = w / 3.0;
    return cell_power(lo, lo + third, 0.5 * mass, x, p, side, depth + 1) +
           cell_power(hi - third, hi, 0.5 * mass, x, p, side, depth + 1);
}

}  // namespace

double cantor_truncated_power(const CantorPart& part, double x, int p, KernelSide side) {
    const Interval c = part.cell();
    if (p == 0) {
        const double below = cantor_mass_below(part, x);
        return side == KernelSide::plus ? below : part.mass - below;
    }
    return cell_power(c.lo, c.hi, part.mass, x, p, side, part.depth());
}

}  // namespace detail
}  // namespace nconvex

#include "commands.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nconvex/document.hpp"
#include "nconvex/monotone.hpp"
#include "nconvex/oracle.hpp"
#include "nconvex/order.hpp"
#include "nconvex/support.hpp"

namespace nconvex::cli {

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kMaxCliOrder = 4;

/// Input problem detected by the CLI layer itself.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

NConvexFn load(const std::string& path) {
    try {
        NConvexFn f = load_document(path);
        if (f.order() > kMaxCliOrder)
            throw UsageError(path + ": field /order: the command line supports n <= " + std::to_string(kMaxCliOrder));
        return f;
    } catch (const DocumentError& e) {
        std::string msg = path;
        if (e.line() > 0) msg += ":" + std::to_string(e.line());
        if (!e.field().empty()) msg += ": field " + e.field();
        throw UsageError(msg + ": " + e.what());
    }
}

struct Output {
    std::string format = "text";
    std::string csv;
    int grid = 101;
    double tol = 1e-9;

    bool as_json() const { return format == "json"; }
};

void add_format(CLI::App* sub, Output& out) {
    sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

std::vector<double> interior_grid(const Interval& d, int n) {
    if (n < 1) throw UsageError("--grid must be at least 1");
    std::vector<double> xs;
    for (int i = 1; i <= n; ++i) xs.push_back(d.lo + d.width() * i / (n + 1));
    return xs;
}

void write_csv(const std::string& path, const std::vector<double>& xs, const std::vector<double>& ys) {
    std::ofstream os(path);
    if (!os) throw UsageError("cannot write " + path);
    os << "x,value\n";
    for (std::size_t i = 0; i < xs.size(); ++i) os << format_number(xs[i]) << ',' << format_number(ys[i]) << '\n';
}

json measure_json(const Measure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms()) atoms.push_back({a.location, a.mass});
    json density = nullptr;
    if (const auto& d = m.density()) {
        json pieces = json::array();
        for (const auto& p : d->pieces()) pieces.push_back(p.coeffs().empty() ? std::vector<double>{0.0} : p.coeffs());
        density = {{"breakpoints", d->breakpoints()}, {"pieces", pieces}};
    }
    json cantor = json::array();
    for (const auto& c : m.cantor_parts()) {
        json e = {c.base.lo, c.base.hi, c.mass};
        if (!c.path.empty()) e.push_back(c.path);
        cantor.push_back(e);
    }
    return {{"atoms", atoms}, {"density", density}, {"cantor", cantor}};
}

std::string poly_text(const Polynomial& p) {
    std::string s = "[";
    const auto& c = p.coeffs();
    if (c.empty()) return "[0]";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + num(c[i]);
    return s + "]";
}

std::string measure_text(const Measure& m, const std::string& indent) {
    std::ostringstream os;
    if (m.is_zero()) {
        os << indent << "zero measure\n";
        return os.str();
    }
    for (const auto& a : m.atoms()) os << indent << "atom at " << num(a.location) << " mass " << num(a.mass) << '\n';
    if (const auto& d = m.density()) {
        for (std::size_t i = 0; i < d->size(); ++i) {
            const Interval iv = d->piece_interval(i);
            os << indent << "density on [" << num(iv.lo) << ", " << num(iv.hi) << "): " << poly_text(d->pieces()[i]) << '\n';
        }
    }
    for (const auto& c : m.cantor_parts()) {
        const Interval cell = c.cell();
        os << indent << "cantor on [" << num(cell.lo) << ", " << num(cell.hi) << "] mass " << num(c.mass);
        if (!c.path.empty()) os << " (cell " << c.path << " of [" << num(c.base.lo) << ", " << num(c.base.hi) << "])";
        os << '\n';
    }
    return os.str();
}

// --- commands ---------------------------------------------------------------

struct PointArgs {
    std::string file;
    std::vector<double> at;
    Output out;
};

int emit_values(const char* command, const std::vector<double>& xs, const std::vector<double>& ys, const Output& out,
                bool explicit_points) {
    if (!out.csv.empty()) write_csv(out.csv, xs, ys);
    if (out.as_json()) {
        json pts = json::array();
        for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({{"x", xs[i]}, {"value", ys[i]}});
        std::cout << json{{"command", command}, {"points", pts}}.dump(2) << '\n';
    } else if (explicit_points) {
        for (double y : ys) std::cout << num(y) << '\n';
    } else if (out.csv.empty()) {
        std::cout << "x,value\n";
        for (std::size_t i = 0; i < xs.size(); ++i) std::cout << format_number(xs[i]) << ',' << format_number(ys[i]) << '\n';
    } else {
        std::cout << "wrote " << xs.size() << " rows to " << out.csv << '\n';
    }
    return kExitOk;
}

int cmd_eval(const PointArgs& a) {
    const NConvexFn f = load(a.file);
    const auto xs = a.at.empty() ? interior_grid(f.domain(), a.out.grid) : a.at;
    std::vector<double> ys;
    for (double x : xs) ys.push_back(evaluate(f, x));
    return emit_values("eval", xs, ys, a.out, !a.at.empty());
}

int cmd_deriv(const PointArgs& a, int order, const std::string& side) {
    const NConvexFn f = load(a.file);
    const auto xs = a.at.empty() ? interior_grid(f.domain(), a.out.grid) : a.at;
    std::vector<double> ys;
    const Side s = side == "left" ? Side::left : Side::right;
    for (double x : xs) ys.push_back(derivative(f, order, x, s));
    return emit_values("deriv", xs, ys, a.out, !a.at.empty());
}

int cmd_classify(const std::string& file, const Output& out) {
    const NConvexFn f = load(file);
    const Case c = classify(f);
    if (out.as_json()) {
        std::cout << json{{"command", "classify"}, {"case", to_string(c)}, {"nth_derivative_at_a", nth_derivative_at_a(f)},
                          {"nth_derivative_at_b", nth_derivative_at_b(f)}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "case: " << to_string(c) << '\n'
                  << "f^(n)(a+) = " << num(nth_derivative_at_a(f)) << '\n'
                  << "f^(n)(b-) = " << num(nth_derivative_at_b(f)) << '\n';
    }
    return kExitOk;
}

int cmd_measure(const std::string& file, const Output& out) {
    const NConvexFn f = load(file);
    const Measure mu = convexity_measure(f);
    if (out.as_json()) {
        std::cout << json{{"command", "measure"}, {"measure", measure_json(mu)}, {"total_mass", mu.total_mass()}}.dump(2)
                  << '\n';
    } else {
        std::cout << "measure of " << f.order() << "-convexity (total mass " << num(mu.total_mass()) << "):\n"
                  << measure_text(mu, "  ");
    }
    return kExitOk;
}

int cmd_reanchor(const std::string& file, double xi, const Output& out) {
    const NConvexFn f = load(file);
    const NConvexFn g(re_anchor(f, xi));
    const bool measure_ok = convexity_measure(g).equals(convexity_measure(f), 0.0);
    double worst = 0.0;
    const auto xs = interior_grid(f.domain(), out.grid);
    double scale = 0.0;
    for (double x : xs) scale = std::max(scale, std::abs(evaluate(f, x)));
    for (double x : xs) {
        const double a = evaluate(f, x);
        const double b = evaluate(g, x);
        worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale, 1e-300}));
    }
    const bool ok = measure_ok && worst <= out.tol;
    if (out.as_json()) {
        std::cout << json{{"command", "reanchor"}, {"document", json::parse(serialize(g))},
                          {"measure_preserved", measure_ok}, {"max_relative_deviation", worst}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << serialize(g);
    }
    if (!ok) {
        std::cerr << "nconvex: re-anchored form deviates (measure preserved: " << (measure_ok ? "yes" : "no")
                  << ", max relative deviation " << num(worst) << ")\n";
        return kExitFailed;
    }
    return kExitOk;
}

int cmd_decompose_monotone(const std::string& file, const Output& out) {
    const NConvexFn f = load(file);
    const auto dec = decompose_multimonotone(f);
    const int n = f.order();
    const auto xs = interior_grid(f.domain(), out.grid);
    double worst = 0.0;
    for (double x : xs) {
        const double v = evaluate(f, x);
        const double s = evaluate(dec.m1, x) + evaluate(dec.m2, x) + dec.q(x);
        worst = std::max(worst, std::abs(v - s) / std::max(1.0, std::abs(v)));
    }
    bool ok = worst <= out.tol;
    std::string failure;
    const Interval d = f.domain();
    auto check_part = [&](const NConvexFn& part, Interval sub, Direction dir, const char* name) {
        if (!(sub.lo < sub.hi)) return;
        std::vector<double> grid;
        for (double x : xs) {
            if (sub.contains_open(x)) grid.push_back(x);
        }
        if (grid.empty()) return;
        const double sign = (dir == Direction::nonincreasing && n % 2 == 0) ? -1.0 : 1.0;
        const auto v = check_multimonotone([&](double x) { return sign * evaluate(part, x); }, n + 1, dir, sub, grid);
        if (!v.pass && ok) {
            ok = false;
            failure = std::string(name) + " fails the difference test at x = " + num(v.witness->x) + " (k = " +
                      std::to_string(v.witness->k) + ", value " + num(v.witness->value) + ")";
        }
    };
    if (!dec.m1.form().mu_minus.is_zero()) check_part(dec.m1, {d.lo, dec.xi}, Direction::nonincreasing, "M1");
    if (!dec.m2.form().mu_plus.is_zero()) check_part(dec.m2, {dec.xi, d.hi}, Direction::nondecreasing, "M2");
    if (out.as_json()) {
        std::cout << json{{"command", "decompose"}, {"kind", "monotone"}, {"xi", dec.xi}, {"c_n", dec.c_n},
                          {"q", dec.q.coeffs()}, {"m1_measure", measure_json(dec.m1.form().mu_minus)},
                          {"m2_measure", measure_json(dec.m2.form().mu_plus)}, {"max_resum_error", worst},
                          {"verified", ok}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "xi = " << num(dec.xi) << "\nc_n = " << num(dec.c_n) << "\nQ = " << poly_text(dec.q)
                  << "\nM1 (minus part):\n"
                  << measure_text(dec.m1.form().mu_minus, "  ") << "M2 (plus part):\n"
                  << measure_text(dec.m2.form().mu_plus, "  ") << "max re-sum error = " << num(worst) << '\n';
    }
    if (!ok) {
        std::cerr << "nconvex: decomposition check failed" << (failure.empty() ? "" : ": " + failure) << '\n';
        return kExitFailed;
    }
    return kExitOk;
}

int cmd_decompose_lebesgue(const std::string& file, const Output& out) {
    const NConvexFn f = load(file);
    const auto parts = lebesgue_parts(f);
    double worst = 0.0;
    for (double x : interior_grid(f.domain(), out.grid)) {
        const double v = evaluate(f, x);
        const double s = evaluate(parts.cont, x) + evaluate(parts.sing, x) + evaluate(parts.pp, x);
        worst = std::max(worst, std::abs(v - s) / std::max(1.0, std::abs(v)));
    }
    const bool ok = worst <= out.tol;
    if (out.as_json()) {
        std::cout << json{{"command", "decompose"}, {"kind", "lebesgue"}, {"cont", json::parse(serialize(parts.cont))},
                          {"sing", json::parse(serialize(parts.sing))}, {"pp", json::parse(serialize(parts.pp))},
                          {"max_resum_error", worst}}
                         .dump(2)
                  << '\n';
    } else {
        const std::pair<const char*, const NConvexFn*> named[] = {{"cont", &parts.cont}, {"sing", &parts.sing}, {"pp", &parts.pp}};
        for (const auto& [name, p] : named) {
            std::cout << name << ":\n" << measure_text(convexity_measure(*p), "  ");
        }
        std::cout << "max re-sum error = " << num(worst) << '\n';
    }
    if (!ok) {
        std::cerr << "nconvex: parts do not re-sum to f\n";
        return kExitFailed;
    }
    return kExitOk;
}

int cmd_compare(const std::string& ff, const std::string& fg, int grids, std::uint64_t seed, const Output& out) {
    const NConvexFn f = load(ff);
    const NConvexFn g = load(fg);
    CriteriaOptions opts;
    opts.grids = grids;
    opts.seed = seed;
    opts.tol = out.tol;
    const CriteriaReport r = criteria_report(f, g, opts);
    const PartsComparison parts = compare_by_parts(f, g);
    if (out.as_json()) {
        json items = json::array();
        for (const auto& it : r.items)
            items.push_back({{"label", std::string(1, it.label)}, {"name", it.name}, {"status", to_string(it.status)},
                             {"detail", it.detail}});
        std::cout << json{{"command", "compare"}, {"relation", to_string(r.verdict)}, {"criteria", items},
                          {"parts", {{"cont", to_string(parts.cont)}, {"sing", to_string(parts.sing)}, {"pp", to_string(parts.pp)}}}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "f ⪰_n g: " << to_string(r.verdict) << '\n' << format_report(r);
        std::cout << "  by parts: cont " << to_string(parts.cont) << ", sing " << to_string(parts.sing) << ", pp "
                  << to_string(parts.pp) << '\n';
    }
    return r.verdict == Decision::yes ? kExitOk : kExitFailed;
}

int cmd_lattice(const std::string& which, const std::string& ff, const std::string& fg, const Output& out) {
    const NConvexFn f = load(ff);
    const NConvexFn g = load(fg);
    const NConvexFn h = which == "max" ? lattice_max(f, g) : lattice_min(f, g);
    const bool bounds = which == "max"
                            ? relative_convex(h, f) == Decision::yes && relative_convex(h, g) == Decision::yes
                            : relative_convex(f, h) == Decision::yes && relative_convex(g, h) == Decision::yes;
    if (out.as_json()) {
        std::cout << json{{"command", "lattice"}, {"kind", which}, {"document", json::parse(serialize(h))},
                          {"bounds_hold", bounds}, {"scope", "extremal within the representable measure class"}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << serialize(h);
    }
    if (!bounds) {
        std::cerr << "nconvex: lattice " << which << " fails its bound property\n";
        return kExitFailed;
    }
    return kExitOk;
}

int cmd_strong(const std::string& file, std::optional<double> modulus, const Output& out) {
    const NConvexFn f = load(file);
    const double m = strong_modulus(f);
    bool ok = true;
    if (modulus) {
        if (!(*modulus > 0.0)) throw UsageError("--modulus must be positive");
        ok = is_strongly_convex(f, *modulus);
    }
    if (out.as_json()) {
        json j{{"command", "strong"}, {"modulus", m}};
        if (modulus) {
            j["requested"] = *modulus;
            j["strongly_convex"] = ok;
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "strong modulus: " << num(m) << '\n';
        if (modulus) std::cout << "strongly " << f.order() << "-convex with modulus " << num(*modulus) << ": " << (ok ? "true" : "false") << '\n';
    }
    return ok ? kExitOk : kExitFailed;
}

SupportSpec parse_nodes(const std::string& text) {
    SupportSpec spec;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("--nodes: expected x:l, got \"" + item + "\"");
        const std::string xs = item.substr(0, colon);
        const std::string ls = item.substr(colon + 1);
        SupportNode node;
        auto r1 = std::from_chars(xs.data(), xs.data() + xs.size(), node.x);
        auto r2 = std::from_chars(ls.data(), ls.data() + ls.size(), node.multiplicity);
        if (r1.ec != std::errc{} || r1.ptr != xs.data() + xs.size() || r2.ec != std::errc{} ||
            r2.ptr != ls.data() + ls.size())
            throw UsageError("--nodes: cannot parse \"" + item + "\"");
        spec.nodes.push_back(node);
    }
    if (spec.nodes.empty()) throw UsageError("--nodes: no nodes given");
    return spec;
}

int cmd_support(const std::string& file, const std::string& nodes, const std::string& relative, const Output& out) {
    const NConvexFn f = load(file);
    const SupportSpec spec = parse_nodes(nodes);
    SupportOptions opts;
    opts.grid = out.grid;
    SupportResult r;
    if (relative.empty()) {
        r = support_polynomial(f, spec, opts);
    } else {
        r = relative_support(f, load(relative), spec, opts);
    }
    if (out.as_json()) {
        json ivs = json::array();
        for (const auto& iv : r.intervals) {
            json j{{"interval", {iv.iv.lo, iv.iv.hi}}, {"expected_sign", iv.expected_sign}, {"ok", iv.ok},
                   {"max_violation", iv.max_violation}};
            if (iv.witness) j["witness"] = *iv.witness;
            ivs.push_back(j);
        }
        std::cout << json{{"command", "support"}, {"p", r.p.coeffs()}, {"intervals", ivs}, {"node_residual", r.node_residual},
                          {"right_of_last", r.right_of_last}, {"even_nodes_same_side", r.even_nodes_same_side},
                          {"pass", r.pass}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "p = " << poly_text(r.p) << '\n';
        for (std::size_t j = 0; j < r.intervals.size(); ++j) {
            const auto& iv = r.intervals[j];
            std::cout << "I_" << j << " (" << num(iv.iv.lo) << ", " << num(iv.iv.hi) << ") sign "
                      << (iv.expected_sign > 0 ? '+' : '-') << ": " << (iv.ok ? "ok" : "VIOLATED")
                      << " (max violation " << num(iv.max_violation) << ")";
            if (iv.witness) std::cout << " witness x = " << num(*iv.witness);
            std::cout << '\n';
        }
        std::cout << "node residual = " << num(r.node_residual) << '\n'
                  << "verdict: " << (r.pass ? "pass" : "fail") << '\n';
    }
    return r.pass ? kExitOk : kExitFailed;
}

int cmd_oracle(const std::string& file, int trials, std::uint64_t seed, const Output& out) {
    const NConvexFn f = load(file);
    OracleOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    opts.tol = out.tol;
    opts.focus = convexity_measure(f).feature_points();
    const auto v = check_n_convex([&](double x) { return evaluate(f, x); }, f.order(), f.domain(), opts);
    if (out.as_json()) {
        json j{{"command", "oracle"}, {"pass", v.pass}, {"trials", v.trials_run}, {"seed", seed}, {"worst_ratio", v.worst_ratio}};
        if (v.witness) j["witness"] = {{"points", v.witness->points}, {"values", v.witness->values},
                                       {"divided_difference", v.witness->divided_difference}, {"scale", v.witness->scale}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "oracle: " << (v.pass ? "pass" : "fail") << " (" << v.trials_run << " trials, seed " << seed
                  << ", worst relative divided difference " << num(v.worst_ratio) << ")\n";
        if (v.witness) {
            std::cout << "witness points:";
            for (double x : v.witness->points) std::cout << ' ' << num(x);
            std::cout << "\ndivided difference " << num(v.witness->divided_difference) << " with scale "
                      << num(v.witness->scale) << '\n';
        }
    }
    return v.pass ? kExitOk : kExitFailed;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Spectral representations of n-th order convex functions"};
    app.require_subcommand(1);
    std::function<int()> action;

    PointArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate f at points or on a grid");
    eval->add_option("file", eval_args.file, "Document (.ncx)")->required();
    eval->add_option("--at", eval_args.at, "Evaluation point (repeatable)");
    eval->add_option("--grid", eval_args.out.grid, "Interior grid size when --at is absent");
    eval->add_option("--csv", eval_args.out.csv, "Write x,value rows to this file");
    add_format(eval, eval_args.out);
    eval->callback([&] { action = [&] { return cmd_eval(eval_args); }; });

    PointArgs deriv_args;
    int deriv_order = 0;
    std::string deriv_side = "right";
    auto* deriv = app.add_subcommand("deriv", "Evaluate f^(m)");
    deriv->add_option("file", deriv_args.file, "Document (.ncx)")->required();
    deriv->add_option("--order", deriv_order, "Derivative order m <= n")->required();
    deriv->add_option("--at", deriv_args.at, "Evaluation point (repeatable)");
    deriv->add_option("--side", deriv_side, "One-sided value for m = n")->check(CLI::IsMember({"right", "left"}));
    deriv->add_option("--grid", deriv_args.out.grid, "Interior grid size when --at is absent");
    deriv->add_option("--csv", deriv_args.out.csv, "Write x,value rows to this file");
    add_format(deriv, deriv_args.out);
    deriv->callback([&] { action = [&] { return cmd_deriv(deriv_args, deriv_order, deriv_side); }; });

    std::string one_file;
    Output one_out;
    auto* cls = app.add_subcommand("classify", "Sign case of f^(n): A, B or C");
    cls->add_option("file", one_file, "Document (.ncx)")->required();
    add_format(cls, one_out);
    cls->callback([&] { action = [&] { return cmd_classify(one_file, one_out); }; });

    auto* meas = app.add_subcommand("measure", "Print the measure of n-convexity");
    meas->add_option("file", one_file, "Document (.ncx)")->required();
    add_format(meas, one_out);
    meas->callback([&] { action = [&] { return cmd_measure(one_file, one_out); }; });

    double xi = 0.0;
    auto* rea = app.add_subcommand("reanchor", "Re-anchor the representation at a new xi");
    rea->add_option("file", one_file, "Document (.ncx)")->required();
    rea->add_option("--xi", xi, "New anchor, a < xi < b")->required();
    rea->add_option("--grid", one_out.grid, "Verification grid size");
    rea->add_option("--tol", one_out.tol, "Relative tolerance of the pointwise check");
    add_format(rea, one_out);
    rea->callback([&] { action = [&] { return cmd_reanchor(one_file, xi, one_out); }; });

    std::string kind;
    auto* dec = app.add_subcommand("decompose", "Multiply monotone or Lebesgue decomposition");
    dec->add_option("kind", kind, "monotone | lebesgue")->required()->check(CLI::IsMember({"monotone", "lebesgue"}));
    dec->add_option("file", one_file, "Document (.ncx)")->required();
    dec->add_option("--grid", one_out.grid, "Verification grid size");
    dec->add_option("--tol", one_out.tol, "Relative tolerance of the re-sum check");
    add_format(dec, one_out);
    dec->callback([&] {
        action = [&] { return kind == "monotone" ? cmd_decompose_monotone(one_file, one_out) : cmd_decompose_lebesgue(one_file, one_out); };
    });

    std::string second_file;
    int grids = 500;
    std::uint64_t seed = 42;
    auto* cmp = app.add_subcommand("compare", "Decide f >=_n g with the four criteria");
    cmp->add_option("f", one_file, "Document for f")->required();
    cmp->add_option("g", second_file, "Document for g")->required();
    cmp->add_option("--grids", grids, "Divided-difference grids for criterion a)");
    cmp->add_option("--seed", seed, "Random seed");
    cmp->add_option("--tol", one_out.tol, "Relative tolerance");
    add_format(cmp, one_out);
    cmp->callback([&] { action = [&] { return cmd_compare(one_file, second_file, grids, seed, one_out); }; });

    auto* lat = app.add_subcommand("lattice", "Lattice max or min of two functions");
    lat->add_option("kind", kind, "max | min")->required()->check(CLI::IsMember({"max", "min"}));
    lat->add_option("f", one_file, "Document for f")->required();
    lat->add_option("g", second_file, "Document for g")->required();
    add_format(lat, one_out);
    lat->callback([&] { action = [&] { return cmd_lattice(kind, one_file, second_file, one_out); }; });

    std::optional<double> modulus;
    auto* str = app.add_subcommand("strong", "Strong n-convexity modulus");
    str->add_option("file", one_file, "Document (.ncx)")->required();
    str->add_option("--modulus", modulus, "Check strong n-convexity with this modulus");
    add_format(str, one_out);
    str->callback([&] { action = [&] { return cmd_strong(one_file, modulus, one_out); }; });

    std::string nodes;
    std::string relative;
    auto* sup = app.add_subcommand("support", "Support polynomial of a given type");
    sup->add_option("file", one_file, "Document (.ncx)")->required();
    sup->add_option("--nodes", nodes, "Nodes and multiplicities, \"x:l,x:l\"")->required();
    sup->add_option("--relative", relative, "Support of f relative to this g");
    sup->add_option("--grid", one_out.grid, "Verification points per interval")->default_val(300);
    add_format(sup, one_out);
    sup->callback([&] { action = [&] { return cmd_support(one_file, nodes, relative, one_out); }; });

    int trials = 500;
    auto* orc = app.add_subcommand("oracle", "Divided-difference check of n-convexity");
    orc->add_option("file", one_file, "Document (.ncx)")->required();
    orc->add_option("--trials", trials, "Number of sampled grids");
    orc->add_option("--seed", seed, "Random seed");
    orc->add_option("--tol", one_out.tol, "Relative tolerance");
    add_format(orc, one_out);
    orc->callback([&] { action = [&] { return cmd_oracle(one_file, trials, seed, one_out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "nconvex: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Undecidable& e) {
        std::cerr << "nconvex: undecidable: " << e.what() << '\n';
        return kExitFailed;
    } catch (const PreconditionFailure& e) {
        std::cerr << "nconvex: precondition failure: " << e.what() << '\n';
        return kExitFailed;
    } catch (const ConsistencyError& e) {
        std::cerr << "nconvex: internal consistency error: " << e.what() << '\n';
        return kExitFailed;
    } catch (const Error& e) {
        std::cerr << "nconvex: invalid input: " << e.what() << '\n';
        return kExitInvalid;
    }
}

}  // namespace nconvex::cli

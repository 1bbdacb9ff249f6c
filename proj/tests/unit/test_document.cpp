#include <cstring>
#include <string>

#include "doctest.h"
#include "nconvex/document.hpp"
#include "testkit.hpp"

using namespace nconvex;

namespace {

std::string fixture(const std::string& name) { return std::string(NCONVEX_GOLDEN_DIR) + "/fixtures/" + name; }

struct Expected {
    const char* file;
    int line;
    const char* field;
};

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("format_number") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-2.5) == "-2.5");
    CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
    CHECK(std::stod(format_number(1e-300)) == 1e-300);
}

TEST_CASE("fixtures parse") {
    const NConvexFn abs_fn = load_document(fixture("abs.ncx"));
    CHECK(abs_fn.order() == 1);
    CHECK(evaluate(abs_fn, 0.5) == 0.5);
    CHECK(evaluate(abs_fn, -0.25) == 0.25);
    const NConvexFn spline = load_document(fixture("spline.ncx"));
    CHECK(evaluate(spline, 0.5) == doctest::Approx(0.5 * 0.5 * 0.5 / 6.0));
    for (const char* name : {"atom_density.ncx", "atom.ncx", "atom_right.ncx", "strong.ncx", "gap.ncx", "cantor.ncx", "cubic.ncx"})
        CHECK_NOTHROW(load_document(fixture(name)));
}

TEST_CASE("malformed documents report line and field") {
    const Expected cases[] = {
        {"bad_syntax.ncx", 5, ""},
        {"bad_unknown_field.ncx", 8, "/comment"},
        {"bad_negative_mass.ncx", 6, "/mu_plus"},
        {"bad_side.ncx", 4, "/xi"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.file);
        try {
            load_document(fixture(c.file));
            FAIL("expected a DocumentError");
        } catch (const DocumentError& e) {
            CHECK(e.line() == c.line);
            CHECK(e.field() == c.field);
        }
    }
    // Order 5 is a valid document; only the command line caps it.
    CHECK(load_document(fixture("bad_order.ncx")).order() == 5);
    CHECK_THROWS_AS(load_document(fixture("missing.ncx")), DocumentError);
    CHECK_THROWS_AS(parse_document(R"({"order": 1})"), DocumentError);
    CHECK_THROWS_AS(parse_document(R"({"order": 1.5, "domain": [0, 1], "xi": 0.5,
        "mu_minus": {"atoms": [], "density": null, "cantor": []},
        "mu_plus": {"atoms": [], "density": null, "cantor": []}, "poly": [0]})"),
                    DocumentError);
    CHECK_THROWS_AS(parse_document(R"({"order": 1, "domain": [1, 0], "xi": 0.5,
        "mu_minus": {"atoms": [], "density": null, "cantor": []},
        "mu_plus": {"atoms": [], "density": null, "cantor": []}, "poly": [0]})"),
                    DocumentError);
    CHECK_THROWS_AS(parse_document(R"({"order": 1, "domain": [0, 1], "xi": 0.5,
        "mu_minus": {"atoms": [], "density": null, "cantor": []},
        "mu_plus": {"atoms": [], "density": null, "cantor": []}, "poly": [0, 0, 0]})"),
                    DocumentError);
}

TEST_CASE("serialize round-trips bitwise") {
    for (const char* name : {"abs.ncx", "spline.ncx", "cantor.ncx", "cubic.ncx", "gap.ncx"}) {
        CAPTURE(name);
        const NConvexFn f = load_document(fixture(name));
        const std::string once = serialize(f);
        const NConvexFn g = parse_document(once);
        CHECK(serialize(g) == once);
    }
    testkit::Rng rng(109);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = testkit::random_form(rng);
        const NConvexFn f(s);
        const NConvexFn g = parse_document(serialize(f));
        CHECK(serialize(g) == serialize(f));
        for (int i = 1; i <= 101; ++i) {
            const double x = s.domain.lo + s.domain.width() * i / 102.0;
            CHECK(same_bits(evaluate(f, x), evaluate(g, x)));
        }
    }
}

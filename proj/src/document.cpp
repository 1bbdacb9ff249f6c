#include "nconvex/document.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace nconvex {

using json = nlohmann::json;

DocumentError::DocumentError(int line, std::string field, const std::string& message)
    : InvalidInput(message), line_(line), field_(std::move(field)) {}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        throw DocumentError(line_of(pointer), pointer, message);
    }

    const json& field(const json& obj, const std::string& pointer, const char* key) const {
        auto it = obj.find(key);
        if (it == obj.end()) fail(pointer, std::string("missing field \"") + key + "\"");
        return *it;
    }

    void only_fields(const json& obj, const std::string& pointer, std::initializer_list<const char*> allowed) const {
        if (!obj.is_object()) fail(pointer, "expected an object");
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!ok.count(it.key())) fail(pointer + "/" + it.key(), "unknown field \"" + it.key() + "\"");
        }
    }

    double number(const json& v, const std::string& pointer) const {
        if (!v.is_number()) fail(pointer, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(pointer, "number is not finite");
        return d;
    }

    std::vector<double> numbers(const json& v, const std::string& pointer) const {
        if (!v.is_array()) fail(pointer, "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], pointer + "/" + std::to_string(i)));
        return out;
    }

    Measure measure(const json& v, const std::string& pointer, Interval domain) const {
        only_fields(v, pointer, {"atoms", "density", "cantor"});
        std::vector<Atom> atoms;
        const json& ja = field(v, pointer, "atoms");
        if (!ja.is_array()) fail(pointer + "/atoms", "expected an array of [location, mass] pairs");
        for (std::size_t i = 0; i < ja.size(); ++i) {
            const std::string p = pointer + "/atoms/" + std::to_string(i);
            const auto pair = numbers(ja[i], p);
            if (pair.size() != 2) fail(p, "atom must be [location, mass]");
            atoms.push_back({pair[0], pair[1]});
        }
        std::optional<PiecewisePoly> density;
        const json& jd = field(v, pointer, "density");
        if (!jd.is_null()) {
            const std::string p = pointer + "/density";
            only_fields(jd, p, {"breakpoints", "pieces"});
            auto bps = numbers(field(jd, p, "breakpoints"), p + "/breakpoints");
            const json& jp = field(jd, p, "pieces");
            if (!jp.is_array()) fail(p + "/pieces", "expected an array of coefficient arrays");
            std::vector<Polynomial> pieces;
            for (std::size_t i = 0; i < jp.size(); ++i) {
                const std::string pp = p + "/pieces/" + std::to_string(i);
                auto c = numbers(jp[i], pp);
                if (c.empty() || c.size() > PiecewisePoly::kMaxPieceDegree + 1)
                    fail(pp, "a density piece has 1 to 4 coefficients");
                pieces.emplace_back(std::move(c));
            }
            try {
                density = PiecewisePoly(std::move(bps), std::move(pieces));
            } catch (const InvalidInput& e) {
                fail(p, e.what());
            }
        }
        std::vector<CantorPart> cantor;
        const json& jc = field(v, pointer, "cantor");
        if (!jc.is_array()) fail(pointer + "/cantor", "expected an array of [c, d, mass] entries");
        for (std::size_t i = 0; i < jc.size(); ++i) {
            const std::string p = pointer + "/cantor/" + std::to_string(i);
            const json& e = jc[i];
            if (!e.is_array() || (e.size() != 3 && e.size() != 4)) fail(p, "Cantor part must be [c, d, mass] or [c, d, mass, path]");
            CantorPart part{{number(e[0], p + "/0"), number(e[1], p + "/1")}, "", number(e[2], p + "/2")};
            if (e.size() == 4) {
                if (!e[3].is_string()) fail(p + "/3", "Cantor path must be a string of 'L'/'R'");
                part.path = e[3].get<std::string>();
            }
            cantor.push_back(std::move(part));
        }
        try {
            return Measure(domain, std::move(atoms), std::move(density), std::move(cantor));
        } catch (const InvalidInput& e) {
            fail(pointer, e.what());
        }
    }

    int line_of_offset(std::size_t offset) const {
        offset = std::min(offset, text_.size());
        return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
    }

private:
    // Best-effort source line of a JSON pointer: follows the object keys in
    // order through the text.
    int line_of(const std::string& pointer) const {
        std::size_t pos = 0;
        std::size_t start = 1;
        bool found = false;
        while (start <= pointer.size()) {
            std::size_t end = pointer.find('/', start);
            if (end == std::string::npos) end = pointer.size();
            const std::string token = pointer.substr(start, end - start);
            start = end + 1;
            if (token.empty() || std::isdigit(static_cast<unsigned char>(token[0]))) continue;
            const std::size_t hit = text_.find("\"" + token + "\"", pos);
            if (hit == std::string_view::npos) break;
            pos = hit;
            found = true;
        }
        return found ? line_of_offset(pos) : 1;
    }

    std::string_view text_;
};

}  // namespace

NConvexFn parse_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        Reader r(text);
        throw DocumentError(r.line_of_offset(e.byte == 0 ? 0 : e.byte - 1), "", std::string("syntax error: ") + e.what());
    }
    Reader r(text);
    r.only_fields(doc, "", {"order", "domain", "xi", "mu_minus", "mu_plus", "poly"});
    const json& jn = r.field(doc, "", "order");
    if (!jn.is_number_integer()) r.fail("/order", "order must be an integer");
    const long long n = jn.get<long long>();
    if (n < 1 || n > 64) r.fail("/order", "order must be between 1 and 64");
    const auto dom = r.numbers(r.field(doc, "", "domain"), "/domain");
    if (dom.size() != 2) r.fail("/domain", "domain must be [a, b]");
    if (!(dom[0] < dom[1])) r.fail("/domain", "domain must satisfy a < b");
    const Interval domain{dom[0], dom[1]};
    const double xi = r.number(r.field(doc, "", "xi"), "/xi");
    Measure mu_minus = r.measure(r.field(doc, "", "mu_minus"), "/mu_minus", domain);
    Measure mu_plus = r.measure(r.field(doc, "", "mu_plus"), "/mu_plus", domain);
    auto q = r.numbers(r.field(doc, "", "poly"), "/poly");
    if (q.empty() || static_cast<long long>(q.size()) > n + 1) r.fail("/poly", "poly must hold 1 to n+1 coefficients");
    SpectralForm form{static_cast<int>(n), domain, xi, std::move(mu_minus), std::move(mu_plus), Polynomial(std::move(q))};
    try {
        return NConvexFn(std::move(form));
    } catch (const InvalidInput& e) {
        r.fail("/xi", e.what());
    }
}

NConvexFn load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DocumentError(0, "", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

namespace {

void write_numbers(std::ostringstream& os, const std::vector<double>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_number(v[i]);
    os << ']';
}

void write_measure(std::ostringstream& os, const Measure& m) {
    os << "{\n    \"atoms\": [";
    for (std::size_t i = 0; i < m.atoms().size(); ++i) {
        os << (i ? ", " : "");
        write_numbers(os, {m.atoms()[i].location, m.atoms()[i].mass});
    }
    os << "],\n    \"density\": ";
    if (const auto& d = m.density()) {
        os << "{\"breakpoints\": ";
        write_numbers(os, d->breakpoints());
        os << ", \"pieces\": [";
        for (std::size_t i = 0; i < d->size(); ++i) {
            os << (i ? ", " : "");
            auto c = d->pieces()[i].coeffs();
            if (c.empty()) c.push_back(0.0);
            write_numbers(os, c);
        }
        os << "]}";
    } else {
        os << "null";
    }
    os << ",\n    \"cantor\": [";
    for (std::size_t i = 0; i < m.cantor_parts().size(); ++i) {
        const auto& c = m.cantor_parts()[i];
        os << (i ? ", " : "") << '[' << format_number(c.base.lo) << ", " << format_number(c.base.hi) << ", "
           << format_number(c.mass);
        if (!c.path.empty()) os << ", \"" << c.path << '"';
        os << ']';
    }
    os << "]\n  }";
}

}  // namespace

std::string serialize(const NConvexFn& f) {
    const auto& s = f.form();
    std::ostringstream os;
    os << "{\n  \"order\": " << s.n << ",\n  \"domain\": ";
    write_numbers(os, {s.domain.lo, s.domain.hi});
    os << ",\n  \"xi\": " << format_number(s.xi) << ",\n  \"mu_minus\": ";
    write_measure(os, s.mu_minus);
    os << ",\n  \"mu_plus\": ";
    write_measure(os, s.mu_plus);
    os << ",\n  \"poly\": ";
    auto q = s.q.coeffs();
    if (q.empty()) q.push_back(0.0);
    write_numbers(os, q);
    os << "\n}\n";
    return os.str();
}

}  // namespace nconvex

#pragma once

#include <string>
#include <string_view>

#include "nconvex/error.hpp"
#include "nconvex/spectral.hpp"

namespace nconvex {

/// Malformed `.ncx` document. `line` is 1-based (0 when unknown); `field` is a
/// JSON pointer to the offending value (empty for syntax errors).
class DocumentError : public InvalidInput {
public:
    DocumentError(int line, std::string field, const std::string& message);
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

/// Parses the JSON document format:
///   { "order": n, "domain": [a, b], "xi": x,
///     "mu_minus": { "atoms": [[loc, mass], ...],
///                   "density": { "breakpoints": [...], "pieces": [[c0, .., c3], ...] } | null,
///                   "cantor": [[c, d, mass], ...] },
///     "mu_plus": { ... }, "poly": [q0, ..., qn] }
/// Cantor entries may carry a fourth element, a string of 'L'/'R' selecting a
/// sub-cell of [c, d]. Unknown fields are rejected.
NConvexFn parse_document(std::string_view text);

/// Reads and parses a file; errors carry the file name in their message.
NConvexFn load_document(const std::string& path);

/// Document text with every number written with 17 significant digits.
std::string serialize(const NConvexFn& f);

/// Shortest-form-independent decimal with 17 significant digits.
std::string format_number(double v);

}  // namespace nconvex

#ifndef CRJET_DSL_HPP
#define CRJET_DSL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crjet/series.hpp"

namespace crjet {

struct SourceLocation {
    int line = 1;
    int column = 1;
    friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

struct Diagnostic {
    SourceLocation location;
    std::string message;
};

std::string format(const Diagnostic& d);

class ParseError : public std::runtime_error {
public:
    ParseError(SourceLocation loc, const std::string& message)
        : std::runtime_error(format(Diagnostic{loc, message})), location_(loc), message_(message) {}
    const SourceLocation& location() const { return location_; }
    const std::string& message() const { return message_; }

private:
    SourceLocation location_;
    std::string message_;
};

// Series literal grammar:
//   series ::= ['+'|'-'] term (('+'|'-') term)*
//   term   ::= factor ('*' factor)*
//   factor ::= number ['/' number] | 'i' | ident ['^' nat] | '(' constant series ')'
// Terms of total degree above `order` are dropped with a warning.
TruncatedSeries parse_series(std::string_view text, const Variables& vars, int order,
                             std::vector<Diagnostic>* warnings = nullptr, SourceLocation origin = {});

Rational parse_rational(std::string_view text, SourceLocation origin = {});

enum class DocumentKind { Surface, Map, Ode };

const char* to_string(DocumentKind kind);

// A parsed input file: surface (Q or phi), map (F, G) or singular ODE (p, q).
struct Document {
    DocumentKind kind = DocumentKind::Surface;
    Variables vars;
    int order = 0;
    std::map<std::string, TruncatedSeries> series;
    std::vector<TruncatedSeries> p;
    std::optional<int> gamma;
    std::vector<Rational> theta;

    // Not part of value equality.
    std::vector<Diagnostic> warnings;
    std::map<std::string, SourceLocation> locations;

    const TruncatedSeries& at(const std::string& key) const;
    bool has(const std::string& key) const { return series.count(key) != 0; }

    friend bool operator==(const Document& a, const Document& b) {
        return a.kind == b.kind && a.vars == b.vars && a.order == b.order && a.series == b.series && a.p == b.p &&
               a.gamma == b.gamma && a.theta == b.theta;
    }
};

inline constexpr int kDefaultGeometryOrder = 12;
inline constexpr int kDefaultOdeOrder = 24;

// `order_override`, when set, replaces the declared truncation order; series
// literals are exact polynomials, so raising the order loses nothing.
Document parse_document(std::string_view text, std::optional<int> order_override = std::nullopt);
std::string print_document(const Document& doc);

}  // namespace crjet

#endif  // CRJET_DSL_HPP

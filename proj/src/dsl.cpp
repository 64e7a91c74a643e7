#include "crjet/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

#include "crjet/series_io.hpp"

namespace crjet {

std::string format(const Diagnostic& d) {
    return std::to_string(d.location.line) + ":" + std::to_string(d.location.column) + ": " + d.message;
}

const char* to_string(DocumentKind kind) {
    switch (kind) {
        case DocumentKind::Surface: return "surface";
        case DocumentKind::Map: return "map";
        case DocumentKind::Ode: return "ode";
    }
    return "unknown";
}

const TruncatedSeries& Document::at(const std::string& key) const {
    auto it = series.find(key);
    if (it == series.end()) throw std::out_of_range("document has no field '" + key + "'");
    return it->second;
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    SourceLocation loc;
};

class Lexer {
public:
    Lexer(std::string_view text, SourceLocation origin) : text_(text), loc_(origin) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            const SourceLocation start = loc_;
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, "", start});
                return out;
            }
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::string num;
                bool dot = false;
                while (pos_ < text_.size() &&
                       (std::isdigit(static_cast<unsigned char>(text_[pos_])) || (text_[pos_] == '.' && !dot))) {
                    dot = dot || text_[pos_] == '.';
                    num += text_[pos_];
                    advance();
                }
                if (num == ".") throw ParseError(start, "malformed number");
                out.push_back({Tok::Number, num, start});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string id;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    id += text_[pos_];
                    advance();
                }
                out.push_back({Tok::Ident, id, start});
                continue;
            }
            Tok kind;
            switch (c) {
                case '+': kind = Tok::Plus; break;
                case '-': kind = Tok::Minus; break;
                case '*': kind = Tok::Star; break;
                case '/': kind = Tok::Slash; break;
                case '^': kind = Tok::Caret; break;
                case '(': kind = Tok::LParen; break;
                case ')': kind = Tok::RParen; break;
                case ',': kind = Tok::Comma; break;
                default: {
                    std::string shown = (static_cast<unsigned char>(c) < 32 || static_cast<unsigned char>(c) > 126)
                                            ? "byte " + std::to_string(static_cast<unsigned char>(c))
                                            : std::string("'") + c + "'";
                    throw ParseError(start, "unexpected character " + shown);
                }
            }
            out.push_back({kind, std::string(1, c), start});
            advance();
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++loc_.line;
            loc_.column = 1;
        } else {
            ++loc_.column;
        }
        ++pos_;
    }
    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                       text_[pos_] == '\r'))
            advance();
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    SourceLocation loc_;
};

// GMP reads a leading 0 as an octal prefix.
Integer decimal_integer(const std::string& digits) {
    const auto first = digits.find_first_not_of('0');
    return first == std::string::npos ? Integer(0) : Integer(digits.substr(first));
}

Rational number_value(const Token& t) {
    const auto dot = t.text.find('.');
    if (dot == std::string::npos) return Rational(decimal_integer(t.text));
    std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
    if (digits.empty()) throw ParseError(t.loc, "malformed number");
    Integer den = 1;
    for (std::size_t k = dot + 1; k < t.text.size(); ++k) den *= 10;
    return Rational(decimal_integer(digits), den);
}

class SeriesParser {
public:
    SeriesParser(std::vector<Token> tokens, const Variables& vars, int order, std::vector<Diagnostic>* warnings)
        : toks_(std::move(tokens)), vars_(vars), order_(order), warnings_(warnings) {}

    TruncatedSeries parse_all() {
        TruncatedSeries s = parse_sum();
        if (peek().kind != Tok::End) throw ParseError(peek().loc, "unexpected '" + peek().text + "'");
        return s;
    }

    TruncatedSeries parse_sum() {
        // Exponents are validated against kMaxExponent; accumulate terms by monomial.
        TruncatedSeries s(vars_, order_);
        bool negative = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) negative = take().kind == Tok::Minus;
        add_term(s, negative);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            negative = take().kind == Tok::Minus;
            add_term(s, negative);
        }
        return s;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

    void add_term(TruncatedSeries& s, bool negative) {
        const SourceLocation start = peek().loc;
        ComplexRational coeff(1);
        MultiIndex mono(static_cast<int>(vars_.size()));
        parse_factor(coeff, mono);
        while (peek().kind == Tok::Star) {
            take();
            parse_factor(coeff, mono);
        }
        if (negative) coeff = -coeff;
        if (mono.degree() > order_) {
            if (warnings_)
                warnings_->push_back({start, "term of degree " + std::to_string(mono.degree()) +
                                                 " exceeds declared order " + std::to_string(order_) +
                                                 "; coefficient dropped"});
            return;
        }
        s.add_to(mono, coeff);
    }

    void parse_factor(ComplexRational& coeff, MultiIndex& mono) {
        const Token t = take();
        switch (t.kind) {
            case Tok::Number: {
                Rational v = number_value(t);
                if (peek().kind == Tok::Slash) {
                    take();
                    const Token d = take();
                    if (d.kind != Tok::Number) throw ParseError(d.loc, "expected denominator after '/'");
                    const Rational den = number_value(d);
                    if (den.is_zero()) throw ParseError(d.loc, "zero denominator");
                    v /= den;
                }
                coeff *= ComplexRational(v);
                return;
            }
            case Tok::Ident: {
                if (t.text == "i") {
                    coeff *= ComplexRational::i();
                    return;
                }
                auto it = std::find(vars_.begin(), vars_.end(), t.text);
                if (it == vars_.end()) throw ParseError(t.loc, "unknown variable '" + t.text + "'");
                int e = 1;
                if (peek().kind == Tok::Caret) {
                    take();
                    const Token n = take();
                    if (n.kind != Tok::Number || n.text.find('.') != std::string::npos)
                        throw ParseError(n.loc, "expected a nonnegative integer exponent");
                    if (n.text.size() > 3 || std::stoi(n.text) > kMaxExponent)
                        throw ParseError(n.loc, "exponent too large");
                    e = std::stoi(n.text);
                }
                const int idx = static_cast<int>(it - vars_.begin());
                if (mono[idx] + e > kMaxExponent) throw ParseError(t.loc, "exponent too large");
                mono.set(idx, mono[idx] + e);
                return;
            }
            case Tok::LParen: {
                if (++depth_ > 64) throw ParseError(t.loc, "parentheses nested too deeply");
                TruncatedSeries inner = parse_sum();
                --depth_;
                const Token close = take();
                if (close.kind != Tok::RParen) throw ParseError(close.loc, "expected ')'");
                for (const auto& [m, c] : inner.terms())
                    if (m.degree() > 0) throw ParseError(t.loc, "parenthesized expression must be a constant");
                coeff *= inner.constant_term();
                return;
            }
            case Tok::End: throw ParseError(t.loc, "unexpected end of input");
            default: throw ParseError(t.loc, "unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Variables& vars_;
    int order_;
    std::vector<Diagnostic>* warnings_;
    int depth_ = 0;
};

}  // namespace

TruncatedSeries parse_series(std::string_view text, const Variables& vars, int order,
                             std::vector<Diagnostic>* warnings, SourceLocation origin) {
    SeriesParser parser(Lexer(text, origin).run(), vars, order, warnings);
    return parser.parse_all();
}

Rational parse_rational(std::string_view text, SourceLocation origin) {
    const TruncatedSeries s = parse_series(text, {}, 0, nullptr, origin);
    const ComplexRational c = s.constant_term();
    if (!c.is_real()) throw ParseError(origin, "expected a real rational");
    return c.real();
}

namespace {

struct RawField {
    std::string value;
    SourceLocation value_loc;
    SourceLocation key_loc;
};

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"vars", "order", "Q", "phi", "F", "G", "gamma", "p", "q", "theta"};
    return keys;
}

std::map<std::string, RawField> split_fields(std::string_view text) {
    std::map<std::string, RawField> fields;
    std::string* current = nullptr;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        const auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) {
            if (end == text.size()) break;
            continue;
        }
        if (first > 0 && current) {
            // Indented continuation of the previous value.
            *current += "\n";
            *current += std::string(line);
            if (end == text.size()) break;
            continue;
        }
        const auto colon = line.find(':');
        const SourceLocation key_loc{line_no, static_cast<int>(first) + 1};
        if (colon == std::string_view::npos) throw ParseError(key_loc, "expected 'key: value'");
        std::string key(line.substr(first, colon - first));
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        if (!known_keys().count(key)) throw ParseError(key_loc, "unknown key '" + key + "'");
        if (fields.count(key)) throw ParseError(key_loc, "duplicate key '" + key + "'");
        RawField f;
        f.key_loc = key_loc;
        auto start = colon + 1;
        while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
        f.value_loc = {line_no, static_cast<int>(start) + 1};
        f.value = std::string(line.substr(start));
        current = &fields.emplace(key, std::move(f)).first->second.value;
        if (end == text.size()) break;
    }
    return fields;
}

int parse_int_field(const RawField& f, const std::string& key, int min_value) {
    std::string v = f.value;
    v.erase(0, v.find_first_not_of(" \t\r\n"));
    v.erase(v.find_last_not_of(" \t\r\n") + 1);
    if (v.empty() || v.size() > 4 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(f.value_loc, "'" + key + "' expects a nonnegative integer");
    const int n = std::stoi(v);
    if (n < min_value) throw ParseError(f.value_loc, "'" + key + "' must be at least " + std::to_string(min_value));
    return n;
}

Variables parse_vars(const RawField& f) {
    Variables vars;
    std::istringstream is(f.value);
    std::string name;
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    while (is >> name) {
        if (!std::regex_match(name, ident)) throw ParseError(f.value_loc, "invalid variable name '" + name + "'");
        if (name == "i") throw ParseError(f.value_loc, "'i' is reserved for the imaginary unit");
        if (std::find(vars.begin(), vars.end(), name) != vars.end())
            throw ParseError(f.value_loc, "duplicate variable '" + name + "'");
        vars.push_back(name);
    }
    if (vars.empty()) throw ParseError(f.value_loc, "'vars' must list at least one variable");
    if (static_cast<int>(vars.size()) > kMaxVariables) throw ParseError(f.value_loc, "too many variables");
    return vars;
}

// Splits on top-level commas, keeping the location of each piece.
std::vector<std::pair<std::string, SourceLocation>> split_list(const std::string& value, SourceLocation loc) {
    std::vector<std::pair<std::string, SourceLocation>> out;
    std::string piece;
    SourceLocation piece_loc = loc;
    SourceLocation cur = loc;
    int depth = 0;
    for (char c : value) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth <= 0) {
            out.emplace_back(piece, piece_loc);
            piece.clear();
            ++cur.column;
            piece_loc = cur;
            continue;
        }
        piece += c;
        if (c == '\n') {
            ++cur.line;
            cur.column = 1;
        } else {
            ++cur.column;
        }
    }
    out.emplace_back(piece, piece_loc);
    return out;
}

std::vector<Rational> parse_theta(const RawField& f) {
    std::string v = f.value;
    SourceLocation loc = f.value_loc;
    const auto open = v.find('[');
    if (open != std::string::npos) {
        const auto close = v.rfind(']');
        if (close == std::string::npos || close < open) throw ParseError(f.value_loc, "unbalanced '[' in theta");
        if (v.find_first_not_of(" \t\r\n", close + 1) != std::string::npos)
            throw ParseError(f.value_loc, "unexpected text after ']'");
        loc.column += static_cast<int>(open) + 1;
        v = v.substr(open + 1, close - open - 1);
    }
    std::vector<Rational> out;
    if (v.find_first_not_of(" \t\r\n") == std::string::npos) return out;
    for (const auto& [piece, piece_loc] : split_list(v, loc)) out.push_back(parse_rational(piece, piece_loc));
    return out;
}

// Replaces identifiers theta1..thetam (and bare theta when m == 1) by their values.
std::string substitute_theta(const std::string& text, const std::vector<Rational>& theta) {
    if (theta.empty()) return text;
    std::string out;
    std::size_t k = 0;
    while (k < text.size()) {
        if ((std::isalpha(static_cast<unsigned char>(text[k])) || text[k] == '_') &&
            (k == 0 || !(std::isalnum(static_cast<unsigned char>(text[k - 1])) || text[k - 1] == '_'))) {
            std::size_t e = k;
            while (e < text.size() && (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '_')) ++e;
            const std::string id = text.substr(k, e - k);
            std::optional<std::size_t> which;
            if (id == "theta" && theta.size() == 1) which = 0;
            if (id.rfind("theta", 0) == 0 && id.size() > 5 && id.size() < 9 &&
                std::all_of(id.begin() + 5, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                const std::size_t n = std::stoul(id.substr(5));
                if (n >= 1 && n <= theta.size()) which = n - 1;
            }
            if (which) {
                out += "(" + theta[*which].str() + ")";
            } else {
                out += id;
            }
            k = e;
            continue;
        }
        out += text[k++];
    }
    return out;
}

}  // namespace

Document parse_document(std::string_view text, std::optional<int> order_override) {
    const auto fields = split_fields(text);
    Document doc;
    auto field = [&](const std::string& key) -> const RawField* {
        auto it = fields.find(key);
        return it == fields.end() ? nullptr : &it->second;
    };
    for (const auto& [key, f] : fields) doc.locations[key] = f.key_loc;

    const bool surface = field("Q") || field("phi");
    const bool map = field("F") || field("G");
    const bool ode = field("gamma") || field("p") || field("q");
    if (int(surface) + int(map) + int(ode) != 1)
        throw ParseError({1, 1}, "cannot determine document kind (expected exactly one of Q/phi, F/G, gamma/p/q)");

    if (surface) {
        doc.kind = DocumentKind::Surface;
        if (field("Q") && field("phi")) throw ParseError(field("phi")->key_loc, "give either 'Q' or 'phi', not both");
    } else if (map) {
        doc.kind = DocumentKind::Map;
        for (const char* key : {"F", "G"})
            if (!field(key)) throw ParseError({1, 1}, std::string("map document is missing '") + key + "'");
    } else {
        doc.kind = DocumentKind::Ode;
        for (const char* key : {"gamma", "vars", "p", "q"})
            if (!field(key)) throw ParseError({1, 1}, std::string("ode document is missing '") + key + "'");
    }
    for (const auto& [key, f] : fields) {
        const bool ok = key == "vars" || key == "order" ||
                        (doc.kind == DocumentKind::Surface && (key == "Q" || key == "phi")) ||
                        (doc.kind == DocumentKind::Map && (key == "F" || key == "G")) ||
                        (doc.kind == DocumentKind::Ode && (key == "gamma" || key == "p" || key == "q" || key == "theta"));
        if (!ok) throw ParseError(f.key_loc, "key '" + key + "' not allowed in a " + to_string(doc.kind) + " document");
    }

    if (const RawField* f = field("vars")) {
        doc.vars = parse_vars(*f);
    } else if (doc.kind == DocumentKind::Surface) {
        doc.vars = field("Q") ? Variables{"z", "x", "t"} : Variables{"z", "x", "s"};
    } else {
        doc.vars = {"z", "w"};
    }
    const std::size_t expected_arity = doc.kind == DocumentKind::Surface ? 3 : doc.kind == DocumentKind::Map ? 2 : 0;
    if (expected_arity && doc.vars.size() != expected_arity)
        throw ParseError(field("vars")->value_loc, "expected " + std::to_string(expected_arity) + " variables");
    if (doc.kind == DocumentKind::Ode && doc.vars.size() < 2)
        throw ParseError(field("vars")->value_loc, "ode needs 'vars: x y1 [y2 ...]'");

    doc.order = doc.kind == DocumentKind::Ode ? kDefaultOdeOrder : kDefaultGeometryOrder;
    if (const RawField* f = field("order")) doc.order = parse_int_field(*f, "order", 0);
    if (order_override) doc.order = *order_override;
    if (doc.order > kMaxExponent) throw ParseError(field("order") ? field("order")->value_loc : SourceLocation{1, 1}, "order too large");

    if (doc.kind == DocumentKind::Ode) {
        doc.gamma = parse_int_field(*field("gamma"), "gamma", 0);
        if (const RawField* f = field("theta")) doc.theta = parse_theta(*f);
        const RawField& pf = *field("p");
        for (const auto& [piece, loc] : split_list(substitute_theta(pf.value, doc.theta), pf.value_loc))
            doc.p.push_back(parse_series(piece, doc.vars, doc.order, &doc.warnings, loc));
        if (doc.p.size() != doc.vars.size() - 1)
            throw ParseError(pf.value_loc, "p must list one series per unknown (" + std::to_string(doc.vars.size() - 1) + ")");
        const RawField& qf = *field("q");
        doc.series["q"] = parse_series(substitute_theta(qf.value, doc.theta), doc.vars, doc.order, &doc.warnings, qf.value_loc);
        auto require_real = [&](const TruncatedSeries& s, SourceLocation loc) {
            for (const auto& [m, c] : s.terms())
                if (!c.is_real()) throw ParseError(loc, "ode coefficients must be real");
        };
        for (const auto& s : doc.p) require_real(s, pf.value_loc);
        require_real(doc.series["q"], qf.value_loc);
        return doc;
    }
    for (const char* key : {"Q", "phi", "F", "G"})
        if (const RawField* f = field(key))
            doc.series[key] = parse_series(f->value, doc.vars, doc.order, &doc.warnings, f->value_loc);
    return doc;
}

std::string print_document(const Document& doc) {
    std::ostringstream os;
    auto vars_line = [&] {
        os << "vars:";
        for (const auto& v : doc.vars) os << ' ' << v;
        os << '\n';
    };
    if (doc.kind == DocumentKind::Ode) {
        os << "gamma: " << doc.gamma.value_or(0) << '\n';
        vars_line();
        os << "order: " << doc.order << '\n';
        if (!doc.theta.empty()) {
            os << "theta: [";
            for (std::size_t k = 0; k < doc.theta.size(); ++k) os << (k ? ", " : "") << doc.theta[k].str();
            os << "]\n";
        }
        os << "p: ";
        for (std::size_t k = 0; k < doc.p.size(); ++k) os << (k ? ", " : "") << to_dsl(doc.p[k]);
        os << '\n';
        os << "q: " << to_dsl(doc.at("q")) << '\n';
        return os.str();
    }
    vars_line();
    os << "order: " << doc.order << '\n';
    for (const char* key : {"Q", "phi", "F", "G"})
        if (doc.has(key)) os << key << ": " << to_dsl(doc.at(key)) << '\n';
    return os.str();
}

}  // namespace crjet

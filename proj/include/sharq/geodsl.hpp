#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "sharq/conic.hpp"

namespace sharq::geodsl {

struct SourcePos {
    int line = 1;
    int col = 1;
    size_t offset = 0;
};

struct Diagnostic {
    enum class Kind { syntax, use_before_decl, redeclaration, arity_mismatch };
    Kind kind;
    SourcePos pos;
    std::string message;

    std::string str() const {
        const char* label = "syntax error";
        switch (kind) {
            case Kind::syntax: label = "syntax error"; break;
            case Kind::use_before_decl: label = "use before declaration"; break;
            case Kind::redeclaration: label = "redeclaration"; break;
            case Kind::arity_mismatch: label = "arity mismatch"; break;
        }
        return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.col) + ": " +
               label + ": " + message;
    }
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(Diagnostic d) : std::runtime_error(d.str()), diag_(std::move(d)) {}
    const Diagnostic& diagnostic() const { return diag_; }

private:
    Diagnostic diag_;
};

enum class ValueKind { point, line, conic };

inline const char* kind_name(ValueKind k) {
    switch (k) {
        case ValueKind::point: return "point";
        case ValueKind::line: return "line";
        case ValueKind::conic: return "conic";
    }
    return "?";
}

struct PointDecl {
    enum class Ctor { coords, meet, infpoint, harmonic };
    std::string name;
    Ctor ctor;
    Rational x, y;                  // coords form
    std::vector<std::string> args;  // construction forms

    bool operator==(const PointDecl&) const = default;
};

struct LineDecl {
    enum class Ctor { join, omega, coeffs, polar };
    std::string name;
    Ctor ctor;
    Rational c0, c1, c2;            // coeffs form
    std::vector<std::string> args;

    bool operator==(const LineDecl&) const = default;
};

struct ConicDecl {
    std::string name;
    std::vector<std::string> args;  // exactly five points

    bool operator==(const ConicDecl&) const = default;
};

struct AssertStmt {
    enum class Pred { collinear, concurrent, on, parallel, equal, harmonic };
    Pred pred;
    std::vector<std::string> args;

    bool operator==(const AssertStmt&) const = default;
};

struct Statement {
    SourcePos pos;
    std::variant<PointDecl, LineDecl, ConicDecl, AssertStmt> node;
};

/// Parsed script; equality is structural (source positions are not compared),
/// so parsing the canonical printing of a script yields an equal script.
struct Script {
    std::vector<Statement> statements;
    std::vector<size_t> source_map;  // byte offset of each statement

    bool operator==(const Script& o) const {
        if (statements.size() != o.statements.size()) return false;
        for (size_t i = 0; i < statements.size(); ++i)
            if (statements[i].node != o.statements[i].node) return false;
        return true;
    }
};

namespace lex {

struct Token {
    enum class Kind { ident, number, punct, end };
    Kind kind;
    std::string text;
    SourcePos pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (src[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            size_t j = i;
            while (j < src.size() && src[j] != '\n') ++j;
            advance(j - i);
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        SourcePos pos{line, col, i};
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            size_t j = i;
            while (j < src.size() && ((src[j] >= 'a' && src[j] <= 'z') ||
                                      (src[j] >= 'A' && src[j] <= 'Z') ||
                                      (src[j] >= '0' && src[j] <= '9') || src[j] == '_'))
                ++j;
            out.push_back({Token::Kind::ident, std::string(src.substr(i, j - i)), pos});
            advance(j - i);
            continue;
        }
        if ((c >= '0' && c <= '9') ||
            (c == '-' && i + 1 < src.size() && src[i + 1] >= '0' && src[i + 1] <= '9')) {
            size_t j = i + 1;
            while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
            if (j < src.size() && src[j] == '/' && j + 1 < src.size() && src[j + 1] >= '0' &&
                src[j + 1] <= '9') {
                ++j;
                while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
            }
            out.push_back({Token::Kind::number, std::string(src.substr(i, j - i)), pos});
            advance(j - i);
            continue;
        }
        if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == ';' || c == ':' ||
            c == '=') {
            out.push_back({Token::Kind::punct, std::string(1, c), pos});
            advance(1);
            continue;
        }
        throw ParseError(Diagnostic{Diagnostic::Kind::syntax, pos,
                                    std::string("unexpected character '") + c + "'"});
    }
    out.push_back({Token::Kind::end, "", SourcePos{line, col, src.size()}});
    return out;
}

}  // namespace lex

namespace detail {

inline const std::vector<std::string>& reserved_words() {
    static const std::vector<std::string> words = {
        "point",    "line",     "conic",      "assert", "omega", "meet",  "join",
        "infpoint", "harmonic", "polar",      "through", "collinear", "concurrent",
        "on",       "parallel", "equal"};
    return words;
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(lex::tokenize(src)) {}

    Script parse() {
        Script script;
        while (!at_end()) {
            size_t offset = peek().pos.offset;
            script.statements.push_back(statement());
            script.source_map.push_back(offset);
        }
        return script;
    }

private:
    std::vector<lex::Token> tokens_;
    size_t idx_ = 0;
    std::map<std::string, ValueKind> symbols_;

    const lex::Token& peek() const { return tokens_[idx_]; }
    bool at_end() const { return peek().kind == lex::Token::Kind::end; }
    const lex::Token& take() { return tokens_[idx_++]; }

    [[noreturn]] void syntax(const SourcePos& pos, const std::string& expected) const {
        throw ParseError(Diagnostic{Diagnostic::Kind::syntax, pos, "expected " + expected});
    }

    void expect_punct(const char* p) {
        if (peek().kind != lex::Token::Kind::punct || peek().text != p)
            syntax(peek().pos, std::string("'") + p + "'");
        take();
    }

    bool is_reserved(const std::string& word) const {
        const auto& words = reserved_words();
        return std::find(words.begin(), words.end(), word) != words.end();
    }

    std::string keyword() {
        if (peek().kind != lex::Token::Kind::ident)
            syntax(peek().pos, "'point', 'line', 'conic' or 'assert'");
        return take().text;
    }

    std::string fresh_identifier() {
        if (peek().kind != lex::Token::Kind::ident || is_reserved(peek().text))
            syntax(peek().pos, "an identifier");
        const lex::Token& tok = take();
        if (symbols_.count(tok.text))
            throw ParseError(Diagnostic{Diagnostic::Kind::redeclaration, tok.pos,
                                        "'" + tok.text + "' is already declared"});
        return tok.text;
    }

    std::string used_identifier(ValueKind want) {
        if (peek().kind != lex::Token::Kind::ident || is_reserved(peek().text))
            syntax(peek().pos, std::string("a ") + kind_name(want) + " identifier");
        const lex::Token& tok = take();
        auto it = symbols_.find(tok.text);
        if (it == symbols_.end())
            throw ParseError(Diagnostic{Diagnostic::Kind::use_before_decl, tok.pos,
                                        "'" + tok.text + "' is not declared"});
        if (it->second != want)
            syntax(tok.pos, std::string("a ") + kind_name(want) + " identifier ('" + tok.text +
                                "' is a " + kind_name(it->second) + ")");
        return tok.text;
    }

    Rational rational() {
        if (peek().kind != lex::Token::Kind::number) syntax(peek().pos, "a rational literal");
        const lex::Token& tok = take();
        size_t slash = tok.text.find('/');
        if (slash != std::string::npos && tok.text.substr(slash + 1) == "0")
            syntax(tok.pos, "a nonzero denominator");
        return parse_rational(tok.text);
    }

    /// Parses "(" ID sep ID sep ... ")" and checks the separator shape and the
    /// argument count; `seps` lists the separators between consecutive IDs,
    /// with trailing entries repeating the last one for variadic lists.
    std::vector<std::string> id_list(ValueKind want, size_t min_arity, size_t max_arity,
                                     const std::vector<char>& seps, const SourcePos& call_pos) {
        expect_punct("(");
        std::vector<std::string> args;
        args.push_back(used_identifier(want));
        while (peek().kind == lex::Token::Kind::punct &&
               (peek().text == "," || peek().text == ";")) {
            const lex::Token& sep_tok = take();
            char wanted = args.size() - 1 < seps.size() ? seps[args.size() - 1] : seps.back();
            if (sep_tok.text[0] != wanted) syntax(sep_tok.pos, std::string("'") + wanted + "'");
            args.push_back(used_identifier(want));
        }
        expect_punct(")");
        if (args.size() < min_arity || args.size() > max_arity) {
            std::string expected = min_arity == max_arity
                                       ? std::to_string(min_arity)
                                       : "at least " + std::to_string(min_arity);
            throw ParseError(Diagnostic{Diagnostic::Kind::arity_mismatch, call_pos,
                                        "expected " + expected + " arguments, got " +
                                            std::to_string(args.size())});
        }
        return args;
    }

    Statement statement() {
        SourcePos pos = peek().pos;
        std::string head = keyword();
        if (head == "point") return Statement{pos, point_decl()};
        if (head == "line") return Statement{pos, line_decl()};
        if (head == "conic") return Statement{pos, conic_decl()};
        if (head == "assert") return Statement{pos, assert_stmt()};
        syntax(pos, "'point', 'line', 'conic' or 'assert'");
    }

    PointDecl point_decl() {
        PointDecl d;
        d.name = fresh_identifier();
        expect_punct("=");
        SourcePos pos = peek().pos;
        if (peek().kind == lex::Token::Kind::punct && peek().text == "(") {
            take();
            d.ctor = PointDecl::Ctor::coords;
            d.x = rational();
            expect_punct(",");
            d.y = rational();
            expect_punct(")");
        } else if (peek().kind == lex::Token::Kind::ident && peek().text == "meet") {
            take();
            d.ctor = PointDecl::Ctor::meet;
            d.args = id_list(ValueKind::line, 2, 2, {','}, pos);
        } else if (peek().kind == lex::Token::Kind::ident && peek().text == "infpoint") {
            take();
            d.ctor = PointDecl::Ctor::infpoint;
            d.args = id_list(ValueKind::line, 1, 1, {','}, pos);
        } else if (peek().kind == lex::Token::Kind::ident && peek().text == "harmonic") {
            take();
            d.ctor = PointDecl::Ctor::harmonic;
            d.args = id_list(ValueKind::point, 3, 3, {',', ';'}, pos);
        } else {
            syntax(pos, "'(', 'meet', 'infpoint' or 'harmonic'");
        }
        symbols_[d.name] = ValueKind::point;
        return d;
    }

    LineDecl line_decl() {
        LineDecl d;
        d.name = fresh_identifier();
        expect_punct("=");
        SourcePos pos = peek().pos;
        if (peek().kind == lex::Token::Kind::ident && peek().text == "join") {
            take();
            d.ctor = LineDecl::Ctor::join;
            d.args = id_list(ValueKind::point, 2, 2, {','}, pos);
        } else if (peek().kind == lex::Token::Kind::ident && peek().text == "omega") {
            take();
            d.ctor = LineDecl::Ctor::omega;
        } else if (peek().kind == lex::Token::Kind::punct && peek().text == "[") {
            take();
            d.ctor = LineDecl::Ctor::coeffs;
            d.c0 = rational();
            expect_punct(":");
            d.c1 = rational();
            expect_punct(":");
            d.c2 = rational();
            expect_punct("]");
        } else if (peek().kind == lex::Token::Kind::ident && peek().text == "polar") {
            take();
            d.ctor = LineDecl::Ctor::polar;
            expect_punct("(");
            d.args.push_back(used_identifier(ValueKind::point));
            expect_punct(",");
            d.args.push_back(used_identifier(ValueKind::conic));
            expect_punct(")");
        } else {
            syntax(pos, "'join', 'omega', '[' or 'polar'");
        }
        symbols_[d.name] = ValueKind::line;
        return d;
    }

    ConicDecl conic_decl() {
        ConicDecl d;
        d.name = fresh_identifier();
        expect_punct("=");
        SourcePos pos = peek().pos;
        if (peek().kind != lex::Token::Kind::ident || peek().text != "through")
            syntax(pos, "'through'");
        take();
        d.args = id_list(ValueKind::point, 5, 5, {','}, pos);
        symbols_[d.name] = ValueKind::conic;
        return d;
    }

    AssertStmt assert_stmt() {
        AssertStmt a;
        SourcePos pos = peek().pos;
        if (peek().kind != lex::Token::Kind::ident)
            syntax(pos, "'collinear', 'concurrent', 'on', 'parallel', 'equal' or 'harmonic'");
        std::string pred = take().text;
        if (pred == "collinear") {
            a.pred = AssertStmt::Pred::collinear;
            a.args = id_list(ValueKind::point, 3, 64, {','}, pos);
        } else if (pred == "concurrent") {
            a.pred = AssertStmt::Pred::concurrent;
            a.args = id_list(ValueKind::line, 3, 64, {','}, pos);
        } else if (pred == "on") {
            a.pred = AssertStmt::Pred::on;
            expect_punct("(");
            a.args.push_back(used_identifier(ValueKind::point));
            expect_punct(",");
            // second operand: a line or a conic
            if (peek().kind != lex::Token::Kind::ident || is_reserved(peek().text))
                syntax(peek().pos, "a line or conic identifier");
            auto it = symbols_.find(peek().text);
            if (it == symbols_.end())
                throw ParseError(Diagnostic{Diagnostic::Kind::use_before_decl, peek().pos,
                                            "'" + peek().text + "' is not declared"});
            if (it->second == ValueKind::point)
                syntax(peek().pos, "a line or conic identifier");
            a.args.push_back(take().text);
            expect_punct(")");
        } else if (pred == "parallel") {
            a.pred = AssertStmt::Pred::parallel;
            a.args = id_list(ValueKind::line, 2, 2, {','}, pos);
        } else if (pred == "equal") {
            a.pred = AssertStmt::Pred::equal;
            expect_punct("(");
            if (peek().kind != lex::Token::Kind::ident || is_reserved(peek().text))
                syntax(peek().pos, "an identifier");
            auto first = symbols_.find(peek().text);
            if (first == symbols_.end())
                throw ParseError(Diagnostic{Diagnostic::Kind::use_before_decl, peek().pos,
                                            "'" + peek().text + "' is not declared"});
            ValueKind want = first->second;
            a.args.push_back(take().text);
            expect_punct(",");
            a.args.push_back(used_identifier(want));
            expect_punct(")");
        } else if (pred == "harmonic") {
            a.pred = AssertStmt::Pred::harmonic;
            a.args = id_list(ValueKind::point, 4, 4, {',', ';', ','}, pos);
        } else {
            syntax(pos, "'collinear', 'concurrent', 'on', 'parallel', 'equal' or 'harmonic'");
        }
        return a;
    }
};

}  // namespace detail

inline Script parse(std::string_view source) { return detail::Parser(source).parse(); }

// ---------------------------------------------------------------------------
// Canonical printing (the round-trip partner of parse).
// ---------------------------------------------------------------------------

namespace detail {

inline std::string join_args(const std::vector<std::string>& args, size_t semicolon_after = 0) {
    std::string s;
    for (size_t i = 0; i < args.size(); ++i) {
        if (i > 0) s += (semicolon_after != 0 && i == semicolon_after) ? "; " : ", ";
        s += args[i];
    }
    return s;
}

}  // namespace detail

inline std::string print_statement(const Statement& st) {
    struct Printer {
        std::string operator()(const PointDecl& d) const {
            std::string rhs;
            switch (d.ctor) {
                case PointDecl::Ctor::coords:
                    rhs = "(" + format_rational(d.x) + ", " + format_rational(d.y) + ")";
                    break;
                case PointDecl::Ctor::meet: rhs = "meet(" + detail::join_args(d.args) + ")"; break;
                case PointDecl::Ctor::infpoint:
                    rhs = "infpoint(" + detail::join_args(d.args) + ")";
                    break;
                case PointDecl::Ctor::harmonic:
                    rhs = "harmonic(" + detail::join_args(d.args, 2) + ")";
                    break;
            }
            return "point " + d.name + " = " + rhs;
        }
        std::string operator()(const LineDecl& d) const {
            std::string rhs;
            switch (d.ctor) {
                case LineDecl::Ctor::join: rhs = "join(" + detail::join_args(d.args) + ")"; break;
                case LineDecl::Ctor::omega: rhs = "omega"; break;
                case LineDecl::Ctor::coeffs:
                    rhs = "[" + format_rational(d.c0) + " : " + format_rational(d.c1) + " : " +
                          format_rational(d.c2) + "]";
                    break;
                case LineDecl::Ctor::polar: rhs = "polar(" + detail::join_args(d.args) + ")"; break;
            }
            return "line " + d.name + " = " + rhs;
        }
        std::string operator()(const ConicDecl& d) const {
            return "conic " + d.name + " = through(" + detail::join_args(d.args) + ")";
        }
        std::string operator()(const AssertStmt& a) const {
            std::string pred;
            size_t semi = 0;
            switch (a.pred) {
                case AssertStmt::Pred::collinear: pred = "collinear"; break;
                case AssertStmt::Pred::concurrent: pred = "concurrent"; break;
                case AssertStmt::Pred::on: pred = "on"; break;
                case AssertStmt::Pred::parallel: pred = "parallel"; break;
                case AssertStmt::Pred::equal: pred = "equal"; break;
                case AssertStmt::Pred::harmonic:
                    pred = "harmonic";
                    semi = 2;
                    break;
            }
            return "assert " + pred + "(" + detail::join_args(a.args, semi) + ")";
        }
    };
    return std::visit(Printer{}, st.node);
}

inline std::string print_script(const Script& script) {
    std::string out;
    for (const Statement& st : script.statements) {
        out += print_statement(st);
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

using Value = std::variant<HPoint, HLine, Conic>;
using Environment = std::map<std::string, Value>;

struct AssertionResult {
    SourcePos pos;
    std::string text;
    bool passed;
    std::string detail;  // canonical operand values on failure
};

struct EvalError {
    SourcePos pos;
    std::string message;
};

struct EvalResult {
    Environment env;
    std::vector<AssertionResult> assertions;
    std::optional<EvalError> error;

    bool all_passed() const {
        if (error) return false;
        for (const AssertionResult& a : assertions)
            if (!a.passed) return false;
        return true;
    }
    size_t passed_count() const {
        size_t n = 0;
        for (const AssertionResult& a : assertions)
            if (a.passed) ++n;
        return n;
    }
};

namespace detail {

inline std::string value_str(const Value& v) {
    struct S {
        std::string operator()(const HPoint& p) const { return p.str(); }
        std::string operator()(const HLine& l) const { return l.str(); }
        std::string operator()(const Conic& c) const {
            std::string s = "conic[";
            auto q = c.coefficients();
            for (size_t i = 0; i < 6; ++i) {
                if (i) s += ", ";
                s += q[i].str();
            }
            return s + "]";
        }
    };
    return std::visit(S{}, v);
}

}  // namespace detail

/// Runs the script. Assertions that fail are recorded and evaluation goes on;
/// a construction error (reported with its source position) stops it.
inline EvalResult evaluate(const Script& script) {
    EvalResult result;
    auto point_at = [&](const std::string& name) { return std::get<HPoint>(result.env.at(name)); };
    auto line_at = [&](const std::string& name) { return std::get<HLine>(result.env.at(name)); };

    for (const Statement& st : script.statements) {
        try {
            if (const auto* d = std::get_if<PointDecl>(&st.node)) {
                HPoint value = [&]() -> HPoint {
                    switch (d->ctor) {
                        case PointDecl::Ctor::coords: return euclidean_embed(d->x, d->y);
                        case PointDecl::Ctor::meet:
                            return meet(line_at(d->args[0]), line_at(d->args[1]));
                        case PointDecl::Ctor::infpoint:
                            return meet(line_at(d->args[0]), omega());
                        case PointDecl::Ctor::harmonic:
                            return harmonic_conjugate(point_at(d->args[0]), point_at(d->args[1]),
                                                      point_at(d->args[2]));
                    }
                    raise(Err::InvalidConfig, "unreachable");
                }();
                result.env.insert_or_assign(d->name, std::move(value));
            } else if (const auto* d = std::get_if<LineDecl>(&st.node)) {
                HLine value = [&]() -> HLine {
                    switch (d->ctor) {
                        case LineDecl::Ctor::join:
                            return join(point_at(d->args[0]), point_at(d->args[1]));
                        case LineDecl::Ctor::omega: return omega();
                        case LineDecl::Ctor::coeffs: return HLine(d->c0, d->c1, d->c2);
                        case LineDecl::Ctor::polar:
                            return polar(point_at(d->args[0]),
                                         std::get<Conic>(result.env.at(d->args[1])));
                    }
                    raise(Err::InvalidConfig, "unreachable");
                }();
                result.env.insert_or_assign(d->name, std::move(value));
            } else if (const auto* d = std::get_if<ConicDecl>(&st.node)) {
                result.env.insert_or_assign(
                    d->name, conic_through_five({point_at(d->args[0]), point_at(d->args[1]),
                                                 point_at(d->args[2]), point_at(d->args[3]),
                                                 point_at(d->args[4])}));
            } else if (const auto* a = std::get_if<AssertStmt>(&st.node)) {
                bool passed = false;
                switch (a->pred) {
                    case AssertStmt::Pred::collinear: {
                        std::vector<HPoint> pts;
                        for (const auto& n : a->args) pts.push_back(point_at(n));
                        passed = collinear(std::span<const HPoint>(pts));
                        break;
                    }
                    case AssertStmt::Pred::concurrent: {
                        std::vector<HLine> lines;
                        for (const auto& n : a->args) lines.push_back(line_at(n));
                        passed = concurrent(std::span<const HLine>(lines));
                        break;
                    }
                    case AssertStmt::Pred::on: {
                        const Value& second = result.env.at(a->args[1]);
                        if (const auto* l = std::get_if<HLine>(&second))
                            passed = incident(point_at(a->args[0]), *l);
                        else
                            passed = on_conic(point_at(a->args[0]), std::get<Conic>(second));
                        break;
                    }
                    case AssertStmt::Pred::parallel: {
                        passed = at_infinity(meet(line_at(a->args[0]), line_at(a->args[1])));
                        break;
                    }
                    case AssertStmt::Pred::equal: {
                        passed = result.env.at(a->args[0]) == result.env.at(a->args[1]);
                        break;
                    }
                    case AssertStmt::Pred::harmonic: {
                        passed = cross_ratio(point_at(a->args[0]), point_at(a->args[1]),
                                             point_at(a->args[2]), point_at(a->args[3])) ==
                                 Rational(-1);
                        break;
                    }
                }
                std::string detail_str;
                if (!passed) {
                    for (size_t i = 0; i < a->args.size(); ++i) {
                        if (i) detail_str += ", ";
                        detail_str += a->args[i] + " = " +
                                      detail::value_str(result.env.at(a->args[i]));
                    }
                }
                result.assertions.push_back(
                    AssertionResult{st.pos, print_statement(st), passed, detail_str});
            }
        } catch (const Error& e) {
            result.error = EvalError{st.pos, e.what()};
            break;
        }
    }
    return result;
}

/// One PASS/FAIL line per assertion plus the summary line.
inline std::string format_diagnostics(const EvalResult& result) {
    std::ostringstream out;
    for (const AssertionResult& a : result.assertions) {
        out << (a.passed ? "PASS" : "FAIL") << " line " << a.pos.line << ": " << a.text;
        if (!a.passed) out << "  [" << a.detail << "]";
        out << "\n";
    }
    if (result.error) {
        out << "error: line " << result.error->pos.line << ", column " << result.error->pos.col
            << ": " << result.error->message << "\n";
    }
    out << result.assertions.size() << " assertions, " << result.passed_count() << " passed\n";
    return out.str();
}

}  // namespace sharq::geodsl

#pragma once

#include "gvb/jet_calculus.hpp"
#include "gvb/variational.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gvb {

struct Diagnostic {
    int line = 0;
    int column = 0;
    std::string message;
};

/// A parsed .gvb document: the frozen model plus the named values declared
/// with let / lagrangian / derivation statements.
struct SourceDocument {
    Model model;
    std::map<std::string, GradedForm> forms;
    std::map<std::string, Lagrangian> lagrangians;
    std::map<std::string, ContactDerivation> derivations;
    std::vector<Diagnostic> diagnostics;

    bool has_name(const std::string& name) const {
        return forms.count(name) || lagrangians.count(name) ||
               derivations.count(name);
    }
};

namespace lang {

enum class Tok {
    Ident, Int, LBracket, RBracket, LParen, RParen,
    Plus, Minus, Star, Caret, Slash, Arrow, Comma, Colon, Equals,
    Separator, End
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    long long value = 0;
    int line = 1;
    int column = 1;
};

/// Tokenizer: '#' comments run to end of line; newlines and ';' separate
/// statements except inside parentheses or brackets.
inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1, depth = 0;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        const int tline = line, tcol = col;
        auto emit = [&](Tok kind, std::string text, long long value = 0) {
            out.push_back({kind, std::move(text), value, tline, tcol});
        };
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') { ++i; ++col; }
            continue;
        }
        if (c == '\n') {
            if (depth == 0 &&
                !(out.empty() || out.back().kind == Tok::Separator))
                emit(Tok::Separator, "\n");
            ++i; ++line; col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') { ++i; ++col; continue; }
        if (c == ';') {
            if (!(out.empty() || out.back().kind == Tok::Separator))
                emit(Tok::Separator, ";");
            ++i; ++col;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            const std::string text(src.substr(i, j - i));
            long long value = 0;
            try {
                value = std::stoll(text);
            } catch (const std::exception&) {
                throw ParseError(tline, tcol, "integer literal out of range");
            }
            emit(Tok::Int, text, value);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            emit(Tok::Ident, std::string(src.substr(i, j - i)));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            emit(Tok::Arrow, "->");
            i += 2; col += 2;
            continue;
        }
        switch (c) {
            case '[': ++depth; emit(Tok::LBracket, "["); break;
            case ']': --depth; emit(Tok::RBracket, "]"); break;
            case '(': ++depth; emit(Tok::LParen, "("); break;
            case ')': --depth; emit(Tok::RParen, ")"); break;
            case '+': emit(Tok::Plus, "+"); break;
            case '-': emit(Tok::Minus, "-"); break;
            case '*': emit(Tok::Star, "*"); break;
            case '^': emit(Tok::Caret, "^"); break;
            case '/': emit(Tok::Slash, "/"); break;
            case ',': emit(Tok::Comma, ","); break;
            case ':': emit(Tok::Colon, ":"); break;
            case '=': emit(Tok::Equals, "="); break;
            default:
                throw ParseError(tline, tcol,
                                 std::string("unexpected character '") + c + "'");
        }
        ++i; ++col;
    }
    if (!out.empty() && out.back().kind != Tok::Separator)
        out.push_back({Tok::Separator, "", 0, line, col});
    out.push_back({Tok::End, "", 0, line, col});
    return out;
}

inline std::size_t out_text_len(Tok, long long) { return 0; }

/// True if the identifier is reserved and unavailable as a field or value
/// name.
inline bool reserved_name(const std::string& name) {
    static const char* const kKeywords[] = {
        "dim", "even", "odd", "function", "deriv", "let", "lagrangian",
        "derivation", "horiz", "vert", "theta", "omega", "u"};
    for (const char* k : kKeywords)
        if (name == k) return true;
    if (name.size() >= 2 && name[0] == 'x') {
        bool digits = true;
        for (std::size_t i = 1; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
        if (digits) return true;
    }
    if (name.size() >= 3 && name[0] == 'd' && name[1] == 'x') {
        bool digits = true;
        for (std::size_t i = 2; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
        if (digits) return true;
    }
    return false;
}

/// Decodes "x3" / "dx3" style identifiers.
inline std::optional<int> trailing_index(const std::string& name, std::size_t prefix) {
    if (name.size() <= prefix) return std::nullopt;
    int value = 0;
    for (std::size_t i = prefix; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        value = value * 10 + (name[i] - '0');
        if (value > 1'000'000) return std::nullopt;
    }
    return value;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, Model model, bool deriv_rule_mode = false)
        : tokens_(std::move(tokens)), model_(std::move(model)),
          deriv_rule_mode_(deriv_rule_mode) {}

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    Token advance() {
        Token t = peek();
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        advance();
        return true;
    }

    Token expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what);
        return advance();
    }

    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        const std::string got =
            t.kind == Tok::End ? "end of input"
            : t.kind == Tok::Separator ? "end of statement"
            : "'" + t.text + "'";
        throw ParseError(t.line, t.column, message + ", got " + got);
    }

    bool at_statement_end() const {
        return peek().kind == Tok::Separator || peek().kind == Tok::End;
    }

    void skip_separators() {
        while (peek().kind == Tok::Separator) advance();
    }

    /// expr := mul (('+'|'-') mul)*
    GradedForm parse_expr() {
        GradedForm acc = parse_mul();
        while (true) {
            if (accept(Tok::Plus)) acc = acc + parse_mul();
            else if (accept(Tok::Minus)) acc = acc - parse_mul();
            else return acc;
        }
    }

    /// mul := unary (('*'|'/') unary)*; '*' is the graded wedge, '/' only
    /// by nonzero rational constants.
    GradedForm parse_mul() {
        GradedForm acc = parse_unary();
        while (true) {
            if (accept(Tok::Star)) {
                acc = wedge(acc, parse_unary());
            } else if (peek().kind == Tok::Slash) {
                const Token slash = advance();
                GradedForm divisor = parse_unary();
                const Rational* r = form_constant(divisor);
                if (r == nullptr)
                    throw ParseError(slash.line, slash.column,
                                     "division is only defined by rational constants");
                if (*r == 0)
                    throw ParseError(slash.line, slash.column, "division by zero");
                acc = Rational(1) / *r * acc;
            } else {
                return acc;
            }
        }
    }

    GradedForm parse_unary() {
        if (accept(Tok::Minus)) return -parse_unary();
        return parse_power();
    }

    /// power := primary ('^' int)?; the base must be a parity-even scalar
    /// of form degree zero.
    GradedForm parse_power() {
        GradedForm base = parse_primary();
        if (peek().kind != Tok::Caret) return base;
        const Token caret = advance();
        const Token e = expect(Tok::Int, "integer exponent");
        GradedFunction f = to_function(base, caret);
        if (f.homogeneous_parity() != Parity::Even)
            throw ParseError(caret.line, caret.column,
                             "powers are only defined for parity-even scalars");
        if (e.value < 0 || e.value > 64)
            throw ParseError(e.line, e.column, "exponent out of range");
        return GradedForm::from_function(f.pow(static_cast<unsigned>(e.value)));
    }

    GradedForm parse_primary() {
        const Token t = peek();
        switch (t.kind) {
            case Tok::LParen: {
                advance();
                GradedForm inner = parse_expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Int: {
                advance();
                return GradedForm::from_function(
                    GradedFunction::constant(Rational(t.value), model_));
            }
            case Tok::Ident:
                return parse_ident();
            default:
                fail("expected an expression");
        }
    }

    /// Multi-index literal: '[' int* ']' with space-separated indices.
    MultiIndex parse_jet_indices() {
        expect(Tok::LBracket, "'['");
        std::vector<int> indices;
        while (peek().kind == Tok::Int) {
            const Token t = advance();
            if (t.value >= model_.dim())
                throw ParseError(t.line, t.column,
                                 "index " + t.text + " out of range for dim " +
                                     std::to_string(model_.dim()));
            indices.push_back(static_cast<int>(t.value));
        }
        expect(Tok::RBracket, "']'");
        MultiIndex mi{std::move(indices)};
        if (static_cast<int>(mi.order()) > model_.order_cap())
            throw OrderCapError("jet order " + std::to_string(mi.order()) +
                                " exceeds order cap " +
                                std::to_string(model_.order_cap()));
        return mi;
    }

    GradedForm parse_ident() {
        const Token t = expect(Tok::Ident, "identifier");
        const std::string& name = t.text;
        if (deriv_rule_mode_ && name == "u")
            return GradedForm::from_function(GradedFunction::from_scalar(
                ScalarPoly::atom(Atom::placeholder()), model_));
        if (name == "omega") {
            if (deriv_rule_mode_) fail_at(t, "forms are not allowed in derivative rules");
            return GradedForm::omega(model_);
        }
        if (name == "theta") {
            if (deriv_rule_mode_) fail_at(t, "forms are not allowed in derivative rules");
            expect(Tok::LParen, "'('");
            const Token ft = expect(Tok::Ident, "field name");
            auto field = model_.find_field(ft.text);
            if (!field) fail_at(ft, "unknown field '" + ft.text + "'");
            MultiIndex mi;
            if (peek().kind == Tok::LBracket) mi = parse_jet_indices();
            expect(Tok::RParen, "')'");
            return GradedForm::theta(model_, *field, std::move(mi));
        }
        if (auto lambda = trailing_index(name, 1); lambda && name[0] == 'x') {
            if (deriv_rule_mode_)
                fail_at(t, "coordinates are not allowed in derivative rules");
            if (*lambda >= model_.dim())
                fail_at(t, "coordinate " + name + " out of range for dim " +
                               std::to_string(model_.dim()));
            return GradedForm::from_function(GradedFunction::coord(model_, *lambda));
        }
        if (auto lambda = trailing_index(name, 2);
            lambda && name[0] == 'd' && name[1] == 'x') {
            if (deriv_rule_mode_) fail_at(t, "forms are not allowed in derivative rules");
            if (*lambda >= model_.dim())
                fail_at(t, "coordinate differential " + name +
                               " out of range for dim " + std::to_string(model_.dim()));
            return GradedForm::dx(model_, *lambda);
        }
        if (auto field = model_.find_field(name)) {
            if (deriv_rule_mode_)
                fail_at(t, "fields are not allowed in derivative rules");
            MultiIndex mi;
            if (peek().kind == Tok::LBracket) mi = parse_jet_indices();
            return GradedForm::from_function(
                GradedFunction::jet(model_, *field, std::move(mi)));
        }
        if (auto fn = model_.find_function(name)) {
            expect(Tok::LParen, "'('");
            GradedForm arg = parse_expr();
            expect(Tok::RParen, "')'");
            GradedFunction g = to_function(arg, t);
            if (!g.is_scalar())
                fail_at(t, "argument of '" + name +
                               "' must be an even scalar expression");
            return GradedForm::from_function(GradedFunction::from_scalar(
                ScalarPoly::atom(Atom::func(*fn, g.scalar_part())), model_));
        }
        fail_at(t, "unknown identifier '" + name + "'");
    }

    GradedFunction to_function(const GradedForm& form, const Token& at) const {
        GradedFunction out = GradedFunction::zero(model_);
        for (const auto& term : form.terms()) {
            if (!term.word.gens.empty())
                throw ParseError(at.line, at.column,
                                 "expected a form-degree-zero expression");
            out = out + term.coeff;
        }
        return out;
    }

    [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
        throw ParseError(t.line, t.column, message);
    }

    static const Rational* form_constant(const GradedForm& form) {
        static const Rational kZero{0};
        if (form.is_zero()) return &kZero;
        if (form.terms().size() != 1) return nullptr;
        const auto& term = form.terms()[0];
        if (!term.word.gens.empty()) return nullptr;
        return term.coeff.as_constant();
    }

    std::size_t position() const { return pos_; }
    void set_position(std::size_t p) { pos_ = p; }
    const Model& model() const { return model_; }

  private:
    std::vector<Token> tokens_;
    Model model_;
    bool deriv_rule_mode_ = false;
    std::size_t pos_ = 0;
};

}  // namespace lang

/// Parses a standalone expression against a frozen model.
inline GradedForm parse_expression(const std::string& text, const Model& model) {
    lang::Parser p(lang::tokenize(text), model);
    p.skip_separators();
    GradedForm out = p.parse_expr();
    p.skip_separators();
    if (p.peek().kind != lang::Tok::End) p.fail("unexpected trailing input");
    return out;
}

namespace lang {

/// Document parser: model statements (dim / even / odd / function) first,
/// frozen at the first value statement; then let / lagrangian / derivation.
class DocumentParser {
  public:
    explicit DocumentParser(const std::string& text) : tokens_(tokenize(text)) {}

    SourceDocument run() {
        SourceDocument doc;
        Parser cursor(tokens_, Model{});
        cursor.skip_separators();
        while (cursor.peek().kind != Tok::End) {
            const Token head = cursor.expect(Tok::Ident, "statement keyword");
            const std::string& kw = head.text;
            if (kw == "dim" || kw == "even" || kw == "odd" || kw == "function") {
                if (frozen_)
                    throw ParseError(head.line, head.column,
                                     "model declarations must precede value statements");
                parse_model_statement(cursor, head);
            } else if (kw == "let" || kw == "lagrangian" || kw == "derivation") {
                freeze(head);
                parse_value_statement(doc, cursor, head);
            } else {
                throw ParseError(head.line, head.column,
                                 "unknown statement '" + kw + "'");
            }
            if (!cursor.at_statement_end()) cursor.fail("expected end of statement");
            cursor.skip_separators();
        }
        if (!frozen_) freeze(cursor.peek());
        doc.model = model_;
        doc.forms = std::move(forms_);
        doc.lagrangians = std::move(lagrangians_);
        doc.derivations = std::move(derivations_);
        return doc;
    }

  private:
    template <typename At>
    void freeze(const At& at) {
        if (frozen_) return;
        if (!dim_) throw ParseError(at.line, at.column, "missing 'dim' statement");
        // Two passes: register names with trivial rules to resolve mutual
        // references, then elaborate each declared derivative expression.
        ModelSpec names_only{*dim_, fields_, {}, order_cap_};
        for (const auto& [name, tokens] : raw_functions_)
            names_only.functions.push_back({name, ScalarPoly::zero()});
        Model name_model(names_only);
        ModelSpec spec{*dim_, fields_, {}, order_cap_};
        for (const auto& [name, tokens] : raw_functions_) {
            Parser rule_parser(tokens, name_model, /*deriv_rule_mode=*/true);
            GradedForm rule = rule_parser.parse_expr();
            if (rule_parser.peek().kind != Tok::End) rule_parser.fail("unexpected trailing input");
            GradedFunction g = rule_parser.to_function(rule, tokens.front());
            spec.functions.push_back({name, g.scalar_part()});
        }
        model_ = Model(std::move(spec));
        frozen_ = true;
    }

    void parse_model_statement(Parser& cursor, const Token& head) {
        if (head.text == "dim") {
            if (dim_) throw ParseError(head.line, head.column, "duplicate 'dim' statement");
            const Token d = cursor.expect(Tok::Int, "dimension");
            if (d.value < 1) throw ParseError(d.line, d.column, "dim must be >= 1");
            dim_ = static_cast<int>(d.value);
            return;
        }
        if (head.text == "even" || head.text == "odd") {
            const Parity parity = head.text == "odd" ? Parity::Odd : Parity::Even;
            if (cursor.at_statement_end()) cursor.fail("expected at least one field name");
            while (!cursor.at_statement_end()) {
                const Token f = cursor.expect(Tok::Ident, "field name");
                declare_field(f, parity);
            }
            return;
        }
        // function <name> deriv <expr-in-u>
        const Token name = cursor.expect(Tok::Ident, "function name");
        if (reserved_name(name.text) || name.text == "sin" || name.text == "cos" ||
            name.text == "exp")
            throw ParseError(name.line, name.column,
                             "duplicate or reserved function name '" + name.text + "'");
        for (const auto& [existing, tokens] : raw_functions_)
            if (existing == name.text)
                throw ParseError(name.line, name.column,
                                 "duplicate function name '" + name.text + "'");
        const Token kw = cursor.expect(Tok::Ident, "'deriv'");
        if (kw.text != "deriv")
            throw ParseError(kw.line, kw.column, "expected 'deriv'");
        std::vector<Token> slice = statement_slice(cursor);
        if (slice.size() <= 1)
            throw ParseError(kw.line, kw.column, "expected a derivative expression");
        raw_functions_.emplace_back(name.text, std::move(slice));
    }

    void declare_field(const Token& token, Parity parity) {
        if (reserved_name(token.text))
            throw ParseError(token.line, token.column,
                             "reserved name '" + token.text + "' cannot be a field");
        for (const auto& f : fields_)
            if (f.name == token.text)
                throw ParseError(token.line, token.column,
                                 "duplicate field name '" + token.text + "'");
        fields_.push_back({token.text, parity});
    }

    /// Consumes the remainder of the statement, returning it as a token
    /// vector terminated by End.
    std::vector<Token> statement_slice(Parser& cursor) {
        std::vector<Token> slice;
        while (!cursor.at_statement_end()) slice.push_back(cursor.advance());
        Token end = cursor.peek();
        end.kind = Tok::End;
        slice.push_back(end);
        return slice;
    }

    void parse_value_statement(SourceDocument& doc, Parser& cursor, const Token& head) {
        const Token name = cursor.expect(Tok::Ident, "value name");
        if (reserved_name(name.text) || model_.find_field(name.text) ||
            model_.find_function(name.text))
            throw ParseError(name.line, name.column,
                             "name '" + name.text + "' is already taken");
        if (forms_.count(name.text) || lagrangians_.count(name.text) ||
            derivations_.count(name.text))
            throw ParseError(name.line, name.column,
                             "duplicate name '" + name.text + "'");
        // '=' is not a token; accept ':'? No: grammar uses '='.
        const Token eq = cursor.peek();
        if (!(eq.kind == Tok::Ident && eq.text == "=")) {
            // fallthrough: '=' is lexed specially below
        }
        expect_equals(cursor);
        std::vector<Token> slice = statement_slice(cursor);
        Parser sub(slice, model_, false);
        if (head.text == "derivation") {
            derivations_.emplace(name.text, parse_derivation(sub));
            (void)doc;
            return;
        }
        GradedForm value = sub.parse_expr();
        if (sub.peek().kind != Tok::End) sub.fail("unexpected trailing input");
        if (head.text == "lagrangian") {
            GradedFunction density = sub.to_function(value, name);
            lagrangians_.emplace(name.text, Lagrangian(model_, std::move(density)));
        } else {
            forms_.emplace(name.text, std::move(value));
        }
    }

    void expect_equals(Parser& cursor) {
        cursor.fail("expected '='");
    }

    ContactDerivation parse_derivation(Parser& sub) {
        std::map<int, GradedFunction> horizontal;
        std::map<int, GradedFunction> vertical;
        while (sub.peek().kind != Tok::End) {
            const bool bracketed = sub.accept(Tok::LBracket);
            const Token group = sub.expect(Tok::Ident, "'horiz' or 'vert'");
            if (group.text != "horiz" && group.text != "vert")
                throw ParseError(group.line, group.column,
                                 "expected 'horiz' or 'vert'");
            sub.expect(Tok::Colon, "':'");
            const bool horiz = group.text == "horiz";
            if (!((bracketed && sub.peek().kind == Tok::RBracket) ||
                  sub.peek().kind == Tok::End)) {
                while (true) {
                    if (horiz) {
                        const Token idx = sub.expect(Tok::Int, "base index");
                        if (idx.value < 0 || idx.value >= sub.model().dim())
                            throw ParseError(idx.line, idx.column,
                                             "index out of range for dim " +
                                                 std::to_string(sub.model().dim()));
                        sub.expect(Tok::Arrow, "'->'");
                        GradedForm value = sub.parse_expr();
                        GradedFunction g = sub.to_function(value, idx);
                        if (horizontal.count(static_cast<int>(idx.value)))
                            throw ParseError(idx.line, idx.column,
                                             "duplicate horizontal component");
                        horizontal.emplace(static_cast<int>(idx.value), std::move(g));
                    } else {
                        const Token ft = sub.expect(Tok::Ident, "field name");
                        auto field = sub.model().find_field(ft.text);
                        if (!field)
                            throw ParseError(ft.line, ft.column,
                                             "unknown field '" + ft.text + "'");
                        sub.expect(Tok::Arrow, "'->'");
                        GradedForm value = sub.parse_expr();
                        GradedFunction g = sub.to_function(value, ft);
                        if (vertical.count(*field))
                            throw ParseError(ft.line, ft.column,
                                             "duplicate vertical component");
                        vertical.emplace(*field, std::move(g));
                    }
                    if (!sub.accept(Tok::Comma)) break;
                }
            }
            if (bracketed) sub.expect(Tok::RBracket, "']'");
        }
        return prolong(sub.model(), std::move(horizontal), std::move(vertical));
    }

    std::vector<Token> tokens_;
    std::optional<int> dim_;
    std::vector<FieldRef> fields_;
    std::vector<std::pair<std::string, std::vector<Token>>> raw_functions_;
    int order_cap_ = 10;
    bool frozen_ = false;
    Model model_;
    std::map<std::string, GradedForm> forms_;
    std::map<std::string, Lagrangian> lagrangians_;
    std::map<std::string, ContactDerivation> derivations_;
};

}  // namespace lang

/// Parses a complete .gvb document.
inline SourceDocument parse_model(const std::string& text) {
    return lang::DocumentParser(text).run();
}

}  // namespace gvb

#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lqf/canonical.hpp"
#include "lqf/quaternion.hpp"

namespace lqf {

/// 1-based source location.
struct SourcePos {
    int line = 1;
    int col = 1;
};

/// Raised for lexical, syntactic, and semantic rejections alike.  what()
/// carries "line L, column C: message".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourcePos pos)
        : std::runtime_error("line " + std::to_string(pos.line) + ", column " +
                             std::to_string(pos.col) + ": " + message),
          pos_(pos),
          brief_(message) {}

    SourcePos pos() const { return pos_; }
    int line() const { return pos_.line; }
    int col() const { return pos_.col; }
    const std::string& brief() const { return brief_; }

private:
    SourcePos pos_;
    std::string brief_;
};

template <std::floating_point T>
struct Expr;

template <std::floating_point T = double>
using ExprPtr = std::shared_ptr<const Expr<T>>;

/// Expression tree node.  Kind selects which members are meaningful:
/// Literal holds value; Product holds factors; Sum holds terms with
/// explicit +1/-1 signs; Apply holds name and arg; ScalarWeight holds
/// weight and inner (unary sign and scalar scaling).
template <std::floating_point T = double>
struct Expr {
    enum class Kind { Literal, State, Product, Sum, Apply, ScalarWeight };

    struct SignedTerm {
        int sign = 1;
        ExprPtr<T> node;
    };

    Kind kind = Kind::State;
    SourcePos pos;
    Quaternion<T> value{};
    std::vector<ExprPtr<T>> factors;
    std::vector<SignedTerm> terms;
    std::string name;
    ExprPtr<T> arg;
    T weight{};
    ExprPtr<T> inner;

    static ExprPtr<T> literal(SourcePos p, const Quaternion<T>& v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Literal;
        e->pos = p;
        e->value = v;
        return e;
    }
    static ExprPtr<T> state(SourcePos p) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::State;
        e->pos = p;
        return e;
    }
    static ExprPtr<T> product(SourcePos p, std::vector<ExprPtr<T>> fs) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Product;
        e->pos = p;
        e->factors = std::move(fs);
        return e;
    }
    static ExprPtr<T> sum(SourcePos p, std::vector<SignedTerm> ts) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Sum;
        e->pos = p;
        e->terms = std::move(ts);
        return e;
    }
    static ExprPtr<T> apply(SourcePos p, std::string fn, ExprPtr<T> argument) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Apply;
        e->pos = p;
        e->name = std::move(fn);
        e->arg = std::move(argument);
        return e;
    }
    static ExprPtr<T> scaled(SourcePos p, T w, ExprPtr<T> in) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::ScalarWeight;
        e->pos = p;
        e->weight = w;
        e->inner = std::move(in);
        return e;
    }
};

/// One statement: an optional binding name and its expression.
template <std::floating_point T = double>
struct Statement {
    std::optional<std::string> name;
    ExprPtr<T> expr;
    SourcePos pos;
};

template <std::floating_point T = double>
using Program = std::vector<Statement<T>>;

/// Named forms in binding order.  Rebinding a name is rejected upstream;
/// bind() requires an unused name.
template <std::floating_point T = double>
class Environment {
public:
    const CanonicalForm<T>* find(std::string_view name) const {
        for (const auto& [n, f] : entries_)
            if (n == name) return &f;
        return nullptr;
    }

    void bind(std::string name, const CanonicalForm<T>& form) {
        entries_.emplace_back(std::move(name), form);
    }

    const std::vector<std::pair<std::string, CanonicalForm<T>>>& entries() const {
        return entries_;
    }

private:
    std::vector<std::pair<std::string, CanonicalForm<T>>> entries_;
};

namespace detail {

struct Token {
    enum class Kind {
        Number,     // real literal
        Component,  // real juxtaposed with a unit, e.g. 2i
        Ident,
        Plus,
        Minus,
        Star,
        Equals,
        Semicolon,
        LParen,
        RParen,
        Comma,
        End,
    };

    Kind kind = Kind::End;
    std::string text;
    double value = 0.0;
    int slot = 0;  // Component: 1 -> i, 2 -> j, 3 -> k
    SourcePos pos;
};

inline bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;
    const auto advance = [&](std::size_t n) {
        for (std::size_t s = 0; s < n; ++s, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        const SourcePos pos{line, col};
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            advance(1);
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
            double value = 0.0;
            const char* first = src.data() + i;
            const char* last = src.data() + src.size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc{}) throw ParseError("malformed number", pos);
            std::size_t len = static_cast<std::size_t>(ptr - first);
            Token tok;
            tok.value = value;
            tok.pos = pos;
            const std::size_t after = i + len;
            const char unit = after < src.size() ? src[after] : '\0';
            const bool unit_ends =
                after + 1 >= src.size() || !is_ident_char(src[after + 1]);
            if ((unit == 'i' || unit == 'j' || unit == 'k') && unit_ends) {
                tok.kind = Token::Kind::Component;
                tok.slot = unit == 'i' ? 1 : unit == 'j' ? 2 : 3;
                tok.text = std::string(src.substr(i, len + 1));
                advance(len + 1);
            } else {
                tok.kind = Token::Kind::Number;
                tok.text = std::string(src.substr(i, len));
                advance(len);
            }
            out.push_back(std::move(tok));
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t len = 1;
            while (i + len < src.size() && is_ident_char(src[i + len])) ++len;
            Token tok;
            tok.kind = Token::Kind::Ident;
            tok.text = std::string(src.substr(i, len));
            tok.pos = pos;
            advance(len);
            out.push_back(std::move(tok));
            continue;
        }
        Token tok;
        tok.pos = pos;
        switch (c) {
            case '+': tok.kind = Token::Kind::Plus; break;
            case '-': tok.kind = Token::Kind::Minus; break;
            case '*': tok.kind = Token::Kind::Star; break;
            case '=': tok.kind = Token::Kind::Equals; break;
            case ';': tok.kind = Token::Kind::Semicolon; break;
            case '(': tok.kind = Token::Kind::LParen; break;
            case ')': tok.kind = Token::Kind::RParen; break;
            case ',': tok.kind = Token::Kind::Comma; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
        tok.text = std::string(1, c);
        advance(1);
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.pos = {line, col};
    out.push_back(std::move(end));
    return out;
}

inline bool is_unit_name(std::string_view name) {
    return name == "i" || name == "j" || name == "k";
}

template <std::floating_point T>
Quaternion<T> unit_value(std::string_view name) {
    if (name == "i") return Quaternion<T>::unit_i();
    if (name == "j") return Quaternion<T>::unit_j();
    return Quaternion<T>::unit_k();
}

/// Whether an expression depends on the state variable.  Rejects shapes
/// that cannot denote a linear function: products with two q-bearing
/// factors, sums mixing constant and q-bearing terms, and composition
/// applied to a constant argument.
enum class ExprClass { Constant, Function };

template <std::floating_point T>
ExprClass classify(const ExprPtr<T>& e) {
    using K = typename Expr<T>::Kind;
    switch (e->kind) {
        case K::Literal:
            return ExprClass::Constant;
        case K::State:
            return ExprClass::Function;
        case K::ScalarWeight:
            return classify<T>(e->inner);
        case K::Sum: {
            const ExprClass first = classify<T>(e->terms.front().node);
            for (std::size_t t = 1; t < e->terms.size(); ++t) {
                if (classify<T>(e->terms[t].node) != first)
                    throw ParseError("sum mixes a constant term with a term that depends on q",
                                     e->terms[t].node->pos);
            }
            return first;
        }
        case K::Product: {
            const Expr<T>* seen = nullptr;
            for (const ExprPtr<T>& f : e->factors) {
                if (classify<T>(f) == ExprClass::Function) {
                    if (seen)
                        throw ParseError("nonlinear term: more than one factor depends on q",
                                         f->pos);
                    seen = f.get();
                }
            }
            return seen ? ExprClass::Function : ExprClass::Constant;
        }
        case K::Apply:
        default: {
            if (classify<T>(e->arg) == ExprClass::Constant)
                throw ParseError("argument of '" + e->name + "' does not depend on q",
                                 e->arg->pos);
            return ExprClass::Function;
        }
    }
}

template <std::floating_point T>
class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Program<T> parse_program() {
        Program<T> prog;
        if (peek().kind == Token::Kind::End)
            throw ParseError("empty program", peek().pos);
        prog.push_back(parse_statement());
        while (peek().kind == Token::Kind::Semicolon) {
            next();
            if (peek().kind == Token::Kind::End) break;  // trailing separator
            prog.push_back(parse_statement());
        }
        expect(Token::Kind::End, "expected ';' or end of program");
        return prog;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t at = pos_ + ahead;
        return at < toks_.size() ? toks_[at] : toks_.back();
    }
    const Token& next() { return toks_[pos_++]; }
    void expect(typename Token::Kind kind, const std::string& message) {
        if (peek().kind != kind) throw ParseError(message, peek().pos);
        next();
    }

    Statement<T> parse_statement() {
        Statement<T> stmt;
        stmt.pos = peek().pos;
        if (peek().kind == Token::Kind::Ident && peek(1).kind == Token::Kind::Equals) {
            const Token& name = next();
            if (name.text == "q")
                throw ParseError("'q' is the state variable and cannot be bound", name.pos);
            if (is_unit_name(name.text))
                throw ParseError("'" + name.text + "' is a unit literal and cannot be bound",
                                 name.pos);
            if (bound_.count(name.text))
                throw ParseError("'" + name.text + "' is already defined", name.pos);
            next();  // '='
            stmt.name = name.text;
        }
        stmt.expr = parse_expr();
        if (classify<T>(stmt.expr) == ExprClass::Constant)
            throw ParseError("statement is constant; it does not define a function of q",
                             stmt.pos);
        if (stmt.name) bound_.insert(*stmt.name);
        return stmt;
    }

    ExprPtr<T> parse_expr() {
        const SourcePos start = peek().pos;
        std::vector<typename Expr<T>::SignedTerm> terms;
        ExprPtr<T> first;
        if (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
            const Token& sign = next();
            ExprPtr<T> t = parse_term();
            first = sign.kind == Token::Kind::Minus
                        ? Expr<T>::scaled(sign.pos, T(-1), std::move(t))
                        : std::move(t);
        } else {
            first = parse_term();
        }
        terms.push_back({1, std::move(first)});
        while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
            const Token& op = next();
            terms.push_back({op.kind == Token::Kind::Minus ? -1 : 1, parse_term()});
        }
        if (terms.size() == 1) return std::move(terms.front().node);
        return Expr<T>::sum(start, std::move(terms));
    }

    ExprPtr<T> parse_term() {
        const SourcePos start = peek().pos;
        std::vector<ExprPtr<T>> factors;
        factors.push_back(parse_factor());
        while (peek().kind == Token::Kind::Star) {
            next();
            factors.push_back(parse_factor());
        }
        if (factors.size() == 1) return std::move(factors.front());
        return Expr<T>::product(start, std::move(factors));
    }

    ExprPtr<T> parse_factor() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Token::Kind::Number:
                next();
                return Expr<T>::literal(tok.pos, Quaternion<T>(static_cast<T>(tok.value)));
            case Token::Kind::Component: {
                next();
                Quaternion<T> v{};
                v[tok.slot] = static_cast<T>(tok.value);
                return Expr<T>::literal(tok.pos, v);
            }
            case Token::Kind::Ident: {
                if (tok.text == "q") {
                    next();
                    return Expr<T>::state(tok.pos);
                }
                if (is_unit_name(tok.text)) {
                    if (peek(1).kind == Token::Kind::LParen)
                        throw ParseError("'" + tok.text + "' is a unit literal, not a function",
                                         tok.pos);
                    next();
                    return Expr<T>::literal(tok.pos, unit_value<T>(tok.text));
                }
                next();
                if (peek().kind != Token::Kind::LParen) {
                    if (bound_.count(tok.text))
                        throw ParseError("function '" + tok.text +
                                             "' must be applied to an argument",
                                         tok.pos);
                    throw ParseError("unknown name '" + tok.text + "'", tok.pos);
                }
                if (!bound_.count(tok.text))
                    throw ParseError("unknown function '" + tok.text + "'", tok.pos);
                next();  // '('
                ExprPtr<T> arg = parse_expr();
                expect(Token::Kind::RParen, "expected ')'");
                return Expr<T>::apply(tok.pos, tok.text, std::move(arg));
            }
            case Token::Kind::LParen: {
                if (auto tuple = try_tuple_literal()) return *tuple;
                next();  // '('
                ExprPtr<T> inner = parse_expr();
                expect(Token::Kind::RParen, "expected ')'");
                return inner;
            }
            default:
                throw ParseError("expected a number, literal, 'q', function call, or '('",
                                 tok.pos);
        }
    }

    /// Distinguishes the tuple literal "(a,b,c,d)" from a parenthesized
    /// expression: commit once "( sign? number ," is seen.
    std::optional<ExprPtr<T>> try_tuple_literal() {
        const std::size_t save = pos_;
        const SourcePos start = peek().pos;
        next();  // '('
        Quaternion<T> v{};
        for (int c = 0; c < 4; ++c) {
            T sign = T(1);
            if (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
                if (next().kind == Token::Kind::Minus) sign = T(-1);
            }
            if (peek().kind != Token::Kind::Number) {
                pos_ = save;
                return std::nullopt;
            }
            v[c] = sign * static_cast<T>(next().value);
            if (c < 3) {
                if (peek().kind != Token::Kind::Comma) {
                    pos_ = save;
                    return std::nullopt;
                }
                next();
            }
        }
        if (peek().kind != Token::Kind::RParen) {
            pos_ = save;
            return std::nullopt;
        }
        next();
        return Expr<T>::literal(start, v);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::set<std::string, std::less<>> bound_;
};

/// Reduction result of a subexpression: either a folded constant or a
/// canonical form.
template <std::floating_point T>
struct Reduced {
    bool is_function = false;
    Quaternion<T> constant{};
    CanonicalForm<T> form{};
};

}  // namespace detail

/// Which term reduction algorithm the expression reducer uses for its
/// sandwich primitive left * subexpr * right.
enum class ReduceMethod { Matrix, Involution };

namespace detail {

/// Canonical form of p -> left * p * right through the selected
/// algorithm.
template <std::floating_point T>
CanonicalForm<T> sandwich_form(const Quaternion<T>& left, const Quaternion<T>& right,
                               ReduceMethod method) {
    const TermList<T> term{{left, right}};
    return method == ReduceMethod::Matrix ? reduce_matrix_method(term)
                                          : reduce_involution_method(term);
}

template <std::floating_point T>
Reduced<T> reduce_node(const ExprPtr<T>& e, const Environment<T>& env, ReduceMethod method) {
    using K = typename Expr<T>::Kind;
    switch (e->kind) {
        case K::Literal:
            return {false, e->value, {}};
        case K::State:
            return {true, {}, CanonicalForm<T>::identity()};
        case K::ScalarWeight: {
            Reduced<T> r = reduce_node<T>(e->inner, env, method);
            if (r.is_function)
                r.form = e->weight * r.form;
            else
                r.constant = e->weight * r.constant;
            return r;
        }
        case K::Sum: {
            Reduced<T> acc = reduce_node<T>(e->terms.front().node, env, method);
            if (e->terms.front().sign < 0) {
                if (acc.is_function)
                    acc.form = -acc.form;
                else
                    acc.constant = -acc.constant;
            }
            for (std::size_t t = 1; t < e->terms.size(); ++t) {
                const Reduced<T> r = reduce_node<T>(e->terms[t].node, env, method);
                if (r.is_function != acc.is_function)
                    throw ParseError("sum mixes a constant term with a term that depends on q",
                                     e->terms[t].node->pos);
                const int sign = e->terms[t].sign;
                if (acc.is_function)
                    acc.form = sign < 0 ? acc.form - r.form : acc.form + r.form;
                else
                    acc.constant = sign < 0 ? acc.constant - r.constant : acc.constant + r.constant;
            }
            return acc;
        }
        case K::Product: {
            Quaternion<T> pre = Quaternion<T>::one();
            Quaternion<T> post = Quaternion<T>::one();
            std::optional<CanonicalForm<T>> mid;
            for (const ExprPtr<T>& f : e->factors) {
                const Reduced<T> r = reduce_node<T>(f, env, method);
                if (r.is_function) {
                    if (mid)
                        throw ParseError("nonlinear term: more than one factor depends on q",
                                         f->pos);
                    mid = r.form;
                } else if (mid) {
                    post = post * r.constant;
                } else {
                    pre = pre * r.constant;
                }
            }
            if (!mid) return {false, pre, {}};
            return {true, {}, compose(sandwich_form(pre, post, method), *mid)};
        }
        case K::Apply:
        default: {
            const CanonicalForm<T>* named = env.find(e->name);
            if (!named) throw ParseError("unknown function '" + e->name + "'", e->pos);
            const Reduced<T> arg = reduce_node<T>(e->arg, env, method);
            if (!arg.is_function)
                throw ParseError("argument of '" + e->name + "' does not depend on q",
                                 e->arg->pos);
            return {true, {}, compose(*named, arg.form)};
        }
    }
}

}  // namespace detail

/// Parses a whole program and runs the static checks (linearity, known
/// names, single definition per name).  Throws ParseError.
template <std::floating_point T = double>
Program<T> parse_program(std::string_view src) {
    return detail::Parser<T>(src).parse_program();
}

/// Reduces one expression to its canonical form against already bound
/// names.  Throws ParseError when the expression is constant.
template <std::floating_point T>
CanonicalForm<T> reduce_expression(const ExprPtr<T>& e, const Environment<T>& env,
                                   ReduceMethod method = ReduceMethod::Matrix) {
    const detail::Reduced<T> r = detail::reduce_node<T>(e, env, method);
    if (!r.is_function)
        throw ParseError("expression is constant; it does not define a function of q", e->pos);
    return r.form;
}

template <std::floating_point T = double>
struct ReducedProgram {
    Environment<T> env;
    CanonicalForm<T> principal;
};

/// Reduces every statement in order.  Named statements extend the
/// environment; the last statement's form is the program's value.
template <std::floating_point T>
ReducedProgram<T> reduce_program(const Program<T>& prog,
                                 ReduceMethod method = ReduceMethod::Matrix) {
    ReducedProgram<T> out;
    for (const Statement<T>& stmt : prog) {
        CanonicalForm<T> form = reduce_expression(stmt.expr, out.env, method);
        if (stmt.name) out.env.bind(*stmt.name, form);
        if (&stmt == &prog.back()) out.principal = form;
    }
    return out;
}

namespace detail {

/// Renders one coefficient/slot pair as (negated, body) where body is a
/// factor string like "2i*q*j", "q", "(1,2,0,0)*q".  Multi-component
/// coefficients keep their signs inside a tuple literal.
template <std::floating_point T>
std::pair<bool, std::string> format_slot(const Quaternion<T>& coeff, char unit) {
    int nonzero = 0;
    int slot = 0;
    for (int c = 0; c < 4; ++c) {
        if (coeff[c] != T(0)) {
            ++nonzero;
            slot = c;
        }
    }
    bool negated = false;
    std::string body;
    if (nonzero == 1) {
        T v = coeff[slot];
        if (v < T(0)) {
            negated = true;
            v = -v;
        }
        if (slot == 0) {
            if (v != T(1)) body = format_real(static_cast<double>(v));
        } else {
            if (v != T(1)) body = format_real(static_cast<double>(v));
            body += static_cast<char>('i' + (slot - 1));
        }
    } else {
        body = to_string(coeff);
    }
    std::string out = body.empty() ? "q" : body + "*q";
    if (unit != '\0') {
        out += '*';
        out += unit;
    }
    return {negated, out};
}

}  // namespace detail

/// Renders a canonical form as a parseable expression, dropping zero
/// slots and unit coefficients: identity prints "q", the zero function
/// prints "0*q".  Reducing the printed text yields the same form.
template <std::floating_point T>
std::string format_form(const CanonicalForm<T>& f) {
    const std::pair<const Quaternion<T>*, char> slots[4] = {
        {&f.a, '\0'}, {&f.b, 'i'}, {&f.c, 'j'}, {&f.d, 'k'}};
    std::string out;
    for (const auto& [coeff, unit] : slots) {
        if (*coeff == Quaternion<T>{}) continue;
        const auto [negated, body] = detail::format_slot(*coeff, unit);
        if (out.empty()) {
            if (negated) out += '-';
        } else {
            out += negated ? " - " : " + ";
        }
        out += body;
    }
    if (out.empty()) out = "0*q";
    return out;
}

}  // namespace lqf

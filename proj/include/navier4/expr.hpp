#pragma once

/// Arithmetic expressions over the variables x, t, u, v, z.
///
/// Grammar (EBNF):
///
///   expr    = term { ("+" | "-") term } ;
///   term    = unary { ("*" | "/") unary } ;
///   unary   = ("-" | "+") unary | power ;
///   power   = primary [ "^" unary ] ;           (* right-associative *)
///   primary = number | constant | variable
///           | function "(" expr ")" | "(" expr ")" ;
///   number  = digits [ "." digits ] [ ("e"|"E") ["+"|"-"] digits ]
///           | "." digits [ exponent ] ;
///   constant = "pi" | "e" ;
///   variable = "x" | "t" | "u" | "v" | "z" ;
///   function = "sin" | "cos" | "exp" | "abs" | "sqrt" | "ln" ;
///
/// Unary minus binds looser than "^": "-x^2" is -(x^2), and "2^-1" is 2^(-1).

#include "navier4/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace navier4 {

enum class Var : std::uint8_t { x, t, u, v, z };

inline constexpr std::array<std::string_view, 5> kVarNames{"x", "t", "u", "v", "z"};

inline std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

inline std::optional<Var> var_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kVarNames.size(); ++i)
        if (kVarNames[i] == name) return static_cast<Var>(i);
    return std::nullopt;
}

/// Set of variables an expression may reference.
class VarSet {
public:
    constexpr VarSet() = default;
    constexpr VarSet(std::initializer_list<Var> vars) {
        for (Var v : vars) bits_ |= bit(v);
    }
    constexpr bool contains(Var v) const noexcept { return (bits_ & bit(v)) != 0; }
    constexpr void insert(Var v) noexcept { bits_ |= bit(v); }
    constexpr bool subset_of(VarSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    friend constexpr bool operator==(VarSet, VarSet) = default;

private:
    static constexpr std::uint8_t bit(Var v) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(v)); }
    std::uint8_t bits_ = 0;
};

inline constexpr VarSet kAllVars{Var::x, Var::t, Var::u, Var::v, Var::z};

/// Values for x, t, u, v, z in that order.
using Bindings = std::array<double, 5>;

enum class Func : std::uint8_t { sin, cos, exp, abs, sqrt, ln };

inline constexpr std::array<std::string_view, 6> kFuncNames{"sin", "cos", "exp", "abs", "sqrt", "ln"};

/// Immutable parsed expression. Nodes live in a flat arena indexed by position.
class Expr {
public:
    enum class Kind : std::uint8_t { number, constant_pi, constant_e, variable, neg, add, sub, mul, div, pow, call };

    struct Node {
        Kind kind;
        double value = 0.0;     // number
        Var var = Var::x;       // variable
        Func func = Func::sin;  // call
        std::int32_t lhs = -1;  // operand for neg/call, left for binary
        std::int32_t rhs = -1;
    };

    Expr() = default;

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::int32_t root() const noexcept { return root_; }
    bool empty() const noexcept { return nodes_.empty(); }

    /// Variables referenced anywhere in the tree.
    VarSet variables() const noexcept {
        VarSet used;
        for (const auto& n : nodes_)
            if (n.kind == Kind::variable) used.insert(n.var);
        return used;
    }

    /// Evaluates with positional bindings. Throws EvaluationError on a domain error or a
    /// non-finite result.
    double evaluate(const Bindings& b) const {
        const double r = eval_node(root(), b);
        if (!std::isfinite(r)) throw EvaluationError("expression evaluated to a non-finite value");
        return r;
    }

    /// Evaluates with named bindings; every referenced variable must be bound.
    double evaluate(const std::map<std::string, double>& bindings) const {
        Bindings b{};
        const VarSet used = variables();
        for (std::size_t i = 0; i < kVarNames.size(); ++i) {
            const Var v = static_cast<Var>(i);
            const auto it = bindings.find(std::string(kVarNames[i]));
            if (it != bindings.end()) {
                b[i] = it->second;
            } else if (used.contains(v)) {
                throw EvaluationError("missing binding for variable '" + std::string(kVarNames[i]) + "'");
            }
        }
        return evaluate(b);
    }

    /// Fully parenthesized text that parses back to a structurally identical tree.
    std::string to_string() const { return empty() ? std::string() : print(root()); }

    friend bool operator==(const Expr& a, const Expr& b) {
        if (a.empty() || b.empty()) return a.empty() == b.empty();
        return same(a, a.root(), b, b.root());
    }

private:
    friend class ExprParser;

    std::int32_t push(Node n) {
        nodes_.push_back(n);
        return static_cast<std::int32_t>(nodes_.size()) - 1;
    }

    double eval_node(std::int32_t i, const Bindings& b) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        switch (n.kind) {
            case Kind::number: return n.value;
            case Kind::constant_pi: return std::numbers::pi;
            case Kind::constant_e: return std::numbers::e;
            case Kind::variable: return b[static_cast<std::size_t>(n.var)];
            case Kind::neg: return -eval_node(n.lhs, b);
            case Kind::add: return eval_node(n.lhs, b) + eval_node(n.rhs, b);
            case Kind::sub: return eval_node(n.lhs, b) - eval_node(n.rhs, b);
            case Kind::mul: return eval_node(n.lhs, b) * eval_node(n.rhs, b);
            case Kind::div: return eval_node(n.lhs, b) / eval_node(n.rhs, b);
            case Kind::pow: {
                const double base = eval_node(n.lhs, b);
                const double expo = eval_node(n.rhs, b);
                if (expo == 2.0) return base * base;
                return std::pow(base, expo);
            }
            case Kind::call: {
                const double a = eval_node(n.lhs, b);
                switch (n.func) {
                    case Func::sin: return std::sin(a);
                    case Func::cos: return std::cos(a);
                    case Func::exp: return std::exp(a);
                    case Func::abs: return std::abs(a);
                    case Func::sqrt:
                        if (a < 0.0) throw EvaluationError("sqrt of negative value " + std::to_string(a));
                        return std::sqrt(a);
                    case Func::ln:
                        if (!(a > 0.0)) throw EvaluationError("ln of non-positive value " + std::to_string(a));
                        return std::log(a);
                }
            }
        }
        return 0.0;
    }

    std::string print(std::int32_t i) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        switch (n.kind) {
            case Kind::number: {
                std::array<char, 32> buf{};
                auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
                return std::string(buf.data(), end);
            }
            case Kind::constant_pi: return "pi";
            case Kind::constant_e: return "e";
            case Kind::variable: return std::string(var_name(n.var));
            case Kind::neg: return "(-" + print(n.lhs) + ")";
            case Kind::call: return std::string(kFuncNames[static_cast<std::size_t>(n.func)]) + "(" + print(n.lhs) + ")";
            case Kind::add: return "(" + print(n.lhs) + " + " + print(n.rhs) + ")";
            case Kind::sub: return "(" + print(n.lhs) + " - " + print(n.rhs) + ")";
            case Kind::mul: return "(" + print(n.lhs) + " * " + print(n.rhs) + ")";
            case Kind::div: return "(" + print(n.lhs) + " / " + print(n.rhs) + ")";
            case Kind::pow: return "(" + print(n.lhs) + " ^ " + print(n.rhs) + ")";
        }
        return {};
    }

    static bool same(const Expr& a, std::int32_t i, const Expr& b, std::int32_t j) {
        const Node& x = a.nodes_[static_cast<std::size_t>(i)];
        const Node& y = b.nodes_[static_cast<std::size_t>(j)];
        if (x.kind != y.kind) return false;
        switch (x.kind) {
            case Kind::number: return x.value == y.value;
            case Kind::constant_pi:
            case Kind::constant_e: return true;
            case Kind::variable: return x.var == y.var;
            case Kind::neg: return same(a, x.lhs, b, y.lhs);
            case Kind::call: return x.func == y.func && same(a, x.lhs, b, y.lhs);
            default: return same(a, x.lhs, b, y.lhs) && same(a, x.rhs, b, y.rhs);
        }
    }

    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

/// Recursive-descent parser; see the grammar at the top of this header.
class ExprParser {
public:
    ExprParser(std::string_view text, VarSet allowed) : text_(text), allowed_(allowed) {}

    Expr parse() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
        out_.root_ = parse_expr();
        skip_ws();
        if (pos_ < text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return std::move(out_);
    }

private:
    using Kind = Expr::Kind;
    static constexpr int kMaxDepth = 200;

    struct DepthGuard {
        explicit DepthGuard(ExprParser& p) : p_(p) {
            if (++p_.depth_ > kMaxDepth) throw ParseError("expression nested too deeply", p_.pos_);
        }
        ~DepthGuard() { --p_.depth_; }
        ExprParser& p_;
    };

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::int32_t binary(Kind k, std::int32_t l, std::int32_t r) {
        Expr::Node n{k};
        n.lhs = l;
        n.rhs = r;
        return out_.push(n);
    }

    std::int32_t parse_expr() {
        DepthGuard guard(*this);
        std::int32_t lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = binary(Kind::add, lhs, parse_term());
            else if (accept('-')) lhs = binary(Kind::sub, lhs, parse_term());
            else return lhs;
        }
    }

    std::int32_t parse_term() {
        std::int32_t lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = binary(Kind::mul, lhs, parse_unary());
            else if (accept('/')) lhs = binary(Kind::div, lhs, parse_unary());
            else return lhs;
        }
    }

    std::int32_t parse_unary() {
        DepthGuard guard(*this);
        if (accept('-')) {
            Expr::Node n{Kind::neg};
            n.lhs = parse_unary();
            return out_.push(n);
        }
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    std::int32_t parse_power() {
        const std::int32_t base = parse_primary();
        if (accept('^')) return binary(Kind::pow, base, parse_unary());
        return base;
    }

    std::int32_t parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const std::int32_t inner = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (is_digit(c) || c == '.') return parse_number();
        if (is_alpha(c)) return parse_identifier();
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::int32_t parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        }
        if (pos_ - start == 1 && text_[start] == '.') throw ParseError("malformed number", start);
        // Exponent only when followed by digits, so "2e" stays a syntax error rather than 2*e.
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && is_digit(text_[p])) {
                while (p < text_.size() && is_digit(text_[p])) ++p;
                pos_ = p;
            } else {
                throw ParseError("malformed exponent", pos_);
            }
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(value))
            throw ParseError("malformed number", start);
        Expr::Node n{Kind::number};
        n.value = value;
        return out_.push(n);
    }

    std::int32_t parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]) || text_[pos_] == '_')) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        for (std::size_t f = 0; f < kFuncNames.size(); ++f) {
            if (kFuncNames[f] != name) continue;
            if (!accept('(')) throw ParseError("expected '(' after function '" + std::string(name) + "'", pos_);
            Expr::Node n{Kind::call};
            n.func = static_cast<Func>(f);
            n.lhs = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return out_.push(n);
        }
        if (name == "pi") return out_.push(Expr::Node{Kind::constant_pi});
        if (name == "e") return out_.push(Expr::Node{Kind::constant_e});
        if (const auto v = var_from_name(name)) {
            if (!allowed_.contains(*v))
                throw ParseError("variable '" + std::string(name) + "' is not allowed here", start);
            Expr::Node n{Kind::variable};
            n.var = *v;
            return out_.push(n);
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

    std::string_view text_;
    VarSet allowed_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    Expr out_;
};

inline Expr parse(std::string_view text, VarSet allowed = kAllVars) { return ExprParser(text, allowed).parse(); }

}  // namespace navier4

#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adequal/calculus.hpp"
#include "adequal/error.hpp"
#include "adequal/expr.hpp"
#include "adequal/germ.hpp"
#include "adequal/lcfield.hpp"

namespace adequal {

// Grammar (see docs/grammar.md):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = atom [ "^" unary ] ;
//   atom    = number | "eps" | "H" | "pi" | VAR
//           | ("sin" | "cos" | "sqrt") "(" expr ")" | "(" expr ")" ;
//   number  = digits [ "." digits ] ;
//
// Exponents must fold to rational constants, except "(-1)^VAR" in sequence
// rules. VAR is "x" for functions and "n" for sequence rules.

namespace detail {

// Folds a variable-free expression to an LCNumber when no step truncates.
inline std::optional<LCNumber> fold_exact(const ExprFn& f)
{
    if (f.has_variable() || f.mentions(Op::pi)) return std::nullopt;
    try {
        Approx v = evaluate(f, LCNumber(0));
        if (v.is_exact()) return v.value;
    } catch (const Error&) {
    }
    return std::nullopt;
}

class Parser {
public:
    Parser(std::string_view text, std::string variable, bool sequence_rule)
        : text_(text), var_(std::move(variable)), sequence_(sequence_rule)
    {}

    ExprFn parse()
    {
        ExprFn e = expr();
        skip_space();
        if (pos_ != text_.size()) fail({"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string found() const
    {
        if (pos_ >= text_.size()) return "end of input";
        return "'" + std::string(1, text_[pos_]) + "'";
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const { throw ParseError(pos_, std::move(expected), found()); }

    ExprFn expr()
    {
        ExprFn acc = term();
        while (true) {
            if (accept('+')) acc = fold(acc + term());
            else if (accept('-')) acc = fold(acc - term());
            else return acc;
        }
    }

    ExprFn term()
    {
        ExprFn acc = unary();
        while (true) {
            if (accept('*')) acc = fold(acc * unary());
            else if (accept('/')) acc = fold(acc / unary());
            else return acc;
        }
    }

    ExprFn unary()
    {
        if (accept('-')) return fold_neg(unary());
        return power();
    }

    static ExprFn fold_neg(const ExprFn& e)
    {
        if (e.root().op == Op::constant) return ExprFn::constant(-e.root().value);
        return -e;
    }

    ExprFn power()
    {
        ExprFn base = atom();
        skip_space();
        std::size_t at = pos_;
        if (!accept('^')) return base;
        ExprFn exponent = unary();
        if (auto folded = fold_exact(exponent)) exponent = ExprFn::constant(*folded);
        if (sequence_ && exponent.root().op == Op::variable && base.root().op == Op::constant &&
            base.root().value == LCNumber(-1))
            return ExprFn::alternating();
        if (exponent.root().op != Op::constant || !exponent.root().value.is_standard())
            throw ParseError(at + 1, {"rational constant exponent"}, "non-constant exponent");
        return fold(pow(base, exponent.root().value.coefficient(0)));
    }

    // Constant operands collapse to one constant node when the result is exact.
    static ExprFn fold(const ExprFn& e)
    {
        const ExprNode& n = e.root();
        bool constant_operands = n.lhs && n.lhs->op == Op::constant && (!n.rhs || n.rhs->op == Op::constant);
        if (!constant_operands) return e;
        if (auto v = fold_exact(e)) return ExprFn::constant(*v);
        return e;
    }

    ExprFn atom()
    {
        skip_space();
        if (pos_ >= text_.size()) fail({"number", "identifier", "("});
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (accept('(')) {
            ExprFn e = expr();
            if (!accept(')')) fail({")"});
            return e;
        }
        fail({"number", "identifier", "(", "-"});
    }

    ExprFn number()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::size_t frac = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == frac) fail({"digit"});
        }
        return ExprFn::constant(*parse_rational(text_.substr(start, pos_ - start)));
    }

    ExprFn identifier()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "eps") return ExprFn::constant(LCNumber::eps());
        if (name == "H") return ExprFn::constant(LCNumber::unlimited());
        if (name == "pi") return ExprFn::pi();
        if (name == var_) return ExprFn::variable();
        if (name == "sin" || name == "cos" || name == "sqrt") {
            if (!accept('(')) fail({"("});
            ExprFn arg = expr();
            if (!accept(')')) fail({")"});
            if (name == "sin") return sin(arg);
            if (name == "cos") return cos(arg);
            return sqrt(arg);
        }
        pos_ = start;
        throw ParseError(start, {var_, "eps", "H", "pi", "sin", "cos", "sqrt"}, "'" + name + "'");
    }

    std::string_view text_;
    std::string var_;
    bool sequence_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parsed input: raw text plus either a function of x or an exact constant.
struct ExprSource {
    std::string raw;
    std::variant<ExprFn, LCNumber> value;

    bool is_number() const noexcept { return std::holds_alternative<LCNumber>(value); }
    const LCNumber& number() const { return std::get<LCNumber>(value); }
    const ExprFn& function() const { return std::get<ExprFn>(value); }
};

/// Parses an expression in x. Variable-free input that evaluates exactly
/// becomes an LCNumber ("1 - eps"); everything else stays an ExprFn.
inline ExprSource parse_expr(std::string_view text)
{
    ExprFn f = detail::Parser(text, "x", false).parse();
    if (auto v = detail::fold_exact(f)) return {std::string(text), *v};
    return {std::string(text), f};
}

/// Parses an expression in x without folding.
inline ExprFn parse_function(std::string_view text) { return detail::Parser(text, "x", false).parse(); }

/// Parses an LCNumber literal; throws ParseError when the text is not an
/// exactly evaluable constant.
inline LCNumber parse_number(std::string_view text)
{
    ExprSource s = parse_expr(text);
    if (!s.is_number()) throw ParseError(0, {"exact constant expression"}, "'" + std::string(text) + "'");
    return s.number();
}

/// Sequence rule in n, e.g. "1/(2*pi*n)" or "((-1)^n)/(n)".
inline Germ parse_germ(std::string_view text, StancePtr stance = nullptr)
{
    ExprFn rule = detail::Parser(text, "n", true).parse();
    return germ_from_rule(rule, std::move(stance));
}

/// "(0,1)", "[0,1]", "(0,inf)", "(-inf,2]".
inline Domain parse_domain(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 5 || (s.front() != '(' && s.front() != '[') || (s.back() != ')' && s.back() != ']'))
        throw ParseError(0, {"(lo,hi)", "[lo,hi]"}, "'" + std::string(text) + "'");
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError(0, {","}, "'" + std::string(text) + "'");
    Domain d;
    d.lo_closed = s.front() == '[';
    d.hi_closed = s.back() == ']';
    std::string lo = s.substr(1, comma - 1), hi = s.substr(comma + 1, s.size() - comma - 2);
    auto endpoint = [&](const std::string& e, std::size_t at, bool lower) -> std::optional<Rational> {
        if (e == (lower ? "-inf" : "inf") || e == (lower ? "-inf" : "+inf")) return std::nullopt;
        ExprSource src = parse_expr(e);
        if (!src.is_number() || !src.number().is_standard())
            throw ParseError(at, {"rational", lower ? "-inf" : "inf"}, "'" + e + "'");
        return src.number().coefficient(0);
    };
    d.lo = endpoint(lo, 1, true);
    d.hi = endpoint(hi, comma + 1, false);
    if ((!d.lo && d.lo_closed) || (!d.hi && d.hi_closed))
        throw ParseError(0, {"open bracket at an infinite end"}, "'" + std::string(text) + "'");
    return d;
}

// ---------------------------------------------------------------------------
// Semicolon rendering
// ---------------------------------------------------------------------------

/// Standard digits, ";", then the leading infinitesimal term "±c·ε^q" or "0".
struct SemicolonForm {
    std::string standard_digits;
    std::string infinitesimal; // "−1·ε^1", "+1/2·ε^(3/2)" or "0"
    int relation = 0;          // sign of x - st(x): -1 below, +1 above

    std::string text() const { return standard_digits + " ; " + infinitesimal; }

    /// "x < st(x)" style companion note.
    std::string note() const
    {
        if (relation < 0) return "x < " + standard_digits;
        if (relation > 0) return "x > " + standard_digits;
        return "x = " + standard_digits;
    }
};

/// Truncates (does not round) the standard part to `places` decimals.
inline SemicolonForm render_semicolon(const LCNumber& x, unsigned places)
{
    SemicolonForm f;
    f.standard_digits = to_decimal_truncated(st(x), places);
    f.infinitesimal = "0";
    for (const auto& t : x.terms()) {
        if (t.exponent <= 0) continue;
        bool negative = t.coefficient.sign() < 0;
        std::string q = is_integer(t.exponent) ? to_string(t.exponent) : "(" + to_string(t.exponent) + ")";
        f.infinitesimal = std::string(negative ? "−" : "+") + to_string(abs(t.coefficient)) + "·ε^" + q;
        f.relation = negative ? -1 : 1;
        break;
    }
    return f;
}

} // namespace adequal

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "adequal/lcfield.hpp"
#include "adequal/polynomial.hpp"

namespace adequal {

enum class Op { constant, pi, variable, alternating, neg, add, sub, mul, div, pow, sin, cos, sqrt };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    Op op;
    LCNumber value;    // Op::constant
    Rational exponent; // Op::pow
    ExprPtr lhs;
    ExprPtr rhs;
};

/// Immutable expression tree in one variable. Constants are LCNumbers, so
/// eps and H can appear directly; `pi` and the alternating sign (-1)^n are
/// only meaningful for sequence rules.
class ExprFn {
public:
    ExprFn() : ExprFn(constant(0)) {}

    static ExprFn constant(const LCNumber& c) { return ExprFn(make(Op::constant, {}, {}, c)); }
    static ExprFn variable() { return ExprFn(make(Op::variable)); }
    static ExprFn pi() { return ExprFn(make(Op::pi)); }
    /// (-1)^variable
    static ExprFn alternating() { return ExprFn(make(Op::alternating)); }

    friend ExprFn operator+(const ExprFn& a, const ExprFn& b) { return ExprFn(make(Op::add, a.root_, b.root_)); }
    friend ExprFn operator-(const ExprFn& a, const ExprFn& b) { return ExprFn(make(Op::sub, a.root_, b.root_)); }
    friend ExprFn operator*(const ExprFn& a, const ExprFn& b) { return ExprFn(make(Op::mul, a.root_, b.root_)); }
    friend ExprFn operator/(const ExprFn& a, const ExprFn& b) { return ExprFn(make(Op::div, a.root_, b.root_)); }
    ExprFn operator-() const { return ExprFn(make(Op::neg, root_)); }

    friend ExprFn pow(const ExprFn& base, const Rational& exponent)
    {
        auto n = std::make_shared<ExprNode>(ExprNode{Op::pow, {}, exponent, base.root_, nullptr});
        return ExprFn(std::move(n));
    }
    friend ExprFn sin(const ExprFn& a) { return ExprFn(make(Op::sin, a.root_)); }
    friend ExprFn cos(const ExprFn& a) { return ExprFn(make(Op::cos, a.root_)); }
    friend ExprFn sqrt(const ExprFn& a) { return ExprFn(make(Op::sqrt, a.root_)); }

    const ExprNode& root() const noexcept { return *root_; }

    bool mentions(Op op) const { return mentions(*root_, op); }

    bool has_variable() const { return mentions(Op::variable) || mentions(Op::alternating); }

    /// Structural equality.
    friend bool operator==(const ExprFn& a, const ExprFn& b) { return same(*a.root_, *b.root_); }

private:
    explicit ExprFn(ExprPtr root) : root_(std::move(root)) {}

    static ExprPtr make(Op op, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr, LCNumber value = {})
    {
        return std::make_shared<ExprNode>(ExprNode{op, std::move(value), Rational(0), std::move(lhs), std::move(rhs)});
    }

    static bool mentions(const ExprNode& n, Op op)
    {
        if (n.op == op) return true;
        return (n.lhs && mentions(*n.lhs, op)) || (n.rhs && mentions(*n.rhs, op));
    }

    static bool same(const ExprNode& a, const ExprNode& b)
    {
        if (a.op != b.op || !(a.value == b.value) || a.exponent != b.exponent) return false;
        if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
        return (!a.lhs || same(*a.lhs, *b.lhs)) && (!a.rhs || same(*a.rhs, *b.rhs));
    }

    ExprPtr root_;
};

namespace detail {

inline int precedence(const ExprNode& n)
{
    switch (n.op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    case Op::constant: {
        const auto& t = n.value.terms();
        if (t.size() > 1) return 1;
        if (t.size() == 1 && (t[0].coefficient.sign() < 0)) return 3;
        if (t.size() == 1 && (t[0].exponent != 0 || !is_integer(t[0].coefficient))) return 2;
        return 5;
    }
    default: return 5;
    }
}

inline std::string render(const ExprNode& n, const std::string& var);

inline std::string wrap(const ExprNode& child, int min_prec, const std::string& var)
{
    std::string s = render(child, var);
    return precedence(child) < min_prec ? "(" + s + ")" : s;
}

inline std::string render(const ExprNode& n, const std::string& var)
{
    switch (n.op) {
    case Op::constant: return to_string(n.value);
    case Op::pi: return "pi";
    case Op::variable: return var;
    case Op::alternating: return "(-1)^" + var;
    case Op::neg: return "-" + wrap(*n.lhs, 3, var);
    case Op::add: return wrap(*n.lhs, 1, var) + " + " + wrap(*n.rhs, 2, var);
    case Op::sub: return wrap(*n.lhs, 1, var) + " - " + wrap(*n.rhs, 2, var);
    case Op::mul: return wrap(*n.lhs, 2, var) + "*" + wrap(*n.rhs, 3, var);
    case Op::div: return wrap(*n.lhs, 2, var) + "/" + wrap(*n.rhs, 3, var);
    case Op::pow: {
        std::string e = is_integer(n.exponent) && n.exponent.sign() >= 0 ? to_string(n.exponent)
                                                                          : "(" + to_string(n.exponent) + ")";
        return wrap(*n.lhs, 5, var) + "^" + e;
    }
    case Op::sin: return "sin(" + render(*n.lhs, var) + ")";
    case Op::cos: return "cos(" + render(*n.lhs, var) + ")";
    case Op::sqrt: return "sqrt(" + render(*n.lhs, var) + ")";
    }
    return "?";
}

inline std::optional<RationalPolynomial> polynomial_of(const ExprNode& n)
{
    using P = RationalPolynomial;
    auto sub = [](const ExprPtr& p) { return polynomial_of(*p); };
    switch (n.op) {
    case Op::constant:
        if (!n.value.is_standard()) return std::nullopt;
        return P(n.value.coefficient(0));
    case Op::variable: return P::variable();
    case Op::neg: {
        auto a = sub(n.lhs);
        if (!a) return std::nullopt;
        return -*a;
    }
    case Op::add:
    case Op::sub:
    case Op::mul: {
        auto a = sub(n.lhs), b = sub(n.rhs);
        if (!a || !b) return std::nullopt;
        if (n.op == Op::add) return *a + *b;
        if (n.op == Op::sub) return *a - *b;
        return *a * *b;
    }
    case Op::div: {
        auto a = sub(n.lhs), b = sub(n.rhs);
        if (!a || !b || b->degree() != 0) return std::nullopt;
        return *a * P(Rational(1) / b->leading());
    }
    case Op::pow: {
        auto a = sub(n.lhs);
        if (!a || !is_integer(n.exponent) || n.exponent.sign() < 0) return std::nullopt;
        P r(Rational(1));
        for (long long i = 0, k = n.exponent.convert_to<long long>(); i < k; ++i) r = r * *a;
        return r;
    }
    default: return std::nullopt;
    }
}

} // namespace detail

inline std::string to_string(const ExprFn& f, const std::string& var = "x") { return detail::render(f.root(), var); }

/// The rational polynomial an expression denotes, if it is one
/// (constants, x, +, -, *, division by constants, non-negative integer powers).
inline std::optional<RationalPolynomial> as_polynomial(const ExprFn& f) { return detail::polynomial_of(f.root()); }

inline ExprFn from_polynomial(const RationalPolynomial& p)
{
    ExprFn acc = ExprFn::constant(0);
    bool first = true;
    for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
        const Rational& c = p.coefficients()[i];
        if (c == 0) continue;
        ExprFn term = ExprFn::constant(c);
        if (i > 0) term = term * pow(ExprFn::variable(), Rational(static_cast<long long>(i)));
        acc = first ? term : acc + term;
        first = false;
    }
    return acc;
}

} // namespace adequal

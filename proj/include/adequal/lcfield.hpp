#pragma once

#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "adequal/error.hpp"
#include "adequal/rational.hpp"

namespace adequal {

/// One summand c * eps^q of a Levi-Civita number.
struct Term {
    Rational exponent;
    Rational coefficient;

    friend bool operator==(const Term& a, const Term& b)
    {
        return a.exponent == b.exponent && a.coefficient == b.coefficient;
    }
};

/// Relative cutoff for series-valued results: a truncated result keeps the
/// terms whose exponent exceeds its leading exponent by at most this amount.
class TruncationOrder {
public:
    TruncationOrder() : value_(8) {}

    explicit TruncationOrder(Rational k) : value_(std::move(k))
    {
        if (value_.sign() <= 0) throw Error(ErrorKind::invalid_argument, "truncation order must be positive");
    }

    const Rational& value() const noexcept { return value_; }

    friend bool operator==(const TruncationOrder& a, const TruncationOrder& b) { return a.value_ == b.value_; }

private:
    Rational value_;
};

/// Element of the truncated Levi-Civita field: a finite sum of c * eps^q with
/// rational c and q. Terms are kept sorted by strictly increasing exponent with
/// no zero coefficients, so equal numbers have identical term lists.
class LCNumber {
public:
    LCNumber() = default;

    LCNumber(const Rational& standard)
    {
        if (standard != 0) terms_.push_back({Rational(0), standard});
    }

    LCNumber(long long standard) : LCNumber(Rational(standard)) {}
    LCNumber(int standard) : LCNumber(Rational(standard)) {}

    /// Builds a canonical number from an arbitrary term list (any order,
    /// repeated exponents and zero coefficients allowed).
    static LCNumber from_terms(const std::vector<Term>& terms)
    {
        std::map<Rational, Rational> acc;
        for (const auto& t : terms) acc[t.exponent] += t.coefficient;
        return from_map(acc);
    }

    static LCNumber monomial(const Rational& coefficient, const Rational& exponent)
    {
        LCNumber r;
        if (coefficient != 0) r.terms_.push_back({exponent, coefficient});
        return r;
    }

    /// The positive infinitesimal eps.
    static LCNumber eps() { return monomial(1, 1); }

    /// The unlimited element H = 1/eps.
    static LCNumber unlimited() { return monomial(1, -1); }

    const std::vector<Term>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }

    /// True when the number is an ordinary rational (no eps terms).
    bool is_standard() const noexcept
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent == 0);
    }

    /// Leading (lowest) exponent; throws ZeroInput on 0.
    const Rational& leading_exponent() const
    {
        if (terms_.empty()) throw Error(ErrorKind::zero_input, "zero has no leading term");
        return terms_.front().exponent;
    }

    const Rational& leading_coefficient() const
    {
        if (terms_.empty()) throw Error(ErrorKind::zero_input, "zero has no leading term");
        return terms_.front().coefficient;
    }

    int sign() const noexcept { return terms_.empty() ? 0 : terms_.front().coefficient.sign(); }

    /// Coefficient of eps^q (0 when absent).
    Rational coefficient(const Rational& exponent) const
    {
        for (const auto& t : terms_)
            if (t.exponent == exponent) return t.coefficient;
        return 0;
    }

    /// Drops every term with exponent above `max_exponent`.
    LCNumber truncated_above(const Rational& max_exponent) const
    {
        LCNumber r;
        for (const auto& t : terms_)
            if (t.exponent <= max_exponent) r.terms_.push_back(t);
        return r;
    }

    LCNumber operator-() const
    {
        LCNumber r = *this;
        for (auto& t : r.terms_) t.coefficient = -t.coefficient;
        return r;
    }

    friend LCNumber operator+(const LCNumber& a, const LCNumber& b)
    {
        // Merge of two sorted lists.
        LCNumber r;
        auto i = a.terms_.begin(), j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->exponent < j->exponent)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->exponent < i->exponent) {
                r.terms_.push_back(*j++);
            } else {
                Rational c = i->coefficient + j->coefficient;
                if (c != 0) r.terms_.push_back({i->exponent, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    friend LCNumber operator-(const LCNumber& a, const LCNumber& b) { return a + (-b); }

    friend LCNumber operator*(const LCNumber& a, const LCNumber& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::map<Rational, Rational> acc;
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) acc[s.exponent + t.exponent] += s.coefficient * t.coefficient;
        return from_map(acc);
    }

    LCNumber& operator+=(const LCNumber& o) { return *this = *this + o; }
    LCNumber& operator-=(const LCNumber& o) { return *this = *this - o; }
    LCNumber& operator*=(const LCNumber& o) { return *this = *this * o; }

    friend bool operator==(const LCNumber& a, const LCNumber& b) { return a.terms_ == b.terms_; }

    /// Total order: the sign of a - b is the sign of its leading coefficient.
    friend std::strong_ordering operator<=>(const LCNumber& a, const LCNumber& b)
    {
        int s = (a - b).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    static LCNumber from_map(const std::map<Rational, Rational>& acc)
    {
        LCNumber r;
        for (const auto& [q, c] : acc)
            if (c != 0) r.terms_.push_back({q, c});
        return r;
    }

    std::vector<Term> terms_;
};

inline LCNumber add(const LCNumber& a, const LCNumber& b) { return a + b; }
inline LCNumber mul(const LCNumber& a, const LCNumber& b) { return a * b; }

inline std::strong_ordering cmp(const LCNumber& a, const LCNumber& b) { return a <=> b; }

inline LCNumber abs(const LCNumber& a) { return a.sign() < 0 ? -a : a; }

/// Multiplicative inverse. A monomial is inverted exactly. Otherwise
/// a = c eps^q (1 + u) with u infinitesimal, and the result is
/// c^-1 eps^-q sum_j (-u)^j keeping exponents up to -q + k, so the leading
/// exponent of a * inv(a) - 1 exceeds k.
inline LCNumber inv(const LCNumber& a, const TruncationOrder& order = {})
{
    if (a.is_zero()) throw Error(ErrorKind::zero_division, "inverse of zero");
    const Rational q = a.leading_exponent();
    const Rational c = a.leading_coefficient();
    const LCNumber lead_inverse = LCNumber::monomial(Rational(1) / c, -q);
    if (a.terms().size() == 1) return lead_inverse;

    // -u = 1 - a / (c eps^q)
    const LCNumber minus_u = LCNumber(1) - a * lead_inverse;
    const Rational& k = order.value();
    LCNumber sum = 1;
    LCNumber power = 1;
    while (true) {
        power = (power * minus_u).truncated_above(k);
        if (power.is_zero()) break;
        sum += power;
    }
    return sum * lead_inverse;
}

/// Division a / b via inv(b).
inline LCNumber div(const LCNumber& a, const LCNumber& b, const TruncationOrder& order = {})
{
    return a * inv(b, order);
}

/// Integer power; negative exponents go through inv.
inline LCNumber pow(const LCNumber& base, long long exponent, const TruncationOrder& order = {})
{
    if (exponent < 0) return inv(pow(base, -exponent, order), order);
    LCNumber result = 1;
    LCNumber b = base;
    auto e = static_cast<unsigned long long>(exponent);
    while (e != 0) {
        if (e & 1) result *= b;
        e >>= 1;
        if (e != 0) b *= b;
    }
    return result;
}

/// Limited: no negative exponents.
inline bool is_limited(const LCNumber& a) { return a.is_zero() || a.leading_exponent() >= 0; }

/// Standard part: the eps^0 coefficient of a limited number.
inline Rational st(const LCNumber& a)
{
    if (!is_limited(a)) throw Error(ErrorKind::unlimited, "standard part of an unlimited number");
    return a.coefficient(0);
}

/// Adequality: the difference is zero or infinitesimal.
inline bool adequal(const LCNumber& a, const LCNumber& b)
{
    LCNumber d = a - b;
    return d.is_zero() || d.leading_exponent() > 0;
}

enum class Magnitude { zero, infinitesimal, appreciable, unlimited };

inline const char* to_string(Magnitude m) noexcept
{
    switch (m) {
    case Magnitude::zero: return "zero";
    case Magnitude::infinitesimal: return "infinitesimal";
    case Magnitude::appreciable: return "appreciable";
    case Magnitude::unlimited: return "unlimited";
    }
    return "?";
}

inline Magnitude classify(const LCNumber& a)
{
    if (a.is_zero()) return Magnitude::zero;
    int s = a.leading_exponent().sign();
    if (s > 0) return Magnitude::infinitesimal;
    if (s == 0) return Magnitude::appreciable;
    return Magnitude::unlimited;
}

/// Order decomposition a = k eps^n (1 + u), u infinitesimal.
struct LeadingOrder {
    Rational coefficient; // k
    Rational exponent;    // n
    LCNumber tail;        // u

    friend bool operator==(const LeadingOrder& a, const LeadingOrder& b)
    {
        return a.coefficient == b.coefficient && a.exponent == b.exponent && a.tail == b.tail;
    }
};

inline LeadingOrder leading_order(const LCNumber& a)
{
    if (a.is_zero()) throw Error(ErrorKind::zero_input, "leading order of zero");
    const Rational& k = a.leading_coefficient();
    const Rational& n = a.leading_exponent();
    LCNumber u = a * LCNumber::monomial(Rational(1) / k, -n) - LCNumber(1);
    return {k, n, std::move(u)};
}

namespace detail {

inline std::string exponent_text(const Rational& q)
{
    if (is_integer(q)) return to_string(q);
    return "(" + to_string(q) + ")";
}

} // namespace detail

/// Canonical interchange text: terms in increasing exponent order, each
/// "c*eps^q" with exact fraction literals, the eps^0 term bare, joined by
/// " + " / " - ". Non-integer exponents are parenthesized ("eps^(1/2)").
inline std::string to_string(const LCNumber& a)
{
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : a.terms()) {
        bool negative = t.coefficient.sign() < 0;
        Rational mag = negative ? Rational(-t.coefficient) : t.coefficient;
        if (first) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        first = false;
        out += to_string(mag);
        if (t.exponent != 0) out += "*eps^" + detail::exponent_text(t.exponent);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const LCNumber& a) { return os << to_string(a); }

} // namespace adequal

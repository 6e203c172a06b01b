#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "adequal/error.hpp"

namespace adequal {

// Expression templates off: results are plain values, so std::min/max and
// auto deductions behave.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline int sign(const Rational& r) { return r.sign(); }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? Rational(-r) : r; }

/// Floor division toward negative infinity.
inline Integer floor_int(const Rational& r)
{
    Integer q = num(r) / den(r); // truncates toward zero
    if (r.sign() < 0 && q * den(r) != num(r)) --q;
    return q;
}

inline Integer ceil_int(const Rational& r) { return -floor_int(Rational(-r)); }

inline Integer pow10(unsigned k)
{
    return boost::multiprecision::pow(Integer(10), k);
}

inline Rational ipow(const Rational& base, long long exponent)
{
    if (exponent < 0) {
        if (base == 0) throw Error(ErrorKind::zero_division, "0 raised to a negative power");
        return Rational(1) / ipow(base, -exponent);
    }
    Rational result = 1;
    Rational b = base;
    auto e = static_cast<unsigned long long>(exponent);
    while (e != 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

/// Exact k-th root of a non-negative integer, if one exists.
inline std::optional<Integer> exact_root(const Integer& value, unsigned k)
{
    if (value < 0) return std::nullopt;
    if (value < 2 || k == 1) return value;
    // Binary search on [0, 2^(bits/k + 1)].
    std::size_t bits = boost::multiprecision::msb(value) + 1;
    Integer lo = 0;
    Integer hi = Integer(1) << (bits / k + 1);
    while (hi - lo > 1) {
        Integer mid = (lo + hi) >> 1;
        if (boost::multiprecision::pow(mid, k) <= value) lo = mid;
        else hi = mid;
    }
    if (boost::multiprecision::pow(lo, k) == value) return lo;
    return std::nullopt;
}

/// r^(p/q) when the result is rational; nullopt otherwise.
inline std::optional<Rational> exact_power(const Rational& r, const Rational& exponent)
{
    if (is_integer(exponent)) return ipow(r, exponent.convert_to<long long>());
    if (r.sign() < 0) return std::nullopt;
    if (r == 0) {
        if (exponent.sign() > 0) return Rational(0);
        throw Error(ErrorKind::zero_division, "0 raised to a negative power");
    }
    unsigned q = den(exponent).convert_to<unsigned>();
    auto n = exact_root(num(r), q);
    auto d = exact_root(den(r), q);
    if (!n || !d) return std::nullopt;
    return ipow(Rational(*n, *d), num(exponent).convert_to<long long>());
}

/// "p" or "p/q" in lowest terms.
inline std::string to_string(const Rational& r)
{
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

/// Decimal expansion of r truncated (toward zero) to `places` digits.
inline std::string to_decimal_truncated(const Rational& r, unsigned places)
{
    Integer scaled = abs(num(r)) * pow10(places) / den(r);
    std::string digits = scaled.str();
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = (r.sign() < 0 && scaled != 0) ? "-" : "";
    out += digits.substr(0, digits.size() - places);
    if (places != 0) out += "." + digits.substr(digits.size() - places);
    return out;
}

/// Parses "p", "-p", "p/q" or a terminating decimal "1.25"; nullopt on malformed input.
inline std::optional<Rational> parse_rational(std::string_view text)
{
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    auto all_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto n = text.substr(0, slash), d = text.substr(slash + 1);
        if (!all_digits(n) || !all_digits(d)) return std::nullopt;
        Integer denominator{std::string(d)};
        if (denominator == 0) return std::nullopt;
        value = Rational(Integer(std::string(n)), denominator);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto ip = text.substr(0, dot), fp = text.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp)) return std::nullopt;
        Integer whole(ip.empty() ? std::string("0") : std::string(ip));
        value = Rational(whole) + Rational(Integer(std::string(fp)), pow10(static_cast<unsigned>(fp.size())));
    } else {
        if (!all_digits(text)) return std::nullopt;
        value = Rational(Integer(std::string(text)));
    }
    return negative ? Rational(-value) : value;
}

} // namespace adequal

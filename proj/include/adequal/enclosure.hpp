#pragma once

#include <algorithm>
#include <string>

#include "adequal/error.hpp"
#include "adequal/rational.hpp"

namespace adequal {

/// Closed interval [lo, hi] with rational endpoints, used to enclose real
/// values that have no exact rational form (pi, sin 10, sqrt 3).
struct Interval {
    Rational lo;
    Rational hi;

    static Interval point(const Rational& r) { return {r, r}; }

    bool is_point() const { return lo == hi; }
    bool contains(const Rational& r) const { return lo <= r && r <= hi; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }

    /// +1 / -1 when the whole interval lies on one side of 0, 0 for the
    /// point 0, and nullopt when the sign is not decided.
    std::optional<int> certain_sign() const
    {
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        if (lo == 0 && hi == 0) return 0;
        return std::nullopt;
    }

    Rational mid() const { return (lo + hi) / 2; }
    Rational radius() const { return (hi - lo) / 2; }

    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    Interval operator-() const { return {-hi, -lo}; }

    friend Interval operator*(const Interval& a, const Interval& b)
    {
        Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }

    /// Throws DomainViolation when the divisor may contain 0.
    friend Interval operator/(const Interval& a, const Interval& b)
    {
        if (b.contains_zero()) throw Error(ErrorKind::domain_violation, "divisor enclosure contains 0");
        return a * Interval{Rational(1) / b.hi, Rational(1) / b.lo};
    }
};

namespace detail {

inline constexpr unsigned enclosure_digits = 50;

inline Rational round_down(const Rational& r, unsigned digits)
{
    return Rational(floor_int(r * Rational(pow10(digits))), pow10(digits));
}

inline Rational round_up(const Rational& r, unsigned digits)
{
    return Rational(ceil_int(r * Rational(pow10(digits))), pow10(digits));
}

} // namespace detail

/// Widens an interval to endpoints with at most `digits` decimals.
inline Interval round_outward(const Interval& x, unsigned digits = detail::enclosure_digits)
{
    return {detail::round_down(x.lo, digits), detail::round_up(x.hi, digits)};
}

/// Enclosure of pi to 60 decimals.
inline const Interval& pi_enclosure()
{
    static const Interval pi = [] {
        Rational lo = *parse_rational("3.141592653589793238462643383279502884197169399375105820974944");
        return Interval{lo, lo + Rational(1, pow10(60))};
    }();
    return pi;
}

inline Interval ipow(const Interval& x, long long k)
{
    if (k < 0) return Interval::point(1) / ipow(x, -k);
    Interval r = Interval::point(1);
    for (long long i = 0; i < k; ++i) r = r * x;
    if (k % 2 == 0 && x.contains_zero()) r.lo = 0; // even powers are non-negative
    return r;
}

namespace detail {

// Taylor enclosure of sin (odd = true) or cos at a rational point with
// |x| <= 4, summed in fixed point at scale 10^(enclosure_digits + 25).
// Each step truncates three times (at most one ulp each); an error carried
// from earlier steps is scaled by x^2/((j+1)(j+2)), and the product of those
// factors stays below e^4 < 55. Replacing x by its truncation costs one ulp
// (sin and cos are 1-Lipschitz). The tail after the last nonzero term is
// below that term's error bound.
inline Interval trig_at_point(const Rational& x, bool odd)
{
    const Integer scale = pow10(enclosure_digits + 25);
    const Integer fx = floor_int(x * Rational(scale));
    Integer term = odd ? fx : scale;
    Integer sum = 0;
    unsigned j = odd ? 1 : 0;
    int s = 1;
    std::size_t steps = 0;
    while (term != 0) {
        sum += s * term;
        term = term * fx / scale * fx / scale / ((j + 1) * (j + 2));
        j += 2;
        s = -s;
        ++steps;
    }
    const Integer ulps = 3 * 55 * Integer(steps + 1) + 2;
    return round_outward({Rational(sum - ulps, scale), Rational(sum + ulps, scale)});
}

inline Interval clamp_unit(Interval x)
{
    if (x.lo < -1) x.lo = -1;
    if (x.hi > 1) x.hi = 1;
    return x;
}

inline Interval trig(const Interval& x, bool odd)
{
    // sin and cos are 1-Lipschitz: f([m - r, m + r]) is inside f(m) +- r.
    const Interval& pi = pi_enclosure();
    Rational m = x.mid();
    Rational r = x.radius();
    Integer k = floor_int(m / (2 * pi.lo) + Rational(1, 2));
    Interval reduced = Interval::point(m) - Interval::point(Rational(2 * k)) * pi;
    Rational rm = reduced.mid();
    Interval v = trig_at_point(rm, odd);
    Rational widen = r + reduced.radius();
    return clamp_unit(round_outward({v.lo - widen, v.hi + widen}));
}

} // namespace detail

inline Interval sin(const Interval& x) { return detail::trig(x, true); }
inline Interval cos(const Interval& x) { return detail::trig(x, false); }

/// Throws DomainViolation when the argument may be negative.
inline Interval sqrt(const Interval& x)
{
    if (x.lo.sign() < 0) throw Error(ErrorKind::domain_violation, "sqrt of an enclosure reaching below 0");
    const unsigned d = detail::enclosure_digits;
    auto floor_sqrt = [&](const Rational& v) {
        Integer scaled = floor_int(v * Rational(pow10(2 * d)));
        return Rational(boost::multiprecision::sqrt(scaled), pow10(d));
    };
    Rational lo = floor_sqrt(x.lo);
    Rational hi = floor_sqrt(x.hi) + Rational(1, pow10(d));
    if (auto exact = exact_power(x.lo, Rational(1, 2))) lo = *exact;
    if (auto exact = exact_power(x.hi, Rational(1, 2))) hi = *exact;
    return {lo, hi};
}

inline std::string to_string(const Interval& x, unsigned places = 12)
{
    if (x.is_point()) return to_string(x.lo);
    return "[" + to_decimal_truncated(detail::round_down(x.lo, places), places) + ", " +
           to_decimal_truncated(detail::round_up(x.hi, places), places) + "]";
}

} // namespace adequal

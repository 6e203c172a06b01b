#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adequal/error.hpp"
#include "adequal/polynomial.hpp"
#include "adequal/rational.hpp"

namespace adequal {

/// One tenfold subdivision: the selected decimal cell, the bracket actually
/// checked inside it (equal to the cell unless the input interval clips it),
/// and the signs of p at the bracket ends.
struct StevinStep {
    int digit = 0;
    Rational cell_lo, cell_hi;
    Rational lo, hi;
    int sign_lo = 0, sign_hi = 0;
    int sign_changes = 0; // sign changes seen among the decile points
    bool exact_hit = false;
};

struct StevinDigits {
    bool negative = false;
    Integer integer_part = 0;
    std::vector<int> digits;
    std::vector<StevinStep> steps; // one per emitted digit until an exact hit
    std::optional<std::size_t> exact_zero_step; // 1-based step that hit a root exactly
    bool integer_exact_hit = false;             // root is the integer part itself
    int integer_sign_changes = 0;

    /// The truncated decimal as an exact rational (signed).
    Rational value() const
    {
        Rational v(integer_part);
        Rational scale = 1;
        for (int d : digits) {
            scale /= 10;
            v += scale * d;
        }
        return negative ? Rational(-v) : v;
    }
};

/// "I.d1d2...dk"
inline std::string to_string(const StevinDigits& s)
{
    std::string out = s.negative ? "-" : "";
    out += s.integer_part.str();
    if (!s.digits.empty()) {
        out += ".";
        for (int d : s.digits) out += static_cast<char>('0' + d);
    }
    return out;
}

inline const char* sign_char(int s) { return s < 0 ? "-" : (s > 0 ? "+" : "0"); }

/// "step i: [lo, hi] signs(-,+)" per emitted digit.
inline std::vector<std::string> certificate_lines(const StevinDigits& s)
{
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const auto& st = s.steps[i];
        std::string line = "step " + std::to_string(i + 1) + ": [" + to_string(st.lo) + ", " + to_string(st.hi) +
                           "] signs(" + sign_char(st.sign_lo) + "," + sign_char(st.sign_hi) + ")";
        if (st.exact_hit) line += " exact";
        if (st.sign_changes > 1) line += " sign-changes=" + std::to_string(st.sign_changes) + " leftmost";
        lines.push_back(std::move(line));
    }
    return lines;
}

namespace detail {

inline int sign_at(const RationalPolynomial& p, const Rational& x) { return p(x).sign(); }

struct Pick {
    Rational lo, hi;
    int sign_lo, sign_hi;
    bool exact_hit; // root exactly at lo
    int sign_changes;
};

// Leftmost sign change (or exact zero at an interior point) along sorted
// points whose end values are nonzero. A zero followed by a sign change
// counts as a single root.
inline std::optional<Pick> leftmost_change(const RationalPolynomial& p, const std::vector<Rational>& pts)
{
    std::optional<Pick> pick;
    int changes = 0;
    int prev = sign_at(p, pts.front());
    bool after_zero = false;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        int s = sign_at(p, pts[i]);
        if (s == 0) {
            if (i + 1 < pts.size()) {
                ++changes;
                if (!pick) pick = Pick{pts[i], pts[i], 0, 0, true, 0};
                after_zero = true;
            }
            continue;
        }
        if (s != prev && !after_zero) {
            ++changes;
            if (!pick) pick = Pick{pts[i - 1], pts[i], prev, s, false, 0};
        }
        prev = s;
        after_zero = false;
    }
    if (pick) pick->sign_changes = changes;
    return pick;
}

} // namespace detail

/// Tenfold-subdivision root extraction: each step evaluates p exactly at
/// the nine interior decile points of the current decimal cell and keeps
/// the leftmost subcell showing a sign change, one decimal digit per step.
/// An exact zero at a decile point ends the search; remaining digits are 0.
/// Negative roots are found on the mirrored polynomial p(-x).
inline StevinDigits stevin_root(const RationalPolynomial& p, Rational lo, Rational hi, std::size_t digits)
{
    if (p.degree() < 1) throw Error(ErrorKind::invalid_argument, "root search needs degree >= 1");
    if (!(lo < hi)) throw Error(ErrorKind::no_bracket, "empty interval");
    int slo = detail::sign_at(p, lo), shi = detail::sign_at(p, hi);
    if (slo * shi >= 0)
        throw Error(ErrorKind::no_bracket, "p(" + to_string(lo) + ") and p(" + to_string(hi) +
                                               ") do not have opposite signs");
    StevinDigits out;
    RationalPolynomial q = p;
    auto mirror = [&] {
        q = p.compose(RationalPolynomial(std::vector<Rational>{0, -1}));
        Rational t = lo;
        lo = -hi;
        hi = -t;
        out.negative = true;
    };
    if (hi.sign() <= 0) mirror();
    else if (lo.sign() < 0) {
        int s0 = detail::sign_at(p, 0);
        if (s0 == 0) {
            out.integer_exact_hit = true;
            out.digits.assign(digits, 0);
            return out;
        }
        if (s0 != slo) {
            hi = 0;
            mirror();
        } else lo = 0;
    }
    // lo >= 0 from here; q(lo) and q(hi) have opposite signs, except lo = 0
    // after mirroring where q(0) != 0 was checked above.

    // Integer part: leftmost change along lo < ceil(lo) < ... < floor(hi) < hi.
    std::vector<Rational> pts{lo};
    for (Integer k = ceil_int(lo); Rational(k) < hi; ++k)
        if (Rational(k) > lo) pts.push_back(Rational(k));
    pts.push_back(hi);
    auto pick = detail::leftmost_change(q, pts);
    if (!pick) throw Error(ErrorKind::no_bracket, "no sign change located");
    out.integer_sign_changes = pick->sign_changes;
    if (pick->exact_hit) {
        out.integer_part = floor_int(pick->lo);
        out.integer_exact_hit = true;
        out.digits.assign(digits, 0);
        return out;
    }
    Rational cell_lo(floor_int(pick->lo));
    Rational a = pick->lo, b = pick->hi;
    out.integer_part = floor_int(cell_lo);
    Rational width = 1;
    for (std::size_t i = 0; i < digits; ++i) {
        width /= 10;
        std::vector<Rational> dp{a};
        for (int j = 1; j <= 9; ++j) {
            Rational t = cell_lo + width * j;
            if (t > a && t < b) dp.push_back(t);
        }
        dp.push_back(b);
        auto step = detail::leftmost_change(q, dp);
        if (!step) throw Error(ErrorKind::no_bracket, "bracket lost at step " + std::to_string(i + 1));
        int digit = floor_int((step->lo - cell_lo) / width).convert_to<int>();
        StevinStep s;
        s.digit = digit;
        s.cell_lo = cell_lo + width * digit;
        s.cell_hi = s.cell_lo + width;
        s.sign_changes = step->sign_changes;
        if (step->exact_hit) {
            s.lo = s.hi = out.negative ? Rational(-step->lo) : step->lo;
            if (out.negative) {
                Rational c = s.cell_lo;
                s.cell_lo = -(c + width);
                s.cell_hi = -c;
            }
            s.exact_hit = true;
            out.digits.push_back(digit);
            out.steps.push_back(s);
            out.exact_zero_step = i + 1;
            out.digits.resize(digits, 0);
            return out;
        }
        Rational next_cell = s.cell_lo;
        if (out.negative) {
            // report in the caller's coordinates: q(x) = p(-x)
            s.cell_lo = -(next_cell + width);
            s.cell_hi = -next_cell;
            s.lo = -step->hi;
            s.hi = -step->lo;
            s.sign_lo = step->sign_hi;
            s.sign_hi = step->sign_lo;
        } else {
            s.lo = step->lo;
            s.hi = step->hi;
            s.sign_lo = step->sign_lo;
            s.sign_hi = step->sign_hi;
        }
        out.digits.push_back(digit);
        out.steps.push_back(s);
        cell_lo = next_cell;
        a = step->lo;
        b = step->hi;
    }
    return out;
}

struct BisectStep {
    Rational lo, hi;
    int sign_lo, sign_hi;
};

struct BisectTrace {
    std::vector<BisectStep> steps; // initial bracket, then one entry per halving
    std::optional<Rational> exact_root;

    Rational lo() const { return steps.back().lo; }
    Rational hi() const { return steps.back().hi; }
};

/// Classic bisection: the bracket halves at every step; an exact zero at a
/// midpoint ends the trace.
inline BisectTrace cauchy_bisect(const RationalPolynomial& p, Rational lo, Rational hi, std::size_t steps)
{
    if (!(lo < hi)) throw Error(ErrorKind::no_bracket, "empty interval");
    int slo = detail::sign_at(p, lo), shi = detail::sign_at(p, hi);
    if (slo * shi >= 0)
        throw Error(ErrorKind::no_bracket, "p(" + to_string(lo) + ") and p(" + to_string(hi) +
                                               ") do not have opposite signs");
    BisectTrace trace;
    trace.steps.push_back({lo, hi, slo, shi});
    for (std::size_t i = 0; i < steps; ++i) {
        Rational mid = (lo + hi) / 2;
        int sm = detail::sign_at(p, mid);
        if (sm == 0) {
            trace.exact_root = mid;
            trace.steps.push_back({mid, mid, 0, 0});
            break;
        }
        if (sm == slo) {
            lo = mid;
            slo = sm;
        } else {
            hi = mid;
            shi = sm;
        }
        trace.steps.push_back({lo, hi, slo, shi});
    }
    return trace;
}

} // namespace adequal

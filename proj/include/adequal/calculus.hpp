#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "adequal/enclosure.hpp"
#include "adequal/error.hpp"
#include "adequal/expr.hpp"
#include "adequal/germ.hpp"
#include "adequal/lcfield.hpp"

namespace adequal {

// ---------------------------------------------------------------------------
// Truncation-tracked Levi-Civita values
// ---------------------------------------------------------------------------

/// A Levi-Civita value together with how far it is known exactly: every
/// term with exponent <= exact_through is exact, the true value may differ
/// only by terms of higher exponent. No bound means the value is exact.
struct Approx {
    LCNumber value;
    std::optional<Rational> exact_through;

    static Approx exact(LCNumber v) { return {std::move(v), std::nullopt}; }

    bool is_exact() const noexcept { return !exact_through.has_value(); }

    bool is_exact_zero() const noexcept { return is_exact() && value.is_zero(); }

    /// Leading exponent when it is certain.
    std::optional<Rational> known_leading() const
    {
        if (value.is_zero()) return std::nullopt;
        return value.leading_exponent();
    }

    /// Lower bound for the exponents of the true value; nullopt for exact 0.
    std::optional<Rational> exponent_floor() const
    {
        if (!value.is_zero()) return value.leading_exponent();
        return exact_through;
    }

    /// Standard part, when the eps^0 coefficient is certain.
    std::optional<Rational> standard_part() const
    {
        if (!is_exact() && *exact_through < 0) return std::nullopt;
        return value.coefficient(0);
    }
};

namespace detail {

inline std::optional<Rational> min_bound(const std::optional<Rational>& a, const std::optional<Rational>& b)
{
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

inline Approx settle(LCNumber v, std::optional<Rational> through)
{
    if (through) v = v.truncated_above(*through);
    return {std::move(v), std::move(through)};
}

} // namespace detail

inline Approx operator+(const Approx& a, const Approx& b)
{
    return detail::settle(a.value + b.value, detail::min_bound(a.exact_through, b.exact_through));
}

inline Approx operator-(const Approx& a) { return {-a.value, a.exact_through}; }

inline Approx operator-(const Approx& a, const Approx& b) { return a + (-b); }

inline Approx operator*(const Approx& a, const Approx& b)
{
    if (a.is_exact_zero() || b.is_exact_zero()) return Approx::exact(0);
    std::optional<Rational> through;
    if (!a.is_exact()) through = detail::min_bound(through, *a.exact_through + *b.exponent_floor());
    if (!b.is_exact()) through = detail::min_bound(through, *b.exact_through + *a.exponent_floor());
    return detail::settle(a.value * b.value, through);
}

namespace detail {

// Leading exponent and coefficient of a value that must be nonzero.
inline std::pair<Rational, Rational> certain_lead(const Approx& a, const char* what)
{
    if (a.is_exact_zero()) throw Error(ErrorKind::zero_division, std::string(what) + " of zero");
    if (a.value.is_zero())
        throw Error(ErrorKind::insufficient_precision, std::string(what) + " of a value known only to be O(eps^" +
                                                           to_string(*a.exact_through) + ")");
    return {a.value.leading_exponent(), a.value.leading_coefficient()};
}

inline Approx inverse(const Approx& a, const TruncationOrder& order)
{
    auto [q, c] = certain_lead(a, "inverse");
    bool monomial = a.value.terms().size() == 1;
    if (a.is_exact() && monomial) return Approx::exact(inv(a.value, order));
    Rational relative = order.value();
    if (!a.is_exact()) relative = std::min(relative, *a.exact_through - q);
    return settle(inv(a.value, order), -q + relative);
}

// sum_j coefficient(j) * u^j with u infinitesimal, powers truncated above cutoff.
template <typename Coefficient>
LCNumber power_series(const LCNumber& u, Coefficient coefficient, const Rational& cutoff)
{
    LCNumber sum;
    LCNumber power = 1;
    for (unsigned j = 0;; ++j) {
        if (j > 0) power = (power * u).truncated_above(cutoff);
        if (power.is_zero()) break;
        Rational c = coefficient(j);
        if (c != 0) sum += power * LCNumber(c);
        if (j > 0 && u.is_zero()) break;
    }
    return sum.truncated_above(cutoff);
}

/// a^r for rational r through a = c eps^q (1 + u) and the binomial series.
inline Approx rational_power(const Approx& a, const Rational& r, const TruncationOrder& order)
{
    if (is_integer(r)) {
        long long k = r.convert_to<long long>();
        Approx result = Approx::exact(1);
        for (long long i = 0; i < (k < 0 ? -k : k); ++i) result = result * a;
        return k < 0 ? inverse(result, order) : result;
    }
    if (a.is_exact_zero()) {
        if (r.sign() > 0) return Approx::exact(0);
        throw Error(ErrorKind::zero_division, "0 raised to a negative power");
    }
    auto [q, c] = certain_lead(a, "fractional power");
    if (c.sign() < 0) throw Error(ErrorKind::domain_violation, "fractional power of a negative number");
    auto root = exact_power(c, r);
    if (!root) throw Error(ErrorKind::not_representable, to_string(c) + "^(" + to_string(r) + ") is irrational");
    LCNumber u = a.value * LCNumber::monomial(Rational(1) / c, -q) - LCNumber(1);
    const Rational& k = order.value();
    LCNumber series = power_series(
        u,
        [&](unsigned j) {
            Rational b = 1; // binomial(r, j)
            for (unsigned i = 0; i < j; ++i) b = b * (r - Rational(i)) / Rational(i + 1);
            return b;
        },
        k);
    LCNumber scale = LCNumber::monomial(*root, q * r);
    bool exact = a.is_exact() && u.is_zero();
    if (exact) return Approx::exact(series * scale);
    Rational relative = k;
    if (!a.is_exact()) relative = std::min(relative, *a.exact_through - q);
    return settle(series * scale, q * r + relative);
}

inline Approx trig(const Approx& y, bool is_sin, const TruncationOrder& order)
{
    if (y.is_exact_zero()) return Approx::exact(is_sin ? 0 : 1);
    if (auto lead = y.known_leading(); lead && lead->sign() < 0)
        throw Error(ErrorKind::unlimited, std::string(is_sin ? "sin" : "cos") +
                                              " of an unlimited argument has no Levi-Civita representation");
    auto s = y.standard_part();
    if (!s) throw Error(ErrorKind::insufficient_precision, "standard part of trig argument unknown");
    if (*s != 0)
        throw Error(ErrorKind::not_representable,
                    std::string(is_sin ? "sin(" : "cos(") + to_string(*s) + ") is not rational");
    // y is infinitesimal: lead exponent a > 0 (or only known to exceed its bound).
    Rational a = y.exponent_floor().value_or(Rational(0));
    const Rational& k = order.value();
    Rational cutoff = is_sin ? a + k : k;
    LCNumber v = power_series(
        y.value,
        [&](unsigned j) -> Rational {
            if ((j % 2 == 1) != is_sin) return 0;
            Rational f = 1;
            for (unsigned i = 2; i <= j; ++i) f *= i;
            return ((j / 2) % 2 == 0 ? Rational(1) : Rational(-1)) / f;
        },
        cutoff);
    std::optional<Rational> through = cutoff;
    if (!y.is_exact()) through = std::min(*through, is_sin ? *y.exact_through : *y.exact_through + a);
    return settle(v, through);
}

inline Approx eval_lc(const ExprNode& n, const LCNumber& x, const TruncationOrder& order)
{
    auto sub = [&](const ExprPtr& p) { return eval_lc(*p, x, order); };
    switch (n.op) {
    case Op::constant: return Approx::exact(n.value);
    case Op::variable: return Approx::exact(x);
    case Op::pi: throw Error(ErrorKind::not_representable, "pi has no Levi-Civita representation");
    case Op::alternating: throw Error(ErrorKind::not_representable, "(-1)^n is a sequence rule");
    case Op::neg: return -sub(n.lhs);
    case Op::add: return sub(n.lhs) + sub(n.rhs);
    case Op::sub: return sub(n.lhs) - sub(n.rhs);
    case Op::mul: return sub(n.lhs) * sub(n.rhs);
    case Op::div: {
        Approx num = sub(n.lhs);
        Approx den = sub(n.rhs);
        return num * inverse(den, order);
    }
    case Op::pow: return rational_power(sub(n.lhs), n.exponent, order);
    case Op::sin: return trig(sub(n.lhs), true, order);
    case Op::cos: return trig(sub(n.lhs), false, order);
    case Op::sqrt: return rational_power(sub(n.lhs), Rational(1, 2), order);
    }
    throw Error(ErrorKind::invalid_argument, "unknown node");
}

// Standard-part enclosure of f at a limited point. Success certifies that
// every operation is continuous at the standard values met on the way.
inline Interval eval_standard(const ExprNode& n, const Interval& x)
{
    auto sub = [&](const ExprPtr& p) { return eval_standard(*p, x); };
    switch (n.op) {
    case Op::constant: return Interval::point(st(n.value));
    case Op::variable: return x;
    case Op::pi: return pi_enclosure();
    case Op::alternating: throw Error(ErrorKind::not_representable, "(-1)^n is a sequence rule");
    case Op::neg: return -sub(n.lhs);
    case Op::add: return round_outward(sub(n.lhs) + sub(n.rhs));
    case Op::sub: return round_outward(sub(n.lhs) - sub(n.rhs));
    case Op::mul: return round_outward(sub(n.lhs) * sub(n.rhs));
    case Op::div: return round_outward(sub(n.lhs) / sub(n.rhs));
    case Op::pow: {
        Interval base = sub(n.lhs);
        if (is_integer(n.exponent)) return round_outward(ipow(base, n.exponent.convert_to<long long>()));
        if (den(n.exponent) == 2) {
            Interval root = sqrt(base);
            return round_outward(ipow(root, num(n.exponent).convert_to<long long>()));
        }
        throw Error(ErrorKind::not_representable, "fractional power without an enclosure rule");
    }
    case Op::sin: return sin(sub(n.lhs));
    case Op::cos: return cos(sub(n.lhs));
    case Op::sqrt: return sqrt(sub(n.lhs));
    }
    throw Error(ErrorKind::invalid_argument, "unknown node");
}

} // namespace detail

/// f evaluated at a Levi-Civita point, with its exactness bound.
inline Approx evaluate(const ExprFn& f, const LCNumber& x, const TruncationOrder& order = {})
{
    return detail::eval_lc(f.root(), x, order);
}

/// Enclosure of st(f(x)) for limited x.
inline Interval evaluate_standard_part(const ExprFn& f, const LCNumber& x)
{
    return detail::eval_standard(f.root(), Interval::point(st(x)));
}

// ---------------------------------------------------------------------------
// Derivatives
// ---------------------------------------------------------------------------

/// st((f(x0 + dx) - f(x0)) / dx) for a nonzero infinitesimal dx.
/// The truncation order is raised automatically until the eps^0 coefficient
/// of the quotient is certain.
inline Rational derivative_at(const ExprFn& f, const Rational& x0, const LCNumber& dx,
                              const TruncationOrder& order = {})
{
    if (dx.is_zero()) throw Error(ErrorKind::zero_division, "dx = 0");
    if (classify(dx) != Magnitude::infinitesimal)
        throw Error(ErrorKind::invalid_argument, "dx must be infinitesimal, got " + to_string(dx));
    Rational k = order.value();
    for (int attempt = 0; attempt < 6; ++attempt, k *= 2) {
        TruncationOrder o(k);
        Approx rise = evaluate(f, LCNumber(x0) + dx, o) - evaluate(f, LCNumber(x0), o);
        Approx quotient = rise * detail::inverse(Approx::exact(dx), o);
        if (auto lead = quotient.known_leading(); lead && lead->sign() < 0)
            throw Error(ErrorKind::unlimited, "difference quotient is unlimited (" + to_string(quotient.value) + ")");
        if (auto s = quotient.standard_part()) return *s;
    }
    throw Error(ErrorKind::insufficient_precision, "difference quotient not resolved at eps^0");
}

/// Derivative with several increments; all must agree.
inline Rational derivative_at(const ExprFn& f, const Rational& x0, std::span<const LCNumber> dxs,
                              const TruncationOrder& order = {})
{
    if (dxs.empty()) throw Error(ErrorKind::invalid_argument, "no increments given");
    Rational first = derivative_at(f, x0, dxs.front(), order);
    for (const auto& dx : dxs.subspan(1)) {
        Rational d = derivative_at(f, x0, dx, order);
        if (d != first)
            throw Error(ErrorKind::derivative_mismatch, "dx = " + to_string(dx) + " gives " + to_string(d) +
                                                            ", dx = " + to_string(dxs.front()) + " gives " +
                                                            to_string(first));
    }
    return first;
}

// ---------------------------------------------------------------------------
// Microcontinuity probes
// ---------------------------------------------------------------------------

enum class ProbeVerdict { microcontinuous, fails, undetermined };

inline const char* to_string(ProbeVerdict v) noexcept
{
    switch (v) {
    case ProbeVerdict::microcontinuous: return "microcontinuous";
    case ProbeVerdict::fails: return "fails";
    case ProbeVerdict::undetermined: return "undetermined";
    }
    return "?";
}

struct ProbeReport {
    ProbeVerdict verdict = ProbeVerdict::undetermined;
    std::string point;
    std::string witness;
    std::string gap;
    std::optional<LCNumber> lc_gap;
    std::optional<Germ> germ_gap;
    std::string note;
    bool routed_to_germs = false; // the LC carrier could not represent f here
};

/// "verdict | point | witness | gap"
inline std::string to_record(const ProbeReport& r)
{
    return std::string(to_string(r.verdict)) + " | " + r.point + " | " + r.witness + " | " + r.gap;
}

namespace detail {

inline ProbeReport probe_lc_witness(const ExprFn& f, const LCNumber& x, const LCNumber& w,
                                    const TruncationOrder& order)
{
    ProbeReport r;
    r.point = to_string(x);
    r.witness = to_string(w);
    try {
        Rational k = order.value();
        for (int attempt = 0; attempt < 6; ++attempt, k *= 2) {
            TruncationOrder o(k);
            Approx gap = evaluate(f, w, o) - evaluate(f, x, o);
            r.lc_gap = gap.value;
            r.gap = to_string(gap.value);
            if (!gap.is_exact()) r.gap += " + O(eps^" + detail::exponent_text(*gap.exact_through) + ")";
            if (auto lead = gap.known_leading()) {
                r.verdict = lead->sign() > 0 ? ProbeVerdict::microcontinuous : ProbeVerdict::fails;
                return r;
            }
            if (gap.is_exact() || *gap.exact_through >= 0) {
                r.verdict = ProbeVerdict::microcontinuous;
                return r;
            }
        }
        r.verdict = ProbeVerdict::undetermined;
        r.note = "gap not resolved at eps^0";
        return r;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::zero_division || e.kind() == ErrorKind::domain_violation)
            throw Error(ErrorKind::domain_violation, std::string("f undefined at probe: ") + e.what());
        r.lc_gap.reset();
        if (e.kind() == ErrorKind::unlimited) {
            r.verdict = ProbeVerdict::undetermined;
            r.routed_to_germs = true;
            r.gap = "?";
            r.note = e.what();
            return r;
        }
        if (e.kind() != ErrorKind::not_representable && e.kind() != ErrorKind::insufficient_precision) throw;
        r.note = e.what();
    }
    // The LC carrier cannot hold f's values here; certify through the
    // standard-part enclosure instead.
    if (!is_limited(x)) {
        r.verdict = ProbeVerdict::undetermined;
        r.routed_to_germs = true;
        r.gap = "?";
        return r;
    }
    try {
        Interval sx = evaluate_standard_part(f, x);
        (void)evaluate_standard_part(f, w);
        r.verdict = ProbeVerdict::microcontinuous;
        r.gap = "infinitesimal (st f = " + to_string(sx) + ")";
    } catch (const Error& e) {
        r.verdict = ProbeVerdict::undetermined;
        r.gap = "?";
        r.note = e.what();
    }
    return r;
}

// First failing witness wins; otherwise first undetermined; otherwise the
// first witness.
inline ProbeReport merge_reports(std::vector<ProbeReport> reports)
{
    for (auto& r : reports)
        if (r.verdict == ProbeVerdict::fails) return r;
    for (auto& r : reports)
        if (r.verdict == ProbeVerdict::undetermined) return r;
    return reports.front();
}

} // namespace detail

/// Probes "x' infinitely close to x implies f(x') infinitely close to f(x)"
/// at each witness x'. Witnesses must be adequal to x (InvalidArgument
/// otherwise); f undefined at a probe raises DomainViolation.
inline ProbeReport microcontinuous_at(const ExprFn& f, const LCNumber& x, std::span<const LCNumber> witnesses,
                                      const TruncationOrder& order = {})
{
    if (witnesses.empty()) throw Error(ErrorKind::invalid_argument, "no witnesses");
    std::vector<ProbeReport> reports;
    for (const auto& w : witnesses) {
        if (!adequal(x, w))
            throw Error(ErrorKind::invalid_argument, "witness " + to_string(w) + " is not adequal to " + to_string(x));
        reports.push_back(detail::probe_lc_witness(f, x, w, order));
    }
    return detail::merge_reports(std::move(reports));
}

/// Germ version of the probe: gaps are difference rules, tested for nullity.
inline ProbeReport microcontinuous_at(const ExprFn& f, const Germ& x, std::span<const Germ> witnesses)
{
    if (witnesses.empty()) throw Error(ErrorKind::invalid_argument, "no witnesses");
    std::vector<ProbeReport> reports;
    for (const auto& w : witnesses) {
        ProbeReport r;
        r.point = to_string(x);
        r.witness = to_string(w);
        Verdict close = germ_adequal(x, w);
        if (close == Verdict::no)
            throw Error(ErrorKind::invalid_argument, "witness " + r.witness + " is not adequal to " + r.point);
        if (close == Verdict::undetermined) {
            r.gap = "?";
            r.note = "adequality of the witness is undetermined";
            reports.push_back(std::move(r));
            continue;
        }
        Germ gap = germ_apply(f, w) - germ_apply(f, x);
        r.gap = to_string(gap);
        switch (germ_is_null(gap)) {
        case Verdict::yes: r.verdict = ProbeVerdict::microcontinuous; break;
        case Verdict::no: r.verdict = ProbeVerdict::fails; break;
        case Verdict::undetermined: r.verdict = ProbeVerdict::undetermined; break;
        }
        r.germ_gap = std::move(gap);
        reports.push_back(std::move(r));
    }
    return detail::merge_reports(std::move(reports));
}

// ---------------------------------------------------------------------------
// Continuity classification
// ---------------------------------------------------------------------------

/// Interval with rational or infinite endpoints; infinite ends are open.
struct Domain {
    std::optional<Rational> lo; // nullopt: -infinity
    std::optional<Rational> hi; // nullopt: +infinity
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(const LCNumber& x) const
    {
        if (lo && (lo_closed ? x < LCNumber(*lo) : x <= LCNumber(*lo))) return false;
        if (hi && (hi_closed ? x > LCNumber(*hi) : x >= LCNumber(*hi))) return false;
        return true;
    }
};

inline std::string to_string(const Domain& d)
{
    return std::string(d.lo_closed ? "[" : "(") + (d.lo ? to_string(*d.lo) : "-inf") + ", " +
           (d.hi ? to_string(*d.hi) : "inf") + (d.hi_closed ? "]" : ")");
}

enum class Continuity { continuous, uniformly_continuous, neither, undetermined };

inline const char* to_string(Continuity c) noexcept
{
    switch (c) {
    case Continuity::continuous: return "continuous";
    case Continuity::uniformly_continuous: return "uniformly_continuous";
    case Continuity::neither: return "neither";
    case Continuity::undetermined: return "undetermined";
    }
    return "?";
}

struct ContinuityResult {
    Continuity verdict;
    std::vector<ProbeReport> standard_reports;
    std::vector<ProbeReport> nonstandard_reports;
    std::optional<ProbeReport> deciding; // the report that fixed the verdict, if any
};

/// Rational grid with spacing 1/10 over the finite part of the domain
/// (one unit past a finite endpoint when the other side is unbounded),
/// open endpoints excluded.
inline std::vector<Rational> standard_probe_points(const Domain& d)
{
    Rational a = d.lo ? *d.lo : (d.hi ? *d.hi - 1 : Rational(-1));
    Rational b = d.hi ? *d.hi : (d.lo ? *d.lo + 1 : Rational(1));
    std::vector<Rational> pts;
    for (Rational p = a; p <= b; p += Rational(1, 10))
        if (d.contains(LCNumber(p))) pts.push_back(p);
    if (!pts.empty() && pts.back() != b && d.contains(LCNumber(b))) pts.push_back(b);
    return pts;
}

namespace detail {

inline Germ germ_of(const ExprFn& rule, const StancePtr& stance) { return germ_from_rule(rule, stance); }

inline ExprFn two_pi_n_plus(const Rational& multiple_of_pi)
{
    ExprFn n = ExprFn::variable();
    ExprFn pi = ExprFn::pi();
    ExprFn e = ExprFn::constant(2) * pi * n;
    if (multiple_of_pi != 0) e = e + ExprFn::constant(multiple_of_pi) * pi;
    return e;
}

struct NonstandardProbe {
    LCNumber point;
    std::vector<LCNumber> witnesses;
    ExprFn germ_point;
    std::vector<ExprFn> germ_witnesses;
};

inline std::vector<NonstandardProbe> nonstandard_probes(const Domain& d)
{
    const LCNumber eps = LCNumber::eps();
    const LCNumber eps2 = LCNumber::monomial(1, 2);
    const LCNumber big = LCNumber::unlimited();
    const ExprFn one = ExprFn::constant(1);
    const ExprFn n = ExprFn::variable();
    std::vector<NonstandardProbe> out;
    // Infinitesimal approach to an open endpoint e from inside: e +- 1/(2 pi n)
    // against e +- 1/(2 pi n + pi/2).
    auto endpoint = [&](const Rational& e, int side) {
        LCNumber s(side);
        LCNumber p = LCNumber(e) + s * eps;
        ExprFn ce = ExprFn::constant(e), cs = ExprFn::constant(side);
        out.push_back({p,
                       {LCNumber(e) + s * 2 * eps, p + s * eps2},
                       ce + cs * (one / two_pi_n_plus(0)),
                       {ce + cs * (one / two_pi_n_plus(Rational(1, 2)))}});
    };
    if (d.lo && !d.lo_closed) endpoint(*d.lo, +1);
    if (d.hi && !d.hi_closed) endpoint(*d.hi, -1);
    // Unlimited probes for unbounded sides: +-H against +-(H + 1/H).
    auto unbounded = [&](int side) {
        LCNumber s(side);
        ExprFn cs = ExprFn::constant(side);
        out.push_back({s * big,
                       {s * (big + eps), s * (big + eps2)},
                       cs * two_pi_n_plus(0),
                       {cs * (two_pi_n_plus(0) + one / n)}});
    };
    if (!d.hi) unbounded(+1);
    if (!d.lo) unbounded(-1);
    return out;
}

} // namespace detail

/// Continuity from microcontinuity at the standard grid; uniform continuity
/// from additional microcontinuity at built-in nonstandard probes. When the
/// LC carrier cannot evaluate f at a nonstandard probe, the probe is re-run
/// in the sequence model. Never overclaims: undetermined probes yield an
/// undetermined verdict.
inline ContinuityResult classify_continuity(const ExprFn& f, const Domain& d, const TruncationOrder& order = {},
                                            const StancePtr& stance = nullptr)
{
    if (d.lo && d.hi && !(*d.lo < *d.hi)) throw Error(ErrorKind::invalid_argument, "empty domain");
    ContinuityResult result{Continuity::undetermined, {}, {}, std::nullopt};
    const LCNumber eps = LCNumber::eps();
    const LCNumber eps2 = LCNumber::monomial(1, 2);

    bool undetermined = false;
    for (const Rational& s : standard_probe_points(d)) {
        LCNumber x(s);
        std::vector<LCNumber> ws;
        for (const LCNumber& w : {x + eps, x - eps, x + eps2})
            if (d.contains(w)) ws.push_back(w);
        ProbeReport r;
        try {
            r = microcontinuous_at(f, x, ws, order);
        } catch (const Error& e) {
            r.point = to_string(x);
            r.witness = "-";
            r.gap = "?";
            r.note = e.what();
        }
        if (r.verdict == ProbeVerdict::fails && !result.deciding) result.deciding = r;
        undetermined = undetermined || r.verdict == ProbeVerdict::undetermined;
        result.standard_reports.push_back(std::move(r));
    }
    if (result.deciding) {
        result.verdict = Continuity::neither;
        return result;
    }
    if (undetermined) return result;

    for (const auto& probe : detail::nonstandard_probes(d)) {
        ProbeReport r;
        try {
            r = microcontinuous_at(f, probe.point, probe.witnesses, order);
        } catch (const Error& e) {
            r.point = to_string(probe.point);
            r.witness = "-";
            r.gap = "?";
            r.note = e.what();
            r.routed_to_germs = true;
        }
        if (r.verdict == ProbeVerdict::undetermined && r.routed_to_germs) {
            try {
                Germ x = detail::germ_of(probe.germ_point, stance);
                std::vector<Germ> ws;
                for (const auto& w : probe.germ_witnesses) ws.push_back(detail::germ_of(w, stance));
                r = microcontinuous_at(f, x, ws);
            } catch (const Error& e) {
                r.note += std::string("; sequence model: ") + e.what();
            }
        }
        if (r.verdict == ProbeVerdict::fails && !result.deciding) result.deciding = r;
        undetermined = undetermined || r.verdict == ProbeVerdict::undetermined;
        result.nonstandard_reports.push_back(std::move(r));
    }
    if (result.deciding) result.verdict = Continuity::continuous;
    else if (!undetermined) result.verdict = Continuity::uniformly_continuous;
    return result;
}

// ---------------------------------------------------------------------------
// Wallis's triangle area
// ---------------------------------------------------------------------------

struct WallisCertificate {
    Rational area;
    LCNumber slice_width;  // A * eps
    LCNumber bases_length; // (B/2) * eps^-1
    LCNumber product;
    std::vector<std::string> trace;
};

/// Area of a triangle of altitude A and base B as the product of the
/// infinitesimal slice width A/inf and the total base length (B/2) inf.
inline WallisCertificate wallis_area(const Rational& altitude, const Rational& base)
{
    if (altitude.sign() <= 0 || base.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "altitude and base must be positive");
    WallisCertificate c;
    c.slice_width = LCNumber::monomial(altitude, 1);
    c.bases_length = LCNumber::monomial(base / 2, -1);
    c.product = c.slice_width * c.bases_length;
    if (!c.product.is_standard()) throw Error(ErrorKind::invalid_argument, "product did not cancel");
    c.area = c.product.coefficient(0);
    c.trace = {
        "slice width A/inf = " + to_string(c.slice_width),
        "bases length (B/2)inf = " + to_string(c.bases_length),
        "eps^1 * eps^-1 = eps^0",
        "area = " + to_string(c.product),
    };
    return c;
}

} // namespace adequal

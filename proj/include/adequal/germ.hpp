#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "adequal/enclosure.hpp"
#include "adequal/error.hpp"
#include "adequal/expr.hpp"
#include "adequal/lcfield.hpp"
#include "adequal/polynomial.hpp"

namespace adequal {

// ---------------------------------------------------------------------------
// Index sets and ultrafilter stances
// ---------------------------------------------------------------------------

/// Eventually periodic subset of N, identified up to finite sets: n belongs
/// to the set when members[n mod modulus] is set. The all-true pattern is the
/// class of cofinite sets, the all-false pattern the class of finite sets.
class IndexSet {
public:
    IndexSet(std::uint64_t modulus, std::vector<bool> members) : modulus_(modulus), members_(std::move(members))
    {
        if (modulus_ == 0 || members_.size() != modulus_)
            throw Error(ErrorKind::invalid_argument, "index set pattern must have one entry per residue");
    }

    static IndexSet residue_class(std::uint64_t residue, std::uint64_t modulus)
    {
        if (modulus == 0) throw Error(ErrorKind::invalid_argument, "modulus must be positive");
        std::vector<bool> m(modulus, false);
        m[residue % modulus] = true;
        return {modulus, std::move(m)};
    }

    static IndexSet cofinite() { return {1, {true}}; }
    static IndexSet finite() { return {1, {false}}; }

    std::uint64_t modulus() const noexcept { return modulus_; }
    bool contains_residue(std::uint64_t n) const { return members_[n % modulus_]; }

    IndexSet complement() const
    {
        std::vector<bool> m(members_.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = !members_[i];
        return {modulus_, std::move(m)};
    }

    friend IndexSet operator&(const IndexSet& a, const IndexSet& b) { return combine(a, b, true); }
    friend IndexSet operator|(const IndexSet& a, const IndexSet& b) { return combine(a, b, false); }

    /// Inclusion up to finite sets.
    bool subset_of(const IndexSet& o) const
    {
        std::uint64_t l = std::lcm(modulus_, o.modulus_);
        for (std::uint64_t n = 0; n < l; ++n)
            if (contains_residue(n) && !o.contains_residue(n)) return false;
        return true;
    }

private:
    static IndexSet combine(const IndexSet& a, const IndexSet& b, bool intersect)
    {
        std::uint64_t l = std::lcm(a.modulus_, b.modulus_);
        std::vector<bool> m(l);
        for (std::uint64_t n = 0; n < l; ++n)
            m[n] = intersect ? (a.contains_residue(n) && b.contains_residue(n))
                             : (a.contains_residue(n) || b.contains_residue(n));
        return {l, std::move(m)};
    }

    std::uint64_t modulus_;
    std::vector<bool> members_;
};

struct ResidueDecision {
    std::uint64_t residue;
    std::uint64_t modulus;
    bool member;
};

/// A finite, checkable fragment of a non-principal ultrafilter on N.
///
/// The stance records membership decisions for residue classes. Every
/// ultrafilter extending those decisions selects one residue modulo the lcm
/// of the decided moduli; the consistent residues are kept as candidates.
/// An index set is a member when it contains every candidate lifted to its
/// own modulus, a non-member when it contains none, and undecided otherwise.
/// Cofinite sets are members of every stance. Inconsistent decisions (no
/// candidate left) are rejected at construction.
class UltrafilterStance {
public:
    static constexpr std::uint64_t max_modulus = std::uint64_t(1) << 20;

    UltrafilterStance() : period_(1), candidates_{0} {}

    explicit UltrafilterStance(std::vector<ResidueDecision> decisions) : decisions_(std::move(decisions))
    {
        period_ = 1;
        for (const auto& d : decisions_) {
            if (d.modulus == 0) throw Error(ErrorKind::invalid_stance, "modulus must be positive");
            period_ = std::lcm(period_, d.modulus);
            if (period_ > max_modulus) throw Error(ErrorKind::invalid_stance, "moduli too large");
        }
        for (std::uint64_t r = 0; r < period_; ++r) {
            bool ok = true;
            for (const auto& d : decisions_)
                if (((r % d.modulus) == (d.residue % d.modulus)) != d.member) ok = false;
            if (ok) candidates_.push_back(r);
        }
        if (candidates_.empty())
            throw Error(ErrorKind::invalid_stance, "decisions contradict the filter laws (no consistent residue)");
    }

    const std::vector<ResidueDecision>& decisions() const noexcept { return decisions_; }

    /// true / false when decided, nullopt when outside the stance's algebra.
    std::optional<bool> member(const IndexSet& s) const
    {
        std::uint64_t l = std::lcm(period_, s.modulus());
        if (l > max_modulus) return std::nullopt;
        bool any_in = false, any_out = false;
        for (std::uint64_t c : candidates_)
            for (std::uint64_t n = c; n < l; n += period_) (s.contains_residue(n) ? any_in : any_out) = true;
        if (any_in && !any_out) return true;
        if (any_out && !any_in) return false;
        return std::nullopt;
    }

    friend bool operator==(const UltrafilterStance& a, const UltrafilterStance& b)
    {
        return a.period_ == b.period_ && a.candidates_ == b.candidates_;
    }

private:
    std::vector<ResidueDecision> decisions_;
    std::uint64_t period_;
    std::vector<std::uint64_t> candidates_;
};

using StancePtr = std::shared_ptr<const UltrafilterStance>;

inline StancePtr make_stance(std::vector<ResidueDecision> decisions = {})
{
    return std::make_shared<const UltrafilterStance>(std::move(decisions));
}

/// Parses "0 mod 2; not 1 mod 3" (separators ';' or ',').
inline UltrafilterStance parse_stance(const std::string& text)
{
    std::vector<ResidueDecision> out;
    std::string item;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string normalized = text;
    for (char& c : normalized)
        if (c == ',') c = ';';
    std::stringstream parts(normalized);
    while (std::getline(parts, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        std::stringstream in(item);
        std::string word;
        bool member = true;
        ResidueDecision d{};
        in >> word;
        if (word == "not") {
            member = false;
            in >> word;
        }
        std::string mod;
        try {
            d.residue = std::stoull(word);
            in >> mod >> word;
            d.modulus = std::stoull(word);
        } catch (const std::exception&) {
            throw Error(ErrorKind::invalid_stance, "malformed decision '" + item + "'");
        }
        if (mod != "mod" || in >> word) throw Error(ErrorKind::invalid_stance, "malformed decision '" + item + "'");
        d.member = member;
        out.push_back(d);
    }
    return UltrafilterStance(std::move(out));
}

inline std::string to_string(const UltrafilterStance& s)
{
    std::string out;
    for (const auto& d : s.decisions()) {
        if (!out.empty()) out += "; ";
        out += (d.member ? "" : "not ") + std::to_string(d.residue) + " mod " + std::to_string(d.modulus);
    }
    return out.empty() ? "cofinite-only" : out;
}

// ---------------------------------------------------------------------------
// Rules: periodic families of rational functions of n over Q[pi]
// ---------------------------------------------------------------------------

/// Polynomial in pi with rational coefficients. Since pi is transcendental
/// a nonzero PiNumber is a nonzero real, so zero tests are exact.
using PiNumber = Polynomial<Rational>;
/// Polynomial in n with Q[pi] coefficients.
using NPolynomial = Polynomial<PiNumber>;

inline Interval enclose(const PiNumber& p)
{
    Interval acc = Interval::point(0);
    const Interval& pi = pi_enclosure();
    for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it)
        acc = acc * pi + Interval::point(*it);
    return acc;
}

inline int sign(const PiNumber& p)
{
    if (p.is_zero()) return 0;
    auto s = enclose(p).certain_sign();
    if (!s) throw Error(ErrorKind::insufficient_precision, "pi enclosure too coarse to decide a sign");
    return *s;
}

inline double to_double(const PiNumber& p)
{
    double acc = 0;
    for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it)
        acc = acc * M_PI + it->convert_to<double>();
    return acc;
}

/// q with p == q * unit, when it exists (unit nonzero).
inline std::optional<Rational> rational_ratio(const PiNumber& p, const PiNumber& unit)
{
    if (p.is_zero()) return Rational(0);
    if (p.degree() != unit.degree()) return std::nullopt;
    Rational q = p.leading() / unit.leading();
    if (!(unit * PiNumber(q) == p)) return std::nullopt;
    return q;
}

inline std::string pi_text(const PiNumber& p) { return to_string(p, "pi"); }

/// u_n = numerator(n) / denominator(n)
struct RationalFunction {
    NPolynomial numerator;
    NPolynomial denominator;

    bool is_zero() const { return numerator.is_zero(); }
};

/// Rule whose value at n is classes[n mod period] evaluated at n.
class PeriodicRule {
public:
    explicit PeriodicRule(std::vector<RationalFunction> classes) : classes_(std::move(classes))
    {
        if (classes_.empty()) throw Error(ErrorKind::invalid_argument, "rule needs at least one residue class");
        for (auto& c : classes_) {
            if (c.denominator.is_zero()) throw Error(ErrorKind::domain_violation, "zero denominator polynomial");
            normalize(c);
        }
        collapse();
    }

    static PeriodicRule constant(const PiNumber& c)
    {
        return PeriodicRule({{NPolynomial(c), NPolynomial(PiNumber(Rational(1)))}});
    }
    static PeriodicRule constant(const Rational& c) { return constant(PiNumber(c)); }
    static PeriodicRule index() { return PeriodicRule({{NPolynomial::variable(), NPolynomial(PiNumber(Rational(1)))}}); }
    static PeriodicRule alternating()
    {
        auto one = NPolynomial(PiNumber(Rational(1)));
        return PeriodicRule({{one, one}, {-one, one}});
    }

    std::uint64_t period() const noexcept { return classes_.size(); }
    const std::vector<RationalFunction>& classes() const noexcept { return classes_; }
    const RationalFunction& at_residue(std::uint64_t n) const { return classes_[n % classes_.size()]; }

    /// The same rule with period p (a multiple of the current one).
    PeriodicRule lifted(std::uint64_t p) const
    {
        std::vector<RationalFunction> out;
        out.reserve(p);
        for (std::uint64_t r = 0; r < p; ++r) out.push_back(at_residue(r));
        return PeriodicRule(std::move(out), no_normalize{});
    }

    PeriodicRule operator-() const
    {
        auto out = classes_;
        for (auto& c : out) c.numerator = -c.numerator;
        return PeriodicRule(std::move(out), no_normalize{});
    }

    friend PeriodicRule operator+(const PeriodicRule& a, const PeriodicRule& b)
    {
        return zip(a, b, [](const RationalFunction& x, const RationalFunction& y) {
            if (x.denominator == y.denominator) return RationalFunction{x.numerator + y.numerator, x.denominator};
            return RationalFunction{x.numerator * y.denominator + y.numerator * x.denominator,
                                    x.denominator * y.denominator};
        });
    }

    friend PeriodicRule operator-(const PeriodicRule& a, const PeriodicRule& b) { return a + (-b); }

    friend PeriodicRule operator*(const PeriodicRule& a, const PeriodicRule& b)
    {
        return zip(a, b, [](const RationalFunction& x, const RationalFunction& y) {
            return RationalFunction{x.numerator * y.numerator, x.denominator * y.denominator};
        });
    }

    /// Throws DomainViolation when the divisor vanishes on a whole residue
    /// class (undefined at infinitely many indices).
    friend PeriodicRule operator/(const PeriodicRule& a, const PeriodicRule& b)
    {
        for (const auto& c : b.classes_)
            if (c.is_zero()) throw Error(ErrorKind::domain_violation, "division by a rule vanishing on a residue class");
        return zip(a, b, [](const RationalFunction& x, const RationalFunction& y) {
            return RationalFunction{x.numerator * y.denominator, x.denominator * y.numerator};
        });
    }

    /// Value at index n (n past the rule's start index) with pi as a double.
    double value_at(std::uint64_t n) const
    {
        const auto& c = at_residue(n);
        double x = static_cast<double>(n);
        auto eval = [&](const NPolynomial& p) {
            double acc = 0;
            for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it)
                acc = acc * x + to_double(*it);
            return acc;
        };
        return eval(c.numerator) / eval(c.denominator);
    }

    /// Index past which no denominator vanishes (Cauchy root bound).
    std::uint64_t start_index() const
    {
        Rational bound = 1;
        for (const auto& c : classes_) {
            const auto& d = c.denominator;
            if (d.degree() <= 0) continue;
            Interval lead = enclose(d.leading());
            Rational lead_mag = std::min(abs(lead.lo), abs(lead.hi));
            Rational m = 0;
            for (long i = 0; i < d.degree(); ++i) {
                Interval e = enclose(d.coefficients()[static_cast<std::size_t>(i)]);
                m = std::max({m, abs(e.lo), abs(e.hi)});
            }
            bound = std::max(bound, 1 + m / lead_mag);
        }
        return (floor_int(bound) + 1).convert_to<std::uint64_t>();
    }

    friend bool operator==(const PeriodicRule& a, const PeriodicRule& b)
    {
        std::uint64_t l = std::lcm(a.period(), b.period());
        for (std::uint64_t r = 0; r < l; ++r) {
            const auto& x = a.at_residue(r);
            const auto& y = b.at_residue(r);
            if (!(x.numerator * y.denominator == y.numerator * x.denominator)) return false;
        }
        return true;
    }

private:
    struct no_normalize {};
    PeriodicRule(std::vector<RationalFunction> classes, no_normalize) : classes_(std::move(classes)) {}

    template <typename F>
    static PeriodicRule zip(const PeriodicRule& a, const PeriodicRule& b, F f)
    {
        std::uint64_t l = std::lcm(a.period(), b.period());
        std::vector<RationalFunction> out;
        out.reserve(l);
        for (std::uint64_t r = 0; r < l; ++r) out.push_back(f(a.at_residue(r), b.at_residue(r)));
        return PeriodicRule(std::move(out));
    }

    static void normalize(RationalFunction& c)
    {
        if (c.numerator.is_zero()) {
            c.denominator = NPolynomial(PiNumber(Rational(1)));
            return;
        }
        // Cancel common powers of n.
        std::size_t k = std::min(c.numerator.low_order(), c.denominator.low_order());
        if (k != 0) {
            c.numerator = c.numerator.shift_down(k);
            c.denominator = c.denominator.shift_down(k);
        }
        // Make a rational leading denominator coefficient equal to 1.
        const PiNumber& lead = c.denominator.leading();
        if (lead.degree() == 0 && lead.leading() != 1) {
            NPolynomial scale(PiNumber(Rational(1) / lead.leading()));
            c.numerator = c.numerator * scale;
            c.denominator = c.denominator * scale;
        }
    }

    // Shrinks the period when the classes repeat with a shorter period.
    void collapse()
    {
        std::uint64_t p = period();
        for (std::uint64_t d = 1; d < p; ++d) {
            if (p % d != 0) continue;
            bool repeats = true;
            for (std::uint64_t r = d; r < p && repeats; ++r) {
                const auto& x = classes_[r];
                const auto& y = classes_[r % d];
                repeats = x.numerator * y.denominator == y.numerator * x.denominator;
            }
            if (repeats) {
                classes_.resize(d);
                return;
            }
        }
    }

    std::vector<RationalFunction> classes_;
};

inline std::string to_string(const NPolynomial& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        const PiNumber& c = p.coefficients()[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        std::string cs = pi_text(c);
        bool simple = c.coefficients().size() == 1 || (c.coefficients().size() == 2 && c.coefficients()[0] == 0);
        bool negative = simple && c.leading().sign() < 0;
        if (negative) cs = pi_text(-c);
        if (!simple) cs = "(" + cs + ")";
        if (!out.empty()) out += negative ? " - " : " + ";
        else if (negative) out += "-";
        if (i == 0) out += cs;
        else {
            if (cs != "1") out += cs + "*";
            out += "n";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

inline std::string to_string(const PeriodicRule& rule)
{
    auto one = [](const RationalFunction& c) {
        if (c.denominator == NPolynomial(PiNumber(Rational(1)))) return "(" + to_string(c.numerator) + ")";
        return "(" + to_string(c.numerator) + ")/(" + to_string(c.denominator) + ")";
    };
    if (rule.period() == 1) return one(rule.classes().front());
    std::string out = "[";
    for (std::uint64_t r = 0; r < rule.period(); ++r) {
        if (r != 0) out += "; ";
        out += "n%" + std::to_string(rule.period()) + "=" + std::to_string(r) + ": " + one(rule.classes()[r]);
    }
    return out + "]";
}

// ---------------------------------------------------------------------------
// Germs
// ---------------------------------------------------------------------------

/// Opaque rule evaluated numerically at sample indices.
struct SampledRule {
    std::function<double(std::uint64_t)> value_at;
    std::string description;
    std::uint64_t start = 1;
};

/// Element of the sequence model: a rule n -> u_n together with the
/// ultrafilter stance that decides which index sets count as "almost all".
class Germ {
public:
    Germ(PeriodicRule rule, StancePtr stance) : rule_(std::move(rule)), stance_(std::move(stance))
    {
        if (!stance_) stance_ = make_stance();
    }

    Germ(SampledRule rule, StancePtr stance) : rule_(std::move(rule)), stance_(std::move(stance))
    {
        if (!stance_) stance_ = make_stance();
    }

    bool is_rational() const noexcept { return std::holds_alternative<PeriodicRule>(rule_); }
    const PeriodicRule& rational_rule() const { return std::get<PeriodicRule>(rule_); }
    const SampledRule& sampled_rule() const { return std::get<SampledRule>(rule_); }
    const StancePtr& stance() const noexcept { return stance_; }

    /// First index from which every term is defined.
    std::uint64_t start_index() const
    {
        return is_rational() ? rational_rule().start_index() : sampled_rule().start;
    }

    double value_at(std::uint64_t n) const
    {
        return is_rational() ? rational_rule().value_at(n) : sampled_rule().value_at(n);
    }

private:
    std::variant<PeriodicRule, SampledRule> rule_;
    StancePtr stance_;
};

inline std::string to_string(const Germ& g)
{
    if (g.is_rational()) return "<" + to_string(g.rational_rule()) + ">";
    return "<sampled: " + g.sampled_rule().description + ">";
}

enum class Verdict { yes, no, undetermined };

inline const char* to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::undetermined: return "undetermined";
    }
    return "?";
}

enum class GermSign { negative, zero, positive, undetermined };

inline const char* to_string(GermSign s) noexcept
{
    switch (s) {
    case GermSign::negative: return "-";
    case GermSign::zero: return "0";
    case GermSign::positive: return "+";
    case GermSign::undetermined: return "undetermined";
    }
    return "?";
}

inline constexpr std::uint64_t germ_sample_indices[] = {1000, 10000, 100000, 1000000};

namespace detail {

inline bool class_is_null(const RationalFunction& c)
{
    return c.is_zero() || c.numerator.degree() < c.denominator.degree();
}

inline int class_sign(const RationalFunction& c)
{
    if (c.is_zero()) return 0;
    return sign(c.numerator.leading()) * sign(c.denominator.leading());
}

// Sampled null test: a monotone envelope that decays by two orders of
// magnitude over the sampled decades means null; no decay at all means not
// null; anything else is left open.
inline Verdict sampled_null(const Germ& g)
{
    double v[4];
    for (int i = 0; i < 4; ++i) {
        std::uint64_t n = germ_sample_indices[i];
        if (n < g.start_index()) return Verdict::undetermined;
        v[i] = std::fabs(g.value_at(n));
        if (!std::isfinite(v[i])) return Verdict::undetermined;
    }
    bool monotone = v[1] <= v[0] && v[2] <= v[1] && v[3] <= v[2];
    if (v[3] == 0 && v[2] == 0) return Verdict::yes;
    if (monotone && v[3] <= v[0] / 100) return Verdict::yes;
    if (v[3] >= v[0] / 10 && v[3] >= 1e-6 && !(monotone && v[3] < v[0])) return Verdict::no;
    return Verdict::undetermined;
}

} // namespace detail

/// Null sequence test. Rational rules: every residue class has numerator
/// degree below denominator degree (exact). Sampled rules: heuristic over
/// n = 10^3 .. 10^6, possibly undetermined.
inline Verdict germ_is_null(const Germ& g)
{
    if (!g.is_rational()) return detail::sampled_null(g);
    for (const auto& c : g.rational_rule().classes())
        if (!detail::class_is_null(c)) return Verdict::no;
    return Verdict::yes;
}

/// Sign in the ultrapower: the sign taken on a member index set.
/// Throws StanceUndecided when the stance does not decide the relevant sets.
inline GermSign germ_sign(const Germ& g)
{
    if (!g.is_rational()) return GermSign::undetermined;
    const auto& rule = g.rational_rule();
    std::vector<bool> pos(rule.period()), neg(rule.period()), zero(rule.period());
    for (std::uint64_t r = 0; r < rule.period(); ++r) {
        int s = detail::class_sign(rule.classes()[r]);
        pos[r] = s > 0;
        neg[r] = s < 0;
        zero[r] = s == 0;
    }
    const auto& stance = *g.stance();
    const std::pair<std::vector<bool>*, GermSign> options[] = {
        {&pos, GermSign::positive}, {&neg, GermSign::negative}, {&zero, GermSign::zero}};
    for (const auto& [set, s] : options)
        if (stance.member(IndexSet(rule.period(), *set)) == std::optional<bool>(true)) return s;
    throw Error(ErrorKind::stance_undecided,
                "the stance (" + to_string(stance) + ") does not decide the sign sets of " + to_string(g));
}

namespace detail {

inline void require_same_stance(const Germ& g, const Germ& h)
{
    if (g.stance() != h.stance() && !(*g.stance() == *h.stance()))
        throw Error(ErrorKind::invalid_argument, "germs carry different ultrafilter stances");
}

inline std::uint64_t common_start(const Germ& g, const Germ& h)
{
    return std::max(g.start_index(), h.start_index());
}

} // namespace detail

inline Germ operator-(const Germ& g, const Germ& h)
{
    detail::require_same_stance(g, h);
    if (g.is_rational() && h.is_rational()) return Germ(g.rational_rule() - h.rational_rule(), g.stance());
    SampledRule s{[g, h](std::uint64_t n) { return g.value_at(n) - h.value_at(n); },
                  to_string(g) + " - " + to_string(h), detail::common_start(g, h)};
    return Germ(std::move(s), g.stance());
}

/// Equal up to an infinitesimal: the difference rule is null.
inline Verdict germ_adequal(const Germ& g, const Germ& h) { return germ_is_null(g - h); }

/// Standard part of a limited rational germ under its stance.
/// Throws Unlimited, StanceUndecided, or NotRepresentable (irrational limit).
inline Rational germ_standard_part(const Germ& g)
{
    if (!g.is_rational()) throw Error(ErrorKind::not_representable, "standard part of a sampled germ");
    const auto& rule = g.rational_rule();
    auto limit = [](const RationalFunction& c) -> Rational {
        if (c.is_zero() || c.numerator.degree() < c.denominator.degree()) return 0;
        if (c.numerator.degree() > c.denominator.degree()) throw Error(ErrorKind::unlimited, "germ is unlimited");
        auto q = rational_ratio(c.numerator.leading(), c.denominator.leading());
        if (!q) throw Error(ErrorKind::not_representable, "limit is not rational");
        return *q;
    };
    try {
        Rational first = limit(rule.classes().front());
        bool all_same = true;
        for (const auto& c : rule.classes()) all_same = all_same && limit(c) == first;
        if (all_same) return first;
    } catch (const Error&) {
        if (rule.period() == 1) throw;
    }
    for (std::uint64_t r = 0; r < rule.period(); ++r)
        if (g.stance()->member(IndexSet::residue_class(r, rule.period())) == std::optional<bool>(true))
            return limit(rule.classes()[r]);
    throw Error(ErrorKind::stance_undecided, "stance does not select a residue class of " + to_string(g));
}

/// Asymptotic expansion of a period-1 rule with rational coefficients, as
/// the Levi-Civita number obtained by substituting n = H = 1/eps.
inline LCNumber to_lc(const Germ& g, const TruncationOrder& order = {})
{
    if (!g.is_rational() || g.rational_rule().period() != 1)
        throw Error(ErrorKind::not_representable, "only period-1 rational rules have an LC expansion");
    const auto& c = g.rational_rule().classes().front();
    auto to_rat = [](const NPolynomial& p) {
        std::vector<Rational> v;
        for (const auto& k : p.coefficients()) {
            if (k.degree() > 0) throw Error(ErrorKind::not_representable, "pi-valued coefficient");
            v.push_back(k.coefficient(0));
        }
        return RationalPolynomial(std::move(v));
    };
    LCNumber h = LCNumber::unlimited();
    return div(to_rat(c.numerator)(h), to_rat(c.denominator)(h), order);
}

namespace detail {

// sin(pi t) for rational t when it is rational (t a multiple of 1/6 or 1/2).
inline std::optional<Rational> sin_pi_rational(const Rational& t)
{
    Rational r = t - Rational(2 * floor_int(t / 2)); // r in [0, 2)
    if (!is_integer(r * 6)) return std::nullopt;
    int sixths = (r * 6).convert_to<int>();
    static const std::optional<Rational> table[12] = {
        Rational(0),  Rational(1, 2),  std::nullopt, Rational(1),    std::nullopt, Rational(1, 2),
        Rational(0), Rational(-1, 2), std::nullopt, Rational(-1),   std::nullopt, Rational(-1, 2)};
    return table[sixths];
}

struct NotExact {};

// sin or cos of a rule that is pi*(q1 n + q0) on every residue class.
inline PeriodicRule trig_of_pi_linear(const PeriodicRule& arg, bool is_sin)
{
    struct Linear {
        Rational q1, q0;
    };
    std::vector<Linear> lin;
    const PiNumber pi_unit(std::vector<Rational>{0, 1});
    std::uint64_t extra = 1;
    for (const auto& c : arg.classes()) {
        if (c.denominator.degree() != 0 || c.numerator.degree() > 1) throw NotExact{};
        PiNumber unit = pi_unit * c.denominator.leading();
        auto q1 = rational_ratio(c.numerator.coefficient(1), unit);
        auto q0 = rational_ratio(c.numerator.coefficient(0), unit);
        if (!q1 || !q0) throw NotExact{};
        // Sub-period s with q1 * period * s an even integer.
        Rational half = *q1 * Rational(arg.period()) / 2;
        extra = std::lcm(extra, den(half).convert_to<std::uint64_t>());
        lin.push_back({*q1, *q0});
    }
    std::uint64_t p = arg.period() * extra;
    if (p > UltrafilterStance::max_modulus) throw NotExact{};
    std::vector<RationalFunction> out;
    for (std::uint64_t r = 0; r < p; ++r) {
        const Linear& l = lin[r % arg.period()];
        Rational t = l.q1 * Rational(r) + l.q0 + (is_sin ? Rational(0) : Rational(1, 2));
        auto v = sin_pi_rational(t);
        if (!v) throw NotExact{};
        out.push_back({NPolynomial(PiNumber(*v)), NPolynomial(PiNumber(Rational(1)))});
    }
    return PeriodicRule(std::move(out));
}

inline bool eventually_negative_somewhere(const PeriodicRule& r)
{
    for (const auto& c : r.classes())
        if (class_sign(c) < 0) return true;
    return false;
}

// Exact evaluation over periodic rules; throws NotExact when a node leaves
// the rational-function class.
inline PeriodicRule eval_exact(const ExprNode& n, const PeriodicRule& x)
{
    auto sub = [&](const ExprPtr& p) { return eval_exact(*p, x); };
    switch (n.op) {
    case Op::constant:
        if (!n.value.is_standard())
            throw Error(ErrorKind::not_representable, "eps/H constants have no sequence model here");
        return PeriodicRule::constant(n.value.coefficient(0));
    case Op::pi: return PeriodicRule::constant(PiNumber(std::vector<Rational>{0, 1}));
    case Op::variable: return x;
    case Op::alternating: return PeriodicRule::alternating();
    case Op::neg: return -sub(n.lhs);
    case Op::add: return sub(n.lhs) + sub(n.rhs);
    case Op::sub: return sub(n.lhs) - sub(n.rhs);
    case Op::mul: return sub(n.lhs) * sub(n.rhs);
    case Op::div: return sub(n.lhs) / sub(n.rhs);
    case Op::pow: {
        PeriodicRule base = sub(n.lhs);
        if (!is_integer(n.exponent)) {
            if (eventually_negative_somewhere(base))
                throw Error(ErrorKind::domain_violation, "fractional power of an eventually negative rule");
            throw NotExact{};
        }
        long long k = n.exponent.convert_to<long long>();
        PeriodicRule r = PeriodicRule::constant(Rational(1));
        for (long long i = 0; i < (k < 0 ? -k : k); ++i) r = r * base;
        return k < 0 ? PeriodicRule::constant(Rational(1)) / r : r;
    }
    case Op::sin:
    case Op::cos: return trig_of_pi_linear(sub(n.lhs), n.op == Op::sin);
    case Op::sqrt: {
        PeriodicRule base = sub(n.lhs);
        if (eventually_negative_somewhere(base))
            throw Error(ErrorKind::domain_violation, "sqrt of an eventually negative rule");
        throw NotExact{};
    }
    }
    throw NotExact{};
}

inline double eval_double(const ExprNode& n, double x, std::uint64_t index)
{
    auto sub = [&](const ExprPtr& p) { return eval_double(*p, x, index); };
    switch (n.op) {
    case Op::constant:
        if (!n.value.is_standard())
            throw Error(ErrorKind::not_representable, "eps/H constants have no sequence model here");
        return n.value.coefficient(0).convert_to<double>();
    case Op::pi: return M_PI;
    case Op::variable: return x;
    case Op::alternating: return index % 2 == 0 ? 1.0 : -1.0;
    case Op::neg: return -sub(n.lhs);
    case Op::add: return sub(n.lhs) + sub(n.rhs);
    case Op::sub: return sub(n.lhs) - sub(n.rhs);
    case Op::mul: return sub(n.lhs) * sub(n.rhs);
    case Op::div: return sub(n.lhs) / sub(n.rhs);
    case Op::pow: return std::pow(sub(n.lhs), n.exponent.convert_to<double>());
    case Op::sin: return std::sin(sub(n.lhs));
    case Op::cos: return std::cos(sub(n.lhs));
    case Op::sqrt: return std::sqrt(sub(n.lhs));
    }
    return std::nan("");
}

} // namespace detail

/// Termwise application f(<u_n>) = <f(u_n)>. The result stays a rational
/// rule when the composition does (including sin/cos of rules of the form
/// pi*(q1 n + q0), evaluated exactly); otherwise it is a sampled rule.
/// Throws DomainViolation when f is undefined on infinitely many terms.
inline Germ germ_apply(const ExprFn& f, const Germ& g)
{
    if (g.is_rational()) {
        try {
            return Germ(detail::eval_exact(f.root(), g.rational_rule()), g.stance());
        } catch (const detail::NotExact&) {
        }
    }
    SampledRule s{[f, g](std::uint64_t n) { return detail::eval_double(f.root(), g.value_at(n), n); },
                  to_string(f, "u") + " with u = " + to_string(g), g.start_index()};
    bool defined_somewhere = false;
    for (std::uint64_t n : germ_sample_indices)
        if (n >= s.start && std::isfinite(s.value_at(n))) defined_somewhere = true;
    if (!defined_somewhere) throw Error(ErrorKind::domain_violation, "f is undefined at every sampled index");
    return Germ(std::move(s), g.stance());
}

/// Germ of the sequence rule given as an expression in the index n.
inline Germ germ_from_rule(const ExprFn& rule, StancePtr stance = nullptr)
{
    return germ_apply(rule, Germ(PeriodicRule::index(), std::move(stance)));
}

} // namespace adequal

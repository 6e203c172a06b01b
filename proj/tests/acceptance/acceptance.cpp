// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adequal/adequal.hpp"
#include "adequal_cli.hpp"
#include "support/oracles.hpp"

using namespace adequal;

namespace {

// Time budgets in milliseconds, one per criterion.
constexpr double budget_derivative_ms = 1;
constexpr double budget_oracle_suite_ms = 1000;
constexpr double budget_field_laws_ms = 10000;
constexpr double budget_transfer_ms = 5000;
constexpr double budget_microcontinuity_ms = 1000;
constexpr double budget_stevin_each_ms = 1000;
constexpr double budget_sweep_ms = 30000;
constexpr double budget_wallis_ms = 1000;

// Exact criteria: zero tolerance everywhere. The bisection oracle width
// bound is 10^-14.
const Rational bisect_width_bound = Rational(1, pow10(14));

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what)
    {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
double timed(F&& f)
{
    auto start = Clock::now();
    f();
    return elapsed_ms(start);
}

Outcome derivative_reproduction()
{
    Outcome o;
    const ExprFn f = parse_function("x^2");
    const LCNumber dx = -LCNumber::eps();
    Rational d;
    double ms = timed([&] { d = derivative_at(f, 1, dx); });
    std::ostringstream out, err;
    int code = cli::run({"diff", "x^2", "--at", "1", "--dx", "-eps"}, out, err);
    o.require(d == 2, "derivative_at returned " + to_string(d));
    o.require(code == 0 && out.str() == "2\n", "CLI printed '" + out.str() + "'");
    o.require(ms < budget_derivative_ms, "took " + std::to_string(ms) + " ms");
    o.detail = o.ok ? "d/dx x^2 at 1 with dx=-eps is 2 (" + std::to_string(ms) + " ms)" : o.detail;
    return o;
}

Outcome derivative_oracle_suite()
{
    Outcome o;
    std::mt19937_64 rng(20260101);
    const LCNumber e = LCNumber::eps();
    const std::vector<LCNumber> dxs{e, -e, e * e};
    std::size_t checks = 0;
    double ms = timed([&] {
        for (int i = 0; i < 50; ++i) {
            auto c = oracle::random_polynomial(rng, 8);
            Rational x0 = oracle::random_rational(rng, 50, 13);
            Rational expected = oracle::horner(oracle::symbolic_derivative(c), x0);
            ExprFn f = from_polynomial(RationalPolynomial(c));
            for (const auto& dx : dxs) {
                ++checks;
                Rational got = derivative_at(f, x0, dx);
                o.require(got == expected, "mismatch for " + oracle::polynomial_text(c) + " at " + to_string(x0));
            }
        }
    });
    o.require(ms < budget_oracle_suite_ms, "took " + std::to_string(ms) + " ms");
    if (o.ok) o.detail = std::to_string(checks) + " exact matches (" + std::to_string(ms) + " ms)";
    return o;
}

Outcome field_laws()
{
    Outcome o;
    LCSampler sampler(314159);
    std::size_t failures = 0;
    double ms = timed([&] {
        for (int i = 0; i < 10000; ++i) {
            auto [x, y, z] = sampler.triple();
            bool good = x + y == y + x && x * y == y * x && (x + y) + z == x + (y + z) &&
                        (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z;
            if (is_limited(x) && is_limited(y)) {
                good = good && st(x + y) == st(x) + st(y) && st(x * y) == st(x) * st(y);
            }
            LCNumber la = sampler.limited(), lb = sampler.limited();
            good = good && st(la + lb) == st(la) + st(lb) && st(la * lb) == st(la) * st(lb);
            if (!good) ++failures;
        }
    });
    o.require(failures == 0, std::to_string(failures) + " failing triples");
    o.require(ms < budget_field_laws_ms, "took " + std::to_string(ms) + " ms");
    if (o.ok) o.detail = "10000 triples, 0 failures (" + std::to_string(ms) + " ms)";
    return o;
}

Outcome transfer_schema_check()
{
    Outcome o;
    LCSampler sampler(27182818);
    auto samples = sampler.triples(1000);
    bool unlimited = false, infinitesimal = false;
    for (const auto& t : samples)
        for (const auto& x : t) {
            unlimited = unlimited || classify(x) == Magnitude::unlimited;
            infinitesimal = infinitesimal || classify(x) == Magnitude::infinitesimal;
        }
    TransferReport report;
    double ms = timed([&] { report = check_transfer_schema(samples); });
    o.require(unlimited && infinitesimal, "samples lack unlimited or infinitesimal components");
    o.require(report.holds(), std::to_string(report.violations.size()) + " violations");
    o.require(report.evaluations == samples.size() * transfer_schema.size(), "not every identity evaluated");
    o.require(ms < budget_transfer_ms, "took " + std::to_string(ms) + " ms");
    if (o.ok)
        o.detail = std::to_string(transfer_schema.size()) + " identities x 1000 samples, 0 violations (" +
                   std::to_string(ms) + " ms)";
    return o;
}

Outcome microcontinuity_counterexamples()
{
    Outcome o;
    ContinuityResult osc, sq;
    double ms = timed([&] {
        osc = classify_continuity(parse_function("sin(1/x)"), parse_domain("(0,1)"));
        sq = classify_continuity(parse_function("x^2"), parse_domain("(0,inf)"));
    });
    o.require(osc.verdict == Continuity::continuous, std::string("sin(1/x) on (0,1): ") + to_string(osc.verdict));
    o.require(osc.deciding && osc.deciding->germ_gap, "sin(1/x): no germ witness");
    if (osc.deciding && osc.deciding->germ_gap) {
        const Germ& gap = *osc.deciding->germ_gap;
        o.require(germ_is_null(gap) == Verdict::no, "sin(1/x): gap is null");
        o.require(abs(germ_standard_part(gap)) == 1, "sin(1/x): |st(gap)| != 1");
        o.require(germ_is_null(parse_germ("1/(2*pi*n)")) == Verdict::yes, "probe point is not infinitesimal");
    }
    o.require(sq.verdict == Continuity::continuous, std::string("x^2 on (0,inf): ") + to_string(sq.verdict));
    o.require(sq.deciding && sq.deciding->lc_gap, "x^2: no LC witness");
    if (sq.deciding && sq.deciding->lc_gap) {
        const LCNumber H = LCNumber::unlimited(), w = H + inv(H);
        o.require(*sq.deciding->lc_gap == w * w - H * H, "x^2: gap differs from (H+1/H)^2 - H^2");
        o.require(st(*sq.deciding->lc_gap) == 2, "x^2: st(gap) != 2");
    }
    o.require(ms < budget_microcontinuity_ms, "took " + std::to_string(ms) + " ms");
    if (o.ok) o.detail = "both continuous, not uniformly; |st gap| = 1 and st gap = 2 (" + std::to_string(ms) + " ms)";
    return o;
}

Outcome stevin_digits()
{
    Outcome o;
    struct Case {
        std::string poly, expected;
    };
    std::vector<Case> cases{{"x^2 - 2", "1.414213562373"}, {"x^3 - 2", "1.259921049894"}};
    std::string timings;
    for (const auto& c : cases) {
        RationalPolynomial p = *as_polynomial(parse_function(c.poly));
        StevinDigits s;
        double ms = timed([&] { s = stevin_root(p, 1, 2, 12); });
        BisectTrace t;
        std::size_t steps = 0;
        Rational width = 1;
        while (width >= bisect_width_bound) {
            width /= 2;
            ++steps;
        }
        t = cauchy_bisect(p, 1, 2, steps);
        o.require(t.hi() - t.lo() < bisect_width_bound, "bisection oracle too wide");
        std::string bisect_digits = to_decimal_truncated(t.lo(), 12);
        o.require(to_string(s) == c.expected, c.poly + ": " + to_string(s));
        o.require(to_string(s) == bisect_digits, c.poly + ": bisection oracle says " + bisect_digits);
        o.require(s.steps.size() == 12, c.poly + ": expected 12 certified steps");
        Rational expected_width = Rational(1, 10);
        for (const auto& step : s.steps) {
            o.require(step.cell_hi - step.cell_lo == expected_width, c.poly + ": contraction is not 1/10");
            o.require(p(step.lo).sign() * p(step.hi).sign() < 0, c.poly + ": certificate lacks a sign change");
            expected_width /= 10;
        }
        o.require(ms < budget_stevin_each_ms, c.poly + " took " + std::to_string(ms) + " ms");
        timings += (timings.empty() ? "" : ", ") + std::to_string(ms) + " ms";
    }
    if (o.ok) o.detail = "1.414213562373 and 1.259921049894 match bisection, x1/10 per step (" + timings + ")";
    return o;
}

Outcome irrationality_sweep()
{
    Outcome o;
    SweepSummary s;
    double ms = timed([&] { s = sweep(1000); });
    o.require(s.pairs > 0 && s.all_verified(),
              std::to_string(s.verified) + " of " + std::to_string(s.pairs) + " verified");
    o.require(s.min_ratio > 1, "minimum ratio " + to_decimal_truncated(s.min_ratio, 12));
    // independent 80-digit decimal oracle at the reported minimum
    oracle::Decimal m(s.argmin_m), n(s.argmin_n);
    oracle::Decimal ratio = abs(oracle::sqrt2_decimal() - m / n) * 3 * n * n;
    o.require(ratio > 1, "decimal oracle ratio at argmin is not > 1");
    o.require(ms < budget_sweep_ms, "took " + std::to_string(ms) + " ms");
    if (o.ok)
        o.detail = std::to_string(s.pairs) + " pairs verified, min ratio " + to_decimal_truncated(s.min_ratio, 6) +
                   " at " + std::to_string(s.argmin_m) + "/" + std::to_string(s.argmin_n) + " (" +
                   std::to_string(ms) + " ms)";
    return o;
}

Outcome wallis()
{
    Outcome o;
    std::mt19937_64 rng(1655);
    std::uniform_int_distribution<int> num(1, 999), den(1, 97);
    double ms = timed([&] {
        for (int i = 0; i < 100; ++i) {
            Rational a(num(rng), den(rng)), b(num(rng), den(rng));
            WallisCertificate c = wallis_area(a, b);
            o.require(c.area == a * b / 2, "area mismatch for " + to_string(a) + ", " + to_string(b));
            o.require(c.slice_width.terms().size() == 1 && c.slice_width.leading_exponent() == 1 &&
                          c.bases_length.leading_exponent() == -1 && c.product.is_standard() && !c.trace.empty(),
                      "cancellation certificate missing");
        }
    });
    o.require(ms < budget_wallis_ms, "took " + std::to_string(ms) + " ms");
    if (o.ok) o.detail = "100 exact areas with eps^1 * eps^-1 certificates (" + std::to_string(ms) + " ms)";
    return o;
}

Outcome round_trip()
{
    Outcome o;
    LCSampler sampler(4242);
    for (int i = 0; i < 1000; ++i) {
        LCNumber v = sampler.number(5);
        o.require(parse_number(to_string(v)) == v, "round trip failed for " + to_string(v));
    }
    std::string text = render_semicolon(1 - LCNumber::eps(), 6).text();
    o.require(text == "1.000000 ; −1·ε^1", "semicolon form '" + text + "'");
    if (o.ok) o.detail = "1000 round trips; semicolon form " + text;
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"derivative reproduction", derivative_reproduction},
        {"derivative oracle suite", derivative_oracle_suite},
        {"field laws", field_laws},
        {"transfer schema", transfer_schema_check},
        {"microcontinuity counterexamples", microcontinuity_counterexamples},
        {"stevin digits", stevin_digits},
        {"irrationality sweep", irrationality_sweep},
        {"wallis area", wallis},
        {"round trip", round_trip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
                  << "\n";
    }
    return failed == 0 ? 0 : 1;
}

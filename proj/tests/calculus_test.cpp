#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "adequal/adequal.hpp"
#include "support/oracles.hpp"

using namespace adequal;

namespace {

const LCNumber e = LCNumber::eps();
const LCNumber H = LCNumber::unlimited();

ExprFn fn(const std::string& text) { return parse_function(text); }

ExprFn poly_fn(const oracle::Coefficients& c) { return fn(oracle::polynomial_text(c)); }

} // namespace

TEST(Evaluate, PolynomialAtInfinitesimalIsExact)
{
    Approx v = evaluate(fn("x^2"), 1 - e);
    EXPECT_TRUE(v.is_exact());
    EXPECT_EQ(v.value, 1 - 2 * e + LCNumber::monomial(1, 2));
}

TEST(Evaluate, ReciprocalIsTruncatedAndSaysSo)
{
    Approx v = evaluate(fn("1/(1+x)"), e, TruncationOrder(3));
    ASSERT_FALSE(v.is_exact());
    EXPECT_EQ(*v.exact_through, 3);
    EXPECT_EQ(v.value.truncated_above(3), 1 - e + LCNumber::monomial(1, 2) - LCNumber::monomial(1, 3));
}

TEST(Evaluate, SineNeedsInfinitesimalArgument)
{
    Approx v = evaluate(fn("sin(x)"), e, TruncationOrder(5));
    EXPECT_EQ(v.value.truncated_above(5), e - LCNumber::monomial(Rational(1, 6), 3) + LCNumber::monomial(Rational(1, 120), 5));
    try {
        evaluate(fn("sin(1/x)"), e);
        FAIL() << "expected Unlimited";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::unlimited);
    }
}

TEST(Evaluate, SquareRootOfPerfectSquareLeadingTerm)
{
    Approx v = evaluate(fn("sqrt(x)"), 4 + e, TruncationOrder(2));
    EXPECT_EQ(v.value.truncated_above(2), 2 + LCNumber::monomial(Rational(1, 4), 1) - LCNumber::monomial(Rational(1, 64), 2));
    EXPECT_THROW(evaluate(fn("sqrt(x)"), LCNumber(2)), Error);
}

TEST(Evaluate, StandardPartEnclosureContainsTrigValue)
{
    Interval s = evaluate_standard_part(fn("sin(x)"), LCNumber(1) + e);
    double lo = s.lo.convert_to<double>(), hi = s.hi.convert_to<double>();
    EXPECT_LE(lo, std::sin(1.0));
    EXPECT_GE(hi, std::sin(1.0));
    EXPECT_LT(s.radius(), Rational(1, pow10(30)));
}

TEST(Derivative, ParabolaAtOneFromBelow)
{
    EXPECT_EQ(derivative_at(fn("x^2"), 1, -e), 2);
}

TEST(Derivative, ConstantAndCubic)
{
    EXPECT_EQ(derivative_at(fn("7"), Rational(3, 4), e), 0);
    EXPECT_EQ(derivative_at(fn("x^3"), 2, e), 12);
}

TEST(Derivative, Errors)
{
    try {
        derivative_at(fn("x^2"), 1, LCNumber());
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::zero_division);
    }
    try {
        derivative_at(fn("sqrt(x)"), 0, e * e);
        FAIL();
    } catch (const Error& err) {
        EXPECT_TRUE(err.kind() == ErrorKind::unlimited || err.kind() == ErrorKind::not_representable) << err.what();
    }
    try {
        derivative_at(fn("x^2"), 1, LCNumber(1));
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::invalid_argument);
    }
}

TEST(Derivative, IndependentOfIncrement)
{
    std::vector<LCNumber> dxs{e, -e, e * e, 3 * e};
    EXPECT_EQ(derivative_at(fn("x^4 - 2*x"), Rational(1, 2), dxs), Rational(-3, 2));
}

TEST(Derivative, NonSmoothPointIsDetected)
{
    // |x| is not in the grammar; sqrt(x^2) gives it at 0 from both sides
    std::vector<LCNumber> dxs{e, -e};
    try {
        derivative_at(fn("sqrt(x^2)"), 0, dxs);
        FAIL() << "expected DerivativeMismatch";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::derivative_mismatch);
    }
}

TEST(Derivative, MatchesSymbolicOracleOnRandomPolynomials)
{
    std::mt19937_64 rng(42);
    std::vector<LCNumber> dxs{e, -e, e * e, 3 * e};
    for (int i = 0; i < 60; ++i) {
        auto c = oracle::random_polynomial(rng, 8);
        Rational x0 = oracle::random_rational(rng, 30, 7);
        Rational expected = oracle::horner(oracle::symbolic_derivative(c), x0);
        for (const auto& dx : dxs) EXPECT_EQ(derivative_at(poly_fn(c), x0, dx), expected);
    }
}

TEST(Derivative, SumAndProductRules)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
        auto a = oracle::random_polynomial(rng, 4), b = oracle::random_polynomial(rng, 4);
        Rational x0 = oracle::random_rational(rng, 10, 5);
        ExprFn f = poly_fn(a), g = poly_fn(b);
        Rational df = derivative_at(f, x0, e), dg = derivative_at(g, x0, e);
        EXPECT_EQ(derivative_at(f + g, x0, e), df + dg);
        EXPECT_EQ(derivative_at(f * g, x0, e), df * oracle::horner(b, x0) + oracle::horner(a, x0) * dg);
    }
}

TEST(Microcontinuity, LinearAtInfinitesimal)
{
    std::vector<LCNumber> w{e + e * e};
    ProbeReport r = microcontinuous_at(fn("3*x"), e, w);
    EXPECT_EQ(r.verdict, ProbeVerdict::microcontinuous);
}

TEST(Microcontinuity, SquareFailsAtUnlimitedPoint)
{
    std::vector<LCNumber> w{H + e};
    ProbeReport r = microcontinuous_at(fn("x^2"), H, w);
    EXPECT_EQ(r.verdict, ProbeVerdict::fails);
    ASSERT_TRUE(r.lc_gap.has_value());
    // (H + 1/H)^2 - H^2 computed independently
    LCNumber expected = (H + e) * (H + e) - H * H;
    EXPECT_EQ(*r.lc_gap, expected);
    EXPECT_EQ(*r.lc_gap, 2 + e * e);
    EXPECT_EQ(st(*r.lc_gap), 2);
    EXPECT_EQ(to_record(r), "fails | 1*eps^-1 | 1*eps^-1 + 1*eps^1 | 2 + 1*eps^2");
}

TEST(Microcontinuity, OscillationFailsAtInfinitesimalGermPoint)
{
    std::vector<Germ> w{parse_germ("1/(2*pi*n + pi/2)")};
    ProbeReport r = microcontinuous_at(fn("sin(1/x)"), parse_germ("1/(2*pi*n)"), w);
    EXPECT_EQ(r.verdict, ProbeVerdict::fails);
    ASSERT_TRUE(r.germ_gap.has_value());
    EXPECT_EQ(germ_is_null(*r.germ_gap), Verdict::no);
    EXPECT_EQ(abs(germ_standard_part(*r.germ_gap)), 1);
}

TEST(Microcontinuity, WitnessMustBeAdequal)
{
    std::vector<LCNumber> w{LCNumber(2)};
    EXPECT_THROW(microcontinuous_at(fn("x"), LCNumber(1), w), Error);
}

TEST(Microcontinuity, StandardPointOfSineIsCertified)
{
    std::vector<LCNumber> w{1 + e};
    ProbeReport r = microcontinuous_at(fn("sin(x)"), LCNumber(1), w);
    EXPECT_EQ(r.verdict, ProbeVerdict::microcontinuous);
}

TEST(Continuity, SquareOnUnitInterval)
{
    auto r = classify_continuity(fn("x^2"), parse_domain("(0,1)"));
    EXPECT_EQ(r.verdict, Continuity::uniformly_continuous);
}

TEST(Continuity, SquareOnHalfLine)
{
    auto r = classify_continuity(fn("x^2"), parse_domain("(0,inf)"));
    EXPECT_EQ(r.verdict, Continuity::continuous);
    ASSERT_TRUE(r.deciding.has_value());
    ASSERT_TRUE(r.deciding->lc_gap.has_value());
    EXPECT_EQ(classify(*r.deciding->lc_gap), Magnitude::appreciable);
    EXPECT_EQ(st(*r.deciding->lc_gap), 2);
}

TEST(Continuity, OscillationOnUnitInterval)
{
    auto r = classify_continuity(fn("sin(1/x)"), parse_domain("(0,1)"));
    EXPECT_EQ(r.verdict, Continuity::continuous);
    ASSERT_TRUE(r.deciding.has_value());
    ASSERT_TRUE(r.deciding->germ_gap.has_value());
    EXPECT_EQ(abs(germ_standard_part(*r.deciding->germ_gap)), 1);
}

TEST(Continuity, UndefinedInteriorPointIsNotClaimed)
{
    auto r = classify_continuity(fn("1/x"), parse_domain("[-1,1]"));
    EXPECT_EQ(r.verdict, Continuity::undetermined);
}

TEST(Continuity, PolynomialsOnClosedBoundedIntervals)
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 10; ++i) {
        auto c = oracle::random_polynomial(rng, 5);
        auto r = classify_continuity(poly_fn(c), parse_domain("[-1,2]"));
        EXPECT_EQ(r.verdict, Continuity::uniformly_continuous) << oracle::polynomial_text(c);
    }
}

TEST(Continuity, ProbeGridHasElevenPointsPerUnit)
{
    EXPECT_EQ(standard_probe_points(parse_domain("[0,1]")).size(), 11u);
    EXPECT_EQ(standard_probe_points(parse_domain("(0,1)")).size(), 9u);
}

TEST(Continuity, EveryFailureIsWitnessed)
{
    for (const char* f : {"x^2", "sin(1/x)", "1/x", "x^3 - x"})
        for (const char* d : {"(0,1)", "(0,inf)", "[1,2]", "(-inf,0)"}) {
            auto r = classify_continuity(fn(f), parse_domain(d));
            for (const auto* group : {&r.standard_reports, &r.nonstandard_reports})
                for (const auto& rep : *group) {
                    if (rep.verdict != ProbeVerdict::fails) continue;
                    if (rep.lc_gap) {
                        EXPECT_NE(classify(*rep.lc_gap), Magnitude::infinitesimal);
                    } else if (rep.germ_gap) {
                        EXPECT_EQ(germ_is_null(*rep.germ_gap), Verdict::no);
                    } else {
                        ADD_FAILURE() << "unwitnessed failure for " << f << " on " << d;
                    }
                }
        }
}

TEST(Wallis, AreaIsHalfTheProduct)
{
    EXPECT_EQ(wallis_area(3, 4).area, 6);
    EXPECT_EQ(wallis_area(1, 1).area, Rational(1, 2));
    EXPECT_EQ(wallis_area(Rational(2, 3), 5).area, Rational(5, 3));
    auto c = wallis_area(3, 4);
    EXPECT_EQ(c.slice_width, 3 * e);
    EXPECT_EQ(c.bases_length, 2 * H);
    EXPECT_TRUE(c.product.is_standard());
    EXPECT_FALSE(c.trace.empty());
    EXPECT_THROW(wallis_area(0, 1), Error);
}

TEST(Enclosure, TrigEnclosuresContainLibmValues)
{
    for (int i = -40; i <= 40; ++i) {
        Rational x(i * 7, 4);
        double v = x.convert_to<double>();
        Interval s = sin(Interval::point(x)), c = cos(Interval::point(x));
        EXPECT_LE(s.lo.convert_to<double>(), std::sin(v) + 1e-15);
        EXPECT_GE(s.hi.convert_to<double>(), std::sin(v) - 1e-15);
        EXPECT_LE(c.lo.convert_to<double>(), std::cos(v) + 1e-15);
        EXPECT_GE(c.hi.convert_to<double>(), std::cos(v) - 1e-15);
        EXPECT_LT(s.radius(), Rational(1, pow10(40)));
    }
}

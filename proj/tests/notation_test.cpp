#include <gtest/gtest.h>

#include "adequal/adequal.hpp"

using namespace adequal;

TEST(Parse, PowerNode)
{
    ExprSource s = parse_expr("x^2");
    ASSERT_FALSE(s.is_number());
    EXPECT_EQ(s.function().root().op, Op::pow);
    EXPECT_EQ(s.function().root().exponent, 2);
}

TEST(Parse, ConstantBecomesNumber)
{
    ExprSource s = parse_expr("1 - eps");
    ASSERT_TRUE(s.is_number());
    EXPECT_EQ(s.number(), 1 - LCNumber::eps());
    EXPECT_EQ(parse_number("H"), LCNumber::unlimited());
    EXPECT_EQ(parse_number("3/2*eps^-1"), LCNumber::monomial(Rational(3, 2), -1));
}

TEST(Parse, SineOfReciprocal)
{
    ExprSource s = parse_expr("sin(1/x)");
    ASSERT_FALSE(s.is_number());
    const ExprNode& root = s.function().root();
    EXPECT_EQ(root.op, Op::sin);
    ASSERT_TRUE(root.lhs);
    EXPECT_EQ(root.lhs->op, Op::div);
}

TEST(Parse, Precedence)
{
    // ^ binds tighter than unary minus, which binds tighter than * and /
    EXPECT_EQ(parse_number("-2^2"), LCNumber(-4));
    EXPECT_EQ(parse_number("2*3^2"), LCNumber(18));
    EXPECT_EQ(parse_number("1 - 2 - 3"), LCNumber(-4));
    EXPECT_EQ(parse_number("12/3/2"), LCNumber(2));
    EXPECT_EQ(parse_number("2^3^2"), LCNumber(512));
    EXPECT_EQ(parse_number("(1+eps)^2"), 1 + 2 * LCNumber::eps() + LCNumber::monomial(1, 2));
    EXPECT_EQ(parse_number("eps^(1/2)"), LCNumber::monomial(1, Rational(1, 2)));
    EXPECT_EQ(parse_number("1.25"), LCNumber(Rational(5, 4)));
}

TEST(Parse, ErrorsCarryPositionAndExpectedSet)
{
    try {
        parse_expr("1 + * 2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
        EXPECT_FALSE(e.expected().empty());
    }
    EXPECT_THROW(parse_expr("sin x"), ParseError);
    EXPECT_THROW(parse_expr("(1 + x"), ParseError);
    EXPECT_THROW(parse_expr("y + 1"), ParseError);
    EXPECT_THROW(parse_expr("1 2"), ParseError);
    EXPECT_THROW(parse_expr(""), ParseError);
    EXPECT_THROW(parse_number("sin(1)"), ParseError);
}

TEST(Parse, Domains)
{
    Domain a = parse_domain("(0,1)");
    EXPECT_EQ(*a.lo, 0);
    EXPECT_EQ(*a.hi, 1);
    EXPECT_FALSE(a.lo_closed || a.hi_closed);
    Domain b = parse_domain("[0, inf)");
    EXPECT_TRUE(b.lo_closed);
    EXPECT_FALSE(b.hi.has_value());
    Domain c = parse_domain("(-inf,2]");
    EXPECT_FALSE(c.lo.has_value());
    EXPECT_TRUE(c.hi_closed);
    EXPECT_THROW(parse_domain("[0,inf]"), ParseError);
    EXPECT_THROW(parse_domain("0,1"), ParseError);
}

TEST(Parse, GermRules)
{
    Germ g = parse_germ("((-1)^n)/(n)");
    ASSERT_TRUE(g.is_rational());
    EXPECT_EQ(g.rational_rule().period(), 2u);
    EXPECT_DOUBLE_EQ(g.value_at(4), 0.25);
    EXPECT_DOUBLE_EQ(g.value_at(3), -1.0 / 3);
}

TEST(Parse, PrintParseRoundTrip)
{
    LCSampler sampler(77);
    for (int i = 0; i < 1000; ++i) {
        LCNumber v = sampler.number(5);
        EXPECT_EQ(parse_number(to_string(v)), v) << to_string(v);
    }
}

TEST(Parse, FunctionPrintParseRoundTrip)
{
    for (const char* text : {"x^2", "sin(1/x)", "3*x - 2", "sqrt(x^2 + 1)/(x - 1)", "-(x + 1)^3", "cos(pi*x)"}) {
        ExprFn f = parse_function(text);
        EXPECT_EQ(parse_function(to_string(f)), f) << text << " -> " << to_string(f);
    }
}

TEST(Parse, FunctionTextIsAFixedPoint)
{
    // eps constants print in canonical form, which parses to a product node
    for (const char* text : {"x^(1/2) - eps*x", "(1 - eps)*x^2 + H", "x/(3/2*eps^-1)"}) {
        std::string once = to_string(parse_function(text));
        EXPECT_EQ(to_string(parse_function(once)), once) << text;
        Approx a = evaluate(parse_function(text), 4 + LCNumber::eps());
        Approx b = evaluate(parse_function(once), 4 + LCNumber::eps());
        EXPECT_EQ(a.value, b.value) << text;
    }
}

TEST(Semicolon, PointNineRepeating)
{
    SemicolonForm f = render_semicolon(1 - LCNumber::eps(), 6);
    EXPECT_EQ(f.text(), "1.000000 ; −1·ε^1");
    EXPECT_EQ(f.note(), "x < 1.000000");
}

TEST(Semicolon, Standard)
{
    EXPECT_EQ(render_semicolon(LCNumber(5), 2).text(), "5.00 ; 0");
    EXPECT_EQ(render_semicolon(2 - LCNumber::eps(), 3).text(), "2.000 ; −1·ε^1");
}

TEST(Semicolon, TruncatesRatherThanRounds)
{
    EXPECT_EQ(render_semicolon(LCNumber(Rational(2, 3)), 4).standard_digits, "0.6666");
    EXPECT_EQ(render_semicolon(LCNumber(Rational(-2, 3)), 2).standard_digits, "-0.66");
    EXPECT_EQ(render_semicolon(Rational(1, 3) + LCNumber::monomial(Rational(1, 2), Rational(3, 2)), 3).text(),
              "0.333 ; +1/2·ε^(3/2)");
}

TEST(Semicolon, UnlimitedIsRejected)
{
    try {
        render_semicolon(LCNumber::unlimited(), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::unlimited);
    }
}

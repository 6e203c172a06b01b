#include <gtest/gtest.h>

#include "adequal/adequal.hpp"

using namespace adequal;

namespace {

const LCNumber e = LCNumber::eps();
const LCNumber H = LCNumber::unlimited();

LCNumber eps_pow(long long q) { return LCNumber::monomial(1, q); }

} // namespace

TEST(LCNumber, CanonicalFormMergesAndDropsZeros)
{
    auto a = LCNumber::from_terms({{2, 1}, {0, 3}, {2, -1}, {1, 0}, {-1, 5}});
    ASSERT_EQ(a.terms().size(), 2u);
    EXPECT_EQ(a.terms()[0], (Term{-1, 5}));
    EXPECT_EQ(a.terms()[1], (Term{0, 3}));
    EXPECT_TRUE(LCNumber::from_terms({{1, 2}, {1, -2}}).is_zero());
}

TEST(LCNumber, Addition)
{
    EXPECT_EQ((1 - e) + e, LCNumber(1));
    LCNumber x = LCNumber(2) + 3 * e;
    EXPECT_EQ(LCNumber(0) + x, x);
    EXPECT_EQ((2 + 3 * e) + (1 - eps_pow(2)), 3 + 3 * e - eps_pow(2));
    EXPECT_EQ(to_string(3 + 3 * e - eps_pow(2)), "3 + 3*eps^1 - 1*eps^2");
}

TEST(LCNumber, Multiplication)
{
    LCNumber slice = LCNumber::monomial(3, 1);
    LCNumber bases = LCNumber::monomial(2, -1);
    EXPECT_EQ(slice * bases, LCNumber(6));
    EXPECT_EQ(e * H, LCNumber(1));
    EXPECT_EQ((1 - e) * (1 - e), 1 - 2 * e + eps_pow(2));
}

TEST(LCNumber, InverseExactCases)
{
    EXPECT_EQ(inv(LCNumber(2)), LCNumber(Rational(1, 2)));
    EXPECT_EQ(inv(e), H);
    EXPECT_THROW(inv(LCNumber(0)), Error);
    try {
        inv(LCNumber());
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::zero_division);
    }
}

TEST(LCNumber, InverseSeriesResidualOrder)
{
    TruncationOrder k(3);
    LCNumber r = inv(1 + e, k);
    EXPECT_EQ(r, 1 - e + eps_pow(2) - eps_pow(3));
    LCNumber residual = (1 + e) * r - 1;
    EXPECT_EQ(residual.leading_exponent(), 4);
}

TEST(LCNumber, InverseResidualExceedsOrderOnRandomInputs)
{
    LCSampler sampler(11);
    for (int i = 0; i < 300; ++i) {
        LCNumber a = sampler.number();
        if (a.is_zero()) continue;
        for (int k : {1, 3, 8}) {
            LCNumber residual = a * inv(a, TruncationOrder(k)) - 1;
            if (!residual.is_zero()) {
                EXPECT_GT(residual.leading_exponent(), k) << to_string(a);
            }
        }
    }
}

TEST(LCNumber, Order)
{
    EXPECT_LT(e, LCNumber(Rational(1, 1000)));
    EXPECT_LT(1 - e, LCNumber(1));
    EXPECT_GT(H, LCNumber(1000000));
    EXPECT_EQ(cmp(LCNumber(0), LCNumber(0)), std::strong_ordering::equal);
    EXPECT_LT(-H, LCNumber(-1000000));
    EXPECT_LT(eps_pow(2), e);
}

TEST(LCNumber, StandardPart)
{
    EXPECT_EQ(st(2 - e), 2);
    EXPECT_EQ(st(LCNumber(5)), 5);
    EXPECT_EQ(st(e), 0);
    try {
        st(H);
        FAIL() << "expected Unlimited";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::unlimited);
    }
}

TEST(LCNumber, Adequality)
{
    LCNumber x = 5;
    EXPECT_TRUE(adequal::adequal(2 * x + e, 2 * x));
    EXPECT_TRUE(adequal::adequal(3 + e, 3 + e));
    EXPECT_FALSE(adequal::adequal(LCNumber(1), LCNumber(2)));
    EXPECT_FALSE(adequal::adequal(H, H + 1));
}

TEST(LCNumber, Classification)
{
    EXPECT_EQ(classify(e + eps_pow(2)), Magnitude::infinitesimal);
    EXPECT_EQ(classify(3 + e), Magnitude::appreciable);
    EXPECT_EQ(classify(H + 7), Magnitude::unlimited);
    EXPECT_EQ(classify(LCNumber()), Magnitude::zero);
}

TEST(LCNumber, LeadingOrderDecomposition)
{
    auto a = leading_order(3 * eps_pow(2) - eps_pow(3));
    EXPECT_EQ(a.coefficient, 3);
    EXPECT_EQ(a.exponent, 2);
    EXPECT_EQ(a.tail, LCNumber::monomial(Rational(-1, 3), 1));
    auto b = leading_order(LCNumber(7));
    EXPECT_EQ(b.coefficient, 7);
    EXPECT_EQ(b.exponent, 0);
    EXPECT_TRUE(b.tail.is_zero());
    auto c = leading_order(-H);
    EXPECT_EQ(c.coefficient, -1);
    EXPECT_EQ(c.exponent, -1);
    EXPECT_THROW(leading_order(LCNumber()), Error);
}

TEST(LCNumber, LeadingOrderReconstructs)
{
    LCSampler sampler(5);
    for (int i = 0; i < 200; ++i) {
        LCNumber a = sampler.number();
        if (a.is_zero()) continue;
        auto d = leading_order(a);
        EXPECT_EQ(LCNumber::monomial(d.coefficient, d.exponent) * (1 + d.tail), a);
        if (!d.tail.is_zero()) {
            EXPECT_EQ(classify(d.tail), Magnitude::infinitesimal);
        }
    }
}

TEST(LCNumber, FieldLawsOnRandomTriples)
{
    LCSampler sampler(2024);
    for (int i = 0; i < 500; ++i) {
        auto [x, y, z] = sampler.triple();
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x + LCNumber(0), x);
        EXPECT_EQ(x * LCNumber(1), x);
        EXPECT_TRUE((x + (-x)).is_zero());
    }
}

TEST(LCNumber, StandardPartIsRingHomomorphismOnLimited)
{
    LCSampler sampler(7);
    for (int i = 0; i < 500; ++i) {
        LCNumber a = sampler.limited(), b = sampler.limited();
        EXPECT_EQ(st(a + b), st(a) + st(b));
        EXPECT_EQ(st(a * b), st(a) * st(b));
        EXPECT_EQ(adequal::adequal(a, b), st(a - b) == 0);
    }
}

TEST(LCNumber, AdequalityIsEquivalence)
{
    LCSampler sampler(9);
    for (int i = 0; i < 300; ++i) {
        auto [x, y, z] = sampler.triple();
        EXPECT_TRUE(adequal::adequal(x, x));
        EXPECT_EQ(adequal::adequal(x, y), adequal::adequal(y, x));
        if (adequal::adequal(x, y) && adequal::adequal(y, z)) {
            EXPECT_TRUE(adequal::adequal(x, z));
        }
        // perturbing by an infinitesimal preserves adequality
        EXPECT_TRUE(adequal::adequal(x, x + LCNumber::monomial(1, Rational(1, 3))));
    }
}

TEST(LCNumber, InfinitesimalAgreesWithRationalLadder)
{
    LCSampler sampler(13);
    std::vector<Rational> ladder;
    for (int k = 0; k <= 30; ++k) ladder.push_back(Rational(1, pow10(static_cast<unsigned>(k))));
    for (int i = 0; i < 300; ++i) {
        LCNumber a = sampler.number();
        bool below_all = true;
        for (const auto& r : ladder) below_all = below_all && abs(a) < LCNumber(r);
        EXPECT_EQ(classify(a) == Magnitude::infinitesimal || a.is_zero(), below_all) << to_string(a);
    }
}

TEST(LCNumber, OrderIsCompatibleWithOperations)
{
    LCSampler sampler(17);
    for (int i = 0; i < 300; ++i) {
        auto [x, y, z] = sampler.triple();
        int trichotomy = (x < y) + (x == y) + (x > y);
        EXPECT_EQ(trichotomy, 1);
        if (x < y) {
            EXPECT_LT(x + z, y + z);
            if (z > LCNumber(0)) {
                EXPECT_LT(x * z, y * z);
            }
        }
    }
}

TEST(LCNumber, CanonicalText)
{
    EXPECT_EQ(to_string(LCNumber()), "0");
    EXPECT_EQ(to_string(LCNumber::monomial(Rational(3, 2), -1)), "3/2*eps^-1");
    EXPECT_EQ(to_string(1 - e), "1 - 1*eps^1");
    EXPECT_EQ(to_string(LCNumber::monomial(-2, Rational(1, 2))), "-2*eps^(1/2)");
}

TEST(LCNumber, TruncationOrderMustBePositive)
{
    EXPECT_THROW(TruncationOrder(0), Error);
    EXPECT_THROW(TruncationOrder(-1), Error);
    EXPECT_EQ(TruncationOrder().value(), 8);
}

TEST(LCNumber, IntegerPowers)
{
    EXPECT_EQ(pow(1 + e, 3), 1 + 3 * e + 3 * eps_pow(2) + eps_pow(3));
    EXPECT_EQ(pow(e, -2), eps_pow(-2));
    EXPECT_EQ(pow(LCNumber(5), 0), LCNumber(1));
}

#pragma once

#include <random>
#include <vector>

#include "adequal/lcfield.hpp"
#include "adequal/transfer.hpp"

namespace adequal {

/// Random LCNumbers with small rational exponents in [-3, 3] and small
/// rational coefficients. Roughly a third of the draws are forced to be
/// unlimited, a third infinitesimal.
class LCSampler {
public:
    explicit LCSampler(std::uint64_t seed) : rng_(seed) {}

    Rational small_rational(int max_num, int max_den)
    {
        std::uniform_int_distribution<int> n(-max_num, max_num), d(1, max_den);
        return Rational(n(rng_), d(rng_));
    }

    Rational nonzero_rational(int max_num, int max_den)
    {
        Rational r;
        do r = small_rational(max_num, max_den);
        while (r == 0);
        return r;
    }

    LCNumber number(int max_terms = 4)
    {
        std::uniform_int_distribution<int> count(0, max_terms), kind(0, 2);
        std::vector<Term> terms;
        int n = count(rng_);
        for (int i = 0; i < n; ++i) terms.push_back({small_rational(3, 3), nonzero_rational(9, 7)});
        switch (kind(rng_)) {
        case 0: terms.push_back({-Rational(1 + static_cast<int>(rng_() % 3), 1 + static_cast<int>(rng_() % 2)),
                                 nonzero_rational(9, 7)});
            break;
        case 1:
            for (auto& t : terms) t.exponent = abs(t.exponent) + Rational(1, 2);
            break;
        default: break;
        }
        return LCNumber::from_terms(terms);
    }

    /// Limited number; its standard part may cancel to zero.
    LCNumber limited(int max_terms = 4)
    {
        std::vector<Term> terms{{Rational(0), nonzero_rational(9, 7)}};
        std::uniform_int_distribution<int> count(0, max_terms - 1);
        int n = count(rng_);
        for (int i = 0; i < n; ++i) terms.push_back({abs(small_rational(3, 3)), nonzero_rational(9, 7)});
        return LCNumber::from_terms(terms);
    }

    Sample triple() { return {number(), number(), number()}; }

    std::vector<Sample> triples(std::size_t count)
    {
        std::vector<Sample> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(triple());
        return out;
    }

    std::mt19937_64& engine() noexcept { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace adequal

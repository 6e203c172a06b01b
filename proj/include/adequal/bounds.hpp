#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "adequal/error.hpp"
#include "adequal/rational.hpp"
#include "adequal/roots.hpp"

namespace adequal {

/// Certificate that m/n stays at least 1/(3n^2) away from sqrt 2.
///
/// The chain is |sqrt2 - m/n| = |2n^2 - m^2| / (n^2 (sqrt2 + m/n))
///                            >= 1 / (n^2 (sqrt2 + m/n)) >= 1 / (3n^2),
/// where the first step needs |2n^2 - m^2| >= 1 (2n^2 carries an odd power
/// of 2, m^2 an even one) and the last needs sqrt2 + m/n <= 3, which
/// follows from m/n <= 3/2 and 2 <= (3/2)^2. Every link is an integer
/// comparison.
struct GapCertificate {
    Integer m, n;
    Integer integer_gap;  // |2n^2 - m^2|
    Rational lower_bound; // 1/(3n^2)
    bool parity_ok = false;        // 2-adic valuations of 2n^2 and m^2 differ
    bool denominator_ok = false;   // 2m <= 3n and 8 <= 9
    bool direct_ok = false;        // sqrt2 outside (m/n - b, m/n + b), by squaring
    bool verified = false;
};

namespace detail {

inline unsigned two_adic_valuation(Integer v)
{
    unsigned k = 0;
    while (v != 0 && (v & 1) == 0) {
        v >>= 1;
        ++k;
    }
    return k;
}

} // namespace detail

/// Throws OutOfRange when m/n > 3/2, InvalidArgument for m or n < 1.
inline GapCertificate irr_gap(const Integer& m, const Integer& n)
{
    if (m < 1 || n < 1) throw Error(ErrorKind::invalid_argument, "m and n must be positive");
    if (2 * m > 3 * n) throw Error(ErrorKind::out_of_range, m.str() + "/" + n.str() + " exceeds 3/2");
    GapCertificate c;
    c.m = m;
    c.n = n;
    Integer two_n2 = 2 * n * n, m2 = m * m;
    c.integer_gap = boost::multiprecision::abs(two_n2 - m2);
    c.lower_bound = Rational(Integer(1), 3 * n * n);
    // odd vs even power of 2, hence 2n^2 != m^2 and the gap is >= 1
    c.parity_ok = detail::two_adic_valuation(two_n2) % 2 == 1 && detail::two_adic_valuation(m2) % 2 == 0 &&
                  c.integer_gap >= 1;
    c.denominator_ok = 2 * m <= 3 * n && 2 * 4 <= 9;
    // |sqrt2 - x| >= b  <=>  (x + b)^2 <= 2  or  (x - b >= 0 and (x - b)^2 >= 2)
    Rational x(m, n);
    const Rational& b = c.lower_bound;
    Rational up = x + b, down = x - b;
    c.direct_ok = up * up <= 2 || (down.sign() >= 0 && down * down >= 2);
    c.verified = c.parity_ok && c.denominator_ok && c.direct_ok;
    return c;
}

inline std::string to_string(const GapCertificate& c)
{
    return "gap=" + c.integer_gap.str() + " bound=" + to_string(c.lower_bound) +
           " verified=" + (c.verified ? "true" : "false");
}

/// sqrt 2 truncated to 50 decimals, extracted by stevin_root on x^2 - 2.
inline const Rational& sqrt2_oracle()
{
    static const Rational value = [] {
        RationalPolynomial p(std::vector<Rational>{-2, 0, 1});
        return stevin_root(p, 1, 2, 50).value();
    }();
    return value;
}

struct SweepSummary {
    std::uint64_t max_n = 0;
    std::uint64_t pairs = 0;
    std::uint64_t verified = 0;
    Rational min_ratio;           // min over pairs of |sqrt2 - m/n| / (1/(3n^2)), via the 50-digit value
    std::uint64_t argmin_m = 0, argmin_n = 0;

    bool all_verified() const noexcept { return pairs == verified; }
};

/// Certifies every pair with 1 <= n <= max_n and 1 <= m/n <= 3/2.
inline SweepSummary sweep(std::uint64_t max_n)
{
    if (max_n < 1) throw Error(ErrorKind::invalid_argument, "N must be >= 1");
    SweepSummary s;
    s.max_n = max_n;
    const Rational& root = sqrt2_oracle();
    const Integer scale = pow10(50);
    const Integer root_scaled = num(root * Rational(scale)); // sqrt2 * 10^50, truncated
    bool first = true;
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        for (std::uint64_t m = n; 2 * m <= 3 * n; ++m) {
            ++s.pairs;
            GapCertificate c = irr_gap(Integer(m), Integer(n));
            if (c.verified) ++s.verified;
            // ratio = |sqrt2 - m/n| * 3n^2 = |R n - m 10^50| * 3n / 10^50
            Integer diff = root_scaled * n - Integer(m) * scale;
            Rational ratio(boost::multiprecision::abs(diff) * 3 * n, scale);
            if (first || ratio < s.min_ratio) {
                s.min_ratio = ratio;
                s.argmin_m = m;
                s.argmin_n = n;
                first = false;
            }
        }
    }
    return s;
}

} // namespace adequal

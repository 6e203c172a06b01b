#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "adequal/rational.hpp"

namespace adequal {

/// Dense univariate polynomial, coefficient i multiplies t^i.
///
/// `C` must be a commutative ring with `C(0)`, `C(1)`, `+`, `-`, `*` and `==`.
/// The same template serves rational polynomials for root finding and the
/// two-level Q[pi][n] rules of the germ model.
template <typename C>
class Polynomial {
public:
    using coefficient_type = C;

    Polynomial() = default;

    explicit Polynomial(std::vector<C> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

    explicit Polynomial(C constant) : coeffs_{std::move(constant)} { trim(); }

    /// c * t^k
    static Polynomial monomial(C c, std::size_t k)
    {
        std::vector<C> v(k + 1, C(0));
        v[k] = std::move(c);
        return Polynomial(std::move(v));
    }

    /// t
    static Polynomial variable() { return monomial(C(1), 1); }

    const std::vector<C>& coefficients() const noexcept { return coeffs_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Degree of a nonzero polynomial; -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

    const C& leading() const { return coeffs_.back(); }

    C coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : C(0); }

    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    /// Horner evaluation in any ring that `C` embeds into.
    template <typename T>
    T operator()(const T& at) const
    {
        T acc = T(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + T(*it);
        return acc;
    }

    Polynomial derivative() const
    {
        if (coeffs_.size() <= 1) return {};
        std::vector<C> d(coeffs_.size() - 1, C(0));
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * C(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    /// p(q(t))
    Polynomial compose(const Polynomial& inner) const
    {
        Polynomial acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + Polynomial(*it);
        return acc;
    }

    Polynomial operator-() const
    {
        std::vector<C> v = coeffs_;
        for (auto& c : v) c = C(0) - c;
        return Polynomial(std::move(v));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        std::vector<C> v(std::max(a.coeffs_.size(), b.coeffs_.size()), C(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] = v[i] + a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] = v[i] + b.coeffs_[i];
        return Polynomial(std::move(v));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<C> v(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] = v[i + j] + a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(v));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Multiplicity of t as a factor (0 for the zero polynomial).
    std::size_t low_order() const noexcept
    {
        std::size_t k = 0;
        while (k < coeffs_.size() && coeffs_[k] == C(0)) ++k;
        return k == coeffs_.size() ? 0 : k;
    }

    /// Divides by t^k; caller guarantees the low k coefficients vanish.
    Polynomial shift_down(std::size_t k) const
    {
        if (k >= coeffs_.size()) return {};
        return Polynomial(std::vector<C>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == C(0)) coeffs_.pop_back();
    }

    std::vector<C> coeffs_;
};

using RationalPolynomial = Polynomial<Rational>;

/// "3*x^2 - 2" style rendering, highest degree first.
inline std::string to_string(const RationalPolynomial& p, const std::string& var = "x")
{
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        const Rational& c = p.coefficients()[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        bool negative = c.sign() < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (out.empty()) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        bool show_coeff = i == 0 || mag != 1;
        if (show_coeff) out += to_string(mag);
        if (i > 0) {
            if (show_coeff) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace adequal

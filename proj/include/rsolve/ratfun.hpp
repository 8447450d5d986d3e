#pragma once

// Reduced quotients of bivariate polynomials.

#include "rsolve/bipoly.hpp"

#include <string>

namespace rsolve {

/// num/den with gcd(num, den) = 1 and den normalized (coprime integer
/// coefficients, positive leading coefficient). Zero is 0/1.
class RatFun {
public:
    RatFun() : num_(), den_(1) {}
    RatFun(const BiPoly& p) : num_(p), den_(1) {}  // NOLINT: polynomials convert implicitly
    RatFun(const Rational& c) : num_(c), den_(1) {}  // NOLINT
    RatFun(long c) : num_(c), den_(1) {}  // NOLINT

    /// Cancels the gcd and normalizes; throws Error when den is zero.
    static RatFun reduce(const BiPoly& num, const BiPoly& den);

    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    /// Exact value; throws Error when den vanishes at the point.
    Rational eval(const Rational& x, const Rational& y) const;
    Interval eval(const Interval& x, const Interval& y) const;

    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    /// Throws Error on division by zero.
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    friend bool operator==(const RatFun& a, const RatFun& b) = default;

    /// "num" for polynomials, otherwise "(num)/(den)" with parentheses only
    /// where a factor has more than one term.
    std::string to_string() const;

private:
    BiPoly num_, den_;
};

RatFun pow(const RatFun& a, unsigned n);

/// Exact equality test by cross-multiplication.
bool equal_as_functions(const RatFun& a, const RatFun& b);

}  // namespace rsolve

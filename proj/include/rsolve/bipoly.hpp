#pragma once

// Sparse bivariate polynomials over the rationals.
//
// Terms are kept in a map keyed by the graded-lexicographic order of their
// exponent pair (total degree first, then the x exponent), with zero
// coefficients never stored. Two BiPoly values compare equal exactly when
// they are the same polynomial.

#include "rsolve/interval.hpp"
#include "rsolve/rational.hpp"
#include "rsolve/upoly.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rsolve {

struct Monomial {
    unsigned dx = 0;
    unsigned dy = 0;

    unsigned total() const { return dx + dy; }
    std::uint64_t key() const { return (static_cast<std::uint64_t>(dx + dy) << 32) | dx; }
    static Monomial from_key(std::uint64_t k) {
        unsigned total = static_cast<unsigned>(k >> 32);
        unsigned dx = static_cast<unsigned>(k & 0xffffffffu);
        return {dx, total - dx};
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

enum class Var { x, y };

class BiPoly {
public:
    using TermMap = std::map<std::uint64_t, Rational>;

    BiPoly() = default;
    BiPoly(const Rational& c);  // NOLINT: constants convert implicitly
    BiPoly(long c) : BiPoly(Rational(c)) {}  // NOLINT

    static BiPoly x() { return monomial(1, 1, 0); }
    static BiPoly y() { return monomial(1, 0, 1); }
    static BiPoly monomial(const Rational& c, unsigned dx, unsigned dy);
    /// Univariate polynomial p placed in variable v.
    static BiPoly from_univariate(const UPoly& p, Var v = Var::x);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term.
    Rational constant() const;
    std::size_t size() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    /// Total degree; -1 for zero.
    int degree() const;
    int degree(Var v) const;
    /// Lowest total degree of a term; -1 for zero.
    int order() const;
    /// Graded-lexicographic leading monomial and its coefficient.
    Monomial leading_monomial() const;
    const Rational& leading_coeff() const;
    Rational coeff(unsigned dx, unsigned dy) const;

    /// Homogeneous component of total degree d.
    BiPoly homogeneous_part(int d) const;

    Rational eval(const Rational& x, const Rational& y) const;
    Interval eval(const Interval& x, const Interval& y) const;
    double eval(double x, double y) const;

    BiPoly derivative(Var v) const;
    /// p(x + a, y + b).
    BiPoly translate(const Rational& a, const Rational& b) const;
    /// q(u, y) = p(u - s*y, y); the first slot then holds u = x + s*y.
    BiPoly shear(const Rational& s) const;
    BiPoly swap_vars() const;
    /// Substitute x := px, y := py.
    BiPoly substitute(const BiPoly& px, const BiPoly& py) const;

    /// Coefficients of powers of v as univariate polynomials in the other variable.
    std::vector<UPoly> coefficients_in(Var v) const;
    static BiPoly from_coefficients(const std::vector<UPoly>& coeffs, Var v);
    /// Defined only when the polynomial does not involve the other variable.
    UPoly to_univariate(Var v) const;

    /// Positive multiple with coprime integer coefficients and positive
    /// graded-lexicographic leading coefficient.
    BiPoly normalized() const;
    /// Multiple with leading coefficient 1.
    BiPoly monic() const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const Rational& c, const BiPoly& a);
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
    friend bool operator==(const BiPoly& a, const BiPoly& b) = default;

    /// Quotient of an exact division; throws Error when b does not divide a.
    friend BiPoly exact_div(const BiPoly& a, const BiPoly& b);
    /// True when b divides a exactly.
    friend bool divides(const BiPoly& b, const BiPoly& a);

    std::string to_string(const char* xname = "x", const char* yname = "y") const;

private:
    void add_term(std::uint64_t key, const Rational& c);
    TermMap terms_;
};

BiPoly pow(const BiPoly& a, unsigned n);

/// A polynomial translated so that its evaluation near a center can be done in
/// local coordinates: p(center + (dx, dy)) = local(dx, dy). Coefficients are
/// enclosed in intervals once, so evaluation is cheap and rigorous.
class LocalPoly {
public:
    LocalPoly() = default;
    LocalPoly(const BiPoly& p, const Rational& cx, const Rational& cy);
    Interval eval(double dx, double dy) const;
    bool is_zero() const { return terms_.empty(); }

private:
    struct Term {
        unsigned dx, dy;
        Interval c;
    };
    std::vector<Term> terms_;
    unsigned max_dx_ = 0, max_dy_ = 0;
};

}  // namespace rsolve

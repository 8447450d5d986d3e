#pragma once

// Dense univariate polynomials over the rationals, plus exact real root
// isolation by Sturm sequences.

#include "rsolve/interval.hpp"
#include "rsolve/rational.hpp"

#include <span>
#include <utility>
#include <vector>

namespace rsolve {

class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);
    explicit UPoly(const Rational& c) : UPoly(std::vector<Rational>{c}) {}

    static UPoly x() { return UPoly(std::vector<Rational>{0, 1}); }
    /// x - root
    static UPoly linear(const Rational& root) { return UPoly(std::vector<Rational>{-root, 1}); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const Rational& lc() const;
    Rational coeff(int i) const;
    std::span<const Rational> coeffs() const { return coeffs_; }

    Rational eval(const Rational& t) const;
    Interval eval(const Interval& t) const;
    /// Sign of the value at t, computed exactly.
    int sign_at(const Rational& t) const { return sgn(eval(t)); }

    UPoly derivative() const;
    UPoly compose(const UPoly& inner) const;
    UPoly monic() const;
    /// Positive rational multiple with coprime integer coefficients.
    UPoly primitive() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const Rational& c, const UPoly& a);
    friend bool operator==(const UPoly& a, const UPoly& b) = default;

    /// Euclidean division; throws Error on a zero divisor.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
    friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }
    /// Exact quotient; throws Error when b does not divide a.
    friend UPoly exact_div(const UPoly& a, const UPoly& b);

private:
    void trim();
    std::vector<Rational> coeffs_;
};

UPoly pow(const UPoly& a, unsigned n);

/// Monic gcd (zero only when both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
struct XGcd {
    UPoly g, s, t;
};
XGcd xgcd(const UPoly& a, const UPoly& b);

/// Inverse of a modulo m; throws Error when gcd(a, m) != 1.
UPoly inverse_mod(const UPoly& a, const UPoly& m);

/// Square-free part, monic.
UPoly squarefree(const UPoly& p);

/// Open isolating interval (lo, hi) whose endpoints are not roots, or a
/// degenerate interval lo == hi holding an exact rational root.
struct RootInterval {
    Rational lo, hi;
    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
};

class SturmSequence {
public:
    explicit SturmSequence(const UPoly& squarefree_poly);
    /// Number of sign variations at t (zeros skipped).
    int variations(const Rational& t) const;
    /// Distinct roots in (a, b]; a must not be a root.
    int count(const Rational& a, const Rational& b) const;
    const UPoly& poly() const { return seq_.front(); }

private:
    std::vector<UPoly> seq_;
};

/// Isolating intervals of all distinct real roots of p, sorted ascending,
/// with pairwise-disjoint closures. Throws Error on the zero polynomial.
std::vector<RootInterval> isolate_real_roots(const UPoly& p);

/// Bisects an isolating interval of a square-free polynomial until its width
/// is at most max_width (or the root is hit exactly).
RootInterval refine_root(const UPoly& squarefree_poly, RootInterval iv, const Rational& max_width);

/// Number of real roots of p (distinct) in the closed interval [a, b].
int count_real_roots(const UPoly& p, const Rational& a, const Rational& b);

}  // namespace rsolve

#pragma once

// Exact rationals (GMP) and the handful of conversions the rest of the
// library needs: printing, parsing, double enclosures and continued-fraction
// reconstruction.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rsolve {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical "p/q" text (or "p" when q == 1).
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q". Throws Error on malformed text or q == 0.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Exact value of a finite double.
Rational from_double(double v);

/// Largest double <= q and smallest double >= q.
double round_down(const Rational& q);
double round_up(const Rational& q);

/// Best rational approximation of v with denominator <= max_den (continued
/// fraction convergents and semiconvergents). Returns nullopt when the best
/// candidate is further than max_err from v.
std::optional<Rational> reconstruct_rational(double v, std::int64_t max_den,
                                             double max_err);

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

Rational rational_pow(const Rational& base, unsigned exp);

inline int sign(const Rational& q) { return sgn(q); }

/// n/d in canonical form.
inline Rational frac(long n, long d) {
    Rational q{Integer(n), Integer(d)};
    q.canonicalize();
    return q;
}

}  // namespace rsolve

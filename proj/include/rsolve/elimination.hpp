#pragma once

// Greatest common divisors and resultants of bivariate polynomials.
//
// Both are computed with y as the main variable over the coefficient domain
// Q[x]: a content/primitive-part split followed by the subresultant
// pseudo-remainder sequence.

#include "rsolve/bipoly.hpp"

#include <span>
#include <vector>

namespace rsolve {

/// Normalized gcd (see BiPoly::normalized). Throws Error("gcd undefined")
/// when both inputs are zero.
BiPoly poly_gcd(const BiPoly& a, const BiPoly& b);

/// Fold of poly_gcd over the list; throws Error when every entry is zero.
BiPoly multi_gcd(std::span<const BiPoly> polys);

/// Sylvester resultant eliminating v, returned as a polynomial in the other
/// variable. Convention: res(a, b) = lc(a)^deg(b) * prod b(alpha) over the
/// roots alpha of a; a constant (in v) argument c gives c^deg(other), and two
/// constants give 1. Zero when either argument is zero.
BiPoly resultant(const BiPoly& a, const BiPoly& b, Var v);

/// Univariate resultant eliminating y, as a polynomial in x.
UPoly resultant_y(const BiPoly& a, const BiPoly& b);

/// Determinant of a square matrix over Q[x] (fraction-free elimination).
UPoly determinant(std::vector<std::vector<UPoly>> m);

/// Coefficients s_{j,j} and s_{j,j-1} of the j-th subresultant of a and b
/// with respect to y, for j = 0 .. deg_y(b) - 1. Requires deg_y(a) >= deg_y(b) >= 1.
struct SubresultantCoeffs {
    UPoly principal;  // s_{j,j}
    UPoly next;       // s_{j,j-1} (zero for j = 0)
};
std::vector<SubresultantCoeffs> subresultant_coeffs(const BiPoly& a, const BiPoly& b);

/// Full j-th subresultant polynomial of a and b with respect to y, as
/// coefficients of y^0..y^j. Requires deg_y(a) >= deg_y(b) > j.
std::vector<UPoly> subresultant(const BiPoly& a, const BiPoly& b, int j);

/// Square-free part of a bivariate polynomial: p / gcd(p, p_x, p_y), normalized.
BiPoly squarefree_part(const BiPoly& p);

}  // namespace rsolve

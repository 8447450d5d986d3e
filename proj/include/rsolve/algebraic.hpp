#pragma once

// Exact real algebraic points of the plane and the finite common real zero
// set of a polynomial system.
//
// A point is stored in shape position: after the shear u = x + s*y its
// u-coordinate is the unique root of the square-free polynomial `minpoly`
// inside `u_box`, and y = y_of_u(u). Rational points use s = 0, a linear
// minpoly and a constant y_of_u.

#include "rsolve/bipoly.hpp"
#include "rsolve/upoly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rsolve {

struct IntervalBox {
    Rational x_lo, x_hi, y_lo, y_hi;
};

class AlgebraicPoint {
public:
    AlgebraicPoint() : AlgebraicPoint(Rational(0), Rational(0)) {}
    AlgebraicPoint(const Rational& x, const Rational& y);
    /// Throws Error unless minpoly is square-free with exactly one real root in u_box.
    AlgebraicPoint(const Rational& shear, UPoly minpoly, UPoly y_of_u, RootInterval u_box);

    const Rational& shear() const { return shear_; }
    const UPoly& minpoly() const { return minpoly_; }
    const UPoly& y_of_u() const { return y_of_u_; }
    const RootInterval& u_box() const { return u_box_; }
    const IntervalBox& box() const { return box_; }
    double approx_x() const { return approx_x_; }
    double approx_y() const { return approx_y_; }

    bool is_rational() const { return minpoly_.degree() == 1; }
    /// Exact coordinates; throws Error for irrational points.
    Rational x() const;
    Rational y() const;

    /// Shrinks the box until both sides are at most max_width.
    void refine(const Rational& max_width);
    /// Rational point within 2^-bits of this point (exact for rational points).
    std::pair<Rational, Rational> center(unsigned bits = 64) const;

    /// Evaluates p(x(u), y(u)) reduced modulo minpoly, as a polynomial in u.
    UPoly reduce(const BiPoly& p) const;

private:
    void update_box();

    Rational shear_;
    UPoly minpoly_;
    UPoly y_of_u_;
    RootInterval u_box_;
    IntervalBox box_;
    double approx_x_ = 0.0, approx_y_ = 0.0;
};

/// Exact test p(point) == 0.
bool vanishes_at(const BiPoly& p, const AlgebraicPoint& pt);

/// Exact sign of p at the point.
int sign_at(const BiPoly& p, const AlgebraicPoint& pt);

/// Exact equality of two points (independent of their representations).
bool same_point(const AlgebraicPoint& a, const AlgebraicPoint& b);

/// Index of a point equal to pt in the list, if any.
std::optional<std::size_t> find_point(std::span<const AlgebraicPoint> list, const AlgebraicPoint& pt);

/// Deterministic order: by approximate x, then approximate y.
bool point_less(const AlgebraicPoint& a, const AlgebraicPoint& b);

/// The complete list of real common zeros of a system whose gcd is 1, sorted
/// by point_less. Throws Error("positive-dimensional zero set") when the gcd
/// is not 1, and an Error with a diagnostic when no generic shear is found.
std::vector<AlgebraicPoint> common_real_zeros(std::span<const BiPoly> polys, std::uint64_t seed = 0);

}  // namespace rsolve

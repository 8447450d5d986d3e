#pragma once

// Double-precision interval arithmetic. Every operation rounds outward by one
// ulp on each side, so the result always encloses the exact real result of
// the operation applied to any members of the operands.

#include "rsolve/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsolve {

class Interval {
public:
    Interval() = default;
    explicit Interval(double v) : lo_(v), hi_(v) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {}

    static Interval enclose(const Rational& q) { return {round_down(q), round_up(q)}; }
    static Interval enclose(const Rational& lo, const Rational& hi) {
        return {round_down(lo), round_up(hi)};
    }
    static Interval entire() {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf};
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * lo_ + 0.5 * hi_; }
    double width() const { return hi_ - lo_; }
    double mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }
    double mig() const {
        if (contains_zero()) return 0.0;
        return std::min(std::abs(lo_), std::abs(hi_));
    }
    bool contains_zero() const { return lo_ <= 0.0 && hi_ >= 0.0; }
    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool finite() const { return std::isfinite(lo_) && std::isfinite(hi_); }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return widen(a.lo_ + b.lo_, a.hi_ + b.hi_);
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return widen(a.lo_ - b.hi_, a.hi_ - b.lo_);
    }
    friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }
    friend Interval operator*(const Interval& a, const Interval& b) {
        double p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        // 0 * inf yields NaN; treat it as 0 (the finite operand is exactly zero).
        auto fix = [](double v) { return std::isnan(v) ? 0.0 : v; };
        p1 = fix(p1), p2 = fix(p2), p3 = fix(p3), p4 = fix(p4);
        return widen(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) return entire();
        return a * Interval(down(1.0 / b.hi_), up(1.0 / b.lo_));
    }
    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }

    friend Interval pow(const Interval& a, unsigned n) {
        if (n == 0) return Interval(1.0);
        Interval result(1.0), base = a;
        // Even powers of a zero-straddling interval are nonnegative.
        if (n % 2 == 0 && a.contains_zero()) {
            double m = a.mag();
            Interval top(1.0), b(m);
            for (unsigned e = n; e; e >>= 1) {
                if (e & 1) top = top * b;
                b = b * b;
            }
            return {0.0, top.hi_};
        }
        for (unsigned e = n; e; e >>= 1) {
            if (e & 1) result = result * base;
            base = base * base;
        }
        return result;
    }

    friend Interval hull(const Interval& a, const Interval& b) {
        return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
    }
    friend Interval abs(const Interval& a) {
        if (a.contains_zero()) return {0.0, a.mag()};
        return {a.mig(), a.mag()};
    }

private:
    static double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
    static double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
    static Interval widen(double lo, double hi) { return {down(lo), up(hi)}; }

    double lo_ = 0.0;
    double hi_ = 0.0;
};

}  // namespace rsolve

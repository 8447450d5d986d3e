#include "rsolve/ratfun.hpp"

#include "rsolve/elimination.hpp"

namespace rsolve {

RatFun RatFun::reduce(const BiPoly& num, const BiPoly& den) {
    if (den.is_zero()) throw Error("division by the zero polynomial");
    RatFun r;
    if (num.is_zero()) return r;
    BiPoly g = poly_gcd(num, den);
    BiPoly n = g.is_constant() ? num : exact_div(num, g);
    BiPoly d = g.is_constant() ? den : exact_div(den, g);
    BiPoly dn = d.normalized();
    Rational k = dn.leading_coeff() / d.leading_coeff();
    r.num_ = k * n;
    r.den_ = std::move(dn);
    return r;
}

Rational RatFun::eval(const Rational& x, const Rational& y) const {
    Rational d = den_.eval(x, y);
    if (d == 0) throw Error("evaluation at a pole");
    return num_.eval(x, y) / d;
}

Interval RatFun::eval(const Interval& x, const Interval& y) const {
    return num_.eval(x, y) / den_.eval(x, y);
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun::reduce(a.num_ + b.num_, a.den_);
    return RatFun::reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a) {
    RatFun r = a;
    r.num_ = -r.num_;
    return r;
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ * b.num_);
    return RatFun::reduce(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw Error("division by the zero polynomial");
    return RatFun::reduce(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun pow(const RatFun& a, unsigned n) {
    if (n == 0) return RatFun(1);
    return RatFun::reduce(pow(a.num(), n), pow(a.den(), n));
}

bool equal_as_functions(const RatFun& a, const RatFun& b) {
    return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

namespace {

std::string wrap(const BiPoly& p) {
    std::string s = p.to_string();
    if (p.size() > 1 || s.find('*') != std::string::npos) return "(" + s + ")";
    return s;
}

}  // namespace

std::string RatFun::to_string() const {
    if (is_polynomial()) return num_.to_string();
    std::string n = num_.size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
    return n + "/" + wrap(den_);
}

}  // namespace rsolve

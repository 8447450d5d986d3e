#include "rsolve/upoly.hpp"

#include <algorithm>

namespace rsolve {

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& UPoly::lc() const {
    static const Rational zero(0);
    return coeffs_.empty() ? zero : coeffs_.back();
}

Rational UPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(i)];
}

Rational UPoly::eval(const Rational& t) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Interval UPoly::eval(const Interval& t) const {
    Interval acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + Interval::enclose(*it);
    return acc;
}

UPoly UPoly::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
    return UPoly(std::move(d));
}

UPoly UPoly::compose(const UPoly& inner) const {
    UPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + UPoly(*it);
    return acc;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    Rational inv = 1 / lc();
    return inv * *this;
}

UPoly UPoly::primitive() const {
    if (is_zero()) return *this;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& c : coeffs_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    return scale * *this;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a) {
    std::vector<Rational> c(a.coeffs_);
    for (auto& v : c) v = -v;
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UPoly(std::move(c));
}

UPoly operator*(const Rational& s, const UPoly& a) {
    if (s == 0) return {};
    std::vector<Rational> c(a.coeffs_);
    for (auto& v : c) v *= s;
    return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw Error("univariate division by zero polynomial");
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<Rational> rem(a.coeffs_);
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const int db = b.degree();
    Rational inv_lc = 1 / b.lc();
    for (int k = a.degree(); k >= db; --k) {
        Rational q = rem[static_cast<std::size_t>(k)] * inv_lc;
        if (q == 0) continue;
        quo[static_cast<std::size_t>(k - db)] = q;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeffs_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("inexact univariate division");
    return q;
}

UPoly pow(const UPoly& a, unsigned n) {
    UPoly result(Rational(1)), base = a;
    for (; n; n >>= 1) {
        if (n & 1) result = result * base;
        if (n > 1) base = base * base;
    }
    return result;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly u = a, v = b;
    while (!v.is_zero()) {
        UPoly r = (u % v).primitive();
        u = std::move(v);
        v = std::move(r);
    }
    return u.monic();
}

XGcd xgcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b, s0(Rational(1)), s1, t0, t1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = 1 / r0.lc();
    return {inv * r0, inv * s0, inv * t0};
}

UPoly inverse_mod(const UPoly& a, const UPoly& m) {
    auto [g, s, t] = xgcd(a % m, m);
    if (g.degree() != 0) throw Error("polynomial not invertible modulo the given modulus");
    return s % m;
}

UPoly squarefree(const UPoly& p) {
    if (p.is_zero()) return p;
    if (p.degree() == 0) return UPoly(Rational(1));
    return exact_div(p, gcd(p, p.derivative())).monic();
}

SturmSequence::SturmSequence(const UPoly& p) {
    seq_.push_back(p.primitive());
    if (p.degree() < 1) return;
    seq_.push_back(p.derivative().primitive());
    while (true) {
        UPoly r = seq_[seq_.size() - 2] % seq_.back();
        if (r.is_zero()) break;
        seq_.push_back((-r).primitive());
    }
}

int SturmSequence::variations(const Rational& t) const {
    int changes = 0, last = 0;
    for (const auto& p : seq_) {
        int s = p.sign_at(t);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmSequence::count(const Rational& a, const Rational& b) const {
    return variations(a) - variations(b);
}

namespace {

Rational cauchy_bound(const UPoly& p) {
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.lc())));
    Rational bound = 1;
    while (bound <= m + 1) bound *= 2;
    return bound;
}

// Non-root split point inside (a, b).
Rational split_point(const UPoly& p, const Rational& a, const Rational& b) {
    Rational m = (a + b) / 2;
    for (int den = 3; p.sign_at(m) == 0; ++den) m = a + (b - a) / den;
    return m;
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
    if (p.is_zero()) throw Error("root isolation of the zero polynomial");
    UPoly sf = squarefree(p);
    std::vector<RootInterval> out;
    if (sf.degree() < 1) return out;
    SturmSequence sturm(sf);
    Rational bound = cauchy_bound(sf);
    std::vector<std::pair<RootInterval, int>> work{{{-bound, bound}, sturm.count(-bound, bound)}};
    while (!work.empty()) {
        auto [iv, n] = work.back();
        work.pop_back();
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(iv);
            continue;
        }
        Rational m = split_point(sf, iv.lo, iv.hi);
        work.push_back({{iv.lo, m}, sturm.count(iv.lo, m)});
        work.push_back({{m, iv.hi}, sturm.count(m, iv.hi)});
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.lo < r.lo; });
    // Shrink until closures are pairwise disjoint.
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        while (out[i].hi >= out[i + 1].lo) {
            out[i] = refine_root(sf, out[i], out[i].width() / 2);
            out[i + 1] = refine_root(sf, out[i + 1], out[i + 1].width() / 2);
        }
    }
    return out;
}

RootInterval refine_root(const UPoly& p, RootInterval iv, const Rational& max_width) {
    if (iv.exact()) return iv;
    int s_lo = p.sign_at(iv.lo);
    while (iv.width() > max_width) {
        Rational m = iv.midpoint();
        int s = p.sign_at(m);
        if (s == 0) return {m, m};
        if (s == s_lo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

int count_real_roots(const UPoly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw Error("root count of the zero polynomial");
    UPoly sf = squarefree(p);
    if (sf.degree() < 1) return 0;
    SturmSequence sturm(sf);
    int at_a = sf.sign_at(a) == 0 ? 1 : 0;
    return sturm.count(a, b) + at_a;
}

}  // namespace rsolve

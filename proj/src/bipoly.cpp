#include "rsolve/bipoly.hpp"

#include <algorithm>
#include <sstream>

namespace rsolve {

namespace {

// Binomial coefficients, grown on demand.
const Integer& binomial(unsigned n, unsigned k) {
    static thread_local std::vector<std::vector<Integer>> rows{{Integer(1)}};
    while (rows.size() <= n) {
        const auto& prev = rows.back();
        std::vector<Integer> row(prev.size() + 1);
        row.front() = 1;
        row.back() = 1;
        for (std::size_t i = 1; i + 1 < row.size(); ++i) row[i] = prev[i - 1] + prev[i];
        rows.push_back(std::move(row));
    }
    return rows[n][k];
}

std::vector<Rational> powers_of(const Rational& a, unsigned n) {
    std::vector<Rational> out(n + 1);
    out[0] = 1;
    for (unsigned i = 1; i <= n; ++i) out[i] = out[i - 1] * a;
    return out;
}

// p(t + a) with a = A/D: s(T) = sum n_k D^(d-k) (T + A)^k is shifted by
// integer Horner steps, and the coefficient of t^j is s_j / (L D^(d-j)).
UPoly taylor_shift(const UPoly& p, const Rational& a) {
    const int d = p.degree();
    if (d <= 0 || a == 0) return p;
    Integer L = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
    const Integer& A = a.get_num();
    const Integer& D = a.get_den();
    std::vector<Integer> dp(static_cast<std::size_t>(d) + 1);
    dp[0] = 1;
    for (int k = 1; k <= d; ++k) dp[static_cast<std::size_t>(k)] = dp[static_cast<std::size_t>(k - 1)] * D;
    std::vector<Integer> m(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
        const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
        m[static_cast<std::size_t>(k)] = Integer(c.get_num() * (L / c.get_den())) * dp[static_cast<std::size_t>(d - k)];
    }
    for (int i = 0; i < d; ++i)
        for (int k = d - 1; k >= i; --k) m[static_cast<std::size_t>(k)] += A * m[static_cast<std::size_t>(k + 1)];
    std::vector<Rational> out(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) {
        Rational q(m[static_cast<std::size_t>(j)], L * dp[static_cast<std::size_t>(d - j)]);
        q.canonicalize();
        out[static_cast<std::size_t>(j)] = q;
    }
    return UPoly(std::move(out));
}

}  // namespace

BiPoly::BiPoly(const Rational& c) {
    if (c != 0) terms_.emplace(0, c);
}

BiPoly BiPoly::monomial(const Rational& c, unsigned dx, unsigned dy) {
    BiPoly p;
    if (c != 0) p.terms_.emplace(Monomial{dx, dy}.key(), c);
    return p;
}

BiPoly BiPoly::from_univariate(const UPoly& p, Var v) {
    BiPoly out;
    for (int i = 0; i <= p.degree(); ++i) {
        unsigned e = static_cast<unsigned>(i);
        out.add_term(v == Var::x ? Monomial{e, 0}.key() : Monomial{0, e}.key(), p.coeff(i));
    }
    return out;
}

void BiPoly::add_term(std::uint64_t key, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool BiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

Rational BiPoly::constant() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Rational(0) : it->second;
}

int BiPoly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(Monomial::from_key(terms_.rbegin()->first).total());
}

int BiPoly::degree(Var v) const {
    int d = -1;
    for (const auto& [k, c] : terms_) {
        Monomial m = Monomial::from_key(k);
        d = std::max(d, static_cast<int>(v == Var::x ? m.dx : m.dy));
    }
    return d;
}

int BiPoly::order() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(Monomial::from_key(terms_.begin()->first).total());
}

Monomial BiPoly::leading_monomial() const {
    if (terms_.empty()) throw Error("leading monomial of the zero polynomial");
    return Monomial::from_key(terms_.rbegin()->first);
}

const Rational& BiPoly::leading_coeff() const {
    if (terms_.empty()) throw Error("leading coefficient of the zero polynomial");
    return terms_.rbegin()->second;
}

Rational BiPoly::coeff(unsigned dx, unsigned dy) const {
    auto it = terms_.find(Monomial{dx, dy}.key());
    return it == terms_.end() ? Rational(0) : it->second;
}

BiPoly BiPoly::homogeneous_part(int d) const {
    BiPoly out;
    for (const auto& [k, c] : terms_)
        if (static_cast<int>(Monomial::from_key(k).total()) == d) out.terms_.emplace(k, c);
    return out;
}

Rational BiPoly::eval(const Rational& x, const Rational& y) const {
    if (terms_.empty()) return 0;
    auto xp = powers_of(x, static_cast<unsigned>(std::max(0, degree(Var::x))));
    auto yp = powers_of(y, static_cast<unsigned>(std::max(0, degree(Var::y))));
    Rational acc = 0;
    for (const auto& [k, c] : terms_) {
        Monomial m = Monomial::from_key(k);
        acc += c * xp[m.dx] * yp[m.dy];
    }
    return acc;
}

Interval BiPoly::eval(const Interval& x, const Interval& y) const {
    Interval acc(0.0);
    for (const auto& [k, c] : terms_) {
        Monomial m = Monomial::from_key(k);
        acc += Interval::enclose(c) * pow(x, m.dx) * pow(y, m.dy);
    }
    return acc;
}

double BiPoly::eval(double x, double y) const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_) {
        Monomial m = Monomial::from_key(k);
        acc += c.get_d() * std::pow(x, m.dx) * std::pow(y, m.dy);
    }
    return acc;
}

BiPoly BiPoly::derivative(Var v) const {
    BiPoly out;
    for (const auto& [k, c] : terms_) {
        Monomial m = Monomial::from_key(k);
        unsigned e = v == Var::x ? m.dx : m.dy;
        if (e == 0) continue;
        Monomial d = v == Var::x ? Monomial{m.dx - 1, m.dy} : Monomial{m.dx, m.dy - 1};
        out.add_term(d.key(), c * static_cast<long>(e));
    }
    return out;
}

BiPoly BiPoly::translate(const Rational& a, const Rational& b) const {
    if (a == 0 && b == 0) return *this;
    auto cx = coefficients_in(Var::y);
    for (auto& c : cx) c = taylor_shift(c, a);
    auto cy = from_coefficients(cx, Var::y).coefficients_in(Var::x);
    for (auto& c : cy) c = taylor_shift(c, b);
    return from_coefficients(cy, Var::x);
}

BiPoly BiPoly::shear(const Rational& s) const {
    if (s == 0) return *this;
    auto sp = powers_of(-s, static_cast<unsigned>(std::max(0, degree(Var::x))));
    BiPoly out;
    for (const auto& [key, c] : terms_) {
        Monomial m = Monomial::from_key(key);
        // (u - s y)^dx y^dy
        for (unsigned k = 0; k <= m.dx; ++k)
            out.add_term(Monomial{k, m.dy + m.dx - k}.key(), c * Rational(binomial(m.dx, k)) * sp[m.dx - k]);
    }
    return out;
}

BiPoly BiPoly::swap_vars() const {
    BiPoly out;
    for (const auto& [key, c] : terms_) {
        Monomial m = Monomial::from_key(key);
        out.terms_.emplace(Monomial{m.dy, m.dx}.key(), c);
    }
    return out;
}

BiPoly BiPoly::substitute(const BiPoly& px, const BiPoly& py) const {
    std::vector<BiPoly> xp{BiPoly(1)}, yp{BiPoly(1)};
    for (int i = 0; i < degree(Var::x); ++i) xp.push_back(xp.back() * px);
    for (int i = 0; i < degree(Var::y); ++i) yp.push_back(yp.back() * py);
    BiPoly out;
    for (const auto& [key, c] : terms_) {
        Monomial m = Monomial::from_key(key);
        out += c * (xp[m.dx] * yp[m.dy]);
    }
    return out;
}

std::vector<UPoly> BiPoly::coefficients_in(Var v) const {
    int d = degree(v);
    if (d < 0) return {};
    std::vector<std::vector<Rational>> raw(static_cast<std::size_t>(d + 1));
    for (const auto& [key, c] : terms_) {
        Monomial m = Monomial::from_key(key);
        unsigned main = v == Var::y ? m.dy : m.dx;
        unsigned other = v == Var::y ? m.dx : m.dy;
        auto& slot = raw[main];
        if (slot.size() <= other) slot.resize(other + 1);
        slot[other] = c;
    }
    std::vector<UPoly> out;
    out.reserve(raw.size());
    for (auto& r : raw) out.emplace_back(std::move(r));
    return out;
}

BiPoly BiPoly::from_coefficients(const std::vector<UPoly>& coeffs, Var v) {
    BiPoly out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const UPoly& c = coeffs[i];
        for (int j = 0; j <= c.degree(); ++j) {
            unsigned main = static_cast<unsigned>(i), other = static_cast<unsigned>(j);
            Monomial m = v == Var::y ? Monomial{other, main} : Monomial{main, other};
            out.add_term(m.key(), c.coeff(j));
        }
    }
    return out;
}

UPoly BiPoly::to_univariate(Var v) const {
    Var other = v == Var::x ? Var::y : Var::x;
    if (degree(other) > 0) throw Error("polynomial is not univariate in the requested variable");
    auto c = coefficients_in(other);
    return c.empty() ? UPoly() : c[0];
}

BiPoly BiPoly::normalized() const {
    if (terms_.empty()) return *this;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& [k, c] : terms_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (leading_coeff() < 0) scale = -scale;
    return scale * *this;
}

BiPoly BiPoly::monic() const {
    if (terms_.empty()) return *this;
    return Rational(1 / leading_coeff()) * *this;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly out = a;
    out += b;
    return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

BiPoly operator-(const BiPoly& a) {
    BiPoly out = a;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    BiPoly out = a;
    out -= b;
    return out;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    BiPoly out;
    Rational prod;
    for (const auto& [ka, ca] : a.terms_) {
        Monomial ma = Monomial::from_key(ka);
        for (const auto& [kb, cb] : b.terms_) {
            Monomial mb = Monomial::from_key(kb);
            mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            out.add_term(Monomial{ma.dx + mb.dx, ma.dy + mb.dy}.key(), prod);
        }
    }
    return out;
}

BiPoly operator*(const Rational& s, const BiPoly& a) {
    if (s == 0) return {};
    BiPoly out = a;
    for (auto& [k, c] : out.terms_) c *= s;
    return out;
}

BiPoly pow(const BiPoly& a, unsigned n) {
    BiPoly result(1), base = a;
    for (; n; n >>= 1) {
        if (n & 1) result = result * base;
        if (n > 1) base = base * base;
    }
    return result;
}

namespace {

std::pair<BiPoly, BiPoly> divide_leading(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) throw Error("bivariate division by zero polynomial");
    BiPoly quo, rem = a;
    Monomial lb = b.leading_monomial();
    const Rational& cb = b.leading_coeff();
    while (!rem.is_zero()) {
        Monomial lr = rem.leading_monomial();
        if (lr.dx < lb.dx || lr.dy < lb.dy) break;
        BiPoly t = BiPoly::monomial(rem.leading_coeff() / cb, lr.dx - lb.dx, lr.dy - lb.dy);
        quo += t;
        rem -= t * b;
    }
    return {quo, rem};
}

}  // namespace

BiPoly exact_div(const BiPoly& a, const BiPoly& b) {
    auto [q, r] = divide_leading(a, b);
    if (!r.is_zero()) throw Error("inexact bivariate division");
    return q;
}

bool divides(const BiPoly& b, const BiPoly& a) { return divide_leading(a, b).second.is_zero(); }

std::string BiPoly::to_string(const char* xname, const char* yname) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Monomial m = Monomial::from_key(it->first);
        Rational c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? "-" : "+");
        first = false;
        bool unit = (c == 1);
        bool wrote = false;
        if (!unit || m.total() == 0) {
            os << rsolve::to_string(c);
            wrote = true;
        }
        auto factor = [&](const char* name, unsigned e) {
            if (e == 0) return;
            if (wrote) os << '*';
            os << name;
            if (e > 1) os << '^' << e;
            wrote = true;
        };
        factor(xname, m.dx);
        factor(yname, m.dy);
    }
    return os.str();
}

LocalPoly::LocalPoly(const BiPoly& p, const Rational& cx, const Rational& cy) {
    BiPoly local = p.translate(cx, cy);
    for (const auto& [k, c] : local.terms()) {
        Monomial m = Monomial::from_key(k);
        terms_.push_back({m.dx, m.dy, Interval::enclose(c)});
        max_dx_ = std::max(max_dx_, m.dx);
        max_dy_ = std::max(max_dy_, m.dy);
    }
}

Interval LocalPoly::eval(double dx, double dy) const {
    std::vector<Interval> xp(max_dx_ + 1), yp(max_dy_ + 1);
    xp[0] = Interval(1.0);
    yp[0] = Interval(1.0);
    for (unsigned i = 1; i <= max_dx_; ++i) xp[i] = xp[i - 1] * Interval(dx);
    for (unsigned i = 1; i <= max_dy_; ++i) yp[i] = yp[i - 1] * Interval(dy);
    Interval acc(0.0);
    for (const auto& t : terms_) acc += t.c * xp[t.dx] * yp[t.dy];
    return acc;
}

}  // namespace rsolve

#include "rsolve/algebraic.hpp"

#include "rsolve/elimination.hpp"

#include <algorithm>
#include <random>

namespace rsolve {

namespace {

// Closed rational interval, used for exact enclosures of point coordinates.
struct RInt {
    Rational lo, hi;
};

RInt add(const RInt& a, const RInt& b) { return {a.lo + b.lo, a.hi + b.hi}; }

RInt mul(const RInt& a, const RInt& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RInt scale(const Rational& c, const RInt& a) {
    if (c >= 0) return {c * a.lo, c * a.hi};
    return {c * a.hi, c * a.lo};
}

RInt horner(const UPoly& p, const RInt& t) {
    auto cs = p.coeffs();
    if (cs.empty()) return {0, 0};
    RInt r{cs.back(), cs.back()};
    for (std::size_t i = cs.size() - 1; i-- > 0;) r = add(mul(r, t), RInt{cs[i], cs[i]});
    return r;
}

bool overlaps(const RInt& a, const RInt& b) { return a.lo <= b.hi && b.lo <= a.hi; }

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m) { return (a * b) % m; }

// p(X(t), Y(t)) mod m.
UPoly reduce_with(const BiPoly& p, const UPoly& X, const UPoly& Y, const UPoly& m) {
    int dx = p.degree(Var::x), dy = p.degree(Var::y);
    if (dx < 0) return {};
    std::vector<UPoly> xp{UPoly(Rational(1)) % m}, yp{UPoly(Rational(1)) % m};
    for (int i = 1; i <= dx; ++i) xp.push_back(mulmod(xp.back(), X, m));
    for (int j = 1; j <= dy; ++j) yp.push_back(mulmod(yp.back(), Y, m));
    UPoly acc;
    for (const auto& [key, c] : p.terms()) {
        Monomial mono = Monomial::from_key(key);
        acc = acc + c * mulmod(xp[mono.dx], yp[mono.dy], m);
    }
    return acc % m;
}

// True when the root of m isolated by iv is a root of p.
bool shares_root(const UPoly& p, const UPoly& m, const RootInterval& iv) {
    if (p.is_zero()) return true;
    if (iv.exact()) return p.eval(iv.lo) == 0;
    UPoly g = gcd(p, m);
    if (g.degree() <= 0) return false;
    return count_real_roots(g, iv.lo, iv.hi) > 0;
}

Rational two_pow(int e) {
    Rational r = 1;
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

}  // namespace

AlgebraicPoint::AlgebraicPoint(const Rational& x, const Rational& y)
    : shear_(0), minpoly_(UPoly::linear(x)), y_of_u_(UPoly(y)), u_box_{x, x} {
    update_box();
}

AlgebraicPoint::AlgebraicPoint(const Rational& shear, UPoly minpoly, UPoly y_of_u, RootInterval u_box)
    : shear_(shear), minpoly_(minpoly.monic()), u_box_(std::move(u_box)) {
    if (minpoly_.degree() < 1) throw Error("algebraic point: minimal polynomial must have positive degree");
    if (gcd(minpoly_, minpoly_.derivative()).degree() > 0)
        throw Error("algebraic point: polynomial is not square-free");
    if (u_box_.exact()) {
        if (minpoly_.eval(u_box_.lo) != 0) throw Error("algebraic point: exact box is not a root");
    } else {
        if (minpoly_.eval(u_box_.lo) == 0 || minpoly_.eval(u_box_.hi) == 0 ||
            count_real_roots(minpoly_, u_box_.lo, u_box_.hi) != 1)
            throw Error("algebraic point: box does not isolate a single root");
    }
    y_of_u_ = y_of_u % minpoly_;

    // Rational u (possibly a root of a reducible minpoly) gives a rational point.
    std::optional<Rational> u;
    if (u_box_.exact()) {
        u = u_box_.lo;
    } else if (minpoly_.degree() == 1) {
        u = -minpoly_.coeff(0);
    } else {
        RootInterval fine = refine_root(minpoly_, u_box_, two_pow(-40));
        Rational cand = fine.exact() ? fine.lo : simplest_between(fine.lo, fine.hi);
        if (minpoly_.eval(cand) == 0) u = cand;
        u_box_ = fine;
    }
    if (u) {
        Rational yv = y_of_u_.eval(*u);
        *this = AlgebraicPoint(*u - shear_ * yv, yv);
        return;
    }
    update_box();
}

void AlgebraicPoint::update_box() {
    if (is_rational()) {
        Rational u = -minpoly_.coeff(0) / minpoly_.coeff(1);
        Rational yv = y_of_u_.eval(u), xv = u - shear_ * yv;
        box_ = {xv, xv, yv, yv};
        approx_x_ = to_double(xv);
        approx_y_ = to_double(yv);
        return;
    }
    const Rational target = two_pow(-52);
    for (int iter = 0;; ++iter) {
        RInt u{u_box_.lo, u_box_.hi};
        RInt y = horner(y_of_u_, u);
        RInt x = add(u, scale(-shear_, y));
        box_ = {x.lo, x.hi, y.lo, y.hi};
        Rational scale_x = 1 + abs(x.lo), scale_y = 1 + abs(y.lo);
        if (iter >= 200 || (x.hi - x.lo <= target * scale_x && y.hi - y.lo <= target * scale_y)) break;
        u_box_ = refine_root(minpoly_, u_box_, u_box_.width() / 16);
        if (u_box_.exact()) {
            *this = AlgebraicPoint(shear_, minpoly_, y_of_u_, u_box_);
            return;
        }
    }
    approx_x_ = to_double((box_.x_lo + box_.x_hi) / 2);
    approx_y_ = to_double((box_.y_lo + box_.y_hi) / 2);
}

Rational AlgebraicPoint::x() const {
    if (!is_rational()) throw Error("point has irrational coordinates");
    return box_.x_lo;
}

Rational AlgebraicPoint::y() const {
    if (!is_rational()) throw Error("point has irrational coordinates");
    return box_.y_lo;
}

void AlgebraicPoint::refine(const Rational& max_width) {
    if (is_rational()) return;
    while (box_.x_hi - box_.x_lo > max_width || box_.y_hi - box_.y_lo > max_width) {
        u_box_ = refine_root(minpoly_, u_box_, u_box_.width() / 4);
        if (u_box_.exact()) {
            *this = AlgebraicPoint(shear_, minpoly_, y_of_u_, u_box_);
            return;
        }
        RInt u{u_box_.lo, u_box_.hi};
        RInt y = horner(y_of_u_, u);
        RInt x = add(u, scale(-shear_, y));
        box_ = {x.lo, x.hi, y.lo, y.hi};
    }
}

std::pair<Rational, Rational> AlgebraicPoint::center(unsigned bits) const {
    if (is_rational()) return {box_.x_lo, box_.y_lo};
    AlgebraicPoint p = *this;
    p.refine(two_pow(-static_cast<int>(bits)));
    return {(p.box_.x_lo + p.box_.x_hi) / 2, (p.box_.y_lo + p.box_.y_hi) / 2};
}

UPoly AlgebraicPoint::reduce(const BiPoly& p) const {
    UPoly X = UPoly::x() - shear_ * y_of_u_;
    return reduce_with(p, X % minpoly_, y_of_u_, minpoly_);
}

bool vanishes_at(const BiPoly& p, const AlgebraicPoint& pt) {
    if (pt.is_rational()) return p.eval(pt.x(), pt.y()) == 0;
    return shares_root(pt.reduce(p), pt.minpoly(), pt.u_box());
}

int sign_at(const BiPoly& p, const AlgebraicPoint& pt) {
    if (pt.is_rational()) return sgn(p.eval(pt.x(), pt.y()));
    UPoly r = pt.reduce(p);
    if (shares_root(r, pt.minpoly(), pt.u_box())) return 0;
    UPoly sr = squarefree(r);
    RootInterval iv = pt.u_box();
    while (count_real_roots(sr, iv.lo, iv.hi) > 0) {
        iv = refine_root(pt.minpoly(), iv, iv.width() / 4);
        if (iv.exact()) return r.sign_at(iv.lo);
    }
    return r.sign_at(iv.lo);
}

bool same_point(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    const auto& ba = a.box();
    const auto& bb = b.box();
    if (!overlaps({ba.x_lo, ba.x_hi}, {bb.x_lo, bb.x_hi}) || !overlaps({ba.y_lo, ba.y_hi}, {bb.y_lo, bb.y_hi}))
        return false;
    if (a.is_rational() && b.is_rational()) return a.x() == b.x() && a.y() == b.y();
    if (b.is_rational()) return same_point(b, a);
    if (a.is_rational()) {
        BiPoly lin_x = BiPoly::x() - BiPoly(a.x());
        BiPoly lin_y = BiPoly::y() - BiPoly(a.y());
        return vanishes_at(lin_x, b) && vanishes_at(lin_y, b);
    }
    // The u_a-coordinate of b and the y mismatch, both as polynomials in v = u_b.
    const UPoly& qb = b.minpoly();
    UPoly xb = (UPoly::x() - b.shear() * b.y_of_u()) % qb;
    UPoly T = (xb + a.shear() * b.y_of_u()) % qb;
    UPoly M = a.minpoly().compose(T) % qb;
    UPoly W = (a.y_of_u().compose(T) - b.y_of_u()) % qb;
    UPoly d = gcd(gcd(qb, M), W);
    if (d.degree() <= 0) return false;
    if (count_real_roots(d, b.u_box().lo, b.u_box().hi) == 0) return false;
    // b's u_a-image is a root of q_a; decide whether it is a's isolated root.
    const RootInterval& ia = a.u_box();
    RootInterval ib = b.u_box();
    for (int iter = 0; iter < 4000; ++iter) {
        if (ib.exact()) {
            Rational t = T.eval(ib.lo);
            return ia.lo <= t && t <= ia.hi;
        }
        RInt img = horner(T, {ib.lo, ib.hi});
        if (ia.lo <= img.lo && img.hi <= ia.hi) return true;
        if (img.hi < ia.lo || img.lo > ia.hi) return false;
        ib = refine_root(qb, ib, ib.width() / 4);
    }
    throw Error("same_point: refinement did not terminate");
}

std::optional<std::size_t> find_point(std::span<const AlgebraicPoint> list, const AlgebraicPoint& pt) {
    for (std::size_t i = 0; i < list.size(); ++i)
        if (same_point(list[i], pt)) return i;
    return std::nullopt;
}

bool point_less(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    if (a.approx_x() != b.approx_x()) return a.approx_x() < b.approx_x();
    return a.approx_y() < b.approx_y();
}

namespace {

struct ShapeBlock {
    UPoly q;  // square-free, roots are the u-coordinates
    UPoly w;  // y = w(u) modulo q
};

// Coefficients of S_k compared against s_k * (y - w)^k modulo q.
bool matches_shape(const std::vector<UPoly>& S, const UPoly& w, const UPoly& q) {
    const int k = static_cast<int>(S.size()) - 1;
    const UPoly& sk = S.back();
    UPoly negw = (-w) % q;
    Rational binom = 1;
    UPoly wpow = UPoly(Rational(1)) % q;
    // Coefficient of y^(k-i) is s_k * C(k, i) * (-w)^i.
    for (int i = 0; i <= k; ++i) {
        UPoly expected = (binom * mulmod(sk, wpow, q)) % q;
        if (((S[static_cast<std::size_t>(k - i)] % q) - expected) % q != UPoly()) return false;
        wpow = mulmod(wpow, negw, q);
        binom = binom * (k - i) / (i + 1);
    }
    return true;
}

// Shape-position decomposition of the common zeros of P and Q (both with
// constant leading coefficient in y). nullopt when the shear is not generic.
std::optional<std::vector<ShapeBlock>> shape_blocks(const BiPoly& P, const BiPoly& Q) {
    UPoly R = resultant_y(P, Q);
    if (R.is_zero()) return std::nullopt;
    std::vector<ShapeBlock> out;
    if (R.degree() == 0) return out;
    UPoly rem = squarefree(R);
    const int n = Q.degree(Var::y);
    std::vector<SubresultantCoeffs> sc = subresultant_coeffs(P, Q);
    for (int k = 1; k <= n && rem.degree() > 0; ++k) {
        UPoly q;
        std::vector<UPoly> S;
        if (k < n) {
            UPoly ak = gcd(rem, sc[static_cast<std::size_t>(k)].principal);
            if (ak.is_zero()) ak = rem;
            q = exact_div(rem, ak);
            rem = ak;
            if (q.degree() <= 0) continue;
            S = subresultant(P, Q, k);
        } else {
            q = rem;
            rem = UPoly(Rational(1));
            S = Q.coefficients_in(Var::y);
        }
        const UPoly& sk = S.back();
        const UPoly& skm = S[static_cast<std::size_t>(k - 1)];
        UPoly w = (-(skm * inverse_mod((Rational(k) * sk) % q, q))) % q;
        if (!matches_shape(S, w, q)) return std::nullopt;
        out.push_back({std::move(q), std::move(w)});
    }
    return out;
}

bool lc_constant(const BiPoly& p) {
    auto cs = p.coefficients_in(Var::y);
    return cs.size() >= 2 && cs.back().is_constant();
}

Rational random_shear(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-7, 7), den(1, 5);
    long n = 0;
    while (n == 0) n = num(rng);
    return frac(n, den(rng));
}

}  // namespace

std::vector<AlgebraicPoint> common_real_zeros(std::span<const BiPoly> polys, std::uint64_t seed) {
    std::vector<BiPoly> g;
    for (const auto& p : polys)
        if (!p.is_zero()) g.push_back(p);
    if (g.empty()) throw Error("positive-dimensional zero set");
    for (const auto& p : g)
        if (p.is_constant()) return {};
    if (!multi_gcd(g).is_constant()) throw Error("positive-dimensional zero set");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coef(-9, 9);
    constexpr int kPairAttempts = 8;
    constexpr int kShearAttempts = 8;

    for (int attempt = 0; attempt < kPairAttempts; ++attempt) {
        BiPoly h1, h2;
        if (attempt == 0 && g.size() >= 2) {
            h1 = g[0];
            h2 = g[1];
            for (std::size_t i = 2; i < g.size(); ++i) h2 += Rational(coef(rng)) * g[i];
        } else {
            for (const auto& p : g) {
                h1 += Rational(coef(rng)) * p;
                h2 += Rational(coef(rng)) * p;
            }
        }
        if (h1.is_zero() || h2.is_zero() || !poly_gcd(h1, h2).is_constant()) continue;

        for (int st = 0; st < kShearAttempts; ++st) {
            Rational s = st == 0 ? Rational(0) : random_shear(rng);
            BiPoly P = h1.shear(s), Q = h2.shear(s);
            if (!lc_constant(P) || !lc_constant(Q)) continue;
            if (P.degree(Var::y) < Q.degree(Var::y)) std::swap(P, Q);
            auto blocks = shape_blocks(P, Q);
            if (!blocks) continue;

            std::vector<AlgebraicPoint> points;
            for (auto& blk : *blocks) {
                UPoly q = blk.q;
                UPoly X = (UPoly::x() - s * blk.w) % q;
                for (const auto& p : g) {
                    UPoly r = reduce_with(p, X, blk.w, q);
                    if (!r.is_zero()) q = gcd(q, r);
                    if (q.degree() <= 0) break;
                }
                if (q.degree() <= 0) continue;
                UPoly w = blk.w % q;
                for (const auto& iv : isolate_real_roots(q)) points.emplace_back(s, q, w, iv);
            }
            std::sort(points.begin(), points.end(), point_less);
            return points;
        }
    }
    throw Error("common zeros: no generic projection found");
}

}  // namespace rsolve

#include <doctest.h>

#include "rsolve/algebraic.hpp"
#include "rsolve/bipoly.hpp"
#include "rsolve/elimination.hpp"
#include "rsolve/upoly.hpp"

#include <map>
#include <random>
#include <set>

using namespace rsolve;

namespace {

const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();

BiPoly random_poly(std::mt19937_64& rng, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> deg(0, max_deg), coef(-9, 9), nterms(1, max_terms);
    BiPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        int dx = deg(rng), dy = deg(rng);
        if (dx + dy > max_deg) continue;
        p += BiPoly::monomial(coef(rng), static_cast<unsigned>(dx), static_cast<unsigned>(dy));
    }
    return p;
}

// Schoolbook expansion on a plain exponent map, independent of BiPoly's product.
using Dense = std::map<std::pair<unsigned, unsigned>, Rational>;

Dense to_dense(const BiPoly& p) {
    Dense d;
    for (const auto& [k, c] : p.terms()) {
        Monomial m = Monomial::from_key(k);
        d[{m.dx, m.dy}] = c;
    }
    return d;
}

Dense naive_mul(const Dense& a, const Dense& b) {
    Dense out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// Determinant of a rational matrix by Gaussian elimination with row swaps.
Rational det(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

// Sylvester determinant of a(x0, y), b(x0, y) in y with the formal degrees.
Rational sylvester_at(const BiPoly& a, const BiPoly& b, const Rational& x0) {
    int m = a.degree(Var::y), n = b.degree(Var::y);
    std::vector<Rational> ca(static_cast<std::size_t>(m + 1)), cb(static_cast<std::size_t>(n + 1));
    for (const auto& [k, c] : a.terms()) {
        Monomial mo = Monomial::from_key(k);
        ca[mo.dy] += c * rational_pow(x0, mo.dx);
    }
    for (const auto& [k, c] : b.terms()) {
        Monomial mo = Monomial::from_key(k);
        cb[mo.dy] += c * rational_pow(x0, mo.dx);
    }
    const int size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<Rational>> s(static_cast<std::size_t>(size), std::vector<Rational>(static_cast<std::size_t>(size)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = ca[static_cast<std::size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = cb[static_cast<std::size_t>(n - j)];
    return det(std::move(s));
}

// Exact rational common zeros on the grid {p/q : q <= 6, |p/q| <= 4}.
std::set<std::pair<Rational, Rational>> grid_zeros(const std::vector<BiPoly>& polys) {
    std::set<Rational> grid;
    for (long q = 1; q <= 6; ++q)
        for (long p = -4 * q; p <= 4 * q; ++p) grid.insert(frac(p, q));
    std::set<std::pair<Rational, Rational>> out;
    for (const auto& gx : grid) {
        for (const auto& gy : grid) {
            bool all = true;
            for (const auto& p : polys)
                if (p.eval(gx, gy) != 0) {
                    all = false;
                    break;
                }
            if (all) out.insert({gx, gy});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("arith: monomial product, cancellation, binomial square") {
    CHECK(pow(X, 3) * pow(Y, 3) == BiPoly::monomial(1, 3, 3));
    BiPoly s = X * X + Y * Y;
    CHECK((s - s).is_zero());
    CHECK(pow(X + Y, 2) == X * X + Rational(2) * X * Y + Y * Y);
    Dense d = naive_mul(to_dense(X + Y), to_dense(X + Y));
    CHECK(to_dense(pow(X + Y, 2)) == d);
}

TEST_CASE("arith agrees with a schoolbook expander and is exact") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        BiPoly a = random_poly(rng, 5, 6), b = random_poly(rng, 5, 6);
        CHECK(to_dense(a * b) == naive_mul(to_dense(a), to_dense(b)));
        CHECK((a + b) - b == a);
        CHECK(pow(a, 3) == a * a * a);
    }
}

TEST_CASE("poly_gcd examples") {
    CHECK(poly_gcd(X * X * Y, X * Y * Y) == X * Y);
    CHECK(poly_gcd(pow(X, 3), pow(Y, 3)) == BiPoly(1));
    BiPoly p = Rational(-6) * X * Y + Rational(4) * Y;
    CHECK(poly_gcd(p, BiPoly()) == p.normalized());
    CHECK(poly_gcd(BiPoly(), p) == (Rational(3) * X * Y - Rational(2) * Y));
    CHECK_THROWS_WITH(poly_gcd(BiPoly(), BiPoly()), "gcd undefined");
}

TEST_CASE("multi_gcd examples") {
    std::vector<BiPoly> a{X * X * Y, X * Y * Y, pow(X, 3) * pow(Y, 3)};
    CHECK(multi_gcd(a) == X * Y);
    std::vector<BiPoly> b{pow(X, 3), pow(Y, 3)};
    CHECK(multi_gcd(b) == BiPoly(1));
    BiPoly p = Rational(2) * X - Rational(4) * Y * Y;
    std::vector<BiPoly> c{p};
    CHECK(multi_gcd(c) == p.normalized());
    std::vector<BiPoly> z{BiPoly(), BiPoly()};
    CHECK_THROWS(multi_gcd(z));
}

TEST_CASE("gcd of a common multiple recovers the multiplier") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int t = 0; t < 30; ++t) {
        // a in x alone and b in y alone are coprime by construction.
        BiPoly a = X * X + Rational(coef(rng)) * X + Rational(coef(rng) == 0 ? 1 : 2);
        BiPoly b = pow(Y, 3) + Rational(coef(rng)) * Y + 1;
        BiPoly c = random_poly(rng, 3, 4);
        if (c.is_zero()) continue;
        CHECK(poly_gcd(a * c, b * c) == c.normalized());
        BiPoly g = multi_gcd(std::vector<BiPoly>{a * c, b * c});
        CHECK(divides(g, a * c));
        CHECK(divides(g, b * c));
    }
}

TEST_CASE("gcd with a shared non-trivial bivariate factor") {
    BiPoly f = X * X + Y * Y - 1;
    BiPoly a = f * (X - Y * Y), b = f * (X * Y + 2);
    CHECK(poly_gcd(a, b) == f.normalized());
    BiPoly c = (X - Y) * (X - Y);
    CHECK(poly_gcd(c * (X + 1), c * (Y + 1)) == c.normalized());
}

TEST_CASE("resultant examples and convention") {
    // res_y(y - x^2, y): lc(a)^1 * b(x^2) = +x^2 under our convention.
    CHECK(resultant(Y - X * X, Y, Var::y) == X * X);
    CHECK(resultant(X * X + Y * Y, Y, Var::y) == X * X);
    // A y-free first argument gives a^deg_y(b).
    BiPoly a = X * X - 3, b = (X + 1) * Y * Y + X;
    CHECK(resultant(a, b, Var::y) == pow(a, 2));
    CHECK(resultant(b, a, Var::y) == pow(a, 2));
    CHECK(resultant(BiPoly(3), BiPoly(5), Var::y) == BiPoly(1));
    // Eliminating x gives a polynomial in y.
    CHECK(resultant(X - Y * Y, X, Var::x) == Y * Y);
}

TEST_CASE("resultant equals the Sylvester determinant pointwise") {
    std::mt19937_64 rng(23);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        BiPoly a = random_poly(rng, 4, 5), b = random_poly(rng, 4, 5);
        if (a.degree(Var::y) < 1 || b.degree(Var::y) < 1) continue;
        UPoly r = resultant_y(a, b);
        for (long x0 = -3; x0 <= 3; ++x0) {
            Rational xv = frac(x0, 2);
            CHECK(r.eval(xv) == sylvester_at(a, b, xv));
        }
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("subresultant principal coefficients") {
    // Common factor (y - x) of degree 1: s_0 = 0, s_1 != 0.
    BiPoly a = (Y - X) * (Y * Y + 1), b = (Y - X) * (Y + 2);
    auto sc = subresultant_coeffs(a, b);
    REQUIRE(sc.size() == 2);
    CHECK(sc[0].principal.is_zero());
    CHECK(!sc[1].principal.is_zero());
    // S_1 is proportional to y - x.
    auto s1 = subresultant(a, b, 1);
    CHECK((s1[0] + s1[1] * UPoly::x()).is_zero());
}

TEST_CASE("univariate real root isolation") {
    UPoly p(std::vector<Rational>{-2, 0, 1});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 2);
    for (const auto& iv : roots) {
        CHECK(!iv.exact());
        CHECK(p.sign_at(iv.lo) * p.sign_at(iv.hi) < 0);
    }
    CHECK(roots[0].hi < roots[1].lo);
    auto fine = refine_root(p, roots[1], frac(1, 1000000000));
    CHECK(to_double(fine.lo) == doctest::Approx(1.41421356).epsilon(1e-8));
    CHECK(isolate_real_roots(UPoly(std::vector<Rational>{1, 0, 1})).empty());
    auto cube = isolate_real_roots(UPoly(std::vector<Rational>{0, 0, 0, 1}));
    REQUIRE(cube.size() == 1);
    CHECK(cube[0].lo <= 0);
    CHECK(cube[0].hi >= 0);
    CHECK_THROWS(isolate_real_roots(UPoly()));
}

TEST_CASE("root counts match a product of known linear factors") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-20, 20);
    for (int t = 0; t < 20; ++t) {
        std::set<Rational> rs;
        UPoly p(Rational(1));
        for (int i = 0; i < 5; ++i) {
            Rational r = frac(num(rng), 4);
            rs.insert(r);
            p = p * UPoly::linear(r);
        }
        p = p * UPoly(std::vector<Rational>{1, 0, 1});  // no real roots
        auto roots = isolate_real_roots(p);
        REQUIRE(roots.size() == rs.size());
        auto it = rs.begin();
        for (const auto& iv : roots) {
            CHECK(iv.lo <= *it);
            CHECK(*it <= iv.hi);
            ++it;
        }
    }
}

TEST_CASE("common_real_zeros examples") {
    auto z1 = common_real_zeros(std::vector<BiPoly>{X, Y});
    REQUIRE(z1.size() == 1);
    CHECK(z1[0].is_rational());
    CHECK(z1[0].x() == 0);
    CHECK(z1[0].y() == 0);

    auto z2 = common_real_zeros(std::vector<BiPoly>{pow(X, 3), pow(Y, 3)});
    REQUIRE(z2.size() == 1);
    CHECK(z2[0].x() == 0);
    CHECK(z2[0].y() == 0);

    auto z3 = common_real_zeros(std::vector<BiPoly>{X * X + Y * Y - 1, X - Y});
    REQUIRE(z3.size() == 2);
    CHECK(z3[0].approx_x() == doctest::Approx(-0.70710678));
    CHECK(z3[0].approx_y() == doctest::Approx(-0.70710678));
    CHECK(z3[1].approx_x() == doctest::Approx(0.70710678));
    CHECK(z3[1].approx_y() == doctest::Approx(0.70710678));
    CHECK(!z3[0].is_rational());
    CHECK(vanishes_at(X * X + Y * Y - 1, z3[1]));
    CHECK(vanishes_at(X - Y, z3[0]));
    CHECK(!vanishes_at(X + Y, z3[0]));
    CHECK(sign_at(X + Y, z3[0]) < 0);
    CHECK(sign_at(X + Y, z3[1]) > 0);
    CHECK(!same_point(z3[0], z3[1]));
}

TEST_CASE("common_real_zeros errors and degenerate inputs") {
    CHECK_THROWS_WITH(common_real_zeros(std::vector<BiPoly>{X * Y, X * X}), "positive-dimensional zero set");
    CHECK_THROWS_WITH(common_real_zeros(std::vector<BiPoly>{X * X + Y * Y}), "positive-dimensional zero set");
    CHECK(common_real_zeros(std::vector<BiPoly>{X, BiPoly(2)}).empty());
    CHECK(common_real_zeros(std::vector<BiPoly>{X * X + Y * Y + 1, X - Y}).empty());
    auto pts = common_real_zeros(std::vector<BiPoly>{X * X + Y * Y, X, Y});
    REQUIRE(pts.size() == 1);
}

TEST_CASE("common_real_zeros agrees with an exact grid oracle") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(-6, 6), pick(0, 3);
    for (int t = 0; t < 25; ++t) {
        // Products of lines through rational points, with an irrational-free layout.
        Rational a1 = frac(num(rng), 2), a2 = frac(num(rng), 2), b1 = frac(num(rng), 2), b2 = frac(num(rng), 3);
        std::vector<BiPoly> sys;
        switch (pick(rng)) {
            case 0:
                sys = {(X - a1) * (X - a2), (Y - b1) * (Y - b2)};
                break;
            case 1:
                sys = {(X - a1) * (Y - b1), (X - a2) * (Y - b2) + (X - a1) * (X - a2)};
                break;
            case 2:
                sys = {pow(X - a1, 2) + pow(Y - b1, 2) - 1, (Y - b1) * (X - a1 - 1)};
                break;
            default:
                sys = {(X - a1) * (X - Y - b1), (Y - b2) * (X + Y - a2), (X - a1) * (Y - b2)};
                break;
        }
        if (!multi_gcd(sys).is_constant()) continue;
        auto pts = common_real_zeros(sys, static_cast<std::uint64_t>(t));
        auto oracle = grid_zeros(sys);
        INFO(sys[0].to_string(), " ; ", sys[1].to_string());
        std::size_t in_box = 0;
        for (const auto& p : pts) {
            REQUIRE(p.is_rational());
            INFO(to_string(p.x()), ", ", to_string(p.y()));
            for (const auto& g : sys) CHECK(g.eval(p.x(), p.y()) == 0);
            if (abs(p.x()) > 4 || abs(p.y()) > 4) continue;
            ++in_box;
            CHECK(oracle.count({p.x(), p.y()}) == 1);
        }
        CHECK(in_box == oracle.size());
    }
}

TEST_CASE("resultant vanishes on the x-interval of every returned point") {
    std::vector<std::vector<BiPoly>> systems{
        {X * X + Y * Y - 1, X - Y},
        {X * X + Y * Y - 4, X * Y - 1},
        {pow(X, 3) - Y, Y * Y - X + frac(1, 3)},
        {X * X - 2, Y * Y - 3}};
    for (const auto& sys : systems) {
        UPoly r = resultant_y(sys[0], sys[1]);
        auto pts = common_real_zeros(sys);
        CHECK(!pts.empty());
        for (const auto& p : pts) {
            Interval xi = Interval::enclose(p.box().x_lo, p.box().x_hi);
            CHECK(r.eval(xi).contains_zero());
            for (const auto& g : sys) CHECK(vanishes_at(g, p));
        }
    }
    CHECK(common_real_zeros(std::vector<BiPoly>{X * X - 2, Y * Y - 3}).size() == 4);
}

TEST_CASE("same_point across representations") {
    auto a = common_real_zeros(std::vector<BiPoly>{X * X - 2, Y - X});
    auto b = common_real_zeros(std::vector<BiPoly>{X * X + Y * Y - 4, X - Y});
    REQUIRE(a.size() == 2);
    REQUIRE(b.size() == 2);
    CHECK(same_point(a[0], b[0]));
    CHECK(same_point(a[1], b[1]));
    CHECK(!same_point(a[0], b[1]));
    AlgebraicPoint r(1, 1);
    CHECK(!same_point(r, a[1]));
    CHECK(find_point(b, a[1]) == std::optional<std::size_t>(1));
}

#include "rsolve/elimination.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace rsolve {

namespace {

// Polynomial in y with coefficients in Q[x], lowest power first.
using YPoly = std::vector<UPoly>;

int deg(const YPoly& p) { return static_cast<int>(p.size()) - 1; }

void trim(YPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

const UPoly& lc(const YPoly& p) { return p.back(); }

UPoly content(const YPoly& p) {
    UPoly c;
    for (const auto& coef : p) {
        c = gcd(c, coef);
        if (c.degree() == 0) break;
    }
    return c;
}

YPoly scale(const YPoly& p, const UPoly& s) {
    YPoly out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(c * s);
    trim(out);
    return out;
}

YPoly divide(const YPoly& p, const UPoly& s) {
    YPoly out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(exact_div(c, s));
    return out;
}

// lc(b)^(deg a - deg b + 1) * a mod b
YPoly prem(const YPoly& a, const YPoly& b) {
    int m = deg(a), n = deg(b);
    if (m < n) return a;
    YPoly r = a;
    int e = m - n + 1;
    const UPoly& lb = lc(b);
    while (!r.empty() && deg(r) >= n) {
        UPoly t = lc(r);
        int k = deg(r) - n;
        for (auto& c : r) c = c * lb;
        for (int i = 0; i <= n; ++i) r[static_cast<std::size_t>(i + k)] = r[static_cast<std::size_t>(i + k)] - t * b[static_cast<std::size_t>(i)];
        trim(r);
        --e;
    }
    if (e > 0) r = scale(r, pow(lb, static_cast<unsigned>(e)));
    return r;
}

YPoly to_ypoly(const BiPoly& p) { return p.coefficients_in(Var::y); }
BiPoly from_ypoly(const YPoly& p) { return BiPoly::from_coefficients(p, Var::y); }

// h^(1-delta) * g^delta, exact in Q[x].
UPoly next_h(const UPoly& h, const UPoly& g, int delta) {
    if (delta == 0) return h;
    if (delta == 1) return g;
    return exact_div(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
}

// Cheap sufficient test for a gcd free of y: specialize x where both leading
// coefficients survive and look at the univariate gcd.
bool gcd_free_of_y(const YPoly& a, const YPoly& b) {
    for (long t = 0; t < 16; ++t) {
        Rational x0 = (t % 2 == 0) ? Rational(t / 2) : frac(-(t + 1) / 2, 3);
        if (lc(a).eval(x0) == 0 || lc(b).eval(x0) == 0) continue;
        std::vector<Rational> ua, ub;
        for (const auto& c : a) ua.push_back(c.eval(x0));
        for (const auto& c : b) ub.push_back(c.eval(x0));
        return gcd(UPoly(std::move(ua)), UPoly(std::move(ub))).degree() == 0;
    }
    return false;
}

UPoly specialize(const YPoly& p, const Rational& x0) {
    std::vector<Rational> c;
    c.reserve(p.size());
    for (const auto& coef : p) c.push_back(coef.eval(x0));
    return UPoly(std::move(c));
}

int x_degree(const YPoly& p) {
    int d = 0;
    for (const auto& c : p) d = std::max(d, c.degree());
    return d;
}

// Newton interpolation through (xs[k], vs[k]).
UPoly interpolate(const std::vector<Rational>& xs, std::vector<Rational> vs) {
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t k = n - 1; k >= j; --k) {
            vs[k] = (vs[k] - vs[k - 1]) / (xs[k] - xs[k - j]);
            if (k == j) break;
        }
    UPoly out(vs[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;) out = out * UPoly::linear(xs[k]) + UPoly(vs[k]);
    return out;
}

// Gcd of y-primitive inputs from univariate images at x = x0, scaled by the
// gcd of the leading coefficients and interpolated in x. Accepted only when
// the result divides both inputs.
std::optional<BiPoly> interpolated_gcd(const YPoly& a, const YPoly& b) {
    UPoly gamma = gcd(lc(a), lc(b));
    const int need = std::min(x_degree(a), x_degree(b)) + gamma.degree() + 1;
    int dy = std::min(deg(a), deg(b)) + 1;
    std::vector<Rational> xs;
    std::vector<UPoly> images;
    for (long t = 0; static_cast<int>(xs.size()) < need && t < 4L * need + 32; ++t) {
        Rational x0 = (t % 2 == 0) ? Rational(t / 2) : Rational(-(t + 1) / 2);
        if (lc(a).eval(x0) == 0 || lc(b).eval(x0) == 0) continue;
        UPoly h = gcd(specialize(a, x0), specialize(b, x0));
        if (h.degree() > dy) continue;
        if (h.degree() < dy) {
            dy = h.degree();
            xs.clear();
            images.clear();
        }
        if (dy == 0) return BiPoly(1);
        xs.push_back(x0);
        images.push_back(gamma.eval(x0) * h);
    }
    if (static_cast<int>(xs.size()) < need) return std::nullopt;
    YPoly g(static_cast<std::size_t>(dy) + 1);
    for (int k = 0; k <= dy; ++k) {
        std::vector<Rational> vs;
        for (const auto& im : images) vs.push_back(im.coeff(k));
        g[static_cast<std::size_t>(k)] = interpolate(xs, std::move(vs));
    }
    g = divide(g, content(g));
    BiPoly out = from_ypoly(g);
    if (!divides(out, from_ypoly(a)) || !divides(out, from_ypoly(b))) return std::nullopt;
    return out;
}

BiPoly gcd_primitive(YPoly a, YPoly b) {
    if (deg(a) < deg(b)) std::swap(a, b);
    UPoly g(Rational(1)), h(Rational(1));
    while (true) {
        int delta = deg(a) - deg(b);
        YPoly r = prem(a, b);
        if (r.empty()) break;
        if (deg(r) == 0) {
            b = YPoly{UPoly(Rational(1))};
            break;
        }
        a = std::move(b);
        b = divide(r, g * pow(h, static_cast<unsigned>(delta)));
        g = lc(a);
        h = next_h(h, g, delta);
    }
    return from_ypoly(divide(b, content(b)));
}

}  // namespace

BiPoly poly_gcd(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("gcd undefined");
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant()) return BiPoly(1);
    YPoly ya = to_ypoly(a), yb = to_ypoly(b);
    UPoly ca = content(ya), cb = content(yb);
    UPoly d = gcd(ca, cb);
    if (deg(ya) == 0 || deg(yb) == 0) return BiPoly::from_univariate(d).normalized();
    YPoly pa = divide(ya, ca), pb = divide(yb, cb);
    if (gcd_free_of_y(pa, pb)) return BiPoly::from_univariate(d).normalized();
    if (auto g = interpolated_gcd(pa, pb)) return (BiPoly::from_univariate(d) * *g).normalized();
    return (BiPoly::from_univariate(d) * gcd_primitive(std::move(pa), std::move(pb))).normalized();
}

BiPoly multi_gcd(std::span<const BiPoly> polys) {
    BiPoly g;
    bool any = false;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        g = any ? poly_gcd(g, p) : p.normalized();
        any = true;
        if (g.is_constant()) break;
    }
    if (!any) throw Error("gcd undefined: all entries are zero");
    return g;
}

UPoly resultant_y(const BiPoly& a_in, const BiPoly& b_in) {
    if (a_in.is_zero() || b_in.is_zero()) return {};
    YPoly a = to_ypoly(a_in), b = to_ypoly(b_in);
    int m = deg(a), n = deg(b);
    if (m == 0) return pow(a[0], static_cast<unsigned>(n));
    if (n == 0) return pow(b[0], static_cast<unsigned>(m));
    UPoly ca = content(a), cb = content(b);
    a = divide(a, ca);
    b = divide(b, cb);
    UPoly g(Rational(1)), h(Rational(1));
    Rational s = 1;
    UPoly t = pow(ca, static_cast<unsigned>(n)) * pow(cb, static_cast<unsigned>(m));
    if (m < n) {
        std::swap(a, b);
        if (m % 2 == 1 && n % 2 == 1) s = -1;
    }
    while (true) {
        int da = deg(a), db = deg(b);
        int delta = da - db;
        if (da % 2 == 1 && db % 2 == 1) s = -s;
        YPoly r = prem(a, b);
        a = std::move(b);
        if (r.empty()) return {};
        b = divide(r, g * pow(h, static_cast<unsigned>(delta)));
        g = lc(a);
        h = next_h(h, g, delta);
        if (deg(b) > 0) continue;
        int dA = deg(a);
        UPoly final_h = dA == 0 ? h : exact_div(pow(lc(b), static_cast<unsigned>(dA)), pow(h, static_cast<unsigned>(dA - 1)));
        return s * (t * final_h);
    }
}

BiPoly resultant(const BiPoly& a, const BiPoly& b, Var v) {
    if (v == Var::y) return BiPoly::from_univariate(resultant_y(a, b), Var::x);
    return BiPoly::from_univariate(resultant_y(a.swap_vars(), b.swap_vars()), Var::y);
}

UPoly determinant(std::vector<std::vector<UPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return UPoly(Rational(1));
    Rational sgn_acc = 1;
    UPoly prev(Rational(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return {};
            std::swap(m[k], m[p]);
            sgn_acc = -sgn_acc;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = UPoly();
        }
        prev = m[k][k];
    }
    return sgn_acc * m[n - 1][n - 1];
}

namespace {

// Rows y^i*a (i = n-j-1..0) and y^i*b (i = m-j-1..0) of the j-th
// subresultant matrix, as dense coefficient rows indexed by power.
std::vector<YPoly> subresultant_rows(const YPoly& a, const YPoly& b, int j) {
    int m = deg(a), n = deg(b);
    std::vector<YPoly> rows;
    auto shifted = [](const YPoly& p, int i) {
        YPoly r(static_cast<std::size_t>(i), UPoly());
        r.insert(r.end(), p.begin(), p.end());
        return r;
    };
    for (int i = n - j - 1; i >= 0; --i) rows.push_back(shifted(a, i));
    for (int i = m - j - 1; i >= 0; --i) rows.push_back(shifted(b, i));
    return rows;
}

UPoly subresultant_entry(const std::vector<YPoly>& rows, int m, int n, int j, int l) {
    const int size = m + n - 2 * j;
    std::vector<std::vector<UPoly>> mat(static_cast<std::size_t>(size));
    for (int r = 0; r < size; ++r) {
        const YPoly& row = rows[static_cast<std::size_t>(r)];
        auto at = [&](int p) { return p < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(p)] : UPoly(); };
        auto& out = mat[static_cast<std::size_t>(r)];
        for (int p = m + n - j - 1; p >= j + 1; --p) out.push_back(at(p));
        out.push_back(at(l));
    }
    return determinant(std::move(mat));
}

}  // namespace

std::vector<SubresultantCoeffs> subresultant_coeffs(const BiPoly& a_in, const BiPoly& b_in) {
    YPoly a = to_ypoly(a_in), b = to_ypoly(b_in);
    int m = deg(a), n = deg(b);
    if (m < n || n < 1) throw Error("subresultant_coeffs requires deg_y(a) >= deg_y(b) >= 1");
    std::vector<SubresultantCoeffs> out;
    for (int j = 0; j < n; ++j) {
        auto rows = subresultant_rows(a, b, j);
        SubresultantCoeffs c;
        c.principal = subresultant_entry(rows, m, n, j, j);
        if (j > 0) c.next = subresultant_entry(rows, m, n, j, j - 1);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<UPoly> subresultant(const BiPoly& a_in, const BiPoly& b_in, int j) {
    YPoly a = to_ypoly(a_in), b = to_ypoly(b_in);
    int m = deg(a), n = deg(b);
    if (m < n || j >= n || j < 0) throw Error("subresultant index out of range");
    auto rows = subresultant_rows(a, b, j);
    std::vector<UPoly> out;
    for (int l = 0; l <= j; ++l) out.push_back(subresultant_entry(rows, m, n, j, l));
    return out;
}

BiPoly squarefree_part(const BiPoly& p) {
    if (p.is_zero()) throw Error("square-free part of the zero polynomial");
    if (p.is_constant()) return BiPoly(1);
    BiPoly dx = p.derivative(Var::x), dy = p.derivative(Var::y);
    BiPoly g = poly_gcd(p, poly_gcd(dx, dy));
    return exact_div(p, g).normalized();
}

}  // namespace rsolve

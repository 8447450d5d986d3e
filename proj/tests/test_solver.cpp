#include <doctest.h>

#include "rsolve/solver.hpp"

#include <random>

using namespace rsolve;

namespace {

const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();
const BiPoly R2 = X * X + Y * Y;
const AlgebraicPoint origin(0, 0);

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

// a/b == c/d as functions, by cross-multiplication.
bool same_function(const RatFun& a, const BiPoly& c, const BiPoly& d) {
    return (a.num() * d - c * a.den()).is_zero();
}

// p == lambda q for some lambda > 0.
bool positive_multiple(const BiPoly& p, const BiPoly& q) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    Rational lambda = p.leading_coeff() / q.leading_coeff();
    return lambda > 0 && p == lambda * q;
}

Solution solved(const SolveResult& r) {
    REQUIRE(std::holds_alternative<Solution>(r));
    return std::get<Solution>(r);
}

}  // namespace

TEST_CASE("solve reproduces the x^3, y^3 example") {
    ProbeConfig cfg;
    std::vector<CRFun> f{pow(X, 3), pow(Y, 3)};
    SolveResult r = solve(f, X * X * Y * Y, cfg);
    Solution s = solved(r);
    CHECK(s.mode == SolutionMode::Exact);
    REQUIRE(s.phi_i.size() == 2);
    BiPoly den = pow(X, 6) + pow(Y, 6);
    CHECK(same_function(s.phi_i[0].ratfun(), pow(X, 5) * Y * Y, den));
    CHECK(same_function(s.phi_i[1].ratfun(), X * X * pow(Y, 5), den));
    for (const auto& phi : s.phi_i) {
        REQUIRE(phi.extensions().size() == 1);
        CHECK(same_point(phi.extensions()[0].point, origin));
        REQUIRE(phi.extensions()[0].exact);
        CHECK(*phi.extensions()[0].exact == 0);
    }
    CHECK(s.glue.N == 1);
    CHECK(s.glue.b == BiPoly(1));
}

TEST_CASE("solve examples") {
    ProbeConfig cfg;
    std::vector<CRFun> f{pow(X, 3), pow(Y, 3)};
    SolveResult bad = solve(f, R2, cfg);
    REQUIRE(std::holds_alternative<PTFailure>(bad));
    CHECK(std::get<PTFailure>(bad).report.verdict == PTVerdict::Fail);

    std::vector<CRFun> one{X * X - Y};
    Solution s1 = solved(solve(one, X * X - Y, cfg));
    CHECK(s1.phi_i[0].ratfun() == RatFun(BiPoly(1)));

    std::vector<CRFun> g{X * X * Y, X * Y * Y};
    SolveResult rg = solve(g, X * X * Y * Y, cfg);
    Solution sg = solved(rg);
    REQUIRE(sg.report.system);
    CHECK(sg.report.system->g == X * Y);
    CHECK(sg.report.psi->ratfun() == RatFun(X * Y));
    CHECK(same_function(sg.phi_i[0].ratfun(), X * X * Y, R2));
    CHECK(same_function(sg.phi_i[1].ratfun(), X * Y * Y, R2));
    CHECK(sg.mode == SolutionMode::Exact);
}

TEST_CASE("solve degenerate inputs") {
    ProbeConfig cfg;
    std::vector<CRFun> zero{BiPoly(), BiPoly()};
    Solution s = solved(solve(zero, BiPoly(), cfg));
    for (const auto& phi : s.phi_i) CHECK(phi.ratfun().is_zero());
    CHECK(std::holds_alternative<PTFailure>(solve(zero, X, cfg)));

    std::vector<CRFun> f{X, Y};
    Solution z = solved(solve(f, BiPoly(), cfg));
    for (const auto& phi : z.phi_i) CHECK(phi.ratfun().is_zero());
}

TEST_CASE("local_solution examples") {
    std::vector<CRFun> f{pow(X, 3), pow(Y, 3)};
    FactoredSystem fs = factor_common(f);
    std::vector<AlgebraicPoint> cl{origin};
    std::vector<std::vector<Rational>> c{{0, 0}};
    LocalSolution ls = local_solution(CRFun(X * X * Y * Y), fs, cl, c, false);
    BiPoly den = pow(X, 6) + pow(Y, 6);
    CHECK(same_function(ls.beta[0], pow(X, 5) * Y * Y, den));
    CHECK(same_function(ls.beta[1], X * X * pow(Y, 5), den));
    CHECK(ls.valid_on.empty());

    std::vector<std::vector<Rational>> c1{{1, 0}};
    LocalSolution exact = local_solution(CRFun(pow(X, 3)), fs, cl, c1, false);
    CHECK(exact.beta[0] == RatFun(BiPoly(1)));
    CHECK(exact.beta[1].is_zero());

    std::vector<CRFun> g{X * X * Y, X * Y * Y};
    FactoredSystem gs = factor_common(g);
    LocalSolution lg = local_solution(CRFun(X * Y), gs, cl, c, false);
    CHECK(same_function(lg.beta[0], X * X * Y, R2));
    CHECK(same_function(lg.beta[1], X * Y * Y, R2));
}

TEST_CASE("beta satisfies the decomposition for any constants") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> cn(-30, 30), cd(1, 12);
    int checked = 0;
    for (int t = 0; t < 50; ++t) {
        std::vector<CRFun> f{random_poly(rng, 3, 3), random_poly(rng, 3, 3)};
        if (f[0].ratfun().is_zero() || f[1].ratfun().is_zero()) continue;
        FactoredSystem fs;
        try {
            fs = factor_common(f, static_cast<std::uint64_t>(t));
        } catch (const Error&) {
            continue;
        }
        BiPoly psi = random_poly(rng, 4, 4);
        std::vector<AlgebraicPoint> cl{origin};
        std::vector<std::vector<Rational>> c{{frac(cn(rng), cd(rng)), frac(cn(rng), cd(rng))}};
        // local_solution throws when the identity fails.
        LocalSolution ls = local_solution(CRFun(psi), fs, cl, c, false);
        RatFun total;
        for (std::size_t i = 0; i < 2; ++i) total = total + ls.beta[i] * RatFun(fs.g_list[i]);
        CHECK(total == RatFun(psi));
        ++checked;
    }
    CHECK(checked >= 30);
}

TEST_CASE("chart_polys examples") {
    std::vector<AlgebraicPoint> one{origin};
    CHECK(chart_polys(one) == std::vector<BiPoly>{BiPoly(1)});

    BiPoly X1 = X - BiPoly(1), Y1 = Y - BiPoly(1);
    std::vector<AlgebraicPoint> two{origin, AlgebraicPoint(1, 0)};
    auto psi2 = chart_polys(two);
    REQUIRE(psi2.size() == 2);
    CHECK(positive_multiple(psi2[0], X1 * X1 + Y * Y));
    CHECK(positive_multiple(psi2[1], R2));

    std::vector<AlgebraicPoint> three{origin, AlgebraicPoint(1, 0), AlgebraicPoint(0, 1)};
    auto psi3 = chart_polys(three);
    REQUIRE(psi3.size() == 3);
    BiPoly m0 = R2, m1 = X1 * X1 + Y * Y, m2 = X * X + Y1 * Y1;
    CHECK(positive_multiple(psi3[0], m1 * m2));
    CHECK(positive_multiple(psi3[1], m0 * m2));
    CHECK(positive_multiple(psi3[2], m0 * m1));
}

TEST_CASE("chart_polys at conjugate irrational points") {
    // x^2 = 2, y = 0: one cluster of two points, plus the origin.
    std::vector<BiPoly> sys{(X * X - BiPoly(2)) * X, Y};
    auto pts = common_real_zeros(sys);
    REQUIRE(pts.size() == 3);
    auto clusters = point_clusters(pts);
    CHECK(clusters.size() == 2);
    auto psi = chart_polys(pts);
    REQUIRE(psi.size() == clusters.size());
    for (std::size_t j = 0; j < clusters.size(); ++j)
        for (std::size_t k = 0; k < pts.size(); ++k) {
            bool own = std::find(clusters[j].begin(), clusters[j].end(), k) != clusters[j].end();
            CHECK(vanishes_at(psi[j], pts[k]) != own);
        }
}

TEST_CASE("lojasiewicz_exponent examples") {
    ProbeConfig cfg;
    std::vector<AlgebraicPoint> z{origin};
    CHECK(lojasiewicz_exponent(R2, RatFun::reduce(BiPoly(1), R2), z, cfg) == 2);
    CHECK(lojasiewicz_exponent(R2, RatFun::reduce(pow(X, 5) * Y * Y, pow(X, 6) + pow(Y, 6)), z, cfg) == 1);
    CHECK(lojasiewicz_exponent(R2, RatFun(X + BiPoly(3)), z, cfg) == 1);
    // 1/(x^2+y^2)^3 needs psi^4.
    CHECK(lojasiewicz_exponent(R2, RatFun::reduce(BiPoly(1), pow(R2, 3)), z, cfg) == 4);
    ProbeConfig tight = cfg;
    tight.n_max = 2;
    CHECK_THROWS_WITH(lojasiewicz_exponent(R2, RatFun::reduce(BiPoly(1), pow(R2, 3)), z, tight),
                      "exponent search exhausted");
}

TEST_CASE("gluing two special points") {
    ProbeConfig cfg;
    BiPoly X1 = X - BiPoly(1);
    std::vector<CRFun> f{pow(X, 3) * pow(X1, 3), pow(Y, 3)};
    BiPoly phi = X * X * X1 * X1 * Y * Y;
    Solution s = solved(solve(f, phi, cfg));
    CHECK(s.mode == SolutionMode::Exact);
    REQUIRE(s.glue.psi_j.size() == 2);
    REQUIRE(s.report.system);
    CHECK(s.report.system->special_points.size() == 2);

    // b > 0 on a 65 x 65 grid over [-4, 4]^2, with outward rounding.
    bool positive = true;
    for (int i = 0; i <= 64; ++i)
        for (int j = 0; j <= 64; ++j) {
            Interval x = Interval::enclose(Rational(frac(i, 8) - 4)), y = Interval::enclose(Rational(frac(j, 8) - 4));
            if (!(s.glue.b.eval(x, y).lo() > 0.0)) positive = false;
        }
    CHECK(positive);
    CHECK(common_real_zeros(s.glue.psi_j).empty());

    RatFun sum;
    for (std::size_t i = 0; i < 2; ++i) sum = sum + s.phi_i[i].ratfun() * f[i].ratfun();
    CHECK(sum == RatFun(phi));
    for (const auto& p : s.phi_i)
        for (const auto& e : p.extensions()) {
            REQUIRE(e.exact);
            CHECK(*e.exact == 0);
        }
}

TEST_CASE("pole bound on random solvable systems") {
    ProbeConfig cfg;
    std::mt19937_64 rng(99);
    int solved_count = 0, total = 0;
    for (int t = 0; t < 20; ++t) {
        int r = 1 + t % 2;
        std::vector<CRFun> f;
        BiPoly phi;
        for (int i = 0; i < r; ++i) {
            BiPoly fi = random_poly(rng, 3, 3), rho = random_poly(rng, 3, 3);
            f.emplace_back(fi);
            phi += rho * fi;
        }
        cfg.seed = static_cast<std::uint64_t>(t);
        SolveResult res = solve(f, phi, cfg);
        CHECK_FALSE(std::holds_alternative<PTFailure>(res));
        ++total;
        auto* s = std::get_if<Solution>(&res);
        if (!s) continue;
        ++solved_count;
        for (const auto& p : s->phi_i)
            for (const auto& e : p.extensions()) CHECK(find_point(s->pole_bound_points, e.point).has_value());
        if (s->mode == SolutionMode::Exact) {
            RatFun sum;
            for (int i = 0; i < r; ++i) sum = sum + s->phi_i[static_cast<std::size_t>(i)].ratfun() * f[static_cast<std::size_t>(i)].ratfun();
            CHECK(sum == RatFun(phi));
        }
    }
    CHECK(solved_count >= total * 9 / 10);
}

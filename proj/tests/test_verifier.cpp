#include <doctest.h>

#include "rsolve/verifier.hpp"

#include <algorithm>

using namespace rsolve;

namespace {

const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();
const BiPoly R2 = X * X + Y * Y;
const AlgebraicPoint origin(0, 0);

Solution solved(const SolveResult& r) {
    REQUIRE(std::holds_alternative<Solution>(r));
    return std::get<Solution>(r);
}

bool all_pass(const std::vector<Certificate>& certs) {
    return std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.passed; });
}

struct Checks {
    bool identity, continuity, pole_bound;
};

Checks run_all(const Solution& s, std::span<const CRFun> f, const CRFun& phi, const ProbeConfig& cfg) {
    return {verify_identity(s, f, phi, cfg).passed, all_pass(verify_continuity(s, cfg)),
            verify_pole_bound(s, f, phi).passed};
}

struct PowerPair {
    ProbeConfig cfg;
    std::vector<CRFun> f{pow(X, 3), pow(Y, 3)};
    CRFun phi = X * X * Y * Y;
    Solution sol = solved(solve(f, phi, cfg));
};

PTFailure diagonal_failure(const ProbeConfig& cfg) {
    std::vector<CRFun> f{pow(X, 3), pow(Y, 3)};
    SolveResult r = solve(f, R2, cfg);
    REQUIRE(std::holds_alternative<PTFailure>(r));
    return std::get<PTFailure>(r);
}

LimitVerdict& stored_witness(PTFailure& failure) {
    for (auto& rec : failure.report.per_point)
        if (rec.result.witness) return *rec.result.witness;
    FAIL("no witness in the report");
    throw Error("unreachable");
}

}  // namespace

TEST_CASE("verify_identity on the x^3, y^3 example") {
    PowerPair e;
    Certificate c = verify_identity(e.sol, e.f, e.phi, e.cfg);
    CHECK(c.kind == CertKind::ExactIdentity);
    CHECK(c.passed);
    CHECK(c.residual.is_zero());
    // The identity from the example, written out independently.
    BiPoly lhs = pow(X, 5) * Y * Y * pow(X, 3) + X * X * pow(Y, 5) * pow(Y, 3) - X * X * Y * Y * (pow(X, 6) + pow(Y, 6));
    CHECK(lhs.is_zero());
}

TEST_CASE("verify_identity in numeric mode") {
    ProbeConfig cfg;
    // Special points (+-sqrt 2, 0) with irrational constants.
    std::vector<CRFun> f{X * X - BiPoly(2), Y};
    CRFun phi = pow(X, 3) * (X * X - BiPoly(2)) + X * Y;
    Solution s = solved(solve(f, phi, cfg));
    Certificate c = verify_identity(s, f, phi, cfg);
    REQUIRE(s.mode == SolutionMode::Numeric);
    CHECK(c.kind == CertKind::NumericResidual);
    CHECK(c.samples == 1000);
    CHECK(c.max_residual <= cfg.tol);
    CHECK(c.passed);
    CHECK(all_pass(verify_continuity(s, cfg)));
    CHECK(verify_pole_bound(s, f, phi).passed);
}

TEST_CASE("verify_continuity examples") {
    PowerPair e;
    std::vector<Certificate> certs = verify_continuity(e.sol, e.cfg);
    REQUIRE(certs.size() == 2);
    for (const auto& c : certs) {
        CHECK(c.passed);
        REQUIRE(c.point);
        CHECK(same_point(*c.point, origin));
        REQUIRE(c.probe);
        CHECK(c.probe->kind == LimitKind::Limit);
        CHECK(std::abs(c.probe->value.mid()) <= e.cfg.tol);
    }

    // xy/(x^2+y^2) with a claimed extension at the origin.
    Solution fake = e.sol;
    fake.phi_i[0] = CRFun(RatFun::reduce(X * Y, R2), {Extension{origin, Rational(0), Interval(0.0)}}, CertStatus::Claimed);
    std::vector<Certificate> bad = verify_continuity(fake, e.cfg);
    auto failed = std::find_if(bad.begin(), bad.end(), [](const Certificate& c) { return !c.passed; });
    REQUIRE(failed != bad.end());
    CHECK_FALSE(failed->inconclusive);
    REQUIRE(failed->probe);
    CHECK(failed->probe->kind == LimitKind::BoundedNoLimit);

    ProbeConfig cfg;
    std::vector<CRFun> one{X * X - Y};
    Solution poly = solved(solve(one, X * X - Y, cfg));
    CHECK(verify_continuity(poly, cfg).empty());
}

TEST_CASE("verify_pole_bound examples") {
    PowerPair e;
    Certificate c = verify_pole_bound(e.sol, e.f, e.phi);
    CHECK(c.passed);
    REQUIRE(c.claimed.size() == 1);
    CHECK(same_point(c.claimed[0], origin));

    ProbeConfig cfg;
    std::vector<CRFun> one{X * X - Y};
    Solution poly = solved(solve(one, X * X - Y, cfg));
    Certificate cp = verify_pole_bound(poly, one, X * X - Y);
    CHECK(cp.passed);
    CHECK(cp.claimed.empty());

    // An extension point at (1, 1), outside Z(f) and every P.
    Solution fake = e.sol;
    AlgebraicPoint p11(1, 1);
    BiPoly m = (X - BiPoly(1)) * (X - BiPoly(1)) + (Y - BiPoly(1)) * (Y - BiPoly(1));
    fake.phi_i[0] = CRFun(RatFun::reduce(BiPoly(1), m), {Extension{p11, Rational(0), Interval(0.0)}}, CertStatus::Claimed);
    fake.pole_bound_points.push_back(p11);
    Certificate cf = verify_pole_bound(fake, e.f, e.phi);
    CHECK_FALSE(cf.passed);
    REQUIRE(cf.outside.size() == 1);
    CHECK(same_point(cf.outside[0], p11));
}

TEST_CASE("confirm_witness on the diagonal divergence") {
    ProbeConfig cfg;
    PTFailure failure = diagonal_failure(cfg);
    Certificate c = confirm_witness(failure, cfg);
    CHECK(c.passed);
    REQUIRE(c.point);
    CHECK(same_point(*c.point, origin));
    REQUIRE(c.ratios.size() >= 3);
    // R_1 grows like 1/|x| along y = x, so each step multiplies by 1/rho = 4.
    for (auto it = c.ratios.end() - 3; it != c.ratios.end(); ++it) CHECK(std::abs(*it - 4.0) <= 0.8);

    PTFailure bounded = failure;
    for (auto& s : stored_witness(bounded).witness) s.value = Interval(1.0);
    CHECK_FALSE(confirm_witness(bounded, cfg).passed);

    PTFailure moved = failure;
    stored_witness(moved).center_x += frac(1, 8);
    Certificate cm = confirm_witness(moved, cfg);
    CHECK_FALSE(cm.passed);
    CHECK(cm.detail.find("converge") != std::string::npos);
}

TEST_CASE("each tampering is caught by its own certificate") {
    PowerPair e;
    Checks clean = run_all(e.sol, e.f, e.phi, e.cfg);
    CHECK(clean.identity);
    CHECK(clean.continuity);
    CHECK(clean.pole_bound);

    const CRFun& phi1 = e.sol.phi_i[0];
    const RatFun& r1 = phi1.ratfun();

    SUBCASE("perturbed coefficient") {
        Solution t = e.sol;
        t.phi_i[0] = CRFun(RatFun::reduce(r1.num() + X * r1.den(), r1.den()), phi1.extensions(), phi1.status());
        Checks c = run_all(t, e.f, e.phi, e.cfg);
        CHECK_FALSE(c.identity);
        CHECK(c.continuity);
        CHECK(c.pole_bound);
    }
    SUBCASE("dropped extension point") {
        Solution t = e.sol;
        t.phi_i[0] = CRFun(r1, {}, phi1.status());
        Checks c = run_all(t, e.f, e.phi, e.cfg);
        CHECK(c.identity);
        CHECK_FALSE(c.continuity);
        CHECK(c.pole_bound);
    }
    SUBCASE("wrong extension value") {
        Solution t = e.sol;
        t.phi_i[0] = CRFun(r1, {Extension{origin, Rational(1), Interval(1.0)}}, phi1.status());
        Checks c = run_all(t, e.f, e.phi, e.cfg);
        CHECK(c.identity);
        CHECK_FALSE(c.continuity);
        CHECK(c.pole_bound);
    }
    SUBCASE("shrunk pole bound") {
        Solution t = e.sol;
        t.pole_bound_points.clear();
        Checks c = run_all(t, e.f, e.phi, e.cfg);
        CHECK(c.identity);
        CHECK(c.continuity);
        CHECK_FALSE(c.pole_bound);
    }
    SUBCASE("bogus witness") {
        PTFailure failure = diagonal_failure(e.cfg);
        CHECK(confirm_witness(failure, e.cfg).passed);
        for (auto& s : stored_witness(failure).witness) s.value = Interval(0.5, 0.75);
        CHECK_FALSE(confirm_witness(failure, e.cfg).passed);
    }
}

#include "rsolve/crfun.hpp"

#include "rsolve/elimination.hpp"

#include <algorithm>

namespace rsolve {

const char* to_string(CertStatus s) {
    switch (s) {
        case CertStatus::CertifiedExact: return "CertifiedExact";
        case CertStatus::CertifiedNumeric: return "CertifiedNumeric";
        case CertStatus::Claimed: return "Claimed";
    }
    return "Claimed";
}

CRFun::CRFun(const BiPoly& p) : r_(p) {}

CRFun::CRFun(RatFun r, std::vector<Extension> extensions, CertStatus status)
    : r_(std::move(r)), ext_(std::move(extensions)), status_(status) {}

std::pair<std::optional<Rational>, Interval> CRFun::value_at(const AlgebraicPoint& p) const {
    for (const auto& e : ext_)
        if (same_point(e.point, p)) return {e.exact, e.value};
    if (p.is_rational()) {
        Rational v = r_.eval(p.x(), p.y());
        return {v, Interval::enclose(v)};
    }
    const auto& b = p.box();
    return {std::nullopt, r_.eval(Interval::enclose(b.x_lo, b.x_hi), Interval::enclose(b.y_lo, b.y_hi))};
}

namespace {

// Rational strictly between consecutive isolated roots, and beyond both ends.
std::vector<Rational> cell_samples(const UPoly& critical) {
    std::vector<Rational> out;
    if (critical.degree() <= 0) {
        out.push_back(0);
        return out;
    }
    auto roots = isolate_real_roots(critical);
    if (roots.empty()) {
        out.push_back(0);
        return out;
    }
    out.push_back(roots.front().lo - 1);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const Rational &lo = roots[i].hi, &hi = roots[i + 1].lo;
        Rational s = simplest_between(lo, hi);
        if (s == lo || s == hi) s = (lo + hi) / 2;
        out.push_back(s);
    }
    out.push_back(roots.back().hi + 1);
    return out;
}

bool both_signs_on_grid(const BiPoly& u) {
    bool pos = false, neg = false;
    for (long i = -16; i <= 16; ++i)
        for (long j = -16; j <= 16; ++j) {
            int s = sgn(u.eval(frac(i, 8), frac(j, 8)));
            pos = pos || s > 0;
            neg = neg || s < 0;
            if (pos && neg) return true;
        }
    return false;
}

}  // namespace

bool zero_set_is_curve(const BiPoly& u) {
    if (u.is_constant()) return u.is_zero();
    auto coeffs = u.coefficients_in(Var::y);
    UPoly content;
    for (const auto& c : coeffs) content = gcd(content, c);
    if (content.degree() > 0 && !isolate_real_roots(content).empty()) return true;
    BiPoly v = exact_div(u, BiPoly::from_univariate(content, Var::x));
    if (v.degree(Var::y) <= 0) return false;
    UPoly lc = v.coefficients_in(Var::y).back();
    UPoly disc = resultant_y(v, v.derivative(Var::y));
    UPoly critical = lc * disc;
    for (const Rational& a : cell_samples(critical)) {
        UPoly line = v.substitute(BiPoly(a), BiPoly::x()).to_univariate(Var::x);
        if (line.degree() > 0 && !isolate_real_roots(line).empty()) return true;
    }
    return false;
}

CertifyResult certify_continuous(const RatFun& r, const ProbeConfig& cfg) {
    if (r.is_polynomial()) return CRFun(r, {}, CertStatus::CertifiedExact);
    BiPoly u = squarefree_part(r.den());
    if (both_signs_on_grid(u) || zero_set_is_curve(u)) {
        FailureReport f;
        f.reason = "discontinuity along a curve";
        return f;
    }
    std::vector<BiPoly> sys{u, u.derivative(Var::x), u.derivative(Var::y)};
    std::vector<AlgebraicPoint> points;
    try {
        points = common_real_zeros(sys, cfg.seed);
    } catch (const Error& e) {
        FailureReport f;
        f.verdict = FailureReport::Verdict::Inconclusive;
        f.reason = std::string("pole set not resolved: ") + e.what();
        return f;
    }
    std::vector<Extension> ext;
    CertStatus status = CertStatus::CertifiedExact;
    for (const auto& p : points) {
        LimitVerdict v = limit_test(r, p, cfg);
        std::optional<Rational> exact;
        if (p.is_rational()) exact = exact_limit(r, p.x(), p.y());
        if (exact) {
            Interval iv = v.kind == LimitKind::Limit ? v.value : Interval::enclose(*exact);
            ext.push_back({p, exact, iv});
            continue;
        }
        if (v.kind != LimitKind::Limit) {
            FailureReport f;
            f.verdict = v.kind == LimitKind::Unknown ? FailureReport::Verdict::Inconclusive : FailureReport::Verdict::Fail;
            f.reason = v.kind == LimitKind::Unknown ? "limit undecided" : "no limit at a pole";
            f.point = p;
            f.evidence = std::move(v);
            return f;
        }
        status = CertStatus::CertifiedNumeric;
        ext.push_back({p, std::nullopt, v.value});
    }
    return CRFun(r, std::move(ext), status);
}

std::vector<AlgebraicPoint> p_set(const CRFun& f) {
    std::vector<AlgebraicPoint> out;
    for (const auto& e : f.extensions()) out.push_back(e.point);
    return out;
}

CRFun crf_arith(const CRFun& a, const CRFun& b, CrfOp op) {
    RatFun r = op == CrfOp::Add ? a.ratfun() + b.ratfun() : a.ratfun() * b.ratfun();
    std::vector<AlgebraicPoint> candidates = p_set(a);
    for (const auto& p : p_set(b))
        if (!find_point(candidates, p)) candidates.push_back(p);
    std::sort(candidates.begin(), candidates.end(), point_less);
    std::vector<Extension> ext;
    for (const auto& p : candidates) {
        if (!vanishes_at(r.den(), p)) continue;
        auto [ea, ia] = a.value_at(p);
        auto [eb, ib] = b.value_at(p);
        Extension e{p, std::nullopt, op == CrfOp::Add ? ia + ib : ia * ib};
        if (ea && eb) {
            e.exact = op == CrfOp::Add ? Rational(*ea + *eb) : Rational(*ea * *eb);
            e.value = Interval::enclose(*e.exact);
        }
        ext.push_back(std::move(e));
    }
    auto rank = [](CertStatus s) { return s == CertStatus::CertifiedExact ? 2 : s == CertStatus::CertifiedNumeric ? 1 : 0; };
    CertStatus status = rank(a.status()) < rank(b.status()) ? a.status() : b.status();
    if (status == CertStatus::CertifiedExact)
        for (const auto& e : ext)
            if (!e.exact) status = CertStatus::CertifiedNumeric;
    return CRFun(std::move(r), std::move(ext), status);
}

}  // namespace rsolve

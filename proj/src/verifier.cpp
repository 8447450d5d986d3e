#include "rsolve/verifier.hpp"

#include "rsolve/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rsolve {

const char* to_string(CertKind k) {
    switch (k) {
        case CertKind::ExactIdentity: return "ExactIdentity";
        case CertKind::NumericResidual: return "NumericResidual";
        case CertKind::ContinuityAtPoint: return "ContinuityAtPoint";
        case CertKind::PoleBound: return "PoleBound";
        case CertKind::UnboundedWitness: return "UnboundedWitness";
    }
    return "ExactIdentity";
}

namespace {

constexpr std::size_t kSamples = 1000;

struct Term {
    BiPoly num, den;
};

std::vector<Term> identity_terms(const Solution& sol, std::span<const CRFun> f, const CRFun& phi) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < f.size() && i < sol.phi_i.size(); ++i) {
        const RatFun& a = sol.phi_i[i].ratfun();
        const RatFun& b = f[i].ratfun();
        terms.push_back({a.num() * b.num(), a.den() * b.den()});
    }
    terms.push_back({-phi.ratfun().num(), phi.ratfun().den()});
    return terms;
}

void add_unique(std::vector<AlgebraicPoint>& out, const AlgebraicPoint& p) {
    if (!find_point(out, p)) out.push_back(p);
}

// Real zeros of a polynomial with a finite real zero set: they are singular
// points of its square-free part.
std::vector<AlgebraicPoint> isolated_zeros(const BiPoly& p, std::uint64_t seed) {
    if (p.is_constant()) return {};
    BiPoly u = squarefree_part(p);
    std::vector<BiPoly> sys{u, u.derivative(Var::x), u.derivative(Var::y)};
    return common_real_zeros(sys, seed);
}

// Every real zero of a phi_i denominator lies in Z(b) u Z(sum g^2) u Z(den psi),
// because that denominator divides b * den(psi) * sum g^2.
struct PoleCandidates {
    BiPoly multiple = BiPoly(1);
    std::vector<AlgebraicPoint> points;
    std::string error;
};

PoleCandidates pole_candidates(const Solution& sol, const ProbeConfig& cfg) {
    PoleCandidates pc;
    if (!sol.report.system || !sol.report.psi) return pc;
    const FactoredSystem& fs = *sol.report.system;
    try {
        BiPoly S;
        std::vector<BiPoly> g;
        for (const auto& gi : fs.g_list) {
            S += gi * gi;
            if (!gi.is_zero()) g.push_back(gi);
        }
        const BiPoly& pden = sol.report.psi->ratfun().den();
        pc.multiple = sol.glue.b * pden * S;
        if (!g.empty())
            for (const auto& p : common_real_zeros(g, cfg.seed)) add_unique(pc.points, p);
        for (const auto& p : isolated_zeros(pden, cfg.seed)) add_unique(pc.points, p);
        if (sol.glue.psi_j.size() > 1)
            for (const auto& p : common_real_zeros(sol.glue.psi_j, cfg.seed)) add_unique(pc.points, p);
    } catch (const Error& e) {
        pc.error = e.what();
    }
    return pc;
}

bool allowed_pole(const AlgebraicPoint& p, std::span<const CRFun> f, const CRFun& phi) {
    if (find_point(p_set(phi), p)) return true;
    bool all_vanish = true;
    for (const auto& fi : f) {
        if (find_point(p_set(fi), p)) return true;
        if (!vanishes_at(fi.ratfun().num(), p)) all_vanish = false;
    }
    return all_vanish;
}

}  // namespace

Certificate verify_identity(const Solution& sol, std::span<const CRFun> f, const CRFun& phi, const ProbeConfig& cfg) {
    Certificate c;
    if (sol.phi_i.size() != f.size()) {
        c.kind = sol.mode == SolutionMode::Exact ? CertKind::ExactIdentity : CertKind::NumericResidual;
        c.detail = "number of coefficients does not match the system";
        return c;
    }
    std::vector<Term> terms = identity_terms(sol, f, phi);
    if (sol.mode == SolutionMode::Exact) {
        c.kind = CertKind::ExactIdentity;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            BiPoly part = terms[t].num;
            for (std::size_t s = 0; s < terms.size(); ++s)
                if (s != t) part *= terms[s].den;
            c.residual += part;
        }
        c.passed = c.residual.is_zero();
        c.detail = c.passed ? "cleared residual is the zero polynomial" : "cleared residual is not zero";
        return c;
    }
    c.kind = CertKind::NumericResidual;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> coord(-256, 256);
    std::size_t tries = 0;
    while (c.samples < kSamples && tries < 4 * kSamples) {
        ++tries;
        Rational x = frac(coord(rng), 64), y = frac(coord(rng), 64);
        bool clear = std::all_of(terms.begin(), terms.end(), [&](const Term& t) { return t.den.eval(x, y) != 0; });
        if (!clear) continue;
        Rational sum = 0;
        for (const auto& t : terms) sum += t.num.eval(x, y) / t.den.eval(x, y);
        c.max_residual = std::max(c.max_residual, std::abs(to_double(sum)));
        ++c.samples;
    }
    c.passed = c.samples == kSamples && c.max_residual <= cfg.tol;
    c.detail = c.samples < kSamples ? "too few samples off the denominators' zeros"
                                    : "max residual over " + std::to_string(c.samples) + " samples";
    return c;
}

std::vector<Certificate> verify_continuity(const Solution& sol, const ProbeConfig& cfg) {
    std::vector<Certificate> out;
    std::optional<PoleCandidates> cands;
    for (std::size_t i = 0; i < sol.phi_i.size(); ++i) {
        const CRFun& phi = sol.phi_i[i];
        const BiPoly& den = phi.ratfun().den();
        for (const auto& e : phi.extensions()) {
            Certificate c;
            c.kind = CertKind::ContinuityAtPoint;
            c.phi_index = static_cast<int>(i);
            c.point = e.point;
            c.stored = e.value;
            if (!vanishes_at(den, e.point)) {
                c.detail = "extension stored where the denominator does not vanish";
                out.push_back(std::move(c));
                continue;
            }
            LimitVerdict v = limit_test(phi.ratfun(), e.point, cfg);
            if (v.kind == LimitKind::Limit) {
                double gap = std::abs(v.value.mid() - e.value.mid());
                c.passed = gap <= cfg.tol + e.value.width() / 2;
                c.detail = c.passed ? "limit matches the stored value" : "limit differs from the stored value";
            } else {
                c.inconclusive = v.kind == LimitKind::Unknown;
                c.detail = std::string("no limit certified: ") + to_string(v.kind);
            }
            c.probe = std::move(v);
            out.push_back(std::move(c));
        }
        if (den.is_constant()) continue;
        if (!cands) cands = pole_candidates(sol, cfg);
        Certificate cover;
        cover.kind = CertKind::ContinuityAtPoint;
        cover.phi_index = static_cast<int>(i);
        if (!cands->error.empty()) {
            cover.inconclusive = true;
            cover.detail = "pole candidates not resolved: " + cands->error;
            out.push_back(std::move(cover));
            continue;
        }
        if (!divides(den, cands->multiple)) {
            cover.detail = "denominator does not divide b * den(psi) * sum g^2";
            out.push_back(std::move(cover));
            continue;
        }
        std::vector<AlgebraicPoint> missing;
        for (const auto& p : cands->points)
            if (vanishes_at(den, p) && !find_point(p_set(phi), p)) missing.push_back(p);
        if (missing.empty()) continue;
        cover.point = missing.front();
        cover.detail = "denominator vanishes at a point without a stored extension";
        out.push_back(std::move(cover));
    }
    return out;
}

Certificate verify_pole_bound(const Solution& sol, std::span<const CRFun> f, const CRFun& phi) {
    Certificate c;
    c.kind = CertKind::PoleBound;
    for (const auto& p : sol.phi_i)
        for (const auto& e : p.extensions()) add_unique(c.claimed, e.point);
    std::sort(c.claimed.begin(), c.claimed.end(), point_less);
    c.bound = sol.pole_bound_points;
    bool covered = true, sound = true;
    for (const auto& p : c.claimed)
        if (!find_point(c.bound, p)) {
            covered = false;
            add_unique(c.outside, p);
        }
    for (const auto& p : c.bound)
        if (!allowed_pole(p, f, phi)) {
            sound = false;
            add_unique(c.outside, p);
        }
    c.passed = covered && sound;
    c.detail = !covered ? "an indeterminacy point lies outside the recorded bound"
               : !sound ? "the recorded bound has a point outside Z(f) and the inputs' indeterminacy sets"
                        : "P(phi_i) is contained in the bound";
    return c;
}

Certificate confirm_witness(const PTFailure& failure, const ProbeConfig& cfg) {
    Certificate c;
    c.kind = CertKind::UnboundedWitness;
    const PTReport& rep = failure.report;
    std::optional<RatFun> fn;
    std::optional<AlgebraicPoint> point;
    const LimitVerdict* w = nullptr;
    if (rep.psi_failure && rep.quotient) {
        fn = *rep.quotient;
        point = rep.psi_failure->point;
        w = &rep.psi_failure->evidence;
    } else if (rep.system && (rep.psi || rep.quotient)) {
        const RatFun& psi = rep.psi ? rep.psi->ratfun() : *rep.quotient;
        for (const auto& rec : rep.per_point) {
            if (rec.result.verdict != PTVerdict::Fail || !rec.result.witness) continue;
            int idx = rec.result.witness_index;
            if (idx < 0 || static_cast<std::size_t>(idx) >= rep.system->g_list.size()) break;
            std::vector<Rational> cc = rec.result.c;
            if (cc.empty()) cc.assign(rep.system->g_list.size(), Rational(0));
            fn = remainder_functions(psi, rep.system->g_list, cc)[static_cast<std::size_t>(idx)];
            point = rec.point;
            w = &*rec.result.witness;
            break;
        }
    }
    if (!fn || !point || !w) {
        c.detail = "no witness recorded";
        return c;
    }
    c.point = point;
    c.probe = *w;
    auto [px, py] = point->center(160);
    Rational gap = abs(Rational(w->center_x - px)) + abs(Rational(w->center_y - py));
    if (gap > Rational(1, mpz_class(1) << 40)) {
        c.detail = "witness samples do not converge to the failing point";
        return c;
    }
    if (w->kind != LimitKind::Unbounded) {
        LimitVerdict v = limit_test(*fn, *point, cfg);
        c.passed = v.kind == w->kind && (v.kind == LimitKind::BoundedNoLimit);
        c.detail = c.passed ? "bounded oscillation re-probed" : "re-probe does not reproduce the witness";
        c.probe = std::move(v);
        return c;
    }
    LocalPoly num(fn->num(), w->center_x, w->center_y), den(fn->den(), w->center_x, w->center_y);
    const double rho = to_double(cfg.rho);
    std::vector<Interval> vals;
    for (const auto& s : w->witness) {
        Interval d = den.eval(s.dx, s.dy);
        if (d.contains_zero()) {
            c.detail = "a witness sample sits on a pole";
            return c;
        }
        Interval v = num.eval(s.dx, s.dy) / d;
        if (v.hi() < s.value.lo() || s.value.hi() < v.lo()) {
            c.detail = "a stored sample does not re-evaluate to its recorded value";
            return c;
        }
        if (std::abs(std::hypot(s.dx, s.dy) - s.radius) > 1e-9 * s.radius) {
            c.detail = "a stored sample is not on its recorded circle";
            return c;
        }
        vals.push_back(v);
        c.radii.push_back(s.radius);
        c.magnitudes.push_back(v.mig());
    }
    // Ratios between consecutive circles of the geometric sequence.
    for (std::size_t k = 1; k < vals.size(); ++k) {
        if (std::abs(c.radii[k] - rho * c.radii[k - 1]) > 1e-9 * c.radii[k - 1]) continue;
        c.ratios.push_back(vals[k].mig() / vals[k - 1].mag());
    }
    std::size_t n = c.ratios.size();
    c.passed = n >= 3 && std::all_of(c.ratios.end() - 3, c.ratios.end(), [&](double r) { return r >= cfg.growth_factor; });
    c.detail = c.passed ? "growth confirmed on the last three radii" : "growth below the declared factor";
    return c;
}

}  // namespace rsolve

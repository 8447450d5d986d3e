#include "rsolve/solver.hpp"

#include <algorithm>
#include <cmath>

namespace rsolve {

const char* to_string(SolutionMode m) { return m == SolutionMode::Exact ? "Exact" : "Numeric"; }

namespace {

bool same_cluster(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    return a.shear() == b.shear() && a.minpoly() == b.minpoly() && a.y_of_u() == b.y_of_u();
}

Rational u_coordinate(const AlgebraicPoint& p) {
    auto [cx, cy] = p.center(64);
    return cx + p.shear() * cy;
}

// Polynomial in u through the nodes (u_k, v_k).
UPoly interpolate(const std::vector<Rational>& u, const std::vector<Rational>& v) {
    UPoly out;
    for (std::size_t k = 0; k < u.size(); ++k) {
        UPoly term(v[k]);
        for (std::size_t l = 0; l < u.size(); ++l) {
            if (l == k) continue;
            term = term * UPoly::linear(u[l]) * UPoly(Rational(Rational(1) / (u[k] - u[l])));
        }
        out = out + term;
    }
    return out;
}

BiPoly in_sheared(const UPoly& p, const Rational& s) { return BiPoly::from_univariate(p).shear(-s); }

// Scales m by a power of two so that m(p + d) is about |d|^2 near the
// cluster; otherwise one chart swamps the others far inside the probe radii.
BiPoly balanced(const BiPoly& m, const std::vector<AlgebraicPoint>& points, const std::vector<std::size_t>& cluster) {
    const double d = std::ldexp(1.0, -10);
    double log_sum = 0.0;
    int count = 0;
    for (std::size_t k : cluster) {
        auto [cx, cy] = points[k].center(64);
        for (auto [ux, uy] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}) {
            double v = to_double(m.eval(cx + from_double(d * ux), cy + from_double(d * uy)));
            if (v > 0.0) {
                log_sum += std::log2(v / (d * d));
                ++count;
            }
        }
    }
    if (count == 0) return m;
    long e = std::lround(log_sum / count);
    mpz_class two_e = mpz_class(1) << static_cast<unsigned long>(std::labs(e));
    return Rational(e >= 0 ? Rational(1, two_e) : Rational(two_e)) * m;
}

BiPoly cluster_square_sum(const std::vector<AlgebraicPoint>& points, const std::vector<std::size_t>& cluster) {
    const AlgebraicPoint& rep = points[cluster.front()];
    const Rational& s = rep.shear();
    UPoly q = rep.minpoly();
    // Rational points split off a block keep their own representation, so
    // their linear factors are removed here.
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (std::find(cluster.begin(), cluster.end(), k) != cluster.end() || !points[k].is_rational()) continue;
        Rational u = points[k].x() + s * points[k].y();
        if (q.eval(u) == 0 && rep.y_of_u().eval(u) == points[k].y()) q = exact_div(q, UPoly::linear(u));
    }
    BiPoly Q = in_sheared(q, s);
    BiPoly W = BiPoly::y() - in_sheared(rep.y_of_u(), s);
    BiPoly m = Q * Q + W * W;
    for (std::size_t k = 0; k < points.size(); ++k) {
        bool inside = std::find(cluster.begin(), cluster.end(), k) != cluster.end();
        if (vanishes_at(m, points[k]) != inside) throw Error("chart construction failed: vanishing set not certified");
    }
    return balanced(m.normalized(), points, cluster);
}

std::vector<AlgebraicPoint> dedup_sorted(std::vector<AlgebraicPoint> pts) {
    std::vector<AlgebraicPoint> out;
    for (auto& p : pts)
        if (!find_point(out, p)) out.push_back(std::move(p));
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

// Max |R| on the probe rings shrinks by a fixed factor over the last radii.
// Independent of the scale of R.
bool tends_to_zero(const LimitVerdict& v) {
    const auto& T = v.trail;
    if (T.size() < 5) return false;
    if (T.back().max_abs_hi == 0.0) return true;
    for (std::size_t k = T.size() - 4; k < T.size(); ++k)
        if (!std::isfinite(T[k].max_abs_hi) || !(T[k].max_abs_hi <= 0.9 * T[k - 1].max_abs_hi)) return false;
    return true;
}

// Extensions of r at the candidate points where its denominator vanishes.
// At a special point the glued value is the local constant there: the own
// chart's beta tends to it, every other psi_j^N beta_j tends to 0 and b is
// positive. Other points are probed.
std::optional<CRFun> certify_at(const RatFun& r, std::span<const AlgebraicPoint> candidates,
                                std::span<const AlgebraicPoint> special, std::span<const Rational> value, bool exact,
                                const ProbeConfig& cfg, std::string& why) {
    std::vector<Extension> ext;
    CertStatus status = exact ? CertStatus::CertifiedExact : CertStatus::CertifiedNumeric;
    for (const auto& p : candidates) {
        if (!vanishes_at(r.den(), p)) continue;
        if (auto k = find_point(special, p)) {
            const Rational& v = value[*k];
            if (exact)
                ext.push_back({p, v, Interval::enclose(v)});
            else
                ext.push_back({p, std::nullopt, Interval::enclose(v - Rational(from_double(cfg.tol)), v + Rational(from_double(cfg.tol)))});
            continue;
        }
        if (exact && p.is_rational()) {
            if (auto e = exact_limit(r, p.x(), p.y())) {
                ext.push_back({p, e, Interval::enclose(*e)});
                continue;
            }
        }
        LimitVerdict v = limit_test(r, p, cfg);
        if (v.kind != LimitKind::Limit) {
            why = std::string("solution not certified continuous: ") + to_string(v.kind);
            return std::nullopt;
        }
        status = CertStatus::CertifiedNumeric;
        ext.push_back({p, std::nullopt, v.value});
    }
    return CRFun(r, std::move(ext), status);
}

Solution zero_solution(std::size_t r) {
    Solution sol;
    sol.phi_i.assign(r, CRFun(BiPoly()));
    sol.glue.psi_j = {BiPoly(1)};
    sol.glue.b = BiPoly(1);
    sol.glue.a_ij.assign(r, std::vector<RatFun>{RatFun()});
    sol.glue.b_i.assign(r, RatFun());
    return sol;
}

}  // namespace

std::vector<std::vector<std::size_t>> point_clusters(std::span<const AlgebraicPoint> points) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t k = 0; k < points.size(); ++k) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const auto& cl) { return same_cluster(points[cl.front()], points[k]); });
        if (it == out.end())
            out.push_back({k});
        else
            it->push_back(k);
    }
    return out;
}

LocalSolution local_solution(const CRFun& psi, const FactoredSystem& fs, std::span<const AlgebraicPoint> cluster,
                             std::span<const std::vector<Rational>> c, bool numeric) {
    const std::size_t r = fs.g_list.size();
    LocalSolution ls;
    ls.points.assign(cluster.begin(), cluster.end());
    ls.c.assign(c.begin(), c.end());
    ls.numeric = numeric;
    std::vector<Rational> nodes;
    for (const auto& p : cluster) nodes.push_back(u_coordinate(p));
    for (std::size_t i = 0; i < r; ++i) {
        if (cluster.empty()) {
            ls.c_poly.emplace_back();
        } else if (cluster.size() == 1) {
            ls.c_poly.emplace_back(c[0][i]);
        } else {
            std::vector<Rational> vals;
            for (const auto& ck : c) vals.push_back(ck[i]);
            ls.c_poly.push_back(in_sheared(interpolate(nodes, vals), cluster[0].shear()));
        }
    }
    BiPoly S, comb;
    for (std::size_t j = 0; j < r; ++j) {
        S += fs.g_list[j] * fs.g_list[j];
        comb += ls.c_poly[j] * fs.g_list[j];
    }
    RatFun rest = psi.ratfun() - RatFun(comb);
    RatFun total;
    for (std::size_t i = 0; i < r; ++i) {
        ls.beta.push_back(RatFun(ls.c_poly[i]) + rest * RatFun::reduce(fs.g_list[i], S));
        total = total + ls.beta.back() * RatFun(fs.g_list[i]);
    }
    if (!(total == psi.ratfun())) throw Error("internal: sum beta_i g_i != psi");
    for (const auto& p : fs.special_points)
        if (!find_point(cluster, p)) ls.valid_on.push_back(p);
    return ls;
}

std::vector<BiPoly> chart_polys(std::span<const AlgebraicPoint> points) {
    auto clusters = point_clusters(points);
    if (clusters.size() <= 1) return {BiPoly(1)};
    std::vector<AlgebraicPoint> pts(points.begin(), points.end());
    std::vector<BiPoly> m;
    for (const auto& cl : clusters) m.push_back(cluster_square_sum(pts, cl));
    std::vector<BiPoly> out;
    for (std::size_t j = 0; j < m.size(); ++j) {
        BiPoly prod(1);
        for (std::size_t k = 0; k < m.size(); ++k)
            if (k != j) prod *= m[k];
        out.push_back(std::move(prod));
    }
    return out;
}

unsigned lojasiewicz_exponent(const BiPoly& psi, const RatFun& f, std::span<const AlgebraicPoint> zeros,
                              const ProbeConfig& cfg) {
    std::vector<const AlgebraicPoint*> poles;
    for (const auto& z : zeros)
        if (vanishes_at(f.den(), z)) poles.push_back(&z);
    for (int n = 1; n <= cfg.n_max; ++n) {
        bool ok = true;
        for (const AlgebraicPoint* z : poles) {
            if (z->is_rational()) {
                auto e = exact_limit(RatFun::reduce(pow(psi, static_cast<unsigned>(n)) * f.num(), f.den()), z->x(),
                                     z->y());
                if (e && *e == 0) continue;
                if (e) {
                    ok = false;
                    break;
                }
            }
            std::vector<ProbeFactor> prod{{RatFun(psi), static_cast<unsigned>(n)}, {f, 1}};
            if (!tends_to_zero(limit_test(prod, *z, cfg))) {
                ok = false;
                break;
            }
        }
        if (ok) return static_cast<unsigned>(n);
    }
    throw Error("exponent search exhausted");
}

GlueData glue(std::span<const LocalSolution> locals, std::span<const AlgebraicPoint> points, const ProbeConfig& cfg) {
    GlueData gd;
    const std::size_t m = locals.size();
    const std::size_t r = locals.front().beta.size();
    gd.psi_j = m == 1 ? std::vector<BiPoly>{BiPoly(1)} : chart_polys(points);
    if (m > 1) {
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < r; ++i)
                gd.N = std::max(gd.N, lojasiewicz_exponent(gd.psi_j[j], locals[j].beta[i], locals[j].valid_on, cfg));
    }
    std::vector<BiPoly> psi_n;
    gd.b = BiPoly();
    for (const auto& p : gd.psi_j) {
        psi_n.push_back(pow(p, gd.N));
        gd.b += psi_n.back() * psi_n.back();
    }
    gd.a_ij.assign(r, {});
    gd.b_i.assign(r, RatFun());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            gd.a_ij[i].push_back(RatFun(psi_n[j]) * locals[j].beta[i]);
            gd.b_i[i] = gd.b_i[i] + gd.a_ij[i].back() * RatFun(psi_n[j]);
        }
    }
    return gd;
}

SolveResult solve(std::span<const CRFun> f, const CRFun& phi, const ProbeConfig& cfg) {
    cfg.validate();
    const std::size_t r = f.size();
    bool all_zero = std::all_of(f.begin(), f.end(), [](const CRFun& fi) { return fi.ratfun().is_zero(); });
    if (all_zero || phi.ratfun().is_zero()) {
        PTReport rep;
        rep.verdict = phi.ratfun().is_zero() ? PTVerdict::Pass : PTVerdict::Fail;
        rep.reason = all_zero ? "degenerate system" : "phi is zero";
        if (rep.verdict == PTVerdict::Fail) return PTFailure{std::move(rep)};
        Solution sol = zero_solution(r);
        sol.report = std::move(rep);
        return sol;
    }

    PTReport rep = check_pt(f, phi, cfg);
    if (rep.verdict == PTVerdict::Fail) return PTFailure{std::move(rep)};
    if (rep.verdict == PTVerdict::Inconclusive) return SolveInconclusive{rep.reason, std::move(rep)};
    const FactoredSystem& fs = *rep.system;
    const CRFun& psi = *rep.psi;
    const auto& points = fs.special_points;

    std::vector<std::vector<Rational>> c(points.size());
    std::vector<bool> numeric(points.size(), false);
    for (const auto& rec : rep.per_point) {
        if (!rec.special) continue;
        auto k = find_point(points, rec.point);
        if (!k) throw Error("internal: special point missing");
        c[*k] = rec.result.c;
        numeric[*k] = rec.result.numeric;
    }

    Solution sol;
    try {
        if (points.empty()) {
            sol.locals.push_back(local_solution(psi, fs, {}, {}, false));
        } else {
            for (const auto& cl : point_clusters(points)) {
                std::vector<AlgebraicPoint> cpts;
                std::vector<std::vector<Rational>> cc;
                bool num = false;
                for (std::size_t k : cl) {
                    cpts.push_back(points[k]);
                    cc.push_back(c[k]);
                    num = num || numeric[k];
                }
                sol.locals.push_back(local_solution(psi, fs, cpts, cc, num));
            }
        }
        bool needs_numeric = std::any_of(sol.locals.begin(), sol.locals.end(),
                                         [](const LocalSolution& l) { return l.numeric; });
        if (needs_numeric && cfg.mode == SolveMode::Exact && !cfg.allow_downgrade)
            return SolveInconclusive{"exact solution unavailable: irrational or unverified constants", std::move(rep)};
        sol.mode = needs_numeric || cfg.mode == SolveMode::Numeric ? SolutionMode::Numeric : SolutionMode::Exact;
        sol.glue = glue(sol.locals, points, cfg);
    } catch (const Error& e) {
        return SolveInconclusive{e.what(), std::move(rep)};
    }

    std::vector<AlgebraicPoint> candidates(points.begin(), points.end());
    for (const auto& e : psi.extensions()) candidates.push_back(e.point);
    candidates = dedup_sorted(std::move(candidates));
    RatFun sum;
    for (std::size_t i = 0; i < r; ++i) {
        RatFun phi_i = sol.glue.b_i[i] / RatFun(sol.glue.b);
        std::vector<Rational> value;
        for (const auto& ck : c) value.push_back(ck[i]);
        std::string why;
        auto crf = certify_at(phi_i, candidates, points, value, sol.mode == SolutionMode::Exact, cfg, why);
        if (!crf) return SolveInconclusive{why, std::move(rep)};
        sol.phi_i.push_back(std::move(*crf));
        if (sol.mode == SolutionMode::Exact) sum = sum + phi_i * f[i].ratfun();
    }
    if (sol.mode == SolutionMode::Exact && !(sum == phi.ratfun())) throw Error("internal: sum phi_i f_i != phi");

    std::vector<AlgebraicPoint> bound(points.begin(), points.end());
    for (const auto& fi : f)
        for (const auto& e : fi.extensions()) bound.push_back(e.point);
    for (const auto& e : phi.extensions()) bound.push_back(e.point);
    sol.pole_bound_points = dedup_sorted(std::move(bound));
    sol.report = std::move(rep);
    return sol;
}

}  // namespace rsolve

#include "rsolve/ptchecker.hpp"

#include "rsolve/elimination.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rsolve {

const char* to_string(PTVerdict v) {
    switch (v) {
        case PTVerdict::Pass: return "Pass";
        case PTVerdict::Fail: return "Fail";
        case PTVerdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

FactoredSystem factor_common(std::span<const CRFun> f, std::uint64_t seed) {
    FactoredSystem fs;
    fs.h = BiPoly(1);
    std::vector<BiPoly> dens;
    for (const auto& fi : f) {
        const BiPoly& d = fi.ratfun().den();
        if (d.is_constant() || std::find(dens.begin(), dens.end(), d) != dens.end()) continue;
        dens.push_back(d);
        fs.h *= d;
    }
    std::vector<BiPoly> lambda;
    bool any = false;
    for (const auto& fi : f) {
        const RatFun& r = fi.ratfun();
        lambda.push_back(r.num() * exact_div(fs.h, r.den()));
        any = any || !r.is_zero();
    }
    if (!any) throw Error("degenerate system");
    fs.g = multi_gcd(lambda);
    for (const auto& l : lambda) fs.g_list.push_back(l.is_zero() ? BiPoly() : exact_div(l, fs.g));
    for (std::size_t i = 0; i < f.size(); ++i) {
        const RatFun& r = f[i].ratfun();
        if (!(fs.h * r.num() - fs.g * fs.g_list[i] * r.den()).is_zero()) throw Error("internal: h*f_i != g*g_i");
    }
    fs.special_points = common_real_zeros(fs.g_list, seed);
    return fs;
}

CertifyResult divide_out(const CRFun& phi, const FactoredSystem& fs, const ProbeConfig& cfg) {
    RatFun psi = RatFun::reduce(fs.h * phi.ratfun().num(), fs.g * phi.ratfun().den());
    if (!(fs.h * phi.ratfun().num() * psi.den() - fs.g * psi.num() * phi.ratfun().den()).is_zero())
        throw Error("internal: h*phi != g*psi");
    return certify_continuous(psi, cfg);
}

std::vector<RatFun> remainder_functions(const RatFun& psi, std::span<const BiPoly> g_list, std::span<const Rational> c) {
    BiPoly S, comb;
    for (std::size_t j = 0; j < g_list.size(); ++j) {
        S += g_list[j] * g_list[j];
        comb += c[j] * g_list[j];
    }
    BiPoly rest = psi.num() - comb * psi.den();
    std::vector<RatFun> out;
    for (const auto& gi : g_list) out.push_back(RatFun::reduce(rest * gi, psi.den() * S));
    return out;
}

namespace {

struct RingFit {
    Eigen::VectorXd c;
    double residual = 0.0;  // RMS of (psi - sum c g) / sqrt(S) over the ring
};

// Weighted least squares for c on the circle of the given radius:
// minimize sum over samples of (psi - sum c_j g_j)^2 / S.
std::optional<RingFit> fit_ring(const LocalPoly& pnum, const LocalPoly& pden, const std::vector<LocalPoly>& g,
                                double radius, const std::vector<std::pair<double, double>>& dirs) {
    const std::size_t r = g.size();
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (const auto& [ux, uy] : dirs) {
        double dx = radius * ux, dy = radius * uy;
        Interval den = pden.eval(dx, dy);
        if (den.contains_zero()) continue;
        double psi = (pnum.eval(dx, dy) / den).mid();
        std::vector<double> gv(r);
        double s = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
            gv[i] = g[i].eval(dx, dy).mid();
            s += gv[i] * gv[i];
        }
        if (!(s > 0.0) || !std::isfinite(psi)) continue;
        double w = 1.0 / std::sqrt(s);
        for (auto& v : gv) v *= w;
        rows.push_back(std::move(gv));
        rhs.push_back(psi * w);
    }
    if (rows.size() < r + 1) return std::nullopt;
    Eigen::MatrixXd A(rows.size(), r);
    Eigen::VectorXd b(rows.size());
    for (std::size_t s = 0; s < rows.size(); ++s) {
        for (std::size_t i = 0; i < r; ++i) A(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) = rows[s][i];
        b(static_cast<Eigen::Index>(s)) = rhs[s];
    }
    Eigen::VectorXd scale(r);
    for (std::size_t i = 0; i < r; ++i) {
        double m = A.col(static_cast<Eigen::Index>(i)).cwiseAbs().maxCoeff();
        scale(static_cast<Eigen::Index>(i)) = m > 0.0 ? m : 1.0;
        A.col(static_cast<Eigen::Index>(i)) /= scale(static_cast<Eigen::Index>(i));
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(1e-10);
    Eigen::VectorXd x = cod.solve(b);
    RingFit fit;
    fit.residual = std::sqrt((A * x - b).squaredNorm() / static_cast<double>(rows.size()));
    fit.c = x.cwiseQuotient(scale);
    return fit;
}

std::vector<Rational> to_rationals(const Eigen::VectorXd& v, std::int64_t max_den, double max_err, bool& ok) {
    std::vector<Rational> out;
    ok = true;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        auto q = reconstruct_rational(v(i), max_den, max_err * (1.0 + std::abs(v(i))));
        if (!q) {
            ok = false;
            return {};
        }
        out.push_back(*q);
    }
    return out;
}

// Rounded to a multiple of 2^-32 to keep later exact arithmetic small.
std::vector<Rational> dyadic(const Eigen::VectorXd& v) {
    std::vector<Rational> out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double q = std::isfinite(v(i)) ? std::round(std::ldexp(v(i), 32)) : 0.0;
        out.push_back(Rational(from_double(q) / Rational(mpz_class(1) << 32)));
    }
    return out;
}

// Uniform angles plus the axes and, at rational points, the real tangent
// directions of every g_j: a g_j can dominate sum g^2 only in thin sectors
// around its zero curve.
std::vector<std::pair<double, double>> sample_directions(const std::vector<BiPoly>& g, const AlgebraicPoint& p,
                                                         int angles) {
    std::vector<std::pair<double, double>> dirs;
    for (int j = 0; j < angles; ++j) {
        double t = 2.0 * std::numbers::pi * (j + 0.5) / angles;
        dirs.emplace_back(std::cos(t), std::sin(t));
    }
    std::vector<double> slopes;
    slopes.push_back(0.0);
    if (p.is_rational()) {
        for (const auto& gj : g) {
            if (gj.is_zero()) continue;
            BiPoly local = gj.translate(p.x(), p.y());
            int d = local.order();
            BiPoly H = local.homogeneous_part(d);
            std::vector<Rational> co;
            for (int k = 0; k <= d; ++k) co.push_back(H.coeff(static_cast<unsigned>(d - k), static_cast<unsigned>(k)));
            UPoly h1(co);
            if (h1.degree() <= 0) continue;
            for (const auto& iv : isolate_real_roots(squarefree(h1))) slopes.push_back(to_double((iv.lo + iv.hi) / 2));
        }
    }
    for (double m : slopes) {
        double n = std::hypot(1.0, m);
        dirs.emplace_back(1.0 / n, m / n);
        dirs.emplace_back(-1.0 / n, -m / n);
    }
    dirs.emplace_back(0.0, 1.0);
    dirs.emplace_back(0.0, -1.0);
    return dirs;
}

// Aitken extrapolation of a sequence that converges geometrically.
Eigen::VectorXd aitken(const Eigen::VectorXd& c0, const Eigen::VectorXd& c1, const Eigen::VectorXd& c2) {
    Eigen::VectorXd d1 = c2 - c1, d0 = c1 - c0;
    double D1 = d1.cwiseAbs().maxCoeff(), D0 = d0.cwiseAbs().maxCoeff();
    if (!(D0 > 0.0 && D1 < 0.9 * D0)) return c2;
    double q = D1 / D0;
    return c2 + d1 * (q / (1.0 - q));
}

bool near_zero_limit(const LimitVerdict& v, double tol) {
    return v.kind == LimitKind::Limit && std::abs(v.value.mid()) <= tol;
}

}  // namespace

ConstantsResult find_constants(const CRFun& psi, const FactoredSystem& fs, const AlgebraicPoint& p,
                               const ProbeConfig& cfg) {
    ConstantsResult out;
    const RatFun& ps = psi.ratfun();
    const auto& gl = fs.g_list;
    const std::size_t r = gl.size();
    BiPoly S;
    for (const auto& gi : gl) S += gi * gi;

    // Local boundedness of psi*g_i/S is necessary, whatever c is.
    for (std::size_t i = 0; i < r; ++i) {
        if (gl[i].is_zero()) continue;
        LimitVerdict v = limit_test(RatFun::reduce(ps.num() * gl[i], ps.den() * S), p, cfg);
        if (v.kind == LimitKind::Unbounded) {
            out.verdict = PTVerdict::Fail;
            out.witness = std::move(v);
            out.witness_index = static_cast<int>(i);
            out.note = "psi*g_i/sum g_j^2 is not locally bounded";
            return out;
        }
    }

    auto [cx, cy] = p.center(160);
    LocalPoly pnum(ps.num(), cx, cy), pden(ps.den(), cx, cy);
    std::vector<LocalPoly> lg;
    for (const auto& gi : gl) lg.emplace_back(gi, cx, cy);
    const double r0 = to_double(cfg.r0), rho = to_double(cfg.rho);
    const auto dirs = sample_directions(gl, p, cfg.angles);
    auto fit_all = [&](const std::vector<LocalPoly>& g) {
        std::vector<RingFit> fits;
        for (int k = 0; k <= cfg.k_max; ++k) {
            auto fit = fit_ring(pnum, pden, g, r0 * std::pow(rho, k), dirs);
            if (fit) fits.push_back(std::move(*fit));
        }
        return fits;
    };
    std::vector<RingFit> fits = fit_all(lg);
    if (fits.size() < 3) {
        out.note = "least-squares fit failed";
        return out;
    }
    const std::size_t n = fits.size() - 1;

    // Candidates: rational reconstructions first, then the floating values.
    std::vector<std::pair<std::vector<Rational>, bool>> candidates;
    auto add = [&](std::vector<Rational> c, bool numeric) {
        for (const auto& [cc, nn] : candidates)
            if (cc == c) return;
        candidates.emplace_back(std::move(c), numeric);
    };
    auto add_from = [&](const std::vector<RingFit>& fs) {
        const std::size_t m = fs.size() - 1;
        Eigen::VectorXd extrap = aitken(fs[m - 2].c, fs[m - 1].c, fs[m].c);
        // At irrational points only floating constants are tried.
        bool ok = false;
        if (p.is_rational()) {
            auto c1 = to_rationals(extrap, 1000000, 1e-6, ok);
            if (ok) add(c1, false);
            auto c2 = to_rationals(extrap, 1000, 1e-4, ok);
            if (ok) add(c2, false);
        }
        add(dyadic(extrap), true);
        add(dyadic(fs[m].c), true);
    };
    // A g_j of higher order than the others leaves its constant free; the fit
    // then drifts without converging, and the column is dropped.
    std::vector<LocalPoly> masked = lg;
    bool any_masked = false;
    for (std::size_t i = 0; i < r; ++i) {
        auto e = static_cast<Eigen::Index>(i);
        double a = std::abs(fits[n - 2].c(e)), b = std::abs(fits[n - 1].c(e)), c = std::abs(fits[n].c(e));
        if (c > 1.0 && c >= 2.0 * b && b >= 2.0 * a) {
            masked[i] = LocalPoly();
            any_masked = true;
        }
    }
    if (any_masked) {
        auto mfits = fit_all(masked);
        if (mfits.size() >= 3) add_from(mfits);
    }
    add_from(fits);

    std::vector<LimitVerdict> first_verdicts;
    const RatFun inv_den = RatFun::reduce(BiPoly(1), ps.den() * S);
    for (const auto& [c, numeric] : candidates) {
        bool exact = p.is_rational() && !numeric;
        std::vector<LimitVerdict> verdicts;
        bool numeric_ok = true;
        if (numeric) {
            // Reducing B_i with long float constants is costly; probe the product.
            BiPoly comb;
            for (std::size_t j = 0; j < r; ++j) comb += c[j] * gl[j];
            RatFun rest(ps.num() - comb * ps.den());
            for (std::size_t i = 0; i < r; ++i) {
                std::vector<ProbeFactor> B{{rest, 1}, {RatFun(gl[i]), 1}, {inv_den, 1}};
                verdicts.push_back(limit_test(B, p, cfg));
                numeric_ok = numeric_ok && near_zero_limit(verdicts.back(), cfg.tol);
            }
        } else {
            std::vector<RatFun> B = remainder_functions(ps, gl, c);
            for (const auto& b : B)
                if (exact && exact_limit(b, p.x(), p.y()) != std::optional<Rational>(0)) exact = false;
            for (const auto& b : B) {
                verdicts.push_back(limit_test(b, p, cfg));
                numeric_ok = numeric_ok && near_zero_limit(verdicts.back(), cfg.tol);
            }
        }
        if (exact || numeric_ok) {
            out.verdict = PTVerdict::Pass;
            out.c = c;
            out.numeric = numeric || !p.is_rational();
            out.exact = exact;
            out.b_verdicts = std::move(verdicts);
            return out;
        }
        if (first_verdicts.empty()) first_verdicts = std::move(verdicts);
    }

    out.b_verdicts = first_verdicts;
    out.c = candidates.front().first;
    // No constant can work when the best fit leaves a residual that does not
    // decay on the smallest circles.
    bool stalled = true;
    for (std::size_t k = n - 2; k <= n; ++k)
        if (!(fits[k].residual >= 100 * cfg.tol && fits[k].residual >= 0.9 * fits[k - 1].residual)) stalled = false;
    if (stalled) {
        for (std::size_t i = 0; i < first_verdicts.size(); ++i) {
            LimitKind k = first_verdicts[i].kind;
            if (k == LimitKind::BoundedNoLimit || k == LimitKind::Unbounded) {
                out.verdict = PTVerdict::Fail;
                out.witness = first_verdicts[i];
                out.witness_index = static_cast<int>(i);
                out.note = "least-squares residual does not decay: no constants exist";
                return out;
            }
        }
    }
    out.verdict = PTVerdict::Inconclusive;
    out.note = "no candidate constants verified";
    return out;
}

PTReport check_pt(std::span<const CRFun> f, const CRFun& phi, const ProbeConfig& cfg) {
    cfg.validate();
    PTReport rep;
    bool all_zero = std::all_of(f.begin(), f.end(), [](const CRFun& fi) { return fi.ratfun().is_zero(); });
    if (f.empty() || all_zero) {
        rep.verdict = phi.ratfun().is_zero() ? PTVerdict::Pass : PTVerdict::Fail;
        rep.reason = "degenerate system";
        return rep;
    }
    try {
        rep.system = factor_common(f, cfg.seed);
    } catch (const Error& e) {
        rep.verdict = PTVerdict::Inconclusive;
        rep.reason = e.what();
        return rep;
    }
    const FactoredSystem& fs = *rep.system;
    rep.quotient = RatFun::reduce(fs.h * phi.ratfun().num(), fs.g * phi.ratfun().den());
    CertifyResult psi = divide_out(phi, fs, cfg);
    if (auto* fail = std::get_if<FailureReport>(&psi)) {
        rep.verdict = fail->verdict == FailureReport::Verdict::Fail ? PTVerdict::Fail : PTVerdict::Inconclusive;
        rep.reason = "psi = h*phi/g is not continuous: " + fail->reason;
        rep.psi_failure = *fail;
        return rep;
    }
    rep.psi = std::get<CRFun>(psi);

    bool any_fail = false, any_inconclusive = false;
    for (const auto& p : fs.special_points) {
        PointRecord rec{p, true, find_constants(*rep.psi, fs, p, cfg)};
        any_fail = any_fail || rec.result.verdict == PTVerdict::Fail;
        any_inconclusive = any_inconclusive || rec.result.verdict == PTVerdict::Inconclusive;
        rep.per_point.push_back(std::move(rec));
    }
    // Indeterminacy points of the inputs away from the special points: all
    // functions are continuous there and S does not vanish.
    std::vector<AlgebraicPoint> extra;
    auto collect = [&](const CRFun& fn) {
        for (const auto& e : fn.extensions()) {
            if (find_point(fs.special_points, e.point) || find_point(extra, e.point)) continue;
            extra.push_back(e.point);
        }
    };
    collect(phi);
    for (const auto& fi : f) collect(fi);
    std::sort(extra.begin(), extra.end(), point_less);
    for (const auto& p : extra) {
        ConstantsResult trivial;
        trivial.verdict = PTVerdict::Pass;
        trivial.note = "not a special point";
        rep.per_point.push_back({p, false, std::move(trivial)});
    }
    rep.verdict = any_fail ? PTVerdict::Fail : any_inconclusive ? PTVerdict::Inconclusive : PTVerdict::Pass;
    if (any_fail) rep.reason = "pointwise test fails at a special point";
    if (!any_fail && any_inconclusive) rep.reason = "constants not verified at a special point";
    return rep;
}

}  // namespace rsolve

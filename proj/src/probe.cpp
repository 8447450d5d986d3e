#include "rsolve/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace rsolve {

void ProbeConfig::validate() const {
    if (!(tol > 0.0)) throw Error("tol must be positive");
    if (r0 <= 0) throw Error("r0 must be positive");
    if (rho <= 0 || rho >= 1) throw Error("rho must lie in (0, 1)");
    if (k_max < 3) throw Error("k_max must be at least 3");
    if (angles < 8) throw Error("angles must be at least 8");
    if (!(growth_factor > 1.0)) throw Error("growth_factor must exceed 1");
    if (n_max < 1) throw Error("n_max must be positive");
}

const char* to_string(LimitKind kind) {
    switch (kind) {
        case LimitKind::Limit: return "Limit";
        case LimitKind::BoundedNoLimit: return "BoundedNoLimit";
        case LimitKind::Unbounded: return "Unbounded";
        case LimitKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

const char* to_string(Boundedness b) {
    switch (b) {
        case Boundedness::Yes: return "Yes";
        case Boundedness::No: return "No";
        case Boundedness::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {

struct LocalFactor {
    LocalPoly num, den;
    unsigned power;
};

class Evaluator {
public:
    Evaluator(std::span<const ProbeFactor> product, const Rational& cx, const Rational& cy) {
        for (const auto& f : product) factors_.push_back({LocalPoly(f.f.num(), cx, cy), LocalPoly(f.f.den(), cx, cy), f.power});
    }

    std::optional<Interval> operator()(double dx, double dy) const {
        Interval v(1.0);
        for (const auto& f : factors_) {
            Interval d = f.den.eval(dx, dy);
            if (d.contains_zero()) return std::nullopt;
            v = v * pow(f.num.eval(dx, dy) / d, f.power);
        }
        return v;
    }

private:
    std::vector<LocalFactor> factors_;
};

struct Ring {
    double radius;
    std::vector<ProbeSample> samples;  // one per angle
};

// Cosine and sine with the four axis directions exact.
std::pair<double, double> direction(int j, int k) {
    if ((4 * j) % k == 0) {
        switch ((4 * j / k) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double t = 2.0 * std::numbers::pi * j / k;
    return {std::cos(t), std::sin(t)};
}

std::optional<Ring> probe_ring(const Evaluator& eval, double radius, int angles) {
    Ring ring{radius, {}};
    ring.samples.reserve(static_cast<std::size_t>(angles));
    for (int j = 0; j < angles; ++j) {
        auto [c, s] = direction(j, angles);
        std::optional<Interval> v = eval(radius * c, radius * s);
        double dx = radius * c, dy = radius * s;
        // Deterministic jitter off a pole of a denominator.
        for (int m = 1; !v && m <= 4; ++m) {
            double t = 2.0 * std::numbers::pi * j / angles + (m % 2 ? 1 : -1) * m * std::numbers::pi / (7.0 * angles);
            dx = radius * std::cos(t);
            dy = radius * std::sin(t);
            v = eval(dx, dy);
        }
        if (!v) return std::nullopt;
        ring.samples.push_back({radius, dx, dy, *v});
    }
    return ring;
}

RadiusStat stat_of(const Ring& ring) {
    RadiusStat st{ring.radius, 0.0, 0.0, 0.0};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : ring.samples) {
        st.max_abs_lo = std::max(st.max_abs_lo, s.value.mig());
        st.max_abs_hi = std::max(st.max_abs_hi, s.value.mag());
        lo = std::min(lo, s.value.mid());
        hi = std::max(hi, s.value.mid());
    }
    st.spread = hi - lo;
    return st;
}

const ProbeSample& argmax(const Ring& ring) {
    return *std::max_element(ring.samples.begin(), ring.samples.end(),
                             [](const ProbeSample& a, const ProbeSample& b) { return a.value.mag() < b.value.mag(); });
}

double max_step(const Ring& a, const Ring& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.samples.size(); ++j)
        d = std::max(d, std::abs(b.samples[j].value.mid() - a.samples[j].value.mid()));
    return d;
}

// Geometric (Aitken) extrapolation of each angle's values to radius 0.
std::vector<double> extrapolate(const Ring& prev, const Ring& cur, double q) {
    std::vector<double> e(cur.samples.size());
    double f = q / (1.0 - q);
    for (std::size_t j = 0; j < e.size(); ++j) {
        double a = cur.samples[j].value.mid();
        e[j] = a + (a - prev.samples[j].value.mid()) * f;
    }
    return e;
}

double spread(const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double max_width(const Ring& r) {
    double w = 0.0;
    for (const auto& s : r.samples) w = std::max(w, s.value.width());
    return w;
}

}  // namespace

LimitVerdict limit_test(const RatFun& r, const AlgebraicPoint& p, const ProbeConfig& cfg) {
    ProbeFactor f{r, 1};
    return limit_test(std::span<const ProbeFactor>(&f, 1), p, cfg);
}

LimitVerdict limit_test(std::span<const ProbeFactor> product, const AlgebraicPoint& p, const ProbeConfig& cfg) {
    cfg.validate();
    LimitVerdict out;
    auto [cx, cy] = p.center(160);
    out.center_x = cx;
    out.center_y = cy;
    Evaluator eval(product, cx, cy);

    const double r0 = to_double(cfg.r0), rho = to_double(cfg.rho);
    const int K = cfg.angles;
    std::vector<Ring> rings;
    for (int k = 0; k <= cfg.k_max; ++k) {
        auto ring = probe_ring(eval, r0 * std::pow(rho, k), K);
        if (!ring) {
            out.note = "probe point on a pole after jitter";
            return out;
        }
        rings.push_back(std::move(*ring));
    }
    const double half_radius = rings.back().radius / 2.0;
    auto half = probe_ring(eval, half_radius, K);
    if (!half) {
        out.note = "probe point on a pole after jitter";
        return out;
    }
    for (const auto& ring : rings) {
        out.trail.push_back(stat_of(ring));
        out.witness.push_back(argmax(ring));
    }
    const int n = cfg.k_max;
    const auto& T = out.trail;
    const double g = cfg.growth_factor;
    // Expected growth over a half step, for a rate that gives g per rho step.
    const double g_half = std::pow(g, std::log(2.0) / std::log(1.0 / rho));

    bool growing = true;
    for (int k = n - 2; k <= n; ++k)
        if (!(T[static_cast<std::size_t>(k)].max_abs_lo >= g * T[static_cast<std::size_t>(k - 1)].max_abs_hi)) growing = false;
    if (growing) {
        RadiusStat hs = stat_of(*half);
        bool confirmed = hs.max_abs_lo >= g_half * T.back().max_abs_hi;
        out.witness.push_back(argmax(*half));
        out.trail.push_back(hs);
        if (confirmed) {
            out.kind = LimitKind::Unbounded;
        } else {
            out.note = "growth not confirmed at the halved radius";
        }
        return out;
    }

    // Limit: per-angle values extrapolated to radius 0 agree, and the
    // extrapolation is stable between consecutive radii.
    const Ring& last = rings[static_cast<std::size_t>(n)];
    const Ring& prev = rings[static_cast<std::size_t>(n - 1)];
    const Ring& prev2 = rings[static_cast<std::size_t>(n - 2)];
    double d_last = max_step(prev, last), d_prev = max_step(prev2, prev), d_prev2 = max_step(rings[static_cast<std::size_t>(n - 3)], prev2);
    const double tol = cfg.tol;
    bool settled = d_last <= tol / 16 && d_prev <= tol / 16;
    bool contracting = d_last <= 0.75 * d_prev && d_prev <= 0.75 * d_prev2;
    if ((settled || contracting) && max_width(last) <= tol / 4) {
        double q = settled || d_prev == 0.0 ? 0.0 : d_last / d_prev;
        double q_prev = settled || d_prev2 == 0.0 ? 0.0 : d_prev / d_prev2;
        std::vector<double> e = extrapolate(prev, last, q);
        std::vector<double> e_prev = extrapolate(prev2, prev, q_prev);
        // Same extrapolation from the halved radius.
        double q_half = std::pow(q, std::log(2.0) / std::log(1.0 / rho));
        std::vector<double> e_half = extrapolate(last, *half, q_half);
        double v = mean(e);
        if (spread(e) <= tol / 2 && std::abs(v - mean(e_prev)) <= tol / 2 && spread(e_half) <= tol &&
            std::abs(mean(e_half) - v) <= tol / 2) {
            out.kind = LimitKind::Limit;
            out.value = Interval(v - tol / 2, v + tol / 2);
            return out;
        }
    }

    // Bounded without a limit: max |R| stable and the angular spread does
    // not shrink.
    bool stable = true;
    for (int k = n - 2; k <= n; ++k)
        if (!(T[static_cast<std::size_t>(k)].max_abs_hi <= 1.5 * T[static_cast<std::size_t>(k - 1)].max_abs_hi + tol)) stable = false;
    const auto& s_last = T[static_cast<std::size_t>(n)];
    const auto& s_prev = T[static_cast<std::size_t>(n - 1)];
    if (stable && std::isfinite(s_last.max_abs_hi) && s_last.spread >= tol && s_last.spread >= 0.5 * s_prev.spread) {
        out.kind = LimitKind::BoundedNoLimit;
        return out;
    }
    out.note = "no classification at the configured depth";
    return out;
}

Boundedness locally_bounded(const RatFun& r, const AlgebraicPoint& p, const ProbeConfig& cfg) {
    if (p.is_rational() && r.den().eval(p.x(), p.y()) != 0) return Boundedness::Yes;
    switch (limit_test(r, p, cfg).kind) {
        case LimitKind::Limit:
        case LimitKind::BoundedNoLimit: return Boundedness::Yes;
        case LimitKind::Unbounded: return Boundedness::No;
        case LimitKind::Unknown: return Boundedness::Unknown;
    }
    return Boundedness::Unknown;
}

namespace {

long weight(const Monomial& m, long wx, long wy) { return wx * m.dx + wy * m.dy; }

// Terms of minimal weight, and that weight; zero polynomial gives (0, -1).
std::pair<BiPoly, long> initial_form(const BiPoly& p, long wx, long wy) {
    long best = -1;
    for (const auto& [k, c] : p.terms()) {
        long w = weight(Monomial::from_key(k), wx, wy);
        if (best < 0 || w < best) best = w;
    }
    BiPoly init;
    for (const auto& [k, c] : p.terms()) {
        Monomial m = Monomial::from_key(k);
        if (weight(m, wx, wy) == best) init += BiPoly::monomial(c, m.dx, m.dy);
    }
    return {init, best};
}

bool has_real_root(const UPoly& p) {
    if (p.degree() <= 0) return false;
    return !isolate_real_roots(p).empty();
}

}  // namespace

std::optional<Rational> exact_limit(const RatFun& r, const Rational& x, const Rational& y) {
    BiPoly num = r.num().translate(x, y), den = r.den().translate(x, y);
    if (den.constant() != 0) return num.constant() / den.constant();
    if (num.is_zero()) return Rational(0);
    // The initial form can only be definite if it contains pure powers of x
    // and of y, which fixes the weight.
    long a = -1, b = -1;
    for (const auto& [k, c] : den.terms()) {
        Monomial m = Monomial::from_key(k);
        if (m.dy == 0 && (a < 0 || m.dx < a)) a = m.dx;
        if (m.dx == 0 && (b < 0 || m.dy < b)) b = m.dy;
    }
    if (a <= 0 || b <= 0) return std::nullopt;
    long g = std::gcd(a, b), wx = b / g, wy = a / g;
    auto [F, dw] = initial_form(den, wx, wy);
    if (dw != wx * a || F.coeff(static_cast<unsigned>(a), 0) == 0 || F.coeff(0, static_cast<unsigned>(b)) == 0) return std::nullopt;
    for (int sx : {1, -1}) {
        UPoly line = F.substitute(BiPoly(sx), BiPoly::x()).to_univariate(Var::x);
        if (has_real_root(line)) return std::nullopt;
    }
    auto [N, nw] = initial_form(num, wx, wy);
    if (nw > dw) return Rational(0);
    if (nw < dw) return std::nullopt;
    Rational v = N.leading_coeff() / F.leading_coeff();
    if (N.leading_monomial() != F.leading_monomial() || N != v * F) return std::nullopt;
    return v;
}

}  // namespace rsolve

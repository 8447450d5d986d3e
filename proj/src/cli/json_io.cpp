#include "rsolve/json_io.hpp"

#include "rsolve/parser.hpp"

#include <cmath>

namespace rsolve {

namespace {

template <class E, std::size_t N>
E enum_from(std::string_view s, const E (&all)[N], const char* what) {
    for (E e : all)
        if (s == to_string(e)) return e;
    throw Error(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

constexpr CertStatus kStatuses[] = {CertStatus::CertifiedExact, CertStatus::CertifiedNumeric, CertStatus::Claimed};
constexpr LimitKind kKinds[] = {LimitKind::Limit, LimitKind::BoundedNoLimit, LimitKind::Unbounded, LimitKind::Unknown};
constexpr PTVerdict kVerdicts[] = {PTVerdict::Pass, PTVerdict::Fail, PTVerdict::Inconclusive};
constexpr SolutionMode kSolutionModes[] = {SolutionMode::Exact, SolutionMode::Numeric};
constexpr SolveMode kSolveModes[] = {SolveMode::Exact, SolveMode::Numeric, SolveMode::Auto};

Json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double num_from(const Json& j) {
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
        throw Error("malformed number '" + s + "'");
    }
    return j.get<double>();
}

Json poly_json(const BiPoly& p) { return p.to_string(); }

BiPoly poly_from(const Json& j) {
    RatFun r = parse_expr(j.get<std::string>());
    if (!r.is_polynomial()) throw Error("expected a polynomial, got '" + j.get<std::string>() + "'");
    return r.num();
}

Json upoly_json(const UPoly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_json(c));
    return a;
}

UPoly upoly_from(const Json& j) {
    std::vector<Rational> c;
    for (const auto& e : j) c.push_back(rational_from_json(e));
    return UPoly(std::move(c));
}

template <class T, class F>
Json list(const std::vector<T>& v, F f) {
    Json a = Json::array();
    for (const auto& e : v) a.push_back(f(e));
    return a;
}

Json points(const std::vector<AlgebraicPoint>& v) {
    return list(v, [](const AlgebraicPoint& p) { return to_json(p); });
}

std::vector<AlgebraicPoint> points_from(const Json& j) {
    std::vector<AlgebraicPoint> out;
    for (const auto& e : j) out.push_back(point_from_json(e));
    return out;
}

Json doubles(const std::vector<double>& v) {
    return list(v, [](double d) { return num(d); });
}

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? to_json(*v) : Json(nullptr);
}

Json constants_json(const ConstantsResult& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["c"] = list(r.c, [](const Rational& q) { return to_json(q); });
    j["numeric"] = r.numeric;
    j["exact"] = r.exact;
    j["b_verdicts"] = list(r.b_verdicts, [](const LimitVerdict& v) { return to_string(v.kind); });
    j["witness_index"] = r.witness_index;
    j["witness"] = optional_json(r.witness);
    j["note"] = r.note;
    return j;
}

ConstantsResult constants_from(const Json& j) {
    ConstantsResult r;
    r.verdict = enum_from(j.at("verdict").get<std::string>(), kVerdicts, "verdict");
    for (const auto& c : j.at("c")) r.c.push_back(rational_from_json(c));
    r.numeric = j.value("numeric", false);
    r.exact = j.value("exact", false);
    r.witness_index = j.value("witness_index", -1);
    if (j.contains("witness") && !j["witness"].is_null()) r.witness = verdict_from_json(j["witness"]);
    r.note = j.value("note", "");
    return r;
}

}  // namespace

const char* to_string(SolveMode m) {
    switch (m) {
        case SolveMode::Exact: return "exact";
        case SolveMode::Numeric: return "numeric";
        case SolveMode::Auto: return "auto";
    }
    return "auto";
}

SolveMode solve_mode_from_string(std::string_view s) { return enum_from(s, kSolveModes, "mode"); }

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    return parse_rational(j.get<std::string>());
}

Json to_json(const Interval& v) { return Json::array({num(v.lo()), num(v.hi())}); }

Interval interval_from_json(const Json& j) { return {num_from(j.at(0)), num_from(j.at(1))}; }

Json to_json(const AlgebraicPoint& p) {
    Json j;
    j["minpoly"] = upoly_json(p.minpoly());
    j["shear"] = to_json(p.shear());
    j["y_of_u"] = upoly_json(p.y_of_u());
    const IntervalBox& b = p.box();
    j["box"] = {{"u", {to_json(p.u_box().lo), to_json(p.u_box().hi)}},
                {"x", {to_json(b.x_lo), to_json(b.x_hi)}},
                {"y", {to_json(b.y_lo), to_json(b.y_hi)}}};
    j["approx"] = {num(p.approx_x()), num(p.approx_y())};
    return j;
}

AlgebraicPoint point_from_json(const Json& j) {
    UPoly m = upoly_from(j.at("minpoly"));
    UPoly y = upoly_from(j.at("y_of_u"));
    Rational s = rational_from_json(j.at("shear"));
    const Json& u = j.at("box").at("u");
    RootInterval box{rational_from_json(u.at(0)), rational_from_json(u.at(1))};
    if (m.degree() == 1) {
        Rational root = -m.coeff(0) / m.coeff(1);
        Rational py = y.eval(root);
        return AlgebraicPoint(root - s * py, py);
    }
    return AlgebraicPoint(s, std::move(m), std::move(y), box);
}

Json to_json(const CRFun& f) {
    Json j;
    j["expr"] = print_expr(f.ratfun());
    j["status"] = to_string(f.status());
    j["extensions"] = list(f.extensions(), [](const Extension& e) {
        Json x;
        x["point"] = to_json(e.point);
        x["value"] = e.exact ? to_json(*e.exact) : Json(nullptr);
        x["interval"] = to_json(e.value);
        return x;
    });
    return j;
}

CRFun crfun_from_json(const Json& j) {
    std::vector<Extension> ext;
    for (const auto& x : j.at("extensions")) {
        Extension e;
        e.point = point_from_json(x.at("point"));
        if (!x.at("value").is_null()) e.exact = rational_from_json(x["value"]);
        e.value = interval_from_json(x.at("interval"));
        ext.push_back(std::move(e));
    }
    return CRFun(parse_expr(j.at("expr").get<std::string>()), std::move(ext),
                 enum_from(j.at("status").get<std::string>(), kStatuses, "status"));
}

Json to_json(const LimitVerdict& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["value"] = to_json(v.value);
    j["center"] = {to_json(v.center_x), to_json(v.center_y)};
    j["trail"] = list(v.trail, [](const RadiusStat& s) {
        return Json{{"radius", num(s.radius)},
                    {"max_abs_lo", num(s.max_abs_lo)},
                    {"max_abs_hi", num(s.max_abs_hi)},
                    {"spread", num(s.spread)}};
    });
    j["witness"] = list(v.witness, [](const ProbeSample& s) {
        return Json{{"radius", num(s.radius)}, {"dx", num(s.dx)}, {"dy", num(s.dy)}, {"value", to_json(s.value)}};
    });
    j["note"] = v.note;
    return j;
}

LimitVerdict verdict_from_json(const Json& j) {
    LimitVerdict v;
    v.kind = enum_from(j.at("kind").get<std::string>(), kKinds, "limit kind");
    v.value = interval_from_json(j.at("value"));
    v.center_x = rational_from_json(j.at("center").at(0));
    v.center_y = rational_from_json(j.at("center").at(1));
    for (const auto& s : j.at("trail"))
        v.trail.push_back({num_from(s.at("radius")), num_from(s.at("max_abs_lo")), num_from(s.at("max_abs_hi")),
                           num_from(s.at("spread"))});
    for (const auto& s : j.at("witness"))
        v.witness.push_back(
            {num_from(s.at("radius")), num_from(s.at("dx")), num_from(s.at("dy")), interval_from_json(s.at("value"))});
    v.note = j.value("note", "");
    return v;
}

Json to_json(const PTReport& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["reason"] = r.reason;
    if (r.system) {
        const FactoredSystem& fs = *r.system;
        j["system"] = {{"h", poly_json(fs.h)},
                       {"g", poly_json(fs.g)},
                       {"g_list", list(fs.g_list, poly_json)},
                       {"special_points", points(fs.special_points)}};
    } else {
        j["system"] = nullptr;
    }
    j["psi"] = optional_json(r.psi);
    j["quotient"] = r.quotient ? Json(print_expr(*r.quotient)) : Json(nullptr);
    if (r.psi_failure) {
        const FailureReport& f = *r.psi_failure;
        j["psi_failure"] = {{"verdict", f.verdict == FailureReport::Verdict::Fail ? "Fail" : "Inconclusive"},
                            {"reason", f.reason},
                            {"point", optional_json(f.point)},
                            {"evidence", to_json(f.evidence)}};
    } else {
        j["psi_failure"] = nullptr;
    }
    j["per_point"] = list(r.per_point, [](const PointRecord& p) {
        Json x;
        x["point"] = to_json(p.point);
        x["special"] = p.special;
        x["result"] = constants_json(p.result);
        return x;
    });
    return j;
}

PTReport report_from_json(const Json& j) {
    PTReport r;
    r.verdict = enum_from(j.at("verdict").get<std::string>(), kVerdicts, "verdict");
    r.reason = j.value("reason", "");
    if (j.contains("system") && !j["system"].is_null()) {
        const Json& s = j["system"];
        FactoredSystem fs;
        fs.h = poly_from(s.at("h"));
        fs.g = poly_from(s.at("g"));
        for (const auto& g : s.at("g_list")) fs.g_list.push_back(poly_from(g));
        fs.special_points = points_from(s.at("special_points"));
        r.system = std::move(fs);
    }
    if (j.contains("psi") && !j["psi"].is_null()) r.psi = crfun_from_json(j["psi"]);
    if (j.contains("quotient") && !j["quotient"].is_null()) r.quotient = parse_expr(j["quotient"].get<std::string>());
    if (j.contains("psi_failure") && !j["psi_failure"].is_null()) {
        const Json& f = j["psi_failure"];
        FailureReport fr;
        fr.verdict = f.at("verdict") == "Fail" ? FailureReport::Verdict::Fail : FailureReport::Verdict::Inconclusive;
        fr.reason = f.value("reason", "");
        if (!f.at("point").is_null()) fr.point = point_from_json(f["point"]);
        fr.evidence = verdict_from_json(f.at("evidence"));
        r.psi_failure = std::move(fr);
    }
    if (j.contains("per_point"))
        for (const auto& p : j["per_point"])
            r.per_point.push_back({point_from_json(p.at("point")), p.value("special", true), constants_from(p.at("result"))});
    return r;
}

Json to_json(const ProbeConfig& cfg) {
    Json j;
    j["tol"] = num(cfg.tol);
    j["r0"] = to_json(cfg.r0);
    j["rho"] = to_json(cfg.rho);
    j["k_max"] = cfg.k_max;
    j["angles"] = cfg.angles;
    j["growth_factor"] = num(cfg.growth_factor);
    j["n_max"] = cfg.n_max;
    j["seed"] = cfg.seed;
    j["mode"] = to_string(cfg.mode);
    return j;
}

ProbeConfig config_from_json(const Json& j, ProbeConfig cfg) {
    if (!j.is_object()) throw Error("options must be an object");
    for (const auto& [key, v] : j.items()) {
        if (key == "tol") cfg.tol = num_from(v);
        else if (key == "r0") cfg.r0 = rational_from_json(v);
        else if (key == "rho") cfg.rho = rational_from_json(v);
        else if (key == "k_max") cfg.k_max = v.get<int>();
        else if (key == "angles") cfg.angles = v.get<int>();
        else if (key == "growth_factor") cfg.growth_factor = num_from(v);
        else if (key == "n_max") cfg.n_max = v.get<int>();
        else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
        else if (key == "mode") cfg.mode = solve_mode_from_string(v.get<std::string>());
        else throw Error("unknown option '" + key + "'");
    }
    return cfg;
}

Json to_json(const Solution& s) {
    Json j;
    j["mode"] = to_string(s.mode);
    j["phi"] = list(s.phi_i, [](const CRFun& f) { return to_json(f); });
    j["pole_bound_points"] = points(s.pole_bound_points);
    j["N"] = s.glue.N;
    j["b"] = poly_json(s.glue.b);
    j["psi_j"] = list(s.glue.psi_j, poly_json);
    j["psi"] = s.report.psi ? Json(print_expr(s.report.psi->ratfun())) : Json(nullptr);
    if (s.report.system) {
        const FactoredSystem& fs = *s.report.system;
        j["system"] = {{"h", poly_json(fs.h)},
                       {"g", poly_json(fs.g)},
                       {"g_list", list(fs.g_list, poly_json)},
                       {"special_points", points(fs.special_points)}};
    } else {
        j["system"] = nullptr;
    }
    return j;
}

Solution solution_from_json(const Json& j) {
    Solution s;
    s.mode = enum_from(j.at("mode").get<std::string>(), kSolutionModes, "solution mode");
    for (const auto& f : j.at("phi")) s.phi_i.push_back(crfun_from_json(f));
    s.pole_bound_points = points_from(j.at("pole_bound_points"));
    s.glue.N = j.value("N", 1u);
    if (j.contains("b")) s.glue.b = poly_from(j["b"]);
    if (j.contains("psi_j"))
        for (const auto& p : j["psi_j"]) s.glue.psi_j.push_back(poly_from(p));
    if (j.contains("psi") && !j["psi"].is_null())
        s.report.psi = CRFun(parse_expr(j["psi"].get<std::string>()), {}, CertStatus::Claimed);
    if (j.contains("system") && !j["system"].is_null()) {
        Json wrapped = {{"verdict", "Pass"}, {"system", j["system"]}};
        s.report.system = report_from_json(wrapped).system;
    }
    s.report.verdict = PTVerdict::Pass;
    return s;
}

Json to_json(const Certificate& c) {
    Json j;
    j["kind"] = to_string(c.kind);
    j["passed"] = c.passed;
    j["inconclusive"] = c.inconclusive;
    j["detail"] = c.detail;
    switch (c.kind) {
        case CertKind::ExactIdentity:
            j["residual"] = poly_json(c.residual);
            break;
        case CertKind::NumericResidual:
            j["max_residual"] = num(c.max_residual);
            j["samples"] = c.samples;
            break;
        case CertKind::ContinuityAtPoint:
            j["phi_index"] = c.phi_index;
            j["point"] = optional_json(c.point);
            j["stored"] = to_json(c.stored);
            j["probe"] = optional_json(c.probe);
            break;
        case CertKind::PoleBound:
            j["claimed"] = points(c.claimed);
            j["bound"] = points(c.bound);
            j["outside"] = points(c.outside);
            break;
        case CertKind::UnboundedWitness:
            j["point"] = optional_json(c.point);
            j["probe"] = optional_json(c.probe);
            j["radii"] = doubles(c.radii);
            j["magnitudes"] = doubles(c.magnitudes);
            j["ratios"] = doubles(c.ratios);
            break;
    }
    return j;
}

}  // namespace rsolve

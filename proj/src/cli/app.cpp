#include "rsolve/app.hpp"

#include "rsolve/json_io.hpp"
#include "rsolve/parser.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rsolve {

namespace {

struct InputError : Error {
    using Error::Error;
};

struct Problem {
    std::vector<std::string> f_text;
    std::optional<std::string> phi_text;
    std::vector<CRFun> f;
    std::optional<CRFun> phi;
    ProbeConfig cfg;
};

RatFun parse_field(const std::string& text, const std::string& where) {
    try {
        return parse_expr(text);
    } catch (const ParseError& e) {
        throw InputError(where + ": " + e.what());
    }
}

// Polynomials are exact; quotients stay Claimed until certify_inputs runs.
CRFun as_input(const RatFun& r) {
    if (r.is_polynomial()) return CRFun(r.num());
    return CRFun(r, {}, CertStatus::Claimed);
}

ProbeConfig make_config(const Json* options, const RunOptions& opts) {
    ProbeConfig cfg;
    if (opts.env_seed) cfg.seed = *opts.env_seed;
    try {
        if (options && !options->is_null()) cfg = config_from_json(*options, cfg);
    } catch (const std::exception& e) {
        throw InputError(std::string("options: ") + e.what());
    }
    if (opts.tol) cfg.tol = *opts.tol;
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.mode) cfg.mode = *opts.mode;
    if (opts.max_exponent) cfg.n_max = *opts.max_exponent;
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw InputError(std::string("options: ") + e.what());
    }
    return cfg;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

Problem read_problem(const Json& doc, const RunOptions& opts, bool need_phi) {
    if (!doc.is_object()) throw InputError("problem file must be a JSON object");
    Problem p;
    if (!doc.contains("f") || !doc["f"].is_array() || doc["f"].empty())
        throw InputError("problem file needs a nonempty array 'f'");
    for (std::size_t i = 0; i < doc["f"].size(); ++i) {
        const Json& e = doc["f"][i];
        if (!e.is_string()) throw InputError("f[" + std::to_string(i) + "] must be a string");
        p.f_text.push_back(e.get<std::string>());
        p.f.push_back(as_input(parse_field(p.f_text.back(), "f[" + std::to_string(i) + "]")));
    }
    if (doc.contains("phi")) {
        if (!doc["phi"].is_string()) throw InputError("phi must be a string");
        p.phi_text = doc["phi"].get<std::string>();
        p.phi = as_input(parse_field(*p.phi_text, "phi"));
    } else if (need_phi) {
        throw InputError("problem file needs 'phi'");
    }
    p.cfg = make_config(doc.contains("options") ? &doc["options"] : nullptr, opts);
    return p;
}

// The f_i and phi enter as quotients; non-polynomial inputs are certified first.
std::optional<std::string> certify_inputs(Problem& p) {
    auto one = [&](CRFun& f, const std::string& name) -> std::optional<std::string> {
        if (f.ratfun().is_polynomial()) return std::nullopt;
        CertifyResult r = certify_continuous(f.ratfun(), p.cfg);
        if (auto* c = std::get_if<CRFun>(&r)) {
            f = std::move(*c);
            return std::nullopt;
        }
        return name + " is not continuous: " + std::get<FailureReport>(r).reason;
    };
    for (std::size_t i = 0; i < p.f.size(); ++i)
        if (auto e = one(p.f[i], "f_" + std::to_string(i + 1))) return e;
    if (p.phi)
        if (auto e = one(*p.phi, "phi")) return e;
    return std::nullopt;
}

Json problem_json(const Problem& p) {
    Json j;
    Json f = Json::array();
    for (const auto& fi : p.f) f.push_back(print_expr(fi.ratfun()));
    j["f"] = f;
    if (p.phi) j["phi"] = print_expr(p.phi->ratfun());
    return j;
}

Json header(std::string_view command, const std::string& status) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = std::string(command);
    j["status"] = status;
    return j;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// ---- text rendering ----

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_point(const AlgebraicPoint& p) {
    if (p.is_rational()) return "(" + to_string(p.x()) + ", " + to_string(p.y()) + ")";
    return "(~" + fmt_double(p.approx_x()) + ", ~" + fmt_double(p.approx_y()) + ")";
}

std::string fmt_points(const std::vector<AlgebraicPoint>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt_point(v[i]);
    return s + "}";
}

std::string fmt_value(const Extension& e) {
    if (e.exact) return to_string(*e.exact);
    return "[" + fmt_double(e.value.lo()) + ", " + fmt_double(e.value.hi()) + "]";
}

void text_problem(std::ostringstream& os, const Problem& p) {
    for (std::size_t i = 0; i < p.f.size(); ++i)
        os << "f_" << i + 1 << " = " << print_expr(p.f[i].ratfun()) << "\n";
    if (p.phi) os << "phi = " << print_expr(p.phi->ratfun()) << "\n";
}

void text_crfun(std::ostringstream& os, const std::string& name, const CRFun& f) {
    os << name << " = " << print_expr(f.ratfun()) << "\n";
    for (const auto& e : f.extensions()) os << "  " << name << fmt_point(e.point) << " = " << fmt_value(e) << "\n";
}

void text_verdict(std::ostringstream& os, const LimitVerdict& v) {
    os << "    probe: " << to_string(v.kind);
    if (v.kind == LimitKind::Limit) os << " " << fmt_double(v.value.mid());
    if (!v.note.empty()) os << " (" << v.note << ")";
    os << "\n";
    for (const auto& s : v.witness)
        os << "    r = " << fmt_double(s.radius) << "  |R| in [" << fmt_double(s.value.mig()) << ", "
           << fmt_double(s.value.mag()) << "]\n";
}

void text_report(std::ostringstream& os, const PTReport& r) {
    os << "PT: " << to_string(r.verdict);
    if (!r.reason.empty()) os << " (" << r.reason << ")";
    os << "\n";
    if (r.system) {
        const FactoredSystem& fs = *r.system;
        os << "h = " << fs.h.to_string() << "\ng = " << fs.g.to_string() << "\n";
        for (std::size_t i = 0; i < fs.g_list.size(); ++i) os << "g_" << i + 1 << " = " << fs.g_list[i].to_string() << "\n";
        os << "Z(g_1,...,g_r) = " << fmt_points(fs.special_points) << "\n";
    }
    if (r.psi) os << "psi = " << print_expr(r.psi->ratfun()) << "\n";
    if (r.psi_failure) {
        os << "psi not continuous: " << r.psi_failure->reason << "\n";
        text_verdict(os, r.psi_failure->evidence);
    }
    for (const auto& rec : r.per_point) {
        os << "at " << fmt_point(rec.point) << ": " << to_string(rec.result.verdict);
        if (!rec.result.c.empty()) {
            os << "  c = (";
            for (std::size_t i = 0; i < rec.result.c.size(); ++i) os << (i ? ", " : "") << to_string(rec.result.c[i]);
            os << ")";
        }
        if (!rec.result.note.empty()) os << "  " << rec.result.note;
        os << "\n";
        if (rec.result.witness) {
            os << "  witness for B_" << rec.result.witness_index + 1 << ":\n";
            text_verdict(os, *rec.result.witness);
        }
    }
}

void text_cert(std::ostringstream& os, const Certificate& c) {
    os << "certificate " << to_string(c.kind);
    if (c.phi_index >= 0) os << " phi_" << c.phi_index + 1;
    if (c.point) os << " at " << fmt_point(*c.point);
    os << ": " << (c.passed ? "passed" : c.inconclusive ? "inconclusive" : "FAILED") << " (" << c.detail << ")\n";
    if (c.kind == CertKind::NumericResidual)
        os << "  max residual " << fmt_double(c.max_residual) << " over " << c.samples << " samples\n";
    if (c.kind == CertKind::PoleBound) {
        os << "  P(phi_i) = " << fmt_points(c.claimed) << "\n  bound = " << fmt_points(c.bound) << "\n";
        if (!c.outside.empty()) os << "  outside = " << fmt_points(c.outside) << "\n";
    }
    if (c.kind == CertKind::UnboundedWitness && !c.ratios.empty()) {
        os << "  growth ratios:";
        for (double r : c.ratios) os << " " << fmt_double(r);
        os << "\n";
    }
}

void text_solution(std::ostringstream& os, const Solution& s) {
    os << "mode: " << to_string(s.mode) << "\n";
    for (std::size_t i = 0; i < s.phi_i.size(); ++i) text_crfun(os, "phi_" + std::to_string(i + 1), s.phi_i[i]);
    os << "N = " << s.glue.N << ", b = " << s.glue.b.to_string() << "\n";
    os << "P(phi_i) bound = " << fmt_points(s.pole_bound_points) << "\n";
}

struct Certified {
    std::vector<Certificate> certs;
    int code = kExitPass;
};

Certified certify_solution(const Solution& s, const Problem& p) {
    Certified out;
    out.certs.push_back(verify_identity(s, p.f, *p.phi, p.cfg));
    for (auto& c : verify_continuity(s, p.cfg)) out.certs.push_back(std::move(c));
    out.certs.push_back(verify_pole_bound(s, p.f, *p.phi));
    for (const auto& c : out.certs) {
        if (c.passed) continue;
        if (c.inconclusive) out.code = std::max(out.code, kExitInconclusive);
        else out.code = kExitFail;
    }
    return out;
}

Json certs_json(const std::vector<Certificate>& certs) {
    Json a = Json::array();
    for (const auto& c : certs) a.push_back(to_json(c));
    return a;
}

RunResult emit(int code, const Json& doc, const std::ostringstream& text, const RunOptions& opts) {
    RunResult r;
    r.code = code;
    r.out = opts.text ? text.str() : doc.dump(2) + "\n";
    return r;
}

RunResult cmd_check_pt(const Json& in, const RunOptions& opts) {
    Problem p = read_problem(in, opts, true);
    std::ostringstream os;
    os << "rsolve check-pt\n";
    text_problem(os, p);
    if (auto e = certify_inputs(p)) {
        Json doc = header("check-pt", "input_not_continuous");
        doc["problem"] = problem_json(p);
        doc["reason"] = *e;
        os << *e << "\n";
        return emit(kExitInconclusive, doc, os, opts);
    }
    PTReport rep = check_pt(p.f, *p.phi, p.cfg);
    Json doc = header("check-pt", lower(to_string(rep.verdict)));
    doc["problem"] = problem_json(p);
    doc["config"] = to_json(p.cfg);
    doc["report"] = to_json(rep);
    text_report(os, rep);
    int code = rep.verdict == PTVerdict::Pass ? kExitPass : rep.verdict == PTVerdict::Fail ? kExitFail : kExitInconclusive;
    return emit(code, doc, os, opts);
}

RunResult cmd_solve(const Json& in, const RunOptions& opts) {
    Problem p = read_problem(in, opts, true);
    std::ostringstream os;
    os << "rsolve solve\n";
    text_problem(os, p);
    if (auto e = certify_inputs(p)) {
        Json doc = header("solve", "input_not_continuous");
        doc["problem"] = problem_json(p);
        doc["reason"] = *e;
        os << *e << "\n";
        return emit(kExitInconclusive, doc, os, opts);
    }
    SolveResult res = solve(p.f, *p.phi, p.cfg);
    if (auto* s = std::get_if<Solution>(&res)) {
        Certified c = certify_solution(*s, p);
        Json doc = header("solve", c.code == kExitPass ? "solved" : "unverified");
        doc["problem"] = problem_json(p);
        doc["config"] = to_json(p.cfg);
        doc["solution"] = to_json(*s);
        doc["certificates"] = certs_json(c.certs);
        os << "status: " << doc["status"].get<std::string>() << "\n";
        text_solution(os, *s);
        for (const auto& cert : c.certs) text_cert(os, cert);
        return emit(c.code == kExitPass ? kExitPass : kExitInconclusive, doc, os, opts);
    }
    if (auto* f = std::get_if<PTFailure>(&res)) {
        Certificate w = confirm_witness(*f, p.cfg);
        Json doc = header("solve", "pt_failure");
        doc["problem"] = problem_json(p);
        doc["config"] = to_json(p.cfg);
        doc["report"] = to_json(f->report);
        doc["certificates"] = certs_json({w});
        os << "status: pt_failure\n";
        text_report(os, f->report);
        text_cert(os, w);
        return emit(kExitFail, doc, os, opts);
    }
    const auto& inc = std::get<SolveInconclusive>(res);
    Json doc = header("solve", "inconclusive");
    doc["problem"] = problem_json(p);
    doc["config"] = to_json(p.cfg);
    doc["reason"] = inc.reason;
    doc["report"] = to_json(inc.report);
    os << "status: inconclusive (" << inc.reason << ")\n";
    text_report(os, inc.report);
    return emit(kExitInconclusive, doc, os, opts);
}

RunResult cmd_verify(const Json& in, const RunOptions& opts) {
    if (!in.is_object() || !in.contains("problem")) throw InputError("verify expects the output of solve");
    Json prob = in["problem"];
    if (in.contains("config")) prob["options"] = in["config"];
    Problem p = read_problem(prob, opts, true);
    if (certify_inputs(p)) throw InputError("stored problem has a non-continuous input");
    std::ostringstream os;
    os << "rsolve verify\n";
    text_problem(os, p);
    std::vector<Certificate> certs;
    int code = kExitPass;
    try {
        if (in.contains("solution")) {
            Solution s = solution_from_json(in["solution"]);
            Certified c = certify_solution(s, p);
            certs = std::move(c.certs);
            code = c.code;
        } else if (in.contains("report") && in.value("status", "") == "pt_failure") {
            PTFailure f{report_from_json(in["report"])};
            certs.push_back(confirm_witness(f, p.cfg));
            code = certs.back().passed ? kExitPass : kExitFail;
        } else {
            throw InputError("nothing to verify: no solution and no failure witness");
        }
    } catch (const InputError&) {
        throw;
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed stored output: ") + e.what());
    } catch (const ParseError& e) {
        throw InputError(std::string("malformed stored output: ") + e.what());
    }
    const char* status = code == kExitPass ? "verified" : code == kExitFail ? "failed" : "inconclusive";
    Json doc = header("verify", status);
    doc["problem"] = problem_json(p);
    doc["certificates"] = certs_json(certs);
    os << "status: " << status << "\n";
    for (const auto& c : certs) text_cert(os, c);
    return emit(code, doc, os, opts);
}

RunResult cmd_analyze(const Json& in, const RunOptions& opts) {
    Problem p = read_problem(in, opts, false);
    std::ostringstream os;
    os << "rsolve analyze\n";
    Json funcs = Json::array();
    int code = kExitPass;
    std::vector<std::pair<std::string, RatFun>> inputs;
    for (std::size_t i = 0; i < p.f.size(); ++i) inputs.emplace_back("f_" + std::to_string(i + 1), p.f[i].ratfun());
    if (p.phi) inputs.emplace_back("phi", p.phi->ratfun());
    for (const auto& [name, r] : inputs) {
        Json j;
        j["name"] = name;
        j["expr"] = print_expr(r);
        CertifyResult cr = certify_continuous(r, p.cfg);
        if (auto* f = std::get_if<CRFun>(&cr)) {
            j["status"] = "continuous";
            j["P"] = Json::array();
            for (const auto& q : p_set(*f)) j["P"].push_back(to_json(q));
            j["function"] = to_json(*f);
            os << name << ": continuous rational function, P(" << name << ") = " << fmt_points(p_set(*f)) << "\n";
            text_crfun(os, name, *f);
        } else {
            const auto& fr = std::get<FailureReport>(cr);
            bool fail = fr.verdict == FailureReport::Verdict::Fail;
            j["status"] = fail ? "not_continuous" : "inconclusive";
            j["reason"] = fr.reason;
            j["point"] = fr.point ? to_json(*fr.point) : Json(nullptr);
            j["evidence"] = to_json(fr.evidence);
            code = fail ? kExitFail : std::max(code, kExitInconclusive);
            os << name << " = " << print_expr(r) << "\n  " << (fail ? "not continuous" : "inconclusive") << ": "
               << fr.reason;
            if (fr.point) os << " at " << fmt_point(*fr.point);
            os << "\n";
            text_verdict(os, fr.evidence);
        }
        funcs.push_back(std::move(j));
    }
    const char* status = code == kExitPass ? "continuous" : code == kExitFail ? "not_continuous" : "inconclusive";
    Json doc = header("analyze", status);
    doc["config"] = to_json(p.cfg);
    doc["functions"] = funcs;
    return emit(code, doc, os, opts);
}

}  // namespace

RunResult run(std::string_view command, std::string_view file_text, const RunOptions& opts) {
    try {
        Json in = parse_json(file_text);
        if (command == "check-pt") return cmd_check_pt(in, opts);
        if (command == "solve") return cmd_solve(in, opts);
        if (command == "verify") return cmd_verify(in, opts);
        if (command == "analyze") return cmd_analyze(in, opts);
        throw InputError("unknown command '" + std::string(command) + "'");
    } catch (const InputError& e) {
        return {kExitInput, "", std::string("input error: ") + e.what() + "\n"};
    } catch (const Json::exception& e) {
        return {kExitInput, "", std::string("input error: ") + e.what() + "\n"};
    } catch (const Error& e) {
        return {kExitInconclusive, "", std::string("inconclusive: ") + e.what() + "\n"};
    }
}

}  // namespace rsolve

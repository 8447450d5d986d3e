#include <doctest.h>

#include "rsolve/app.hpp"
#include "rsolve/json_io.hpp"
#include "rsolve/parser.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace rsolve;

namespace {

const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();
const BiPoly R2 = X * X + Y * Y;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string golden(const std::string& name) { return slurp(std::filesystem::path(RSOLVE_GOLDEN_DIR) / name); }

std::vector<std::filesystem::path> golden_files() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(RSOLVE_GOLDEN_DIR))
        if (e.path().extension() == ".json") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

ParseError parse_error(std::string_view text) {
    try {
        parse_expr(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for '" << std::string(text) << "'");
    throw Error("unreachable");
}

BiPoly random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(0, 4), coef(-9, 9), nterms(1, 4), den(1, 5);
    BiPoly p;
    for (int i = nterms(rng); i > 0; --i)
        p += BiPoly::monomial(frac(coef(rng), den(rng)), static_cast<unsigned>(deg(rng)), static_cast<unsigned>(deg(rng)));
    return p;
}

Json run_json(std::string_view cmd, std::string_view file, const RunOptions& opts = {}) {
    RunResult r = run(cmd, file, opts);
    REQUIRE(r.err.empty());
    return Json::parse(r.out);
}

}  // namespace

TEST_CASE("parse_expr examples") {
    CHECK(parse_expr("x^2*y^2") == RatFun(X * X * Y * Y));
    RatFun q = parse_expr("x^3/(x^2+y^2)");
    CHECK(q.num() == pow(X, 3));
    CHECK(q.den() == R2);
    CHECK(parse_error("1/0").message() == "division by the zero polynomial");
}

TEST_CASE("parse_expr grammar") {
    CHECK(parse_expr("2+3*x^2") == RatFun(BiPoly(2) + BiPoly(3) * X * X));
    CHECK(parse_expr("-x^2") == RatFun(-(X * X)));
    CHECK(parse_expr("1/2*x") == RatFun(frac(1, 2) * X));
    CHECK(parse_expr("x - y - 1") == RatFun(X - Y - BiPoly(1)));
    CHECK(parse_expr("(2^3)^2") == RatFun(64));
    CHECK(parse_error("2^3^2").column() == 4);
    CHECK(parse_expr(" ( x +\n y ) ^ 2 ") == RatFun(pow(X + Y, 2)));
    CHECK(parse_expr("1/(1/x)") == RatFun(X));
    CHECK(parse_expr("(x^2-y^2)/(x-y)") == RatFun(X + Y));
    CHECK(parse_expr("x^64") == RatFun(pow(X, 64)));
    CHECK(parse_expr("123456789012345678901234567890") == RatFun(Rational(mpz_class("123456789012345678901234567890"))));
}

TEST_CASE("parse_expr errors carry line and column") {
    ParseError e = parse_error("x +\n  * y");
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);

    ParseError big = parse_error("x^65");
    CHECK(big.column() == 3);
    CHECK(big.message().find("exceeds 64") != std::string::npos);

    CHECK(parse_error("x/(y-y)").column() == 2);
    CHECK(parse_error("(x+y").message().find("expected ')'") != std::string::npos);
    CHECK(parse_error("x*z").column() == 3);
    CHECK(parse_error("x^y").message().find("nonnegative integer") != std::string::npos);
    CHECK(parse_error("x^-1").column() == 3);
    CHECK(parse_error("").message() == "unexpected end of input");
    CHECK(parse_error("x y").column() == 3);
}

TEST_CASE("parse and print round-trip over the golden corpus") {
    std::size_t n = 0;
    for (const auto& path : golden_files()) {
        Json j = Json::parse(slurp(path));
        std::vector<std::string> exprs;
        for (const auto& f : j.at("f")) exprs.push_back(f.get<std::string>());
        if (j.contains("phi")) exprs.push_back(j["phi"].get<std::string>());
        for (const auto& e : exprs) {
            RatFun r = parse_expr(e);
            CHECK(parse_expr(print_expr(r)) == r);
            ++n;
        }
    }
    CHECK(n >= 10);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        BiPoly d = random_poly(rng);
        if (d.is_zero()) continue;
        RatFun r = RatFun::reduce(random_poly(rng), d);
        CHECK(parse_expr(print_expr(r)) == r);
    }
}

TEST_CASE("json round-trip of points and verdicts") {
    std::vector<BiPoly> sys{X * X - BiPoly(2), Y - X};
    std::vector<AlgebraicPoint> pts = common_real_zeros(sys);
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
        Json j = Json::parse(to_json(p).dump());
        CHECK(same_point(point_from_json(j), p));
        CHECK(j.contains("minpoly"));
        CHECK(j.contains("box"));
        CHECK(j.contains("approx"));
    }
    AlgebraicPoint q(frac(1, 3), frac(-2, 7));
    CHECK(same_point(point_from_json(to_json(q)), q));

    ProbeConfig cfg;
    LimitVerdict v = limit_test(RatFun::reduce(X * X * X, R2), AlgebraicPoint(0, 0), cfg);
    LimitVerdict back = verdict_from_json(Json::parse(to_json(v).dump()));
    REQUIRE(back.witness.size() == v.witness.size());
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
        CHECK(back.witness[i].dx == v.witness[i].dx);
        CHECK(back.witness[i].value.lo() == v.witness[i].value.lo());
    }
    CHECK(interval_from_json(to_json(Interval::entire())).hi() == INFINITY);
    CHECK(to_json(frac(-3, 4)) == "-3/4");
}

TEST_CASE("run examples") {
    Json s = run_json("solve", golden("power_pair.json"));
    CHECK(run("solve", golden("power_pair.json"), {}).code == kExitPass);
    CHECK(s["status"] == "solved");
    CHECK(s["schema"] == 1);
    CHECK(s["solution"]["phi"][0]["expr"] == "x^5*y^2/(x^6+y^6)");
    CHECK(s["solution"]["phi"][1]["expr"] == "x^2*y^5/(x^6+y^6)");
    CHECK(s["solution"]["phi"][0]["extensions"][0]["value"] == "0");

    RunResult f = run("check-pt", golden("diagonal_failure.json"), {});
    CHECK(f.code == kExitFail);
    Json fj = Json::parse(f.out);
    CHECK(fj["status"] == "fail");
    CHECK(fj["report"]["per_point"][0]["result"]["witness"]["kind"] == "Unbounded");

    RunResult a = run("analyze", golden("cubic_over_r2.json"), {});
    CHECK(a.code == kExitPass);
    Json aj = Json::parse(a.out);
    REQUIRE(aj["functions"][0]["P"].size() == 1);
    CHECK(same_point(point_from_json(aj["functions"][0]["P"][0]), AlgebraicPoint(0, 0)));
    CHECK(aj["functions"][0]["function"]["extensions"][0]["value"] == "0");

    CHECK(run("analyze", golden("bounded_no_limit.json"), {}).code == kExitFail);
    CHECK(run("solve", golden("common_factor.json"), {}).code == kExitPass);
}

TEST_CASE("run input errors exit with 3") {
    auto code = [](std::string_view cmd, std::string_view text) { return run(cmd, text, {}).code; };
    CHECK(code("solve", "{") == kExitInput);
    CHECK(code("solve", R"({"f": []})") == kExitInput);
    CHECK(code("solve", R"({"f": ["x"]})") == kExitInput);
    CHECK(code("solve", R"({"f": ["x"], "phi": "1/0"})") == kExitInput);
    CHECK(code("solve", R"({"f": ["x"], "phi": "x", "options": {"rho": "2"}})") == kExitInput);
    CHECK(code("solve", R"({"f": ["x"], "phi": "x", "options": {"colour": 1}})") == kExitInput);
    CHECK(code("frobnicate", R"({"f": ["x"], "phi": "x"})") == kExitInput);
    CHECK(code("verify", R"({"f": ["x"], "phi": "x"})") == kExitInput);

    RunResult r = run("solve", R"({"f": ["x +", "y"], "phi": "x"})", {});
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("f[0]: 1:4:") != std::string::npos);
}

TEST_CASE("run output is deterministic and honours the seed order") {
    for (const auto& path : golden_files()) {
        std::string text = slurp(path);
        for (const char* cmd : {"analyze", "check-pt", "solve"}) {
            RunResult a = run(cmd, text, {}), b = run(cmd, text, {});
            CHECK(a.code == b.code);
            CHECK(a.out == b.out);
        }
    }
    std::string file = golden("power_pair.json");
    RunOptions env;
    env.env_seed = 5;
    CHECK(run_json("check-pt", file, env)["config"]["seed"] == 5);
    RunOptions flag = env;
    flag.seed = 9;
    CHECK(run_json("check-pt", file, flag)["config"]["seed"] == 9);
    std::string with_seed = R"({"f": ["x^3", "y^3"], "phi": "x^2*y^2", "options": {"seed": 7}})";
    CHECK(run_json("check-pt", with_seed, env)["config"]["seed"] == 7);
    CHECK(run_json("check-pt", with_seed, flag)["config"]["seed"] == 9);

    RunOptions text;
    text.text = true;
    RunResult t = run("solve", file, text);
    CHECK(t.out.find("phi_1 = x^5*y^2/(x^6+y^6)") != std::string::npos);
    CHECK(t.out.find("phi_1(0, 0) = 0") != std::string::npos);
}

TEST_CASE("verify re-checks stored output and catches tampering") {
    for (const char* name : {"power_pair.json", "two_points.json", "irrational_points.json", "diagonal_failure.json"}) {
        RunResult s = run("solve", golden(name), {});
        RunResult v = run("verify", s.out, {});
        CHECK_MESSAGE(v.code == kExitPass, name);
    }

    Json stored = run_json("solve", golden("power_pair.json"));

    Json perturbed = stored;
    perturbed["solution"]["phi"][0]["expr"] = "x^5*y^2/(x^6+y^6)+x";
    CHECK(run("verify", perturbed.dump(), {}).code == kExitFail);

    Json wrong_value = stored;
    wrong_value["solution"]["phi"][0]["extensions"][0]["value"] = "1";
    wrong_value["solution"]["phi"][0]["extensions"][0]["interval"] = {1.0, 1.0};
    CHECK(run("verify", wrong_value.dump(), {}).code == kExitFail);

    Json dropped = stored;
    dropped["solution"]["phi"][0]["extensions"] = Json::array();
    CHECK(run("verify", dropped.dump(), {}).code == kExitFail);

    Json shrunk = stored;
    shrunk["solution"]["pole_bound_points"] = Json::array();
    CHECK(run("verify", shrunk.dump(), {}).code == kExitFail);

    Json failure = run_json("solve", golden("diagonal_failure.json"));
    for (auto& s : failure["report"]["per_point"][0]["result"]["witness"]["witness"]) s["value"] = {1.0, 1.0};
    CHECK(run("verify", failure.dump(), {}).code == kExitFail);
}

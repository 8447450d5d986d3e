#pragma once

// JSON schema 1. Rationals are strings "p/q", polynomials and quotients are
// expression strings, algebraic points are {minpoly, shear, y_of_u, box,
// approx}. Doubles that are not finite are written as the strings "inf",
// "-inf" and "nan". Keys keep insertion order, so output is byte-stable.

#include "rsolve/verifier.hpp"

#include <json.hpp>

namespace rsolve {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

Json to_json(const Rational& q);
Json to_json(const Interval& v);
Json to_json(const AlgebraicPoint& p);
Json to_json(const CRFun& f);
Json to_json(const LimitVerdict& v);
Json to_json(const PTReport& r);
Json to_json(const ProbeConfig& cfg);
Json to_json(const Solution& s);
Json to_json(const Certificate& c);

Rational rational_from_json(const Json& j);
Interval interval_from_json(const Json& j);
AlgebraicPoint point_from_json(const Json& j);
CRFun crfun_from_json(const Json& j);
LimitVerdict verdict_from_json(const Json& j);
PTReport report_from_json(const Json& j);
/// Starts from base and overrides every field present in j.
ProbeConfig config_from_json(const Json& j, ProbeConfig base = {});
/// The fields the verifier reads: phi_i, mode, the pole bound, the glue data
/// and the factored system.
Solution solution_from_json(const Json& j);

SolveMode solve_mode_from_string(std::string_view s);
const char* to_string(SolveMode m);

}  // namespace rsolve

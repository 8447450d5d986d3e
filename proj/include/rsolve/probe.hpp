#pragma once

// Sampling probes for limits and local boundedness of rational functions at
// a point, plus an exact limit certificate for rational points.
//
// A probe evaluates the function with interval arithmetic on K equally spaced
// angles of the circles of radius r0 * rho^k, k = 0..k_max, around the point.

#include "rsolve/algebraic.hpp"
#include "rsolve/interval.hpp"
#include "rsolve/ratfun.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rsolve {

enum class SolveMode { Exact, Numeric, Auto };

struct ProbeConfig {
    double tol = 1e-8;
    Rational r0 = frac(1, 2);
    Rational rho = frac(1, 4);
    int k_max = 12;
    int angles = 64;
    double growth_factor = 3.0;
    int n_max = 20;
    std::uint64_t seed = 0;
    SolveMode mode = SolveMode::Auto;
    bool allow_downgrade = false;

    /// Throws Error when a field is out of range.
    void validate() const;
};

enum class LimitKind { Limit, BoundedNoLimit, Unbounded, Unknown };

const char* to_string(LimitKind kind);

/// One probe evaluation at center + (dx, dy).
struct ProbeSample {
    double radius = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    Interval value;
};

/// Per-radius extrema: rigorous bounds on max |R| over the angles, and the
/// spread (max - min) of the interval midpoints.
struct RadiusStat {
    double radius = 0.0;
    double max_abs_lo = 0.0;
    double max_abs_hi = 0.0;
    double spread = 0.0;
};

struct LimitVerdict {
    LimitKind kind = LimitKind::Unknown;
    Interval value;  // meaningful for Limit
    Rational center_x, center_y;
    std::vector<RadiusStat> trail;
    /// Sample of largest |R| on every probed radius, smallest radius last.
    std::vector<ProbeSample> witness;
    std::string note;
};

/// Factor of a product probed as one function.
struct ProbeFactor {
    RatFun f;
    unsigned power = 1;
};

LimitVerdict limit_test(const RatFun& r, const AlgebraicPoint& p, const ProbeConfig& cfg);

/// Probes the product of the factors without forming it symbolically.
LimitVerdict limit_test(std::span<const ProbeFactor> product, const AlgebraicPoint& p, const ProbeConfig& cfg);

enum class Boundedness { Yes, No, Unknown };

const char* to_string(Boundedness b);

Boundedness locally_bounded(const RatFun& r, const AlgebraicPoint& p, const ProbeConfig& cfg);

/// Exact limit of r at the rational point (x, y), when it can be certified
/// from weighted initial forms: the denominator's initial form must be
/// definite and the numerator must not be of lower weighted order.
std::optional<Rational> exact_limit(const RatFun& r, const Rational& x, const Rational& y);

}  // namespace rsolve

#pragma once

// The pointwise test for phi against f_1..f_r.
//
// The system is first reduced globally: with h the product of the distinct
// denominators of the f_i, h*f_i = g*g_i where g is the gcd of the cleared
// numerators, and phi becomes psi = h*phi/g. Only the finitely many common
// real zeros of the g_i (special points) need constants c.

#include "rsolve/crfun.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rsolve {

struct FactoredSystem {
    BiPoly h;
    BiPoly g;
    std::vector<BiPoly> g_list;
    std::vector<AlgebraicPoint> special_points;
};

/// Throws Error("degenerate system") when every f_i is zero.
FactoredSystem factor_common(std::span<const CRFun> f, std::uint64_t seed = 0);

/// psi = h*phi/g, certified continuous.
CertifyResult divide_out(const CRFun& phi, const FactoredSystem& fs, const ProbeConfig& cfg);

enum class PTVerdict { Pass, Fail, Inconclusive };

const char* to_string(PTVerdict v);

struct ConstantsResult {
    PTVerdict verdict = PTVerdict::Inconclusive;
    std::vector<Rational> c;
    /// c holds rounded floating values rather than reconstructed rationals.
    bool numeric = false;
    /// Every B_i was shown to tend to 0 exactly (rational point, rational c).
    bool exact = false;
    std::vector<LimitVerdict> b_verdicts;
    /// Failure evidence and the index i of the function it belongs to.
    std::optional<LimitVerdict> witness;
    int witness_index = -1;
    std::string note;
};

/// Searches constants c with (psi - sum c_j g_j) g_i / sum g_j^2 -> 0 at p.
ConstantsResult find_constants(const CRFun& psi, const FactoredSystem& fs, const AlgebraicPoint& p,
                               const ProbeConfig& cfg);

/// B_i = (psi - sum c_j g_j) g_i / sum g_j^2 as reduced rational functions.
std::vector<RatFun> remainder_functions(const RatFun& psi, std::span<const BiPoly> g_list, std::span<const Rational> c);

struct PointRecord {
    AlgebraicPoint point;
    bool special = true;  // false for indeterminacy points of the inputs
    ConstantsResult result;
};

struct PTReport {
    PTVerdict verdict = PTVerdict::Inconclusive;
    std::optional<FactoredSystem> system;
    std::optional<CRFun> psi;
    /// h*phi/g as a reduced quotient, kept when its certification fails.
    std::optional<RatFun> quotient;
    std::optional<FailureReport> psi_failure;
    std::vector<PointRecord> per_point;
    std::string reason;
};

PTReport check_pt(std::span<const CRFun> f, const CRFun& phi, const ProbeConfig& cfg);

}  // namespace rsolve

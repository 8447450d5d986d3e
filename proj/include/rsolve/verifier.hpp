#pragma once

// Independent re-checks of solver output: the identity sum phi_i f_i = phi,
// continuity of each phi_i at its extension points, the bound on the
// indeterminacy points, and growth of a failure witness.

#include "rsolve/solver.hpp"

#include <string>
#include <vector>

namespace rsolve {

enum class CertKind { ExactIdentity, NumericResidual, ContinuityAtPoint, PoleBound, UnboundedWitness };

const char* to_string(CertKind k);

struct Certificate {
    CertKind kind = CertKind::ExactIdentity;
    bool passed = false;
    /// Set when the check could not decide (a probe returned Unknown).
    bool inconclusive = false;
    std::string detail;

    /// ExactIdentity: the cleared numerator of sum phi_i f_i - phi.
    BiPoly residual;
    /// NumericResidual: largest |sum phi_i f_i - phi| over the samples.
    double max_residual = 0.0;
    std::size_t samples = 0;

    /// ContinuityAtPoint: phi_index, the point, the stored and probed values.
    int phi_index = -1;
    std::optional<AlgebraicPoint> point;
    Interval stored;
    std::optional<LimitVerdict> probe;

    /// PoleBound: indeterminacy points of the phi_i, the recorded bound, and
    /// points of either list outside Z(f) u P(f_1) u ... u P(f_r) u P(phi).
    std::vector<AlgebraicPoint> claimed, bound, outside;

    /// UnboundedWitness: re-evaluated |R| per radius and consecutive ratios.
    std::vector<double> radii, magnitudes, ratios;
};

/// Exact mode: the residual polynomial must be zero. Numeric mode: exact
/// evaluation at 1000 seeded rational samples off every denominator's zeros,
/// residual at most cfg.tol.
Certificate verify_identity(const Solution& sol, std::span<const CRFun> f, const CRFun& phi, const ProbeConfig& cfg);

/// One certificate per extension point, plus one per phi_i whose denominator
/// has a real zero without a stored extension.
std::vector<Certificate> verify_continuity(const Solution& sol, const ProbeConfig& cfg);

Certificate verify_pole_bound(const Solution& sol, std::span<const CRFun> f, const CRFun& phi);

/// Rebuilds the probed function from the report, re-evaluates the stored
/// samples and requires growth by cfg.growth_factor over at least 3 radii
/// converging to the failing point. A bounded witness is re-probed instead.
Certificate confirm_witness(const PTFailure& failure, const ProbeConfig& cfg);

}  // namespace rsolve

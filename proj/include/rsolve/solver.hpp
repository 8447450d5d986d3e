#pragma once

// Continuous rational solutions of phi = phi_1 f_1 + ... + phi_r f_r.
//
// Local solutions are built at each cluster of conjugate special points and
// glued with chart polynomials psi_j into phi_i = sum_j psi_j^(2N) beta_ij / b,
// b = sum_j psi_j^(2N).

#include "rsolve/ptchecker.hpp"

#include <string>
#include <variant>
#include <vector>

namespace rsolve {

struct LocalSolution {
    /// The cluster: special points sharing one minimal polynomial.
    std::vector<AlgebraicPoint> points;
    /// Constants found at each point of the cluster.
    std::vector<std::vector<Rational>> c;
    /// Polynomials C_i with C_i(p) = c_i at every point p of the cluster.
    std::vector<BiPoly> c_poly;
    /// beta_i = C_i + (psi - sum C_j g_j) g_i / sum g_j^2.
    std::vector<RatFun> beta;
    /// Special points outside the cluster, where beta may be discontinuous.
    std::vector<AlgebraicPoint> valid_on;
    bool numeric = false;
};

/// Groups points by shared shear, minimal polynomial and y-coordinate map.
std::vector<std::vector<std::size_t>> point_clusters(std::span<const AlgebraicPoint> points);

/// The constants are interpolated over the cluster in the sheared coordinate.
/// Throws Error if sum beta_i g_i != psi.
LocalSolution local_solution(const CRFun& psi, const FactoredSystem& fs, std::span<const AlgebraicPoint> cluster,
                             std::span<const std::vector<Rational>> c, bool numeric);

/// One chart polynomial per cluster: the product of the other clusters'
/// sums of squares, which vanish exactly on their cluster. A single cluster
/// gives psi_1 = 1. Throws Error if the vanishing sets cannot be certified.
std::vector<BiPoly> chart_polys(std::span<const AlgebraicPoint> points);

/// Least N <= cfg.n_max such that psi^N f tends to 0 at every zero.
/// Throws Error("exponent search exhausted") otherwise.
unsigned lojasiewicz_exponent(const BiPoly& psi, const RatFun& f, std::span<const AlgebraicPoint> zeros,
                              const ProbeConfig& cfg);

struct GlueData {
    unsigned N = 1;
    std::vector<BiPoly> psi_j;
    /// a[i][j] = psi_j^N beta_ij.
    std::vector<std::vector<RatFun>> a_ij;
    BiPoly b;
    std::vector<RatFun> b_i;
};

GlueData glue(std::span<const LocalSolution> locals, std::span<const AlgebraicPoint> points, const ProbeConfig& cfg);

enum class SolutionMode { Exact, Numeric };

const char* to_string(SolutionMode m);

struct Solution {
    std::vector<CRFun> phi_i;
    GlueData glue;
    SolutionMode mode = SolutionMode::Exact;
    /// Special points together with the indeterminacy points of the inputs.
    std::vector<AlgebraicPoint> pole_bound_points;
    std::vector<LocalSolution> locals;
    PTReport report;
};

struct PTFailure {
    PTReport report;
};

struct SolveInconclusive {
    std::string reason;
    PTReport report;
};

using SolveResult = std::variant<Solution, PTFailure, SolveInconclusive>;

SolveResult solve(std::span<const CRFun> f, const CRFun& phi, const ProbeConfig& cfg);

}  // namespace rsolve

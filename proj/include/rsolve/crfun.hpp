#pragma once

// Continuous rational functions: a reduced quotient together with its values
// at the finitely many real zeros of the denominator.

#include "rsolve/probe.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rsolve {

enum class CertStatus { CertifiedExact, CertifiedNumeric, Claimed };

const char* to_string(CertStatus s);

struct Extension {
    AlgebraicPoint point;
    std::optional<Rational> exact;  // set when the limit is certified exactly
    Interval value;
};

class CRFun {
public:
    CRFun() = default;
    /// A polynomial (no extension points, exact).
    CRFun(const BiPoly& p);  // NOLINT
    CRFun(RatFun r, std::vector<Extension> extensions, CertStatus status);

    const RatFun& ratfun() const { return r_; }
    const std::vector<Extension>& extensions() const { return ext_; }
    CertStatus status() const { return status_; }

    /// Value at a point: the stored extension, or the quotient elsewhere.
    /// The interval encloses the value; exact is set when it is known exactly.
    std::pair<std::optional<Rational>, Interval> value_at(const AlgebraicPoint& p) const;

private:
    RatFun r_;
    std::vector<Extension> ext_;
    CertStatus status_ = CertStatus::CertifiedExact;
};

struct FailureReport {
    enum class Verdict { Fail, Inconclusive };
    Verdict verdict = Verdict::Fail;
    std::string reason;
    std::optional<AlgebraicPoint> point;
    LimitVerdict evidence;
};

using CertifyResult = std::variant<CRFun, FailureReport>;

/// Decides whether r extends continuously to the plane. The real zero set of
/// the denominator must be finite (a curve of poles fails), and r must have a
/// limit at each of its points.
CertifyResult certify_continuous(const RatFun& r, const ProbeConfig& cfg);

/// True when the real zero set of the square-free polynomial u is infinite.
/// Exact: decided by vertical lines in the content and by root counts of
/// u(a, y) at sample abscissae between the critical values.
bool zero_set_is_curve(const BiPoly& u);

/// The indeterminacy set: the extension points.
std::vector<AlgebraicPoint> p_set(const CRFun& f);

enum class CrfOp { Add, Mul };

/// Combined and reduced; the new extension points are the inputs' extension
/// points at which the combined denominator still vanishes.
CRFun crf_arith(const CRFun& a, const CRFun& b, CrfOp op);

}  // namespace rsolve

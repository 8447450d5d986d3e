#pragma once

// The rsolve commands over a problem file:
//   {"f": ["x^3", "y^3"], "phi": "x^2*y^2", "options": {...}}
// check-pt, solve and analyze read a problem file; verify reads the output
// of solve. Exit codes: 0 pass/solved/verified, 1 fail, 2 inconclusive,
// 3 input error.

#include "rsolve/probe.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rsolve {

struct RunOptions {
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    /// Used when neither the flags nor the file set a seed.
    std::optional<std::uint64_t> env_seed;
    std::optional<SolveMode> mode;
    std::optional<int> max_exponent;
    bool text = false;
};

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

inline constexpr int kExitPass = 0, kExitFail = 1, kExitInconclusive = 2, kExitInput = 3;

RunResult run(std::string_view command, std::string_view file_text, const RunOptions& opts);

}  // namespace rsolve

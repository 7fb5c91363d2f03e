#pragma once

#include <cstdint>
#include <vector>

#include "bfl/rational.hpp"

namespace bfl {

// maximize c.z  subject to  A z = b,  z >= 0,  with b >= 0.
struct LinearProgram {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<long long>> A;  // rows x cols
    std::vector<long long> b;
    std::vector<long long> c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational objective;
    std::vector<Rational> primal;  // z
    std::vector<Rational> dual;    // y with A^T y >= c and b.y = objective
    std::uint64_t pivots = 0;
};

struct LpOptions {
    std::uint64_t max_pivots = 2000000;
};

// Two-phase dense-tableau simplex over exact rationals with Bland's rule.
// Values that do not fit 128-bit rationals raise OverflowError.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts = {});

}  // namespace bfl

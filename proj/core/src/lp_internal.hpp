#pragma once

#include <gmpxx.h>

#include <vector>

#include "bfl/lp.hpp"

namespace bfl::detail {

struct MpqLpResult {
    LpStatus status = LpStatus::Infeasible;
    mpq_class objective;
    std::vector<mpq_class> primal;
    std::vector<mpq_class> dual;
    std::uint64_t pivots = 0;
};

MpqLpResult solve_lp_mpq(const LinearProgram& lp, const LpOptions& opts);

Rational to_rational(const mpq_class& q);
mpq_class to_mpq(const Rational& r);

}  // namespace bfl::detail

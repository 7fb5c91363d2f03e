#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bfl/boolfn.hpp"
#include "bfl/parallel.hpp"
#include "bfl/poly.hpp"

namespace bfl {

// Exact multilinear interpolation of f over the 0/1 monomials (n <= 16).
MultilinearPoly moebius_polynomial(const BooleanFunction& f);

// Size limits for the PTF linear program.
inline constexpr int kMaxPtfArity = 10;
inline constexpr std::size_t kMaxPtfMonomials = 176;

struct PtfDegreeResult {
    bool feasible = false;
    // Integer monomial coefficients with sgn(Q(x)) = f(x) at every point.
    std::optional<MultilinearPoly> witness;
    // Weights y >= 0 on points with sum_x y_x s_x [S subset x] = 0 for all
    // |S| <= k and positive mass on f^{-1}(1); filled when infeasible.
    std::vector<Rational> certificate;
    Rational lp_value;
    std::uint64_t pivots = 0;
};

PtfDegreeResult ptf_degree_at_most(const BooleanFunction& f, int k);

// sgn(Q(x)) = f(x) on every point, with sgn(v) = 1 iff v > 0.
bool verify_sign_witness(const BooleanFunction& f, const MultilinearPoly& q);
bool verify_farkas_certificate(const BooleanFunction& f, int k, const std::vector<Rational>& y);

// Substitutes x_i = p + sqrt(p(1-p)) chi_i and scales so that the
// non-constant coefficients have unit sum of squares.
MultilinearPoly to_sign_representation(const MultilinearPoly& q, double p);

struct RegularityProfile {
    double eps = 0.0;
    std::vector<int> order;      // 0-based coordinate at each rank
    std::vector<double> w2;      // descending
    std::vector<double> sigma2;  // sigma2[i] = sum_{j >= i} w2[j]
    double sum_w4 = 0.0;
    bool regular = false;
    int critical_index = 0;
    int degree = 0;
    double max_w2 = 0.0;
    // max w_i^2 <= eps * degree; only meaningful when regular.
    bool small_influence_claim = true;
    // sigma_{i+1}^2 < (1 - eps^2) sigma_i^2 for 1 <= i < K (1-based).
    bool sigma_recursion = true;
};

// Requires a normalized polynomial.
RegularityProfile regularity_profile(const MultilinearPoly& q, double eps);

// Fixes the first m variables to the given values (chi-values in the
// character basis) and re-indexes the rest from 0.
MultilinearPoly restrict_poly(const MultilinearPoly& q, int m, const std::vector<double>& xbar);

struct Determination {
    bool determined = false;
    double prob_positive = 0.0;
};

// Exact mu_p enumeration of Pr[Q > 0] (n <= 16).  Variables of a character
// basis polynomial receive chi^{(p)} values.
Determination is_determined(const MultilinearPoly& q, double eps, double p);

struct JuntaResult {
    std::vector<int> coords;  // 0-based, increasing
    BooleanFunction junta;    // bit j of its input is coords[j]
    double error = 0.0;       // Pr_{mu_p}[f != junta]
};

// Exhaustive search over coordinate sets of size min(j, n) with majority
// completion (n <= 12, j <= 4).
JuntaResult best_junta(const BooleanFunction& f, int j, double p);

struct RestrictionExperiment {
    std::uint64_t trials = 0;
    std::uint64_t regular = 0;
    std::uint64_t determined = 0;
    std::uint64_t constant = 0;  // restrictions with no non-constant part
    double regular_rate() const { return trials ? double(regular) / double(trials) : 0.0; }
    double determined_rate() const { return trials ? double(determined) / double(trials) : 0.0; }
};

// Samples the first m variables from the chi-distribution, restricts, and
// counts eps-regular and eps-determined restrictions.
RestrictionExperiment restriction_experiment(const MultilinearPoly& q, int m, double eps,
                                             std::uint64_t trials, std::uint64_t seed);

// Random normalized character-basis polynomial of degree <= k; each
// coefficient is kept with probability `density` and drawn from N(0,1).
MultilinearPoly random_normalized_poly(int n, int k, double p, Rng& rng, double density = 1.0);

// Slot for an adversarial quadratic threshold function of arity n. No
// construction is known to this library, so it always returns nullopt.
std::optional<MultilinearPoly> adversary_quadratic_fixture(int n);

}  // namespace bfl

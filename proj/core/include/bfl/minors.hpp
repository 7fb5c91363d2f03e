#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bfl/boolfn.hpp"
#include "bfl/dist.hpp"
#include "bfl/parallel.hpp"

namespace bfl {

// Number of 2-to-1 maps [2n] -> [n], i.e. (2n)!/2^n.
std::uint64_t count_two_to_one(int n);

// Uniform 2-to-1 map: a uniform permutation of [2n] whose positions 2j, 2j+1
// are sent to target j.
MinorMap random_two_to_one(int n, Rng& rng);
MinorMap random_two_to_one(int n, std::uint64_t seed);

// Visits every 2-to-1 map [2n] -> [n] exactly once, in lexicographic order of
// images.  n <= 5.
void for_each_two_to_one(int n, const std::function<void(const MinorMap&)>& visit);
std::vector<MinorMap> enumerate_two_to_one(int n);

enum class Mode { Exact, MonteCarlo };

struct Estimate {
    double estimate = 0;
    double half_width = 0;  // 95% normal approximation; 0 for exact values
    std::uint64_t samples = 0;
};

// 1.96 * sqrt(p(1-p)/N).
double binomial_half_width(double p, std::uint64_t samples);

struct PreservationOptions {
    Mode mode = Mode::Exact;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    // Also draw pi as pi1 o pi0 (first identify i with a random j, then pair
    // the rest) and record Inf[f^pi0, merged coordinate].
    bool two_step = false;
};

struct PreservationReport {
    Mode mode = Mode::Exact;
    double estimate = 0;
    double half_width = 0;
    std::uint64_t samples = 0;  // maps enumerated or drawn
    std::uint64_t seed = 0;
    // Exact mode: Inf[f^pi, pi(i)] for every map, in enumeration order.
    std::vector<double> minor_influences;
    // Two-step mode: intermediate influences Inf[f^pi0, merged], one per j
    // (exact) or per sample (Monte Carlo).
    std::vector<double> intermediate_influences;
    // Two-step exact mode: the preservation probability recomputed through
    // the decomposition; equals `estimate` up to rounding.
    std::optional<double> two_step_estimate;
};

// Pr_pi[ Inf_Omega[f^pi, pi(i)] >= tau ] for a uniform 2-to-1 map pi.
// i is 0-based; arity(f) must be even.  Exact mode needs arity <= 10.
PreservationReport preservation_probability(const BooleanFunction& f, int i, const Distribution& d,
                                            double tau, const PreservationOptions& opts = {});

// The map pi0 : [2n] -> [2n-1] identifying i with j.  Other coordinates keep
// their relative order; the merged pair becomes the last coordinate.
MinorMap identification_map(int arity, int i, int j);

// h(x) = [g(x0) != g(x1)] where the last coordinate of g is distinguished.
BooleanFunction derivative_indicator(const BooleanFunction& g);

// E_{z ~ pullback(Omega)_{2n}}[h(z)].
double pullback_expectation(const BooleanFunction& h, const Distribution& inner, Mode mode);
Rational exact_pullback_expectation(const BooleanFunction& h, const Distribution& inner, Mode mode);

using Selector = std::function<Mask(const BooleanFunction&)>;

// {i : Inf_Omega[f, i] >= delta}.
Mask sel_influential(const BooleanFunction& f, const Distribution& d, double delta);
// {i : measure{p : Inf^(p)[f,i] >= tau} >= tau/(2 eps)}, the measure taken as
// the trapezoidal integral of the indicator over the sorted grid.
Mask sel_ordered(const BooleanFunction& f, double tau, double eps, const std::vector<double>& p_grid);

Selector influential_selector(const Distribution& d, double delta);
Selector ordered_selector(double tau, double eps, std::vector<double> p_grid);

// Pr_pi[ pi(Sel(f)) intersects Sel(f^pi) ].
Estimate condition_intersection_rate(const BooleanFunction& f, const Selector& sel,
                                     std::uint64_t samples, std::uint64_t seed);
std::vector<Estimate> condition_intersection_rates(const std::vector<BooleanFunction>& fs,
                                                   const Selector& sel, std::uint64_t samples,
                                                   std::uint64_t seed);
// Exhaustive over all maps; arity <= 10.
double condition_intersection_exact(const BooleanFunction& f, const Selector& sel);

// Random minor of a unate f onto w + h coordinates: increasing (and
// non-essential) coordinates go uniformly to [0, w), decreasing ones
// uniformly to [w, w + h).
MinorMap random_split_map(const BooleanFunction& f, int w, int h, Rng& rng);
BooleanFunction random_split_minor(const BooleanFunction& f, int w, int h, std::uint64_t seed);

}  // namespace bfl

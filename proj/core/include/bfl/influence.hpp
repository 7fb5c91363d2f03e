#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bfl/boolfn.hpp"
#include "bfl/dist.hpp"
#include "bfl/rational.hpp"

namespace bfl {

// Slack used when comparing computed influences against thresholds.
inline constexpr double kInfluenceSlack = 1e-12;

// Inf_Omega[f, i] = Omega(Piv(i)); i is 0-based.
double influence(const BooleanFunction& f, int i, const Distribution& d);
double total_influence(const BooleanFunction& f, const Distribution& d);
// All coordinates at once, sharing one mass table.
std::vector<double> influences(const BooleanFunction& f, const Distribution& d);
// Same, against a precomputed mass table of the right dimension.
double influence_with_masses(const BooleanFunction& f, int i, const std::vector<double>& masses);
Rational exact_influence(const BooleanFunction& f, int i, const Distribution& d);

// Number of pivotal points of coordinate i in each weight layer; the p-biased
// influence is sum_k counts[k] p^k (1-p)^(n-k), valid on all of [0, 1].
std::vector<std::uint64_t> pivotal_layer_counts(const BooleanFunction& f, int i);
// Number of points of f^{-1}(1) in each weight layer.
std::vector<std::uint64_t> ones_layer_counts(const BooleanFunction& f);
// sum_k counts[k] p^k (1-p)^(n-k) with 0^0 = 1.
double layer_polynomial(const std::vector<std::uint64_t>& counts, double p);

// Exact Shapley value as the Shapley measure of the pivotal set.
Rational shapley_influence_exact(const BooleanFunction& f, int i);
// Same value through the Beta integral: sum over pivotal x of
// B(|x|+1, n-|x|+1) = |x|!(n-|x|)!/(n+1)!.
Rational owen_integral_exact(const BooleanFunction& f, int i);
// Float fallback for arities beyond the exact range.
double shapley_influence(const BooleanFunction& f, int i);

// Gauss-Legendre nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(int points);
// |quadrature of p -> Inf^(p)[f,i] over [0,1] - exact Shapley value|.
double owen_residual(const BooleanFunction& f, int i, int points = 64);

// |(E_{p+h} - E_{p-h})/(2h) - I^(p)[f]| for increasing f, evaluated in exact
// rational arithmetic at the given double p and h.
double margulis_russo_residual(const BooleanFunction& f, double p, double h);

// E_{p,q}: increasing and non-essential coordinates get bias p, the others q.
class PQExpectation {
public:
    explicit PQExpectation(const BooleanFunction& f);
    double operator()(double p, double q) const;
    int up_count() const { return up_; }
    int down_count() const { return down_; }

private:
    int up_ = 0, down_ = 0;
    std::vector<std::vector<std::uint64_t>> counts_;  // [up weight][down weight]
};

double expectation_pq(const BooleanFunction& f, double p, double q);
double influence_pq(const BooleanFunction& f, int i, double p, double q);
// First: |dE/dp - sum_{increasing i} Inf^(p,q)|; second: |-dE/dq - sum_{decreasing i} Inf^(p,q)|.
std::pair<double, double> pq_derivative_residuals(const BooleanFunction& f, double p, double q,
                                                  double h = 1e-4);
// Product bias vector used by the (p,q) operations.
std::vector<double> pq_bias(const BooleanFunction& f, double p, double q);

struct LevelPoint {
    double q = 0;
    double p = 0;
    bool ok = false;  // false when E_{.,q} - eps has no sign change on [0,1]
    int iterations = 0;
};

inline constexpr double kLevelTolerance = 1e-10;
inline constexpr int kLevelMaxIterations = 60;

std::vector<LevelPoint> level_curve(const BooleanFunction& f, double eps, const std::vector<double>& q_grid);

struct SqrtBoundReport {
    double p = 0;
    double total_influence = 0;
    double bound = 0;
    bool bound_ok = false;
    double max_identity_gap = 0;  // max_i |Inf_i - |fhat({i})|/sqrt(p(1-p))|
    bool identity_ok = false;
    std::vector<double> influences;
    std::vector<double> degree_one;  // |fhat({i})|
};

SqrtBoundReport unate_sqrt_bound_check(const BooleanFunction& f, double p);

// d/dp E_p[f], differentiating the layer polynomial symbolically.
Rational ep_derivative_exact(const BooleanFunction& f, const Rational& p);
double ep_derivative(const BooleanFunction& f, double p);

// (p, E_p[f]) on p = k/(points-1); endpoints included.
std::vector<std::pair<double, double>> ep_curve(const BooleanFunction& f, int points);

}  // namespace bfl

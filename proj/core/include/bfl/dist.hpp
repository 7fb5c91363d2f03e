#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bfl/bits.hpp"
#include "bfl/boolfn.hpp"
#include "bfl/rational.hpp"

namespace bfl {

class Distribution;

struct Biased {
    double p = 0.5;
    std::optional<Rational> exact_p;  // set when p was given as a rational
};
struct Shapley {};
// Symmetric distribution at one fixed dimension; layer_mass[k] is the
// total mass of the weight-k layer.
struct ExplicitSymmetric {
    int n = 0;
    std::vector<double> layer_mass;
    std::optional<std::vector<Rational>> exact_layer_mass;
};
struct Product {
    std::vector<double> r;  // r[i] = Pr[x_{i+1} = 1]
};
struct Pullback {
    std::shared_ptr<const Distribution> inner;
};

class Distribution {
public:
    using Variant = std::variant<Biased, Shapley, ExplicitSymmetric, Product, Pullback>;

    Distribution(Variant v);

    static Distribution biased(double p);
    static Distribution biased(const Rational& p);
    static Distribution shapley();
    static Distribution explicit_symmetric(std::vector<Rational> layer_mass);
    static Distribution explicit_symmetric(std::vector<double> layer_mass);
    static Distribution product(std::vector<double> r);
    static Distribution pullback(const Distribution& inner);

    const Variant& variant() const { return v_; }
    bool is_symmetric() const;
    // True when masses are available as exact rationals.
    bool has_exact() const;
    // Throws ValidationError when the family has no member of dimension n.
    void check_dimension(int n) const;
    std::string describe() const;

private:
    Variant v_;
};

// Mass of the single point x in dimension n.
double mass(const Distribution& d, int n, Tuple x);
Rational exact_mass(const Distribution& d, int n, Tuple x);

// Point mass of any weight-k tuple; symmetric families only.
double layer_point_mass(const Distribution& d, int n, int k);
Rational exact_layer_point_mass(const Distribution& d, int n, int k);

// Every point mass in dimension n, indexed by tuple.
std::vector<double> mass_table(const Distribution& d, int n);
std::vector<Rational> exact_mass_table(const Distribution& d, int n);

// C(n,k)/C(2n,2k): the probability that a uniform 2-to-1 map is consistent
// with a fixed tuple of weight 2k.
Rational consistency_probability(int n, int k);

// Closed form of the pull-back mass at dimension two_n for a symmetric inner
// family: Omega_n(k) * C(n,k)/C(2n,2k) when |z| = 2k, zero on odd weights.
double pullback_mass_closed(const Distribution& inner, int two_n, Tuple z);
Rational exact_pullback_mass_closed(const Distribution& inner, int two_n, Tuple z);

// Brute force over all (2n)!/2^n maps; two_n <= 10.  Works for any inner
// family, symmetric or not.
double pullback_mass_enumerated(const Distribution& inner, int two_n, Tuple z);
Rational exact_pullback_mass_enumerated(const Distribution& inner, int two_n, Tuple z);
// Whole enumerated pull-back table at dimension two_n.
std::vector<Rational> exact_pullback_table_enumerated(const Distribution& inner, int two_n);
std::vector<double> pullback_table_enumerated(const Distribution& inner, int two_n);

double expectation(const BooleanFunction& f, const Distribution& d);
Rational exact_expectation(const BooleanFunction& f, const Distribution& d);
// Measure of a set given by its indicator.
double set_measure(const BooleanFunction& indicator, const Distribution& d);
// Expectation of a real-valued table.
double expectation(const std::vector<double>& values, int n, const Distribution& d);

struct ReasonableParams {
    double eps = 0.05;
    double alpha = 0.0;
    double beta = 1.0;
    double lambda = 0.25;
    int N = 1;
};

struct ReasonableReport {
    int n = 0;
    ReasonableParams params;
    bool n_at_least_N = false;

    double band_mass = 0;  // (a)
    bool band_ok = false;

    double max_layer_mass = 0;  // (b) flatness
    int max_layer = 0;
    bool flat_ok = false;

    double min_smooth_ratio = 0, max_smooth_ratio = 0;  // (c) smoothness
    bool smooth_ok = false;

    double min_consistency_ratio = 0, max_consistency_ratio = 0;  // consistency
    bool consistency_ok = false;

    // (d) best admissible pull-back constant min_z Omega_2n(z)/pullback(z).
    double pullback_c = 0;
    std::optional<Rational> exact_pullback_c;
    // Reverse direction min_z pullback(z)/Omega_2n(z), the lower bound on the
    // pull-back measure of a set in terms of its Omega measure.
    double pullback_lower_c = 0;
    std::optional<Rational> exact_pullback_lower_c;

    bool all_ok() const { return band_ok && flat_ok && smooth_ok && consistency_ok; }
};

ReasonableReport check_reasonable(const Distribution& d, const ReasonableParams& params, int n);

struct GridSearchResult {
    bool found = false;
    ReasonableParams params;
    ReasonableReport report;
};

// Heuristic: scans a coarse (alpha, beta, lambda) grid for parameters that pass
// check_reasonable at dimension n, preferring the widest band and largest lambda.
GridSearchResult search_reasonable_params(const Distribution& d, double eps, int n, int steps = 20);

}  // namespace bfl

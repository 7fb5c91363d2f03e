#include "bfl/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bfl/error.hpp"
#include "bfl/minors.hpp"

namespace bfl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log_binom(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binom_double(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    double r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

Rational rational_pow(const Rational& base, int e) {
    Rational r(1);
    for (int j = 0; j < e; ++j) r *= base;
    return r;
}

const Distribution& inner_of(const Pullback& pb) {
    if (!pb.inner) throw ValidationError("pull-back distribution without inner family");
    return *pb.inner;
}

void check_even(int two_n) {
    if (two_n < 2 || two_n % 2 != 0)
        throw ValidationError("pull-back distributions are defined only at even dimensions (got " +
                              std::to_string(two_n) + ")");
}

void check_tuple(int n, Tuple x) {
    if (n < 1 || n > 62 || (x >> n) != 0)
        throw ValidationError("tuple index out of range for dimension " + std::to_string(n));
}

}  // namespace

Distribution::Distribution(Variant v) : v_(std::move(v)) {
    std::visit(overloaded{
                   [](const Biased& b) {
                       if (!(b.p > 0 && b.p < 1))
                           throw ValidationError("biased: p must lie in (0, 1)");
                   },
                   [](const Shapley&) {},
                   [](const ExplicitSymmetric& e) {
                       if (e.n < 1 || static_cast<int>(e.layer_mass.size()) != e.n + 1)
                           throw ValidationError("explicit symmetric: need n+1 layer masses");
                       double total = 0;
                       for (double m : e.layer_mass) {
                           if (m < 0) throw ValidationError("explicit symmetric: negative mass");
                           total += m;
                       }
                       if (std::abs(total - 1) > 1e-12)
                           throw ValidationError("explicit symmetric: masses do not sum to 1");
                   },
                   [](const Product& p) {
                       if (p.r.empty()) throw ValidationError("product: empty bias vector");
                       for (double r : p.r)
                           if (!(r >= 0 && r <= 1))
                               throw ValidationError("product: bias outside [0, 1]");
                   },
                   [](const Pullback& pb) { inner_of(pb); },
               },
               v_);
}

Distribution Distribution::biased(double p) { return Distribution(Biased{p, std::nullopt}); }

Distribution Distribution::biased(const Rational& p) {
    return Distribution(Biased{p.to_double(), p});
}

Distribution Distribution::shapley() { return Distribution(Shapley{}); }

Distribution Distribution::explicit_symmetric(std::vector<Rational> layer_mass) {
    Rational total(0);
    std::vector<double> d;
    for (const auto& m : layer_mass) {
        total += m;
        d.push_back(m.to_double());
    }
    if (total != Rational(1)) throw ValidationError("explicit symmetric: masses do not sum to 1");
    int n = static_cast<int>(layer_mass.size()) - 1;
    return Distribution(ExplicitSymmetric{n, std::move(d), std::move(layer_mass)});
}

Distribution Distribution::explicit_symmetric(std::vector<double> layer_mass) {
    int n = static_cast<int>(layer_mass.size()) - 1;
    return Distribution(ExplicitSymmetric{n, std::move(layer_mass), std::nullopt});
}

Distribution Distribution::product(std::vector<double> r) { return Distribution(Product{std::move(r)}); }

Distribution Distribution::pullback(const Distribution& inner) {
    return Distribution(Pullback{std::make_shared<const Distribution>(inner)});
}

bool Distribution::is_symmetric() const {
    return std::visit(overloaded{
                          [](const Biased&) { return true; },
                          [](const Shapley&) { return true; },
                          [](const ExplicitSymmetric&) { return true; },
                          [](const Product& p) {
                              return std::all_of(p.r.begin(), p.r.end(),
                                                 [&](double r) { return r == p.r.front(); });
                          },
                          [](const Pullback&) { return true; },
                      },
                      v_);
}

bool Distribution::has_exact() const {
    return std::visit(overloaded{
                          [](const Biased& b) { return b.exact_p.has_value(); },
                          [](const Shapley&) { return true; },
                          [](const ExplicitSymmetric& e) { return e.exact_layer_mass.has_value(); },
                          [](const Product&) { return false; },
                          [](const Pullback& pb) { return inner_of(pb).has_exact(); },
                      },
                      v_);
}

void Distribution::check_dimension(int n) const {
    if (n < 1) throw ValidationError("dimension must be positive");
    std::visit(overloaded{
                   [](const Biased&) {},
                   [](const Shapley&) {},
                   [n](const ExplicitSymmetric& e) {
                       if (n != e.n)
                           throw ValidationError("explicit symmetric distribution has dimension " +
                                                 std::to_string(e.n) + ", requested " +
                                                 std::to_string(n));
                   },
                   [n](const Product& p) {
                       if (n != static_cast<int>(p.r.size()))
                           throw ValidationError("product distribution has dimension " +
                                                 std::to_string(p.r.size()) + ", requested " +
                                                 std::to_string(n));
                   },
                   [n](const Pullback& pb) {
                       check_even(n);
                       inner_of(pb).check_dimension(n / 2);
                   },
               },
               v_);
}

std::string Distribution::describe() const {
    return std::visit(overloaded{
                          [](const Biased& b) {
                              std::ostringstream os;
                              if (b.exact_p)
                                  os << "biased(" << b.exact_p->str() << ")";
                              else {
                                  os.precision(17);
                                  os << "biased(" << b.p << ")";
                              }
                              return os.str();
                          },
                          [](const Shapley&) { return std::string("shapley"); },
                          [](const ExplicitSymmetric& e) {
                              return "explicit_symmetric(n=" + std::to_string(e.n) + ")";
                          },
                          [](const Product& p) {
                              return "product(n=" + std::to_string(p.r.size()) + ")";
                          },
                          [](const Pullback& pb) { return "pullback(" + inner_of(pb).describe() + ")"; },
                      },
                      v_);
}

// ---- symmetric point masses ------------------------------------------------

namespace {

double log_point_mass(const Distribution& d, int n, int k);

double log_point_mass(const Distribution& d, int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    d.check_dimension(n);
    return std::visit(
        overloaded{
            [&](const Biased& b) { return k * std::log(b.p) + (n - k) * std::log1p(-b.p); },
            [&](const Shapley&) { return -std::log(n + 1.0) - log_binom(n, k); },
            [&](const ExplicitSymmetric& e) { return std::log(e.layer_mass[k]) - log_binom(n, k); },
            [&](const Product& p) -> double {
                if (!d.is_symmetric())
                    throw ValidationError("layer masses need a symmetric distribution");
                double r = p.r.front();
                return k * std::log(r) + (n - k) * std::log1p(-r);
            },
            [&](const Pullback& pb) -> double {
                if (k % 2 != 0) return -std::numeric_limits<double>::infinity();
                const Distribution& in = inner_of(pb);
                if (!in.is_symmetric())
                    throw ValidationError("closed-form pull-back needs a symmetric inner family");
                int h = n / 2, j = k / 2;
                return log_point_mass(in, h, j) + log_binom(h, j) - log_binom(n, k);
            },
        },
        d.variant());
}

}  // namespace

double layer_point_mass(const Distribution& d, int n, int k) {
    if (!d.is_symmetric()) throw ValidationError("layer masses need a symmetric distribution");
    if (k < 0 || k > n) throw ValidationError("layer index outside [0, n]");
    d.check_dimension(n);
    return std::visit(
        overloaded{
            [&](const Biased& b) { return std::pow(b.p, k) * std::pow(1 - b.p, n - k); },
            [&](const Shapley&) { return 1.0 / ((n + 1.0) * binom_double(n, k)); },
            [&](const ExplicitSymmetric& e) { return e.layer_mass[k] / binom_double(n, k); },
            [&](const Product& p) {
                double r = p.r.front();
                return std::pow(r, k) * std::pow(1 - r, n - k);
            },
            [&](const Pullback& pb) -> double {
                if (k % 2 != 0) return 0.0;
                int h = n / 2, j = k / 2;
                return layer_point_mass(inner_of(pb), h, j) * binom_double(h, j) / binom_double(n, k);
            },
        },
        d.variant());
}

Rational exact_layer_point_mass(const Distribution& d, int n, int k) {
    if (!d.is_symmetric()) throw ValidationError("layer masses need a symmetric distribution");
    if (k < 0 || k > n) throw ValidationError("layer index outside [0, n]");
    d.check_dimension(n);
    return std::visit(
        overloaded{
            [&](const Biased& b) -> Rational {
                if (!b.exact_p) throw ValidationError("biased distribution given as a float has no exact masses");
                return rational_pow(*b.exact_p, k) * rational_pow(Rational(1) - *b.exact_p, n - k);
            },
            [&](const Shapley&) -> Rational {
                return Rational(1, checked_mul(n + 1, binom(n, k)));
            },
            [&](const ExplicitSymmetric& e) -> Rational {
                if (!e.exact_layer_mass) throw ValidationError("explicit distribution has no exact masses");
                return (*e.exact_layer_mass)[k] / Rational(binom(n, k));
            },
            [&](const Product&) -> Rational {
                throw ValidationError("product distributions have no exact masses");
            },
            [&](const Pullback& pb) -> Rational {
                return exact_pullback_mass_closed(inner_of(pb), n, full_mask(k));
            },
        },
        d.variant());
}

// ---- point masses -----------------------------------------------------------

double mass(const Distribution& d, int n, Tuple x) {
    check_tuple(n, x);
    d.check_dimension(n);
    if (const auto* p = std::get_if<Product>(&d.variant())) {
        double m = 1;
        for (int i = 0; i < n; ++i) m *= bit(x, i) ? p->r[i] : 1 - p->r[i];
        return m;
    }
    if (const auto* pb = std::get_if<Pullback>(&d.variant())) {
        if (!inner_of(*pb).is_symmetric()) return pullback_mass_enumerated(inner_of(*pb), n, x);
    }
    return layer_point_mass(d, n, weight(x));
}

Rational exact_mass(const Distribution& d, int n, Tuple x) {
    check_tuple(n, x);
    d.check_dimension(n);
    if (const auto* pb = std::get_if<Pullback>(&d.variant())) {
        if (!inner_of(*pb).is_symmetric()) return exact_pullback_mass_enumerated(inner_of(*pb), n, x);
    }
    return exact_layer_point_mass(d, n, weight(x));
}

std::vector<double> mass_table(const Distribution& d, int n) {
    d.check_dimension(n);
    if (n > kMaxArity) throw ValidationError("mass table dimension too large");
    std::size_t size = std::size_t{1} << n;
    std::vector<double> out(size);
    if (const auto* p = std::get_if<Product>(&d.variant())) {
        out[0] = 1;
        for (int i = 0; i < n; ++i) {
            std::size_t half = std::size_t{1} << i;
            for (std::size_t x = 0; x < half; ++x) {
                out[x | half] = out[x] * p->r[i];
                out[x] *= 1 - p->r[i];
            }
        }
        return out;
    }
    if (const auto* pb = std::get_if<Pullback>(&d.variant())) {
        if (!inner_of(*pb).is_symmetric()) return pullback_table_enumerated(inner_of(*pb), n);
    }
    std::vector<double> layer(n + 1);
    for (int k = 0; k <= n; ++k) layer[k] = layer_point_mass(d, n, k);
    for (std::size_t x = 0; x < size; ++x) out[x] = layer[weight(x)];
    return out;
}

std::vector<Rational> exact_mass_table(const Distribution& d, int n) {
    d.check_dimension(n);
    if (n > 20) throw ValidationError("exact mass table dimension too large");
    if (const auto* pb = std::get_if<Pullback>(&d.variant())) {
        if (!inner_of(*pb).is_symmetric()) return exact_pullback_table_enumerated(inner_of(*pb), n);
    }
    std::vector<Rational> layer(n + 1);
    for (int k = 0; k <= n; ++k) layer[k] = exact_layer_point_mass(d, n, k);
    std::vector<Rational> out(std::size_t{1} << n);
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = layer[weight(x)];
    return out;
}

// ---- pull-back --------------------------------------------------------------

Rational consistency_probability(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw ValidationError("consistency_probability: need 0 <= k <= n");
    return Rational(binom(n, k), binom(2 * n, 2 * k));
}

double pullback_mass_closed(const Distribution& inner, int two_n, Tuple z) {
    check_even(two_n);
    check_tuple(two_n, z);
    if (!inner.is_symmetric()) throw ValidationError("closed-form pull-back needs a symmetric inner family");
    int w = weight(z);
    if (w % 2 != 0) return 0.0;
    int n = two_n / 2, k = w / 2;
    return layer_point_mass(inner, n, k) * binom_double(n, k) / binom_double(two_n, w);
}

Rational exact_pullback_mass_closed(const Distribution& inner, int two_n, Tuple z) {
    check_even(two_n);
    check_tuple(two_n, z);
    if (!inner.is_symmetric()) throw ValidationError("closed-form pull-back needs a symmetric inner family");
    int w = weight(z);
    if (w % 2 != 0) return Rational(0);
    int n = two_n / 2, k = w / 2;
    return exact_layer_point_mass(inner, n, k) * consistency_probability(n, k);
}

namespace {

constexpr int kMaxEnumeratedPullback = 10;

void check_enumerable(int two_n) {
    check_even(two_n);
    if (two_n > kMaxEnumeratedPullback)
        throw ValidationError("pull-back enumeration supports dimensions up to " +
                              std::to_string(kMaxEnumeratedPullback));
}

// Source-bit spread for each target coordinate of pi.
std::vector<Mask> spreads(const MinorMap& pi) {
    std::vector<Mask> s(pi.target_arity(), 0);
    for (int i = 0; i < pi.source_arity(); ++i) s[pi[i]] |= Mask{1} << i;
    return s;
}

Tuple spread_tuple(const std::vector<Mask>& s, Tuple y) {
    Tuple x = 0;
    for (Mask rest = y; rest; rest &= rest - 1) x |= s[std::countr_zero(rest)];
    return x;
}

// Tuple y with pi^{-1}(y) = z, if z is consistent with pi.
std::optional<Tuple> compress(const std::vector<Mask>& s, Tuple z) {
    Tuple y = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        Mask hit = z & s[j];
        if (hit == s[j])
            y |= Tuple{1} << j;
        else if (hit != 0)
            return std::nullopt;
    }
    return y;
}

// Inner masses over a common denominator: value(y) = nums[y] / den.
struct CommonDenominator {
    std::vector<i128> nums;
    i128 den = 1;
};

CommonDenominator common_denominator(const std::vector<Rational>& values) {
    CommonDenominator c;
    for (const auto& v : values) {
        i128 g = gcd128(c.den, v.den());
        c.den = checked_mul(c.den / g, v.den());
    }
    c.nums.reserve(values.size());
    for (const auto& v : values) c.nums.push_back(checked_mul(v.num(), c.den / v.den()));
    return c;
}

}  // namespace

double pullback_mass_enumerated(const Distribution& inner, int two_n, Tuple z) {
    check_enumerable(two_n);
    check_tuple(two_n, z);
    int n = two_n / 2;
    auto inner_masses = mass_table(inner, n);
    double acc = 0;
    std::uint64_t maps = 0;
    for_each_two_to_one(n, [&](const MinorMap& pi) {
        ++maps;
        if (auto y = compress(spreads(pi), z)) acc += inner_masses[*y];
    });
    return acc / static_cast<double>(maps);
}

Rational exact_pullback_mass_enumerated(const Distribution& inner, int two_n, Tuple z) {
    check_enumerable(two_n);
    check_tuple(two_n, z);
    int n = two_n / 2;
    auto cd = common_denominator(exact_mass_table(inner, n));
    i128 acc = 0;
    std::uint64_t maps = 0;
    for_each_two_to_one(n, [&](const MinorMap& pi) {
        ++maps;
        if (auto y = compress(spreads(pi), z)) acc = checked_add(acc, cd.nums[*y]);
    });
    return Rational(acc, checked_mul(cd.den, static_cast<i128>(maps)));
}

std::vector<Rational> exact_pullback_table_enumerated(const Distribution& inner, int two_n) {
    check_enumerable(two_n);
    int n = two_n / 2;
    auto cd = common_denominator(exact_mass_table(inner, n));
    std::vector<i128> acc(std::size_t{1} << two_n, 0);
    std::uint64_t maps = 0;
    for_each_two_to_one(n, [&](const MinorMap& pi) {
        ++maps;
        auto s = spreads(pi);
        for (Tuple y = 0; y < (Tuple{1} << n); ++y) {
            Tuple z = spread_tuple(s, y);
            acc[z] = checked_add(acc[z], cd.nums[y]);
        }
    });
    i128 den = checked_mul(cd.den, static_cast<i128>(maps));
    std::vector<Rational> out;
    out.reserve(acc.size());
    for (i128 a : acc) out.emplace_back(a, den);
    return out;
}

std::vector<double> pullback_table_enumerated(const Distribution& inner, int two_n) {
    check_enumerable(two_n);
    int n = two_n / 2;
    auto inner_masses = mass_table(inner, n);
    std::vector<double> acc(std::size_t{1} << two_n, 0.0);
    std::uint64_t maps = 0;
    for_each_two_to_one(n, [&](const MinorMap& pi) {
        ++maps;
        auto s = spreads(pi);
        for (Tuple y = 0; y < (Tuple{1} << n); ++y) acc[spread_tuple(s, y)] += inner_masses[y];
    });
    for (double& a : acc) a /= static_cast<double>(maps);
    return acc;
}

// ---- expectations -----------------------------------------------------------

double expectation(const BooleanFunction& f, const Distribution& d) {
    auto m = mass_table(d, f.arity());
    double acc = 0;
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x)) acc += m[x];
    return acc;
}

Rational exact_expectation(const BooleanFunction& f, const Distribution& d) {
    auto m = exact_mass_table(d, f.arity());
    Rational acc(0);
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x)) acc += m[x];
    return acc;
}

double set_measure(const BooleanFunction& indicator, const Distribution& d) {
    return expectation(indicator, d);
}

double expectation(const std::vector<double>& values, int n, const Distribution& d) {
    if (values.size() != (std::size_t{1} << n)) throw ValidationError("value table size mismatch");
    auto m = mass_table(d, n);
    double acc = 0;
    for (std::size_t x = 0; x < values.size(); ++x) acc += m[x] * values[x];
    return acc;
}

// ---- reasonable-distribution check -----------------------------------------

namespace {

bool has_dimension(const Distribution& d, int n) {
    if (n < 1) return false;
    try {
        d.check_dimension(n);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

}  // namespace

ReasonableReport check_reasonable(const Distribution& d, const ReasonableParams& params, int n) {
    if (!d.is_symmetric()) throw ValidationError("check_reasonable needs a symmetric distribution");
    if (!(params.alpha <= params.beta)) throw ValidationError("check_reasonable: alpha > beta");
    if (!(params.lambda > 0 && params.lambda < 1))
        throw ValidationError("check_reasonable: lambda must lie in (0, 1)");
    d.check_dimension(n);

    ReasonableReport r;
    r.n = n;
    r.params = params;
    r.n_at_least_N = n >= params.N;

    const double slack = 1e-12;
    int lo = std::max(0, static_cast<int>(std::ceil(params.alpha * n - slack)));
    int hi = std::min(n, static_cast<int>(std::floor(params.beta * n + slack)));

    std::vector<double> lp(n + 1);
    for (int k = 0; k <= n; ++k) lp[k] = log_point_mass(d, n, k);

    r.band_mass = 0;
    r.max_layer_mass = -1;
    for (int k = 0; k <= n; ++k) {
        double layer = std::exp(lp[k] + log_binom(n, k));
        if (k >= lo && k <= hi) r.band_mass += layer;
        if (layer > r.max_layer_mass) {
            r.max_layer_mass = layer;
            r.max_layer = k;
        }
    }
    r.band_ok = r.band_mass >= 1 - params.eps;
    r.flat_ok = r.max_layer_mass < params.eps;

    const double lam = params.lambda, inv = 1 / params.lambda;
    auto inside = [&](double ratio) { return ratio > lam && ratio < inv; };

    r.min_smooth_ratio = std::numeric_limits<double>::infinity();
    r.max_smooth_ratio = 0;
    r.smooth_ok = true;
    for (int k = lo; k <= hi; ++k) {
        for (int nb : {k - 1, k + 1}) {
            if (nb < 0 || nb > n) continue;
            double ratio = std::exp(lp[nb] - lp[k]);
            r.min_smooth_ratio = std::min(r.min_smooth_ratio, ratio);
            r.max_smooth_ratio = std::max(r.max_smooth_ratio, ratio);
            if (!inside(ratio)) r.smooth_ok = false;
        }
    }

    r.min_consistency_ratio = std::numeric_limits<double>::infinity();
    r.max_consistency_ratio = 0;
    r.consistency_ok = true;
    bool any_neighbour = false;
    for (int m : {n - 1, n + 1}) {
        if (!has_dimension(d, m)) continue;
        any_neighbour = true;
        for (int k = lo; k <= hi; ++k) {
            if (k > m) continue;
            double ratio = std::exp(log_point_mass(d, m, k) - lp[k]);
            r.min_consistency_ratio = std::min(r.min_consistency_ratio, ratio);
            r.max_consistency_ratio = std::max(r.max_consistency_ratio, ratio);
            if (!inside(ratio)) r.consistency_ok = false;
        }
    }
    if (!any_neighbour) r.consistency_ok = false;

    // Pull-back compatibility at dimension 2n.
    if (has_dimension(d, 2 * n)) {
        double best = std::numeric_limits<double>::infinity();
        double best_lower = best;
        for (int k = 0; k <= n; ++k) {
            double omega = log_point_mass(d, 2 * n, 2 * k);
            double pulled = lp[k] + log_binom(n, k) - log_binom(2 * n, 2 * k);
            best = std::min(best, std::exp(omega - pulled));
            best_lower = std::min(best_lower, std::exp(pulled - omega));
        }
        r.pullback_c = best;
        r.pullback_lower_c = best_lower;
        if (d.has_exact()) {
            try {
                std::optional<Rational> ex, lower;
                for (int k = 0; k <= n; ++k) {
                    Rational omega = exact_layer_point_mass(d, 2 * n, 2 * k);
                    Rational pulled = exact_layer_point_mass(d, n, k) * consistency_probability(n, k);
                    Rational ratio = omega / pulled;
                    if (!ex || ratio < *ex) ex = ratio;
                    Rational inverse = pulled / omega;
                    if (!lower || inverse < *lower) lower = inverse;
                }
                r.exact_pullback_c = ex;
                r.exact_pullback_lower_c = lower;
            } catch (const OverflowError&) {
                r.exact_pullback_c.reset();
                r.exact_pullback_lower_c.reset();
            }
        }
    } else {
        r.pullback_c = std::numeric_limits<double>::quiet_NaN();
        r.pullback_lower_c = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

GridSearchResult search_reasonable_params(const Distribution& d, double eps, int n, int steps) {
    if (steps < 2) throw ValidationError("grid search needs at least 2 steps");
    GridSearchResult best;
    double best_width = -1, best_lambda = -1;
    for (int a = 0; a <= steps; ++a) {
        for (int b = steps; b >= a; --b) {
            double alpha = static_cast<double>(a) / steps;
            double beta = static_cast<double>(b) / steps;
            double width = beta - alpha;
            if (width < best_width) continue;
            for (int l = steps - 1; l >= 1; --l) {
                double lambda = 0.5 * l / steps;
                ReasonableParams p{eps, alpha, beta, lambda, n};
                auto rep = check_reasonable(d, p, n);
                if (!rep.all_ok()) continue;
                if (width > best_width || (width == best_width && lambda > best_lambda)) {
                    best.found = true;
                    best.params = p;
                    best.report = rep;
                    best_width = width;
                    best_lambda = lambda;
                }
                break;
            }
        }
    }
    return best;
}

}  // namespace bfl

#include "bfl/influence.hpp"

#include <gmpxx.h>

#include <cmath>
#include <numbers>

#include "bfl/error.hpp"
#include "lp_internal.hpp"
#include "bfl/fourier.hpp"

namespace bfl {

namespace {

void check_coordinate(const BooleanFunction& f, int i) {
    if (i < 0 || i >= f.arity())
        throw ValidationError("coordinate " + std::to_string(i + 1) + " outside [1, " +
                              std::to_string(f.arity()) + "]");
}

constexpr int kMaxExactShapleyArity = 25;

}  // namespace

double influence_with_masses(const BooleanFunction& f, int i, const std::vector<double>& masses) {
    check_coordinate(f, i);
    if (masses.size() != f.size()) throw ValidationError("mass table does not match function arity");
    const Tuple b = Tuple{1} << i;
    double acc = 0;
    for (Tuple x = 0; x < f.size(); ++x) {
        if (x & b) continue;
        if (f(x) != f(x | b)) acc += masses[x] + masses[x | b];
    }
    return acc;
}

double influence(const BooleanFunction& f, int i, const Distribution& d) {
    check_coordinate(f, i);
    return influence_with_masses(f, i, mass_table(d, f.arity()));
}

std::vector<double> influences(const BooleanFunction& f, const Distribution& d) {
    auto masses = mass_table(d, f.arity());
    std::vector<double> out(f.arity());
    for (int i = 0; i < f.arity(); ++i) out[i] = influence_with_masses(f, i, masses);
    return out;
}

double total_influence(const BooleanFunction& f, const Distribution& d) {
    double acc = 0;
    for (double v : influences(f, d)) acc += v;
    return acc;
}

Rational exact_influence(const BooleanFunction& f, int i, const Distribution& d) {
    check_coordinate(f, i);
    auto masses = exact_mass_table(d, f.arity());
    const Tuple b = Tuple{1} << i;
    Rational acc(0);
    for (Tuple x = 0; x < f.size(); ++x) {
        if (x & b) continue;
        if (f(x) != f(x | b)) acc += masses[x] + masses[x | b];
    }
    return acc;
}

std::vector<std::uint64_t> pivotal_layer_counts(const BooleanFunction& f, int i) {
    check_coordinate(f, i);
    std::vector<std::uint64_t> c(f.arity() + 1, 0);
    const Tuple b = Tuple{1} << i;
    for (Tuple x = 0; x < f.size(); ++x) {
        if (x & b) continue;
        if (f(x) != f(x | b)) {
            ++c[weight(x)];
            ++c[weight(x) + 1];
        }
    }
    return c;
}

std::vector<std::uint64_t> ones_layer_counts(const BooleanFunction& f) {
    std::vector<std::uint64_t> c(f.arity() + 1, 0);
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x)) ++c[weight(x)];
    return c;
}

double layer_polynomial(const std::vector<std::uint64_t>& counts, double p) {
    const int n = static_cast<int>(counts.size()) - 1;
    double acc = 0;
    for (int k = 0; k <= n; ++k)
        if (counts[k]) acc += static_cast<double>(counts[k]) * std::pow(p, k) * std::pow(1 - p, n - k);
    return acc;
}

Rational shapley_influence_exact(const BooleanFunction& f, int i) {
    const int n = f.arity();
    if (n > kMaxExactShapleyArity)
        throw OverflowError("exact Shapley values are limited to arity " +
                            std::to_string(kMaxExactShapleyArity));
    auto counts = pivotal_layer_counts(f, i);
    // Shapley point mass of a weight-k tuple is 1/((n+1) C(n,k)).
    Rational acc(0);
    for (int k = 0; k <= n; ++k) {
        if (counts[k] == 0) continue;
        acc += Rational(static_cast<i128>(counts[k]), checked_mul(n + 1, binom(n, k)));
    }
    return acc;
}

Rational owen_integral_exact(const BooleanFunction& f, int i) {
    const int n = f.arity();
    if (n > kMaxExactShapleyArity)
        throw OverflowError("exact Beta integration is limited to arity " +
                            std::to_string(kMaxExactShapleyArity));
    auto counts = pivotal_layer_counts(f, i);
    // int_0^1 p^k (1-p)^(n-k) dp = k! (n-k)! / (n+1)!
    i128 num = 0;
    for (int k = 0; k <= n; ++k) {
        if (counts[k] == 0) continue;
        num = checked_add(num, checked_mul(static_cast<i128>(counts[k]),
                                           checked_mul(factorial(k), factorial(n - k))));
    }
    return Rational(num, factorial(n + 1));
}

double shapley_influence(const BooleanFunction& f, int i) {
    return influence(f, i, Distribution::shapley());
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(int points) {
    if (points < 1) throw ValidationError("quadrature needs at least one point");
    std::vector<double> nodes(points), weights(points);
    const int m = (points + 1) / 2;
    for (int k = 0; k < m; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (points + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1, p1 = 0;
            for (int j = 1; j <= points; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p2) / j;
            }
            dp = points * (x * p0 - p1) / (x * x - 1);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2 / ((1 - x * x) * dp * dp);
        // Map [-1, 1] to [0, 1].
        nodes[k] = (1 - x) / 2;
        nodes[points - 1 - k] = (1 + x) / 2;
        weights[k] = weights[points - 1 - k] = w / 2;
    }
    return {nodes, weights};
}

double owen_residual(const BooleanFunction& f, int i, int points) {
    check_coordinate(f, i);
    auto [nodes, weights] = gauss_legendre_unit(points);
    double integral = 0;
    for (int k = 0; k < points; ++k)
        integral += weights[k] * influence(f, i, Distribution::biased(nodes[k]));
    return std::abs(integral - shapley_influence_exact(f, i).to_double());
}

namespace {

mpq_class layer_polynomial_exact(const std::vector<std::uint64_t>& counts, const mpq_class& p) {
    const int n = static_cast<int>(counts.size()) - 1;
    mpq_class q = 1 - p;
    std::vector<mpq_class> pp(n + 1), qq(n + 1);
    pp[0] = 1;
    qq[0] = 1;
    for (int k = 1; k <= n; ++k) {
        pp[k] = pp[k - 1] * p;
        qq[k] = qq[k - 1] * q;
    }
    mpq_class acc = 0;
    for (int k = 0; k <= n; ++k) {
        if (counts[k] == 0) continue;
        mpq_class c(static_cast<unsigned long>(counts[k]));
        acc += c * pp[k] * qq[n - k];
    }
    return acc;
}


// d/dp of sum_k c_k p^k (1-p)^(n-k).
mpq_class layer_derivative_exact(const std::vector<std::uint64_t>& counts, const mpq_class& p) {
    const int n = static_cast<int>(counts.size()) - 1;
    mpq_class q = 1 - p;
    auto power = [](const mpq_class& b, int e) {
        mpq_class r = 1;
        for (int j = 0; j < e; ++j) r *= b;
        return r;
    };
    mpq_class acc = 0;
    for (int k = 0; k <= n; ++k) {
        if (counts[k] == 0) continue;
        mpq_class c(static_cast<unsigned long>(counts[k]));
        if (k > 0) acc += c * k * power(p, k - 1) * power(q, n - k);
        if (k < n) acc -= c * (n - k) * power(p, k) * power(q, n - k - 1);
    }
    return acc;
}

}  // namespace

Rational ep_derivative_exact(const BooleanFunction& f, const Rational& p) {
    if (p < Rational(0) || p > Rational(1)) throw ValidationError("bias p must lie in [0, 1]");
    return detail::to_rational(layer_derivative_exact(ones_layer_counts(f), detail::to_mpq(p)));
}

double ep_derivative(const BooleanFunction& f, double p) {
    if (!(p >= 0 && p <= 1)) throw ValidationError("bias p must lie in [0, 1]");
    return layer_derivative_exact(ones_layer_counts(f), mpq_class(p)).get_d();
}

double margulis_russo_residual(const BooleanFunction& f, double p, double h) {
    if (!classify(f).is_increasing)
        throw ValidationError("Margulis-Russo check needs an increasing function");
    if (!(h > 0) || !(p - h > 0) || !(p + h < 1))
        throw ValidationError("Margulis-Russo check needs h > 0 and p +- h inside (0, 1)");
    const int n = f.arity();
    auto ones = ones_layer_counts(f);
    std::vector<std::uint64_t> piv(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        auto c = pivotal_layer_counts(f, i);
        for (int k = 0; k <= n; ++k) piv[k] += c[k];
    }
    // Doubles convert to mpq exactly, so the only error left is truncation.
    mpq_class P(p), H(h);
    mpq_class diff = (layer_polynomial_exact(ones, P + H) - layer_polynomial_exact(ones, P - H)) / (2 * H);
    mpq_class total = layer_polynomial_exact(piv, P);
    mpq_class r = diff - total;
    return std::abs(r.get_d());
}

// ---- (p, q) expectations ---------------------------------------------------

namespace {

struct UnateSplit {
    Mask up = 0;    // increasing or non-essential
    Mask down = 0;  // strictly decreasing
};

UnateSplit unate_split(const BooleanFunction& f) {
    Classification c = classify(f);
    if (!c.is_unate) throw ValidationError("operation needs a unate function");
    return {c.domain_up, c.domain_down & ~c.domain_up};
}

}  // namespace

PQExpectation::PQExpectation(const BooleanFunction& f) {
    UnateSplit s = unate_split(f);
    up_ = std::popcount(s.up);
    down_ = std::popcount(s.down);
    counts_.assign(up_ + 1, std::vector<std::uint64_t>(down_ + 1, 0));
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x)) ++counts_[weight(x & s.up)][weight(x & s.down)];
}

double PQExpectation::operator()(double p, double q) const {
    std::vector<double> pa(up_ + 1), qb(down_ + 1);
    for (int a = 0; a <= up_; ++a) pa[a] = std::pow(p, a) * std::pow(1 - p, up_ - a);
    for (int b = 0; b <= down_; ++b) qb[b] = std::pow(q, b) * std::pow(1 - q, down_ - b);
    double acc = 0;
    for (int a = 0; a <= up_; ++a)
        for (int b = 0; b <= down_; ++b)
            if (counts_[a][b]) acc += static_cast<double>(counts_[a][b]) * pa[a] * qb[b];
    return acc;
}

std::vector<double> pq_bias(const BooleanFunction& f, double p, double q) {
    if (!(p >= 0 && p <= 1 && q >= 0 && q <= 1)) throw ValidationError("p and q must lie in [0, 1]");
    UnateSplit s = unate_split(f);
    std::vector<double> r(f.arity());
    for (int i = 0; i < f.arity(); ++i) r[i] = (s.down >> i & 1u) ? q : p;
    return r;
}

double expectation_pq(const BooleanFunction& f, double p, double q) {
    return expectation(f, Distribution::product(pq_bias(f, p, q)));
}

double influence_pq(const BooleanFunction& f, int i, double p, double q) {
    return influence(f, i, Distribution::product(pq_bias(f, p, q)));
}

std::pair<double, double> pq_derivative_residuals(const BooleanFunction& f, double p, double q, double h) {
    if (!(h > 0) || p - h < 0 || p + h > 1 || q - h < 0 || q + h > 1)
        throw ValidationError("finite differences need p +- h and q +- h inside [0, 1]");
    UnateSplit s = unate_split(f);
    PQExpectation e(f);
    auto inf = influences(f, Distribution::product(pq_bias(f, p, q)));
    double sum_up = 0, sum_down = 0;
    for (int i = 0; i < f.arity(); ++i) (s.down >> i & 1u ? sum_down : sum_up) += inf[i];
    double dp = (e(p + h, q) - e(p - h, q)) / (2 * h);
    double dq = (e(p, q + h) - e(p, q - h)) / (2 * h);
    return {std::abs(dp - sum_up), std::abs(-dq - sum_down)};
}

std::vector<LevelPoint> level_curve(const BooleanFunction& f, double eps, const std::vector<double>& q_grid) {
    if (!(eps > 0 && eps < 1)) throw ValidationError("level curve: eps must lie in (0, 1)");
    if (f.is_constant()) throw ValidationError("level curve: function is constant");
    if (!is_idempotent(f)) throw ValidationError("level curve: function is not idempotent");
    PQExpectation e(f);
    std::vector<LevelPoint> out;
    out.reserve(q_grid.size());
    for (double q : q_grid) {
        if (!(q >= 0 && q <= 1)) throw ValidationError("level curve: q outside [0, 1]");
        LevelPoint pt;
        pt.q = q;
        double lo = 0, hi = 1;
        double g_lo = e(lo, q) - eps, g_hi = e(hi, q) - eps;
        if (g_lo > 0 || g_hi < 0) {
            pt.ok = false;
            pt.p = std::numeric_limits<double>::quiet_NaN();
            out.push_back(pt);
            continue;
        }
        int it = 0;
        while (hi - lo > kLevelTolerance && it < kLevelMaxIterations) {
            double mid = 0.5 * (lo + hi);
            if (e(mid, q) - eps < 0)
                lo = mid;
            else
                hi = mid;
            ++it;
        }
        pt.p = 0.5 * (lo + hi);
        pt.ok = true;
        pt.iterations = it;
        out.push_back(pt);
    }
    return out;
}

SqrtBoundReport unate_sqrt_bound_check(const BooleanFunction& f, double p) {
    if (!classify(f).is_unate) throw ValidationError("sqrt bound check needs a unate function");
    if (!(p > 0 && p < 1)) throw ValidationError("bias p must lie in (0, 1)");
    const int n = f.arity();
    SqrtBoundReport r;
    r.p = p;
    r.influences = influences(f, Distribution::biased(p));
    Spectrum s = transform(f, p);
    const double sigma = std::sqrt(p * (1 - p));
    r.total_influence = 0;
    r.max_identity_gap = 0;
    for (int i = 0; i < n; ++i) {
        r.total_influence += r.influences[i];
        double c = std::abs(s.coeffs[Mask{1} << i]);
        r.degree_one.push_back(c);
        r.max_identity_gap = std::max(r.max_identity_gap, std::abs(r.influences[i] - c / sigma));
    }
    r.bound = std::sqrt(n / (p * (1 - p)));
    r.bound_ok = r.total_influence <= r.bound;
    r.identity_ok = r.max_identity_gap <= 1e-9;
    return r;
}

std::vector<std::pair<double, double>> ep_curve(const BooleanFunction& f, int points) {
    if (points < 2) throw ValidationError("E_p curve needs at least 2 grid points");
    auto ones = ones_layer_counts(f);
    std::vector<std::pair<double, double>> out;
    out.reserve(points);
    for (int k = 0; k < points; ++k) {
        double p = static_cast<double>(k) / (points - 1);
        out.emplace_back(p, layer_polynomial(ones, p));
    }
    return out;
}

}  // namespace bfl

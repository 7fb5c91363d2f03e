#include "bfl/ptf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bfl/error.hpp"
#include "lp_internal.hpp"

namespace bfl {

namespace {

std::vector<Mask> low_degree_monomials(int n, int k) {
    std::vector<Mask> out;
    for (Mask s = 0; s < (Mask{1} << n); ++s)
        if (weight(s) <= k) out.push_back(s);
    std::stable_sort(out.begin(), out.end(), [](Mask a, Mask b) { return weight(a) < weight(b); });
    return out;
}

std::vector<double> point_masses(int n, double p) {
    std::vector<double> pw(n + 1);
    for (int w = 0; w <= n; ++w) pw[w] = std::pow(p, w) * std::pow(1.0 - p, n - w);
    return pw;
}

double eval_at(const MultilinearPoly& q, Tuple x, double p) {
    if (q.basis == Basis::Monomial) {
        double total = 0.0;
        for (const auto& [s, c] : q.coeffs)
            if ((s & x) == s) total += c;
        return total;
    }
    const double sigma = std::sqrt(p * (1.0 - p));
    std::vector<double> v(q.n);
    for (int i = 0; i < q.n; ++i) v[i] = (static_cast<double>(bit(x, i)) - p) / sigma;
    return q.eval_vars(v);
}

}  // namespace

MultilinearPoly moebius_polynomial(const BooleanFunction& f) {
    const int n = f.arity();
    if (n > 16) throw ValidationError("moebius_polynomial supports arity <= 16");
    std::vector<long long> a(f.size());
    for (Tuple x = 0; x < f.size(); ++x) a[x] = f(x) ? 1 : 0;
    for (int i = 0; i < n; ++i)
        for (Tuple x = 0; x < f.size(); ++x)
            if (bit(x, i)) a[x] -= a[x ^ (Tuple{1} << i)];
    MultilinearPoly q;
    q.n = n;
    q.exact.emplace();
    int deg = 0;
    for (Tuple s = 0; s < f.size(); ++s)
        if (a[s] != 0) {
            q.set_exact(s, Rational(a[s]));
            deg = std::max(deg, weight(s));
        }
    q.k = deg;
    return q;
}

bool verify_sign_witness(const BooleanFunction& f, const MultilinearPoly& q) {
    if (q.n != f.arity() || q.basis != Basis::Monomial) return false;
    for (Tuple x = 0; x < f.size(); ++x) {
        bool positive = q.exact ? q.eval_point_exact(x).sign() > 0 : q.eval_point(x) > 0.0;
        if (positive != f(x)) return false;
    }
    return true;
}

bool verify_farkas_certificate(const BooleanFunction& f, int k, const std::vector<Rational>& y) {
    const int n = f.arity();
    if (y.size() != f.size()) return false;
    Rational ones;
    for (Tuple x = 0; x < f.size(); ++x) {
        if (y[x].sign() < 0) return false;
        if (f(x)) ones += y[x];
    }
    if (ones.sign() <= 0) return false;
    for (Mask s : low_degree_monomials(n, k)) {
        Rational total;
        for (Tuple x = 0; x < f.size(); ++x)
            if ((s & x) == s && !y[x].is_zero()) total += f(x) ? y[x] : -y[x];
        if (!total.is_zero()) return false;
    }
    return true;
}

PtfDegreeResult ptf_degree_at_most(const BooleanFunction& f, int k) {
    const int n = f.arity();
    if (n > kMaxPtfArity) throw ValidationError("ptf degree check supports arity <= 10");
    if (k < 0) throw ValidationError("degree must be non-negative");
    k = std::min(k, n);
    const auto monos = low_degree_monomials(n, k);
    if (monos.size() > kMaxPtfMonomials) throw ValidationError("too many monomials for the PTF linear program");

    // Farkas dual of {Q(x) >= 1 on f^{-1}(1), Q(x) <= 0 on f^{-1}(0)}:
    // maximise sum_{f(x)=1} y_x s.t. sum_x s_x [S subset x] y_x = 0, sum y + y0 = 1.
    const int V = static_cast<int>(monos.size());
    const int points = static_cast<int>(f.size());
    LinearProgram lp;
    lp.rows = V + 1;
    lp.cols = points + 1;
    lp.A.assign(lp.rows, std::vector<long long>(lp.cols, 0));
    lp.b.assign(lp.rows, 0);
    lp.b[V] = 1;
    lp.c.assign(lp.cols, 0);
    for (int x = 0; x < points; ++x) {
        const long long s = f(x) ? 1 : -1;
        for (int r = 0; r < V; ++r)
            if ((monos[r] & Tuple(x)) == monos[r]) lp.A[r][x] = s;
        lp.A[V][x] = 1;
        lp.c[x] = f(x) ? 1 : 0;
    }
    lp.A[V][points] = 1;

    auto sol = detail::solve_lp_mpq(lp, LpOptions{});
    if (sol.status != LpStatus::Optimal) throw Error("PTF linear program did not reach an optimum");

    PtfDegreeResult res;
    res.pivots = sol.pivots;
    res.lp_value = detail::to_rational(sol.objective);
    if (sol.objective > 0) {
        res.feasible = false;
        for (int x = 0; x < points; ++x) res.certificate.push_back(detail::to_rational(sol.primal[x]));
        if (!verify_farkas_certificate(f, k, res.certificate))
            throw Error("internal error: Farkas certificate failed verification");
        return res;
    }

    // Optimal multipliers give Q with s_x Q(x) >= [f(x) = 1].
    // Replace Q by 2Q - 1 so that no point of the cube evaluates to zero.
    std::vector<mpq_class> coef(V);
    for (int r = 0; r < V; ++r) {
        coef[r] = 2 * sol.dual[r];
        if (monos[r] == 0) coef[r] -= 1;
    }
    mpz_class lcm = 1, g = 0;
    for (int r = 0; r < V; ++r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coef[r].get_den_mpz_t());
    std::vector<mpz_class> ints(V);
    for (int r = 0; r < V; ++r) {
        mpq_class scaled = coef[r] * lcm;
        ints[r] = scaled.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[r].get_mpz_t());
    }
    MultilinearPoly q;
    q.n = n;
    q.k = k;
    q.exact.emplace();
    for (int r = 0; r < V; ++r) {
        if (ints[r] == 0) continue;
        mpz_class v = ints[r] / g;
        q.set_exact(monos[r], detail::to_rational(mpq_class(v)));
    }
    if (!verify_sign_witness(f, q)) throw Error("internal error: PTF witness failed pointwise verification");
    res.feasible = true;
    res.witness = std::move(q);
    return res;
}

MultilinearPoly to_sign_representation(const MultilinearPoly& q, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("p must lie in (0,1)");
    if (q.basis != Basis::Monomial) throw ValidationError("sign representation expects a monomial-basis polynomial");
    const double sigma = std::sqrt(p * (1.0 - p));
    std::map<Mask, double> c;
    for (const auto& [s, v] : q.coeffs) {
        const int size = weight(s);
        // Every T subset of S, including S itself.
        for (Mask t = s;; t = (t - 1) & s) {
            const int tw = weight(t);
            c[t] += v * std::pow(p, size - tw) * std::pow(sigma, tw);
            if (t == 0) break;
        }
    }
    double norm2 = 0.0;
    for (const auto& [t, v] : c)
        if (t != 0) norm2 += v * v;
    if (norm2 <= 0.0) throw ValidationError("polynomial is constant; no normalized sign representation");
    const double scale = 1.0 / std::sqrt(norm2);
    MultilinearPoly out;
    out.n = q.n;
    out.k = q.k;
    out.basis = Basis::Character;
    out.p = p;
    for (const auto& [t, v] : c) out.set(t, v * scale);
    return out;
}

RegularityProfile regularity_profile(const MultilinearPoly& q, double eps) {
    if (!q.is_normalized()) throw ValidationError("regularity profile needs a normalized polynomial");
    if (!(eps > 0.0)) throw ValidationError("eps must be positive");
    constexpr double kSlack = 1e-12;
    const int n = q.n;
    RegularityProfile r;
    r.eps = eps;
    r.degree = q.degree();
    std::vector<double> w(n, 0.0);
    for (const auto& [s, c] : q.coeffs)
        for (Mask m = s; m; m &= m - 1) w[std::countr_zero(m)] += c * c;
    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), 0);
    std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) { return w[a] > w[b]; });
    r.w2.resize(n);
    for (int i = 0; i < n; ++i) r.w2[i] = w[r.order[i]];
    r.sigma2.assign(n + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) r.sigma2[i] = r.w2[i] + r.sigma2[i + 1];
    r.sigma2.resize(n);

    auto sigma_at = [&](int i) { return i < n ? r.sigma2[i] : 0.0; };  // 0-based
    for (double v : r.w2) r.sum_w4 += v * v;
    const double s1 = sigma_at(0);
    r.regular = r.sum_w4 <= eps * eps * s1 * s1 * (1.0 + kSlack);

    // K = min i with w_{j}^2 <= eps^2 sigma_{i+1}^2 for all j > i (1-based);
    // the weights are sorted, so only j = i+1 matters.
    r.critical_index = n;
    for (int i = 0; i < n; ++i)
        if (r.w2[i] <= eps * eps * sigma_at(i) * (1.0 + kSlack)) {
            r.critical_index = i;
            break;
        }

    r.max_w2 = n ? r.w2[0] : 0.0;
    if (r.regular) r.small_influence_claim = r.max_w2 <= eps * r.degree + kSlack;
    for (int i = 1; i < r.critical_index; ++i)
        if (!(sigma_at(i) < (1.0 - eps * eps) * sigma_at(i - 1))) r.sigma_recursion = false;
    return r;
}

MultilinearPoly restrict_poly(const MultilinearPoly& q, int m, const std::vector<double>& xbar) {
    if (m < 0 || m > q.n) throw ValidationError("restriction size must lie in [0, n]");
    if (static_cast<int>(xbar.size()) != m) throw ValidationError("restriction needs one value per fixed variable");
    MultilinearPoly r;
    r.n = q.n - m;
    r.k = std::min(q.k, r.n);
    r.basis = q.basis;
    r.p = q.p;
    const Mask low = full_mask(m);
    std::map<Mask, double> acc;
    for (const auto& [u, c] : q.coeffs) {
        double term = c;
        for (Mask t = u & low; t; t &= t - 1) term *= xbar[std::countr_zero(t)];
        acc[u >> m] += term;
    }
    for (const auto& [s, v] : acc) r.set(s, v);
    return r;
}

Determination is_determined(const MultilinearPoly& q, double eps, double p) {
    if (q.n > 16) throw ValidationError("is_determined supports arity <= 16");
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("p must lie in (0,1)");
    const auto pw = point_masses(q.n, p);
    double pos = 0.0;
    for (Tuple x = 0; x < (Tuple{1} << q.n); ++x)
        if (eval_at(q, x, p) > 0.0) pos += pw[weight(x)];
    Determination d;
    d.prob_positive = pos;
    d.determined = std::min(pos, 1.0 - pos) <= eps;
    return d;
}

JuntaResult best_junta(const BooleanFunction& f, int j, double p) {
    const int n = f.arity();
    if (n > 12) throw ValidationError("best_junta supports arity <= 12");
    if (j < 0 || j > 4) throw ValidationError("junta size must lie in [0, 4]");
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p must lie in [0,1]");
    const int size = std::min(j, n);
    const auto pw = point_masses(n, p);
    JuntaResult best;
    bool have = false;
    for (Mask set = 0; set < (Mask{1} << n); ++set) {
        if (weight(set) != size) continue;
        const auto coords = coords_of(set);
        std::vector<double> ones(std::size_t{1} << size, 0.0), zeros(ones.size(), 0.0);
        for (Tuple x = 0; x < f.size(); ++x) {
            Tuple a = 0;
            for (int c = 0; c < size; ++c)
                if (bit(x, coords[c])) a |= Tuple{1} << c;
            (f(x) ? ones : zeros)[a] += pw[weight(x)];
        }
        double err = 0.0;
        BooleanFunction h(size);
        for (Tuple a = 0; a < ones.size(); ++a) {
            h.set(a, ones[a] > zeros[a]);
            err += std::min(ones[a], zeros[a]);
        }
        if (!have || err < best.error) {
            best.coords = coords;
            best.junta = h;
            best.error = err;
            have = true;
        }
    }
    return best;
}

RestrictionExperiment restriction_experiment(const MultilinearPoly& q, int m, double eps,
                                             std::uint64_t trials, std::uint64_t seed) {
    if (q.basis != Basis::Character) throw ValidationError("restriction experiments need a character-basis polynomial");
    if (m < 0 || m > q.n) throw ValidationError("restriction size must lie in [0, n]");
    if (q.n - m > 16) throw ValidationError("restricted polynomial must have arity <= 16");
    const double p = q.p;
    const double sigma = std::sqrt(p * (1.0 - p));
    const double chi0 = -p / sigma, chi1 = (1.0 - p) / sigma;
    const std::uint64_t chunks = (trials + kChunkSize - 1) / kChunkSize;
    std::vector<RestrictionExperiment> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng(derive_seed(seed, c));
        const std::uint64_t begin = c * kChunkSize;
        const std::uint64_t end = std::min(trials, begin + kChunkSize);
        auto& part = parts[c];
        std::vector<double> xbar(m);
        for (std::uint64_t t = begin; t < end; ++t) {
            for (int i = 0; i < m; ++i) xbar[i] = rng.bernoulli(p) ? chi1 : chi0;
            MultilinearPoly r = restrict_poly(q, m, xbar);
            ++part.trials;
            const double norm2 = r.nonconstant_norm2();
            if (norm2 <= 0.0) {
                ++part.constant;
                ++part.determined;
                continue;
            }
            const double scale = 1.0 / std::sqrt(norm2);
            for (auto& [s, v] : r.coeffs) v *= scale;
            if (regularity_profile(r, eps).regular) ++part.regular;
            if (is_determined(r, eps, p).determined) ++part.determined;
        }
    });
    RestrictionExperiment total;
    for (const auto& part : parts) {
        total.trials += part.trials;
        total.regular += part.regular;
        total.determined += part.determined;
        total.constant += part.constant;
    }
    return total;
}

MultilinearPoly random_normalized_poly(int n, int k, double p, Rng& rng, double density) {
    if (n < 1 || n > 20) throw ValidationError("random polynomial arity must lie in [1, 20]");
    if (k < 1 || k > n) throw ValidationError("degree must lie in [1, n]");
    auto gaussian = [&] {
        const double u1 = 1.0 - rng.uniform();
        const double u2 = rng.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    MultilinearPoly q;
    q.n = n;
    q.k = k;
    q.basis = Basis::Character;
    q.p = p;
    for (;;) {
        q.coeffs.clear();
        for (Mask s : low_degree_monomials(n, k)) {
            if (s != 0 && !rng.bernoulli(density)) continue;
            q.set(s, gaussian());
        }
        const double norm2 = q.nonconstant_norm2();
        if (norm2 <= 0.0) continue;
        const double scale = 1.0 / std::sqrt(norm2);
        for (auto& [s, v] : q.coeffs) v *= scale;
        return q;
    }
}

std::optional<MultilinearPoly> adversary_quadratic_fixture(int n) {
    if (n < 1) throw ValidationError("arity must be positive");
    return std::nullopt;
}

}  // namespace bfl

#pragma once

// Slow reference implementations written straight from the definitions.
// They share no code with the library beyond the BooleanFunction container
// and the Rational number type.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "bfl/boolfn.hpp"
#include "bfl/pcsp.hpp"
#include "bfl/rational.hpp"

namespace oracle {

using bfl::BooleanFunction;
using bfl::Rational;
using bfl::Tuple;

inline int popcount(Tuple x) { return __builtin_popcountll(x); }

inline std::vector<int> bits_of(Tuple x, int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = (x >> i) & 1;
    return v;
}

inline Rational rpow(const Rational& a, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= a;
    return r;
}

inline Rational choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    Rational r = 1;
    for (int j = 1; j <= k; ++j) r = r * Rational(n - k + j) / Rational(j);
    return r;
}

inline Rational fact(int n) {
    Rational r = 1;
    for (int j = 2; j <= n; ++j) r *= Rational(j);
    return r;
}

// ---------------------------------------------------------------- measures

inline double biased_mass(double p, int n, Tuple x) {
    double m = 1;
    for (int i = 0; i < n; ++i) m *= ((x >> i) & 1) ? p : 1 - p;
    return m;
}

inline Rational biased_mass_exact(const Rational& p, int n, Tuple x) {
    Rational m = 1;
    for (int i = 0; i < n; ++i) m *= ((x >> i) & 1) ? p : Rational(1) - p;
    return m;
}

inline Rational shapley_mass_exact(int n, Tuple x) {
    return Rational(1) / (Rational(n + 1) * choose(n, popcount(x)));
}

using ExactMass = std::function<Rational(int, Tuple)>;

// Every function [2n] -> [n] with all fibres of size two.
inline std::vector<std::vector<int>> all_two_to_one(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> img(2 * n, 0);
    for (;;) {
        std::vector<int> cnt(n, 0);
        for (int v : img) ++cnt[v];
        if (std::all_of(cnt.begin(), cnt.end(), [](int c) { return c == 2; })) out.push_back(img);
        int pos = 0;
        while (pos < 2 * n && ++img[pos] == n) img[pos++] = 0;
        if (pos == 2 * n) break;
    }
    return out;
}

// Law of pi^{-1}(y), y ~ Omega_n, pi uniform 2-to-1.
inline Rational pullback_mass(const ExactMass& inner, int two_n, Tuple z) {
    const int n = two_n / 2;
    auto maps = all_two_to_one(n);
    Rational total = 0;
    for (const auto& img : maps) {
        // z must be constant on each fibre; y_j is that constant.
        Tuple y = 0;
        bool ok = true;
        std::vector<int> seen(n, -1);
        for (int i = 0; i < two_n; ++i) {
            int b = (z >> i) & 1;
            if (seen[img[i]] == -1) seen[img[i]] = b;
            else if (seen[img[i]] != b) ok = false;
        }
        if (!ok) continue;
        for (int j = 0; j < n; ++j)
            if (seen[j] == 1) y |= Tuple{1} << j;
        total += inner(n, y);
    }
    return total / Rational(static_cast<long long>(maps.size()));
}

// ---------------------------------------------------------------- analysis

inline double influence(const BooleanFunction& f, int i, const std::function<double(Tuple)>& mass) {
    double s = 0;
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x) != f(x ^ (Tuple{1} << i))) s += mass(x);
    return s;
}

inline Rational influence_exact(const BooleanFunction& f, int i, const std::function<Rational(Tuple)>& mass) {
    Rational s = 0;
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x) != f(x ^ (Tuple{1} << i))) s += mass(x);
    return s;
}

// p(1-p) E[(f(x) - f(x xor e_i))^2] divided by p(1-p) is the biased influence;
// this is the form that mirrors the spectral definition.
inline double influence_biased(const BooleanFunction& f, int i, double p) {
    const int n = f.arity();
    return influence(f, i, [&](Tuple x) { return biased_mass(p, n, x); });
}

// Fourier coefficient by a direct inner product against chi_S.
inline double fourier_coefficient(const std::vector<double>& table, int n, double p, Tuple s) {
    const double sd = std::sqrt(p * (1 - p));
    double acc = 0;
    for (Tuple x = 0; x < table.size(); ++x) {
        double chi = 1;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1) chi *= ((((x >> i) & 1) ? 1.0 : 0.0) - p) / sd;
        acc += biased_mass(p, n, x) * table[x] * chi;
    }
    return acc;
}

inline std::vector<double> fourier(const BooleanFunction& f, double p) {
    std::vector<double> t(f.size());
    for (Tuple x = 0; x < f.size(); ++x) t[x] = f(x) ? 1.0 : 0.0;
    std::vector<double> c(f.size());
    for (Tuple s = 0; s < f.size(); ++s) c[s] = fourier_coefficient(t, f.arity(), p, s);
    return c;
}

// Classic permutation-weight formula for the Shapley value of player i.
inline Rational shapley_value(const BooleanFunction& f, int i) {
    const int n = f.arity();
    Rational total = 0;
    const Tuple e = Tuple{1} << i;
    for (Tuple s = 0; s < f.size(); ++s) {
        if (s & e) continue;
        if (f(s) == f(s | e)) continue;
        int k = popcount(s);
        total += fact(k) * fact(n - k - 1) / fact(n);
    }
    return total;
}

inline double expectation_biased(const BooleanFunction& f, double p) {
    double s = 0;
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x)) s += biased_mass(p, f.arity(), x);
    return s;
}

inline Rational expectation_biased_exact(const BooleanFunction& f, const Rational& p) {
    Rational s = 0;
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x)) s += biased_mass_exact(p, f.arity(), x);
    return s;
}

// E with bias p on `up` coordinates and q elsewhere.
inline double expectation_split(const BooleanFunction& f, const std::vector<bool>& up, double p, double q) {
    double s = 0;
    for (Tuple x = 0; x < f.size(); ++x) {
        if (!f(x)) continue;
        double m = 1;
        for (int i = 0; i < f.arity(); ++i) {
            double r = up[i] ? p : q;
            m *= ((x >> i) & 1) ? r : 1 - r;
        }
        s += m;
    }
    return s;
}

// Coefficients of the unique multilinear polynomial through f, by Moebius
// inversion over subsets.
inline std::vector<Rational> moebius(const BooleanFunction& f) {
    std::vector<Rational> c(f.size());
    for (Tuple s = 0; s < f.size(); ++s) {
        Rational acc = 0;
        for (Tuple t = s;; t = (t - 1) & s) {
            int sign = (popcount(s & ~t) % 2) ? -1 : 1;
            if (f(t)) acc += Rational(sign);
            if (t == 0) break;
        }
        c[s] = acc;
    }
    return c;
}

// ---------------------------------------------------------------- structure

// +1 increasing, -1 decreasing, 0 non-essential, 2 neither.
inline int direction(const BooleanFunction& f, int i) {
    bool up = false, down = false;
    const Tuple e = Tuple{1} << i;
    for (Tuple x = 0; x < f.size(); ++x) {
        if (x & e) continue;
        if (!f(x) && f(x | e)) up = true;
        if (f(x) && !f(x | e)) down = true;
    }
    if (up && down) return 2;
    return up ? 1 : down ? -1 : 0;
}

inline bool unate(const BooleanFunction& f) {
    for (int i = 0; i < f.arity(); ++i)
        if (direction(f, i) == 2) return false;
    return true;
}

// Homomorphism from the m-th power of A to B, checked by listing every
// m-tuple of rows of every relation of A.
inline bool power_homomorphism(const BooleanFunction& f, const bfl::Template& t) {
    const int m = f.arity();
    for (std::size_t r = 0; r < t.a.relations.size(); ++r) {
        const auto& ra = t.a.relations[r];
        const auto& rb = t.b.relations[r];
        const std::size_t rows = ra.tuples.size();
        if (rows == 0) continue;
        std::vector<std::size_t> pick(m, 0);
        for (;;) {
            Tuple image = 0;
            for (int c = 0; c < ra.arity; ++c) {
                Tuple column = 0;
                for (int j = 0; j < m; ++j)
                    if ((ra.tuples[pick[j]] >> c) & 1) column |= Tuple{1} << j;
                if (f(column)) image |= Tuple{1} << c;
            }
            if (std::find(rb.tuples.begin(), rb.tuples.end(), image) == rb.tuples.end()) return false;
            int pos = 0;
            while (pos < m && ++pick[pos] == rows) pick[pos++] = 0;
            if (pos == m) break;
        }
    }
    return true;
}

// Best value of a Label Cover instance by trying every labeling.
inline Rational best_value(const bfl::LabelCoverInstance& lc) {
    const int L = lc.left, R = lc.right, n = lc.n;
    if (lc.edges.empty()) return 1;
    std::vector<int> lab(L + R, 0);
    long long best = 0;
    for (;;) {
        long long sat = 0;
        for (const auto& e : lc.edges)
            if (e.pi[lab[e.u]] == lab[L + e.v]) ++sat;
        best = std::max(best, sat);
        int pos = 0;
        while (pos < L + R && ++lab[pos] == (pos < L ? 2 * n : n)) lab[pos++] = 0;
        if (pos == L + R) break;
    }
    return Rational(best) / Rational(static_cast<long long>(lc.edges.size()));
}

// ---------------------------------------------------------------- random

inline BooleanFunction random_function(int n, std::mt19937_64& g) {
    BooleanFunction f(n);
    for (Tuple x = 0; x < f.size(); ++x) f.set(x, g() & 1);
    return f;
}

// Upward closure of a few random seeds, then a random sign flip per
// coordinate: a random unate function.
inline BooleanFunction random_unate(int n, std::mt19937_64& g) {
    const Tuple size = Tuple{1} << n;
    std::vector<Tuple> gens;
    int count = 1 + static_cast<int>(g() % 4);
    for (int j = 0; j < count; ++j) gens.push_back(g() & (size - 1));
    BooleanFunction inc(n);
    for (Tuple x = 0; x < size; ++x)
        for (Tuple s : gens)
            if ((x & s) == s) inc.set(x, true);
    Tuple flip = g() & (size - 1);
    BooleanFunction f(n);
    for (Tuple x = 0; x < size; ++x) f.set(x, inc(x ^ flip));
    return f;
}

}  // namespace oracle

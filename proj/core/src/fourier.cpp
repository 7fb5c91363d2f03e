#include "bfl/fourier.hpp"

#include <bit>
#include <cmath>

#include "bfl/error.hpp"
#include "bfl/parallel.hpp"

namespace bfl {

namespace {

void check_bias(double p) {
    if (!(p > 0 && p < 1)) throw ValidationError("bias p must lie in the open interval (0, 1)");
}

void check_table(const std::vector<double>& table, int n) {
    if (n < 1 || n > kMaxArity) throw ValidationError("transform: arity out of range");
    if (table.size() != (std::size_t{1} << n)) throw ValidationError("transform: table size is not 2^n");
}

// Applies one butterfly stage per coordinate; stages split across workers
// when the table is large enough to benefit.
template <class Op>
void butterflies(std::vector<double>& t, int n, Op op) {
    const std::size_t size = t.size();
    for (int i = 0; i < n; ++i) {
        const std::size_t b = std::size_t{1} << i;
        auto run_range = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t x = lo; x < hi; ++x) {
                if (x & b) continue;
                op(i, t[x], t[x | b]);
            }
        };
        if (n < 16) {
            run_range(0, size);
            continue;
        }
        const std::size_t parts = 64;
        const std::size_t step = size / parts;
        parallel_for(parts, [&](std::size_t k) { run_range(k * step, (k + 1) * step); });
    }
}

}  // namespace

std::vector<double> to_real_table(const BooleanFunction& f) {
    std::vector<double> t(f.size());
    for (Tuple x = 0; x < f.size(); ++x) t[x] = f(x) ? 1.0 : 0.0;
    return t;
}

Spectrum transform_product(const std::vector<double>& table, int n, const std::vector<double>& bias) {
    check_table(table, n);
    if (static_cast<int>(bias.size()) != n) throw ValidationError("transform: bias vector length mismatch");
    for (double p : bias) check_bias(p);
    Spectrum s;
    s.n = n;
    s.bias = bias;
    s.coeffs = table;
    std::vector<double> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = std::sqrt(bias[i] * (1 - bias[i]));
    butterflies(s.coeffs, n, [&](int i, double& lo, double& hi) {
        double f0 = lo, f1 = hi, p = bias[i];
        lo = (1 - p) * f0 + p * f1;
        hi = sigma[i] * (f1 - f0);
    });
    return s;
}

Spectrum transform(const std::vector<double>& table, int n, double p) {
    check_bias(p);
    return transform_product(table, n, std::vector<double>(n, p));
}

Spectrum transform(const BooleanFunction& f, double p) {
    return transform(to_real_table(f), f.arity(), p);
}

std::vector<double> inverse_transform(const Spectrum& s) {
    std::vector<double> t = s.coeffs;
    std::vector<double> sigma(s.n);
    for (int i = 0; i < s.n; ++i) sigma[i] = std::sqrt(s.bias[i] * (1 - s.bias[i]));
    butterflies(t, s.n, [&](int i, double& lo, double& hi) {
        double a = lo, b = hi / sigma[i], p = s.bias[i];
        lo = a - p * b;
        hi = a + (1 - p) * b;
    });
    return t;
}

double parseval_gap(const BooleanFunction& f, double p) {
    Spectrum s = transform(f, p);
    double sum = 0;
    for (double c : s.coeffs) sum += c * c;
    double ef2 = 0;
    // E_p[f^2] = E_p[f] for a 0/1-valued f, summed by layer.
    std::vector<double> layer(f.arity() + 1, 0);
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x)) layer[weight(x)] += 1;
    for (int k = 0; k <= f.arity(); ++k)
        if (layer[k] != 0) ef2 += layer[k] * std::pow(p, k) * std::pow(1 - p, f.arity() - k);
    return std::abs(sum - ef2);
}

double influence_spectral(const Spectrum& s, int i) {
    if (i < 0 || i >= s.n) throw ValidationError("coordinate out of range");
    const Mask b = Mask{1} << i;
    double acc = 0;
    for (Mask S = 0; S < s.coeffs.size(); ++S)
        if (S & b) acc += s.coeffs[S] * s.coeffs[S];
    double p = s.bias[i];
    return acc / (p * (1 - p));
}

double total_influence_spectral(const Spectrum& s) {
    bool uniform = true;
    for (double p : s.bias) uniform = uniform && p == s.bias.front();
    if (!uniform) {
        double acc = 0;
        for (int i = 0; i < s.n; ++i) acc += influence_spectral(s, i);
        return acc;
    }
    double acc = 0;
    for (Mask S = 0; S < s.coeffs.size(); ++S) acc += std::popcount(S) * s.coeffs[S] * s.coeffs[S];
    double p = s.p();
    return acc / (p * (1 - p));
}

Spectrum noise_operator(const Spectrum& s, double delta) {
    if (!(delta >= 0 && delta <= 1)) throw ValidationError("noise rate delta must lie in [0, 1]");
    Spectrum out = s;
    std::vector<double> scale(s.n + 1);
    for (int k = 0; k <= s.n; ++k) scale[k] = std::pow(1 - delta, k);
    for (Mask S = 0; S < out.coeffs.size(); ++S) out.coeffs[S] *= scale[std::popcount(S)];
    return out;
}

double noise_stability(const Spectrum& s, double delta) {
    Spectrum t = noise_operator(s, delta);
    double acc = 0;
    for (Mask S = 0; S < s.coeffs.size(); ++S) acc += s.coeffs[S] * t.coeffs[S];
    return acc;
}

namespace {

double noise_sensitivity_direct(const BooleanFunction& f, double p, double delta) {
    const int n = f.arity();
    if (n > kMaxDirectNoiseArity)
        throw ValidationError("direct noise sensitivity is limited to arity " +
                              std::to_string(kMaxDirectNoiseArity));
    const std::size_t size = f.size();
    // Per-coordinate kernel Pr[y_i = b | x_i = a].
    double k[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            k[a][b] = (a == b ? 1 - delta : 0.0) + delta * (b ? p : 1 - p);
    std::vector<double> partial(size, 0);
    parallel_for(size, [&](std::size_t x) {
        double mu = 1;
        for (int i = 0; i < n; ++i) mu *= bit(x, i) ? p : 1 - p;
        std::vector<double> kern(size);
        kern[0] = 1;
        for (int i = 0; i < n; ++i) {
            const std::size_t half = std::size_t{1} << i;
            const int a = bit(x, i);
            for (std::size_t y = 0; y < half; ++y) {
                kern[y | half] = kern[y] * k[a][1];
                kern[y] *= k[a][0];
            }
        }
        const bool fx = f(x);
        double acc = 0;
        for (std::size_t y = 0; y < size; ++y)
            if (f(y) != fx) acc += kern[y];
        partial[x] = mu * acc;
    });
    double total = 0;
    for (double v : partial) total += v;
    return total;
}

}  // namespace

double noise_sensitivity(const BooleanFunction& f, double p, double delta, NoiseMode mode) {
    check_bias(p);
    if (!(delta >= 0 && delta <= 1)) throw ValidationError("noise rate delta must lie in [0, 1]");
    if (mode == NoiseMode::Direct) return noise_sensitivity_direct(f, p, delta);
    Spectrum s = transform(f, p);
    return 2 * (s.coeffs[0] - noise_stability(s, delta));
}

double tail_weight(const Spectrum& s, int d) {
    if (d < 0 || d > s.n) throw ValidationError("tail degree outside [0, n]");
    double acc = 0;
    for (Mask S = 0; S < s.coeffs.size(); ++S)
        if (std::popcount(S) > d) acc += s.coeffs[S] * s.coeffs[S];
    return acc;
}

std::vector<double> level_weights(const Spectrum& s) {
    std::vector<double> w(s.n + 1, 0);
    for (Mask S = 0; S < s.coeffs.size(); ++S) w[std::popcount(S)] += s.coeffs[S] * s.coeffs[S];
    return w;
}

}  // namespace bfl

#pragma once

#include <vector>

#include "bfl/boolfn.hpp"

namespace bfl {

// Coefficients in the biased character basis chi_S = prod_{i in S} (x_i - p_i)/sqrt(p_i(1-p_i)),
// indexed by subset mask.  `bias` holds one p_i per coordinate; the p-biased
// case has all entries equal.
struct Spectrum {
    int n = 0;
    std::vector<double> bias;
    std::vector<double> coeffs;

    double p() const { return bias.front(); }
    double operator[](Mask s) const { return coeffs[s]; }
};

Spectrum transform(const BooleanFunction& f, double p);
Spectrum transform(const std::vector<double>& table, int n, double p);
Spectrum transform_product(const std::vector<double>& table, int n, const std::vector<double>& bias);
std::vector<double> inverse_transform(const Spectrum& s);

std::vector<double> to_real_table(const BooleanFunction& f);

// |sum_S fhat(S)^2 - E_p[f^2]|.
double parseval_gap(const BooleanFunction& f, double p);

// (1/(p_i(1-p_i))) sum_{S containing i} fhat(S)^2.
double influence_spectral(const Spectrum& s, int i);
double total_influence_spectral(const Spectrum& s);

// Scales fhat(S) by (1-delta)^|S|.
Spectrum noise_operator(const Spectrum& s, double delta);
// <f, T_{1-delta} f> = sum_S (1-delta)^|S| fhat(S)^2.
double noise_stability(const Spectrum& s, double delta);

enum class NoiseMode { Spectral, Direct };
inline constexpr int kMaxDirectNoiseArity = 12;

// Pr[f(x) != f(y)], x ~ mu_p, y re-samples each coordinate from mu_p with
// probability delta.
double noise_sensitivity(const BooleanFunction& f, double p, double delta,
                         NoiseMode mode = NoiseMode::Spectral);

// sum_{|S| > d} fhat(S)^2.
double tail_weight(const Spectrum& s, int d);
// Weight on each level |S| = 0..n.
std::vector<double> level_weights(const Spectrum& s);

}  // namespace bfl

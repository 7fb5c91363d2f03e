#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bfl/bits.hpp"
#include "bfl/rational.hpp"

namespace bfl {

// Monomial: variables are the 0/1 inputs x_i.
// Character: variables are chi_i^(p)(x_i) = (x_i - p)/sqrt(p(1-p)).
enum class Basis { Monomial, Character };

struct MultilinearPoly {
    int n = 0;
    int k = 0;  // degree bound; every stored mask has popcount <= k
    Basis basis = Basis::Monomial;
    double p = 0.5;  // meaningful for the character basis
    std::map<Mask, double> coeffs;
    std::optional<std::map<Mask, Rational>> exact;

    double coeff(Mask s) const;
    int degree() const;
    // Evaluates with real values for the variables (x_i or chi_i per basis).
    double eval_vars(const std::vector<double>& v) const;
    // Evaluates at a Boolean point, substituting chi values in the character basis.
    double eval_point(Tuple x) const;
    Rational eval_point_exact(Tuple x) const;  // monomial basis with exact coefficients

    // sum_{|S| > 0} Q_S^2
    double nonconstant_norm2() const;
    bool is_normalized(double tol = 1e-12) const;

    void set(Mask s, double v);
    void set_exact(Mask s, const Rational& v);
    // Throws ValidationError on masks outside [n] or above the degree bound.
    void validate() const;
};

}  // namespace bfl

#include "bfl/poly.hpp"

#include <algorithm>
#include <cmath>

#include "bfl/error.hpp"

namespace bfl {

double MultilinearPoly::coeff(Mask s) const {
    auto it = coeffs.find(s);
    return it == coeffs.end() ? 0.0 : it->second;
}

int MultilinearPoly::degree() const {
    int d = 0;
    for (const auto& [s, v] : coeffs)
        if (v != 0.0) d = std::max(d, weight(s));
    return d;
}

double MultilinearPoly::eval_vars(const std::vector<double>& v) const {
    detail::require(static_cast<int>(v.size()) == n, "variable vector has wrong length");
    double total = 0.0;
    for (const auto& [s, c] : coeffs) {
        double term = c;
        for (Mask m = s; m; m &= m - 1) term *= v[std::countr_zero(m)];
        total += term;
    }
    return total;
}

double MultilinearPoly::eval_point(Tuple x) const {
    if (basis == Basis::Monomial) {
        if (exact) return eval_point_exact(x).to_double();
        double total = 0.0;
        for (const auto& [s, c] : coeffs)
            if ((s & x) == s) total += c;
        return total;
    }
    const double sigma = std::sqrt(p * (1.0 - p));
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = (static_cast<double>(bit(x, i)) - p) / sigma;
    return eval_vars(v);
}

Rational MultilinearPoly::eval_point_exact(Tuple x) const {
    if (basis != Basis::Monomial || !exact) throw ValidationError("exact evaluation needs exact monomial coefficients");
    Rational total;
    for (const auto& [s, c] : *exact)
        if ((s & x) == s) total += c;
    return total;
}

double MultilinearPoly::nonconstant_norm2() const {
    double total = 0.0;
    for (const auto& [s, c] : coeffs)
        if (s != 0) total += c * c;
    return total;
}

bool MultilinearPoly::is_normalized(double tol) const { return std::abs(nonconstant_norm2() - 1.0) <= tol; }

void MultilinearPoly::set(Mask s, double v) {
    if (v == 0.0)
        coeffs.erase(s);
    else
        coeffs[s] = v;
}

void MultilinearPoly::set_exact(Mask s, const Rational& v) {
    if (!exact) exact.emplace();
    if (v.is_zero())
        exact->erase(s);
    else
        (*exact)[s] = v;
    set(s, v.to_double());
}

void MultilinearPoly::validate() const {
    if (n < 0 || n > 62) throw ValidationError("polynomial arity out of range");
    if (k < 0 || k > n) throw ValidationError("degree bound must lie in [0, n]");
    if (basis == Basis::Character && !(p > 0.0 && p < 1.0))
        throw ValidationError("character basis needs p in (0,1)");
    auto check = [&](Mask s) {
        if (s & ~full_mask(n)) throw ValidationError("monomial mentions a coordinate outside [n]");
        if (weight(s) > k) throw ValidationError("monomial exceeds the degree bound");
    };
    for (const auto& [s, c] : coeffs) check(s);
    if (exact)
        for (const auto& [s, c] : *exact) check(s);
}

}  // namespace bfl

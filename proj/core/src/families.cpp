#include "bfl/boolfn.hpp"
#include "bfl/error.hpp"

namespace bfl::family {

namespace {
void check_arity(long n, const char* what) {
    if (n < 1 || n > kMaxArity)
        throw ValidationError(std::string(what) + ": arity " + std::to_string(n) +
                              " outside [1, " + std::to_string(kMaxArity) + "]");
}
}  // namespace

BooleanFunction majority(int m) {
    if (m < 0) throw ValidationError("maj: parameter must be non-negative");
    check_arity(2L * m + 1, "maj");
    return BooleanFunction::from_predicate(2 * m + 1, [m](Tuple x) { return weight(x) > m; });
}

BooleanFunction threshold(const Rational& t, int m) {
    check_arity(m, "thr");
    if (t <= Rational(0) || t >= Rational(1))
        throw ValidationError("thr: threshold " + t.str() + " outside (0, 1)");
    Rational tm = t * Rational(m);
    if (tm.den() == 1)
        throw ValidationError("thr: t*m = " + tm.str() + " must not be an integer");
    return BooleanFunction::from_predicate(m, [&](Tuple x) { return Rational(weight(x)) > tm; });
}

BooleanFunction maximum(int m) {
    check_arity(m, "max");
    return BooleanFunction::from_predicate(m, [](Tuple x) { return x != 0; });
}

BooleanFunction minimum(int m) {
    check_arity(m, "min");
    Mask all = full_mask(m);
    return BooleanFunction::from_predicate(m, [all](Tuple x) { return x == all; });
}

BooleanFunction parity(int arity) {
    check_arity(arity, "xor");
    return BooleanFunction::from_predicate(arity, [](Tuple x) { return weight(x) & 1; });
}

BooleanFunction alternating_threshold(int m) {
    if (m < 0) throw ValidationError("at: parameter must be non-negative");
    check_arity(2L * m + 1, "at");
    Mask xs = full_mask(m + 1);
    return BooleanFunction::from_predicate(2 * m + 1, [xs](Tuple t) {
        return weight(t & xs) > weight(t & ~xs);
    });
}

BooleanFunction almost_negation(int n) {
    check_arity(n, "an");
    Mask all = full_mask(n);
    return BooleanFunction::from_predicate(n, [all](Tuple x) {
        bool x1 = x & 1u;
        bool all_equal = x == 0 || x == all;
        return all_equal ? x1 : !x1;
    });
}

BooleanFunction tribes(int s, int b) {
    if (s < 1 || b < 1) throw ValidationError("tribes: block size and count must be positive");
    check_arity(static_cast<long>(s) * b, "tribes");
    Mask block = full_mask(s);
    return BooleanFunction::from_predicate(s * b, [s, b, block](Tuple x) {
        for (int j = 0; j < b; ++j)
            if (((x >> (j * s)) & block) == block) return true;
        return false;
    });
}

BooleanFunction projection(int n, int i) {
    check_arity(n, "proj");
    if (i < 0 || i >= n)
        throw ValidationError("proj: coordinate " + std::to_string(i + 1) + " outside [1, " +
                              std::to_string(n) + "]");
    return BooleanFunction::from_predicate(n, [i](Tuple x) { return bit(x, i); });
}

BooleanFunction constant(int n, bool v) {
    check_arity(n, "const");
    return BooleanFunction(n, v);
}

}  // namespace bfl::family

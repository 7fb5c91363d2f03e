#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bfl/bits.hpp"
#include "bfl/rational.hpp"

namespace bfl {

// Exhaustive operations are intended for arity <= 20; tables are refused
// above this hard cap.
inline constexpr int kMaxArity = 24;

class BooleanFunction {
public:
    BooleanFunction() = default;
    explicit BooleanFunction(int arity, bool fill = false);

    template <class Pred>
    static BooleanFunction from_predicate(int arity, Pred&& pred) {
        BooleanFunction f(arity);
        for (Tuple x = 0; x < f.size(); ++x)
            if (pred(x)) f.set(x, true);
        return f;
    }
    static BooleanFunction from_bits(int arity, const std::vector<bool>& table);

    int arity() const { return arity_; }
    std::uint64_t size() const { return std::uint64_t{1} << arity_; }

    bool operator()(Tuple x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
    // Range-checked evaluation.
    bool eval(Tuple x) const;
    void set(Tuple x, bool v);

    std::uint64_t count_ones() const;
    bool is_constant() const;
    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
    int arity_ = 0;
    std::vector<std::uint64_t> words_;
};

BooleanFunction negate(const BooleanFunction& f);

// pi : [n] -> [m], stored 0-based.
class MinorMap {
public:
    MinorMap() = default;
    MinorMap(int source_arity, int target_arity, std::vector<int> image);
    static MinorMap identity(int n);
    // Parses 1-based images as used in files and on the command line.
    static MinorMap from_one_based(int target_arity, const std::vector<int>& image);

    int source_arity() const { return static_cast<int>(image_.size()); }
    int target_arity() const { return target_; }
    int operator[](int i) const { return image_[i]; }
    const std::vector<int>& image() const { return image_; }
    std::vector<int> one_based() const;

    bool is_two_to_one() const;
    // Preimage sizes, indexed by target coordinate.
    std::vector<int> fibre_sizes() const;

    friend bool operator==(const MinorMap&, const MinorMap&) = default;
    friend auto operator<=>(const MinorMap& a, const MinorMap& b) {
        return a.image_ <=> b.image_;
    }

private:
    int target_ = 0;
    std::vector<int> image_;
};

// Returns pi1 o pi0 (first pi0, then pi1).
MinorMap compose(const MinorMap& pi0, const MinorMap& pi1);

// x with x_i = y_{pi(i)}.
Tuple pullback_tuple(const MinorMap& pi, Tuple y);

// g(y) = f(pullback_tuple(pi, y)).
BooleanFunction apply_minor(const BooleanFunction& f, const MinorMap& pi);

struct Classification {
    Mask essential = 0;
    Mask domain_up = 0;
    Mask domain_down = 0;
    bool is_unate = false;
    bool is_increasing = false;
    bool is_decreasing = false;
    bool is_symmetric = false;
    bool is_idempotent = false;
};

Classification classify(const BooleanFunction& f);

bool is_symmetric(const BooleanFunction& f);
bool is_idempotent(const BooleanFunction& f);

// Standard families.  Arities follow the usual conventions:
// maj(m) and at(m) have arity 2m+1; the others take their arity directly.
namespace family {
BooleanFunction majority(int m);
BooleanFunction threshold(const Rational& t, int m);
BooleanFunction maximum(int m);
BooleanFunction minimum(int m);
BooleanFunction parity(int arity);
BooleanFunction alternating_threshold(int m);
BooleanFunction almost_negation(int n);
BooleanFunction tribes(int s, int b);
BooleanFunction projection(int n, int i);  // i is 0-based
BooleanFunction constant(int n, bool v);
}  // namespace family

}  // namespace bfl

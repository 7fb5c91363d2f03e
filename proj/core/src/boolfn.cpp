#include "bfl/boolfn.hpp"

#include <algorithm>
#include <bit>

#include "bfl/error.hpp"

namespace bfl {

Mask mask_of(const std::vector<int>& coords, int n) {
    Mask m = 0;
    for (int c : coords) {
        if (c < 0 || c >= n)
            throw ValidationError("coordinate " + std::to_string(c + 1) + " outside [1, " +
                                  std::to_string(n) + "]");
        m |= Mask{1} << c;
    }
    return m;
}

std::vector<int> coords_of(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

BooleanFunction::BooleanFunction(int arity, bool fill) : arity_(arity) {
    if (arity < 1 || arity > kMaxArity)
        throw ValidationError("arity " + std::to_string(arity) + " outside [1, " +
                              std::to_string(kMaxArity) + "]");
    std::size_t nwords = (size() + 63) / 64;
    words_.assign(nwords, fill ? ~std::uint64_t{0} : 0);
    if (fill && size() < 64) words_[0] = (std::uint64_t{1} << size()) - 1;
}

BooleanFunction BooleanFunction::from_bits(int arity, const std::vector<bool>& table) {
    BooleanFunction f(arity);
    if (table.size() != f.size())
        throw ValidationError("truth table has " + std::to_string(table.size()) +
                              " entries, expected " + std::to_string(f.size()));
    for (Tuple x = 0; x < f.size(); ++x) f.set(x, table[x]);
    return f;
}

bool BooleanFunction::eval(Tuple x) const {
    if (x >= size())
        throw ValidationError("tuple index " + std::to_string(x) + " out of range for arity " +
                              std::to_string(arity_));
    return (*this)(x);
}

void BooleanFunction::set(Tuple x, bool v) {
    std::uint64_t b = std::uint64_t{1} << (x & 63);
    if (v)
        words_[x >> 6] |= b;
    else
        words_[x >> 6] &= ~b;
}

std::uint64_t BooleanFunction::count_ones() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool BooleanFunction::is_constant() const {
    auto c = count_ones();
    return c == 0 || c == size();
}

BooleanFunction negate(const BooleanFunction& f) {
    BooleanFunction g(f.arity(), true);
    for (Tuple x = 0; x < f.size(); ++x)
        if (f(x)) g.set(x, false);
    return g;
}

MinorMap::MinorMap(int source_arity, int target_arity, std::vector<int> image)
    : target_(target_arity), image_(std::move(image)) {
    if (source_arity < 1 || static_cast<int>(image_.size()) != source_arity)
        throw ValidationError("minor map image length does not match source arity");
    if (target_arity < 1) throw ValidationError("minor map target arity must be positive");
    for (int v : image_)
        if (v < 0 || v >= target_arity)
            throw ValidationError("minor map value " + std::to_string(v + 1) + " outside [1, " +
                                  std::to_string(target_arity) + "]");
}

MinorMap MinorMap::identity(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    return MinorMap(n, n, std::move(img));
}

MinorMap MinorMap::from_one_based(int target_arity, const std::vector<int>& image) {
    std::vector<int> img(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) img[i] = image[i] - 1;
    return MinorMap(static_cast<int>(image.size()), target_arity, std::move(img));
}

std::vector<int> MinorMap::one_based() const {
    std::vector<int> out(image_);
    for (int& v : out) ++v;
    return out;
}

std::vector<int> MinorMap::fibre_sizes() const {
    std::vector<int> c(target_, 0);
    for (int v : image_) ++c[v];
    return c;
}

bool MinorMap::is_two_to_one() const {
    if (source_arity() != 2 * target_) return false;
    for (int c : fibre_sizes())
        if (c != 2) return false;
    return true;
}

MinorMap compose(const MinorMap& pi0, const MinorMap& pi1) {
    if (pi0.target_arity() != pi1.source_arity())
        throw ValidationError("minor maps are not composable");
    std::vector<int> img(pi0.source_arity());
    for (int i = 0; i < pi0.source_arity(); ++i) img[i] = pi1[pi0[i]];
    return MinorMap(pi0.source_arity(), pi1.target_arity(), std::move(img));
}

Tuple pullback_tuple(const MinorMap& pi, Tuple y) {
    if (y >> pi.target_arity())
        throw ValidationError("tuple index out of range for the target arity");
    Tuple x = 0;
    for (int i = 0; i < pi.source_arity(); ++i) x |= ((y >> pi[i]) & 1u) << i;
    return x;
}

BooleanFunction apply_minor(const BooleanFunction& f, const MinorMap& pi) {
    if (pi.source_arity() != f.arity())
        throw ValidationError("minor map source arity " + std::to_string(pi.source_arity()) +
                              " does not match function arity " + std::to_string(f.arity()));
    int m = pi.target_arity();
    // Spread mask per target coordinate: the source bits that copy y_j.
    std::vector<Mask> spread(m, 0);
    for (int i = 0; i < pi.source_arity(); ++i) spread[pi[i]] |= Mask{1} << i;
    BooleanFunction g(m);
    for (Tuple y = 0; y < g.size(); ++y) {
        Tuple x = 0;
        for (Mask rest = y; rest; rest &= rest - 1) x |= spread[std::countr_zero(rest)];
        if (f(x)) g.set(y, true);
    }
    return g;
}

Classification classify(const BooleanFunction& f) {
    const int n = f.arity();
    Classification c;
    Mask not_up = 0, not_down = 0;
    for (int i = 0; i < n; ++i) {
        Mask b = Mask{1} << i;
        for (Tuple x = 0; x < f.size(); ++x) {
            if (x & b) continue;
            bool lo = f(x), hi = f(x | b);
            if (lo && !hi) not_up |= b;
            if (!lo && hi) not_down |= b;
            if ((not_up & b) && (not_down & b)) break;
        }
    }
    Mask all = full_mask(n);
    c.domain_up = all & ~not_up;
    c.domain_down = all & ~not_down;
    c.essential = not_up | not_down;
    c.is_unate = (c.domain_up | c.domain_down) == all;
    c.is_increasing = c.domain_up == all;
    c.is_decreasing = c.domain_down == all;
    c.is_symmetric = is_symmetric(f);
    c.is_idempotent = is_idempotent(f);
    return c;
}

bool is_symmetric(const BooleanFunction& f) {
    std::vector<int> layer(f.arity() + 1, -1);
    for (Tuple x = 0; x < f.size(); ++x) {
        int w = weight(x);
        int v = f(x);
        if (layer[w] < 0)
            layer[w] = v;
        else if (layer[w] != v)
            return false;
    }
    return true;
}

bool is_idempotent(const BooleanFunction& f) { return !f(0) && f(f.size() - 1); }

}  // namespace bfl

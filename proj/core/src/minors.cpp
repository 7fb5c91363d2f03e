#include "bfl/minors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bfl/error.hpp"
#include "bfl/influence.hpp"

namespace bfl {

namespace {

constexpr int kMaxEnumeratedN = 5;

void check_enumerable_n(int n) {
    if (n < 1 || n > kMaxEnumeratedN)
        throw ValidationError("2-to-1 map enumeration supports 1 <= n <= " +
                              std::to_string(kMaxEnumeratedN) + " (got " + std::to_string(n) + ")");
}

void check_even_arity(const BooleanFunction& f) {
    if (f.arity() % 2 != 0)
        throw ValidationError("function arity " + std::to_string(f.arity()) +
                              " is odd; 2-to-1 minors need an even arity");
}

void check_coordinate(const BooleanFunction& f, int i) {
    if (i < 0 || i >= f.arity())
        throw ValidationError("coordinate " + std::to_string(i + 1) + " outside [1, " +
                              std::to_string(f.arity()) + "]");
}

Mask image_mask(const MinorMap& pi, Mask source) {
    Mask out = 0;
    for (Mask rest = source; rest; rest &= rest - 1) out |= Mask{1} << pi[std::countr_zero(rest)];
    return out;
}

}  // namespace

std::uint64_t count_two_to_one(int n) {
    if (n < 0 || n > 16) throw ValidationError("count_two_to_one: n out of range");
    std::uint64_t c = 1;
    // (2n)!/2^n = prod_{j=1..n} j(2j-1)
    for (int j = 1; j <= n; ++j) c *= static_cast<std::uint64_t>(j) * (2 * j - 1);
    return c;
}

MinorMap random_two_to_one(int n, Rng& rng) {
    if (n < 1) throw ValidationError("random_two_to_one: n must be positive");
    std::vector<int> perm(2 * n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 2 * n - 1; k > 0; --k) std::swap(perm[k], perm[rng.below(k + 1)]);
    std::vector<int> img(2 * n);
    for (int pos = 0; pos < 2 * n; ++pos) img[perm[pos]] = pos / 2;
    return MinorMap(2 * n, n, std::move(img));
}

MinorMap random_two_to_one(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_two_to_one(n, rng);
}

void for_each_two_to_one(int n, const std::function<void(const MinorMap&)>& visit) {
    check_enumerable_n(n);
    std::vector<int> img(2 * n, 0);
    std::vector<int> used(n, 0);
    std::function<void(int)> rec = [&](int c) {
        if (c == 2 * n) {
            visit(MinorMap(2 * n, n, img));
            return;
        }
        for (int t = 0; t < n; ++t) {
            if (used[t] == 2) continue;
            ++used[t];
            img[c] = t;
            rec(c + 1);
            --used[t];
        }
    };
    rec(0);
}

std::vector<MinorMap> enumerate_two_to_one(int n) {
    std::vector<MinorMap> out;
    out.reserve(count_two_to_one(n));
    for_each_two_to_one(n, [&](const MinorMap& m) { out.push_back(m); });
    return out;
}

double binomial_half_width(double p, std::uint64_t samples) {
    if (samples == 0) return 0;
    return 1.96 * std::sqrt(p * (1 - p) / static_cast<double>(samples));
}

MinorMap identification_map(int arity, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= arity || j >= arity)
        throw ValidationError("identification_map: need two distinct coordinates");
    std::vector<int> img(arity);
    int next = 0;
    for (int c = 0; c < arity; ++c) {
        if (c == i || c == j) continue;
        img[c] = next++;
    }
    img[i] = img[j] = arity - 2;
    return MinorMap(arity, arity - 1, std::move(img));
}

namespace {

// Counts hits of the two-step decomposition in exact mode.
void two_step_exact(const BooleanFunction& f, int i, const Distribution& d, double tau,
                    PreservationReport& rep) {
    const int two_n = f.arity();
    const int n = two_n / 2;
    auto masses_mid = mass_table(d, two_n - 1);
    auto masses_n = mass_table(d, n);
    std::vector<int> others;
    for (int c = 0; c < two_n; ++c)
        if (c != i) others.push_back(c);

    std::vector<MinorMap> inner_maps;
    if (n > 1) inner_maps = enumerate_two_to_one(n - 1);

    std::vector<std::uint64_t> hits(others.size(), 0), totals(others.size(), 0);
    std::vector<double> mids(others.size(), 0);
    parallel_for(others.size(), [&](std::size_t k) {
        MinorMap pi0 = identification_map(two_n, i, others[k]);
        BooleanFunction f0 = apply_minor(f, pi0);
        mids[k] = influence_with_masses(f0, two_n - 2, masses_mid);
        auto run = [&](const MinorMap& pi1) {
            BooleanFunction g = apply_minor(f0, pi1);
            ++totals[k];
            if (influence_with_masses(g, n - 1, masses_n) >= tau - kInfluenceSlack) ++hits[k];
        };
        if (n == 1) {
            run(MinorMap::identity(1));
            return;
        }
        for (const auto& inner : inner_maps) {
            std::vector<int> img(inner.image());
            img.push_back(n - 1);
            run(MinorMap(two_n - 1, n, std::move(img)));
        }
    });
    std::uint64_t h = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    std::uint64_t t = std::accumulate(totals.begin(), totals.end(), std::uint64_t{0});
    rep.intermediate_influences = mids;
    rep.two_step_estimate = static_cast<double>(h) / static_cast<double>(t);
}

}  // namespace

PreservationReport preservation_probability(const BooleanFunction& f, int i, const Distribution& d,
                                            double tau, const PreservationOptions& opts) {
    check_even_arity(f);
    check_coordinate(f, i);
    const int n = f.arity() / 2;
    d.check_dimension(n);
    PreservationReport rep;
    rep.mode = opts.mode;
    rep.seed = opts.seed;
    auto masses_n = mass_table(d, n);

    if (opts.mode == Mode::Exact) {
        check_enumerable_n(n);
        auto maps = enumerate_two_to_one(n);
        rep.minor_influences.assign(maps.size(), 0);
        parallel_for(maps.size(), [&](std::size_t k) {
            BooleanFunction g = apply_minor(f, maps[k]);
            rep.minor_influences[k] = influence_with_masses(g, maps[k][i], masses_n);
        });
        std::uint64_t hits = 0;
        for (double v : rep.minor_influences)
            if (v >= tau - kInfluenceSlack) ++hits;
        rep.samples = maps.size();
        rep.estimate = static_cast<double>(hits) / static_cast<double>(maps.size());
        rep.half_width = 0;
        if (opts.two_step) two_step_exact(f, i, d, tau, rep);
        return rep;
    }

    if (opts.samples == 0) throw ValidationError("Monte-Carlo mode needs at least one sample");
    const std::uint64_t chunks = (opts.samples + kChunkSize - 1) / kChunkSize;
    std::vector<std::uint64_t> chunk_hits(chunks, 0);
    std::vector<std::vector<double>> chunk_mid(chunks);

    std::vector<int> others;
    for (int c = 0; c < f.arity(); ++c)
        if (c != i) others.push_back(c);
    std::vector<BooleanFunction> f0(others.size());
    std::vector<double> mid_value(others.size(), 0);
    if (opts.two_step) {
        auto masses_mid = mass_table(d, f.arity() - 1);
        for (std::size_t k = 0; k < others.size(); ++k) {
            f0[k] = apply_minor(f, identification_map(f.arity(), i, others[k]));
            mid_value[k] = influence_with_masses(f0[k], f.arity() - 2, masses_mid);
        }
    }

    parallel_for(chunks, [&](std::size_t c) {
        Rng rng(derive_seed(opts.seed, c));
        std::uint64_t begin = c * kChunkSize;
        std::uint64_t end = std::min(opts.samples, begin + kChunkSize);
        std::uint64_t hits = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
            double value;
            if (opts.two_step) {
                std::size_t k = rng.below(others.size());
                chunk_mid[c].push_back(mid_value[k]);
                std::vector<int> img;
                if (n > 1) img = random_two_to_one(n - 1, rng).image();
                img.push_back(n - 1);
                BooleanFunction g = apply_minor(f0[k], MinorMap(f.arity() - 1, n, std::move(img)));
                value = influence_with_masses(g, n - 1, masses_n);
            } else {
                MinorMap pi = random_two_to_one(n, rng);
                value = influence_with_masses(apply_minor(f, pi), pi[i], masses_n);
            }
            if (value >= tau - kInfluenceSlack) ++hits;
        }
        chunk_hits[c] = hits;
    });
    std::uint64_t hits = std::accumulate(chunk_hits.begin(), chunk_hits.end(), std::uint64_t{0});
    for (auto& v : chunk_mid)
        rep.intermediate_influences.insert(rep.intermediate_influences.end(), v.begin(), v.end());
    rep.samples = opts.samples;
    rep.estimate = static_cast<double>(hits) / static_cast<double>(opts.samples);
    rep.half_width = binomial_half_width(rep.estimate, opts.samples);
    return rep;
}

BooleanFunction derivative_indicator(const BooleanFunction& g) {
    if (g.arity() < 2) throw ValidationError("derivative_indicator needs arity >= 2");
    const int m = g.arity();
    const Tuple last = Tuple{1} << (m - 1);
    return BooleanFunction::from_predicate(m - 1, [&](Tuple x) { return g(x) != g(x | last); });
}

double pullback_expectation(const BooleanFunction& h, const Distribution& inner, Mode mode) {
    if (h.arity() % 2 != 0) throw ValidationError("pullback_expectation needs an even arity");
    const int two_n = h.arity();
    if (mode == Mode::Exact) {
        auto table = pullback_table_enumerated(inner, two_n);
        double acc = 0;
        for (Tuple z = 0; z < h.size(); ++z)
            if (h(z)) acc += table[z];
        return acc;
    }
    double acc = 0;
    for (Tuple z = 0; z < h.size(); ++z)
        if (h(z)) acc += pullback_mass_closed(inner, two_n, z);
    return acc;
}

Rational exact_pullback_expectation(const BooleanFunction& h, const Distribution& inner, Mode mode) {
    if (h.arity() % 2 != 0) throw ValidationError("pullback_expectation needs an even arity");
    const int two_n = h.arity();
    Rational acc(0);
    if (mode == Mode::Exact) {
        auto table = exact_pullback_table_enumerated(inner, two_n);
        for (Tuple z = 0; z < h.size(); ++z)
            if (h(z)) acc += table[z];
        return acc;
    }
    for (Tuple z = 0; z < h.size(); ++z)
        if (h(z)) acc += exact_pullback_mass_closed(inner, two_n, z);
    return acc;
}

Mask sel_influential(const BooleanFunction& f, const Distribution& d, double delta) {
    if (!(delta > 0)) throw ValidationError("sel_influential: delta must be positive");
    auto inf = influences(f, d);
    Mask out = 0;
    for (int i = 0; i < f.arity(); ++i)
        if (inf[i] >= delta - kInfluenceSlack) out |= Mask{1} << i;
    return out;
}

Mask sel_ordered(const BooleanFunction& f, double tau, double eps, const std::vector<double>& p_grid) {
    if (p_grid.empty()) throw ValidationError("sel_ordered: empty p grid");
    if (!(tau > 0) || !(eps > 0)) throw ValidationError("sel_ordered: tau and eps must be positive");
    std::vector<double> grid(p_grid);
    std::sort(grid.begin(), grid.end());
    for (double p : grid)
        if (!(p >= 0 && p <= 1)) throw ValidationError("sel_ordered: grid point outside [0, 1]");
    const double needed = tau / (2 * eps);
    Mask out = 0;
    for (int i = 0; i < f.arity(); ++i) {
        auto counts = pivotal_layer_counts(f, i);
        std::vector<int> ind(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k)
            ind[k] = layer_polynomial(counts, grid[k]) >= tau - kInfluenceSlack;
        double measure = 0;
        for (std::size_t k = 0; k + 1 < grid.size(); ++k)
            measure += (grid[k + 1] - grid[k]) * (ind[k] + ind[k + 1]) / 2.0;
        if (measure >= needed) out |= Mask{1} << i;
    }
    return out;
}

Selector influential_selector(const Distribution& d, double delta) {
    return [d, delta](const BooleanFunction& f) { return sel_influential(f, d, delta); };
}

Selector ordered_selector(double tau, double eps, std::vector<double> p_grid) {
    return [tau, eps, grid = std::move(p_grid)](const BooleanFunction& f) {
        return sel_ordered(f, tau, eps, grid);
    };
}

Estimate condition_intersection_rate(const BooleanFunction& f, const Selector& sel,
                                     std::uint64_t samples, std::uint64_t seed) {
    check_even_arity(f);
    if (samples == 0) throw ValidationError("condition_intersection_rate needs samples > 0");
    const int n = f.arity() / 2;
    const Mask sel_f = sel(f);
    const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<std::uint64_t> chunk_hits(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng(derive_seed(seed, c));
        std::uint64_t begin = c * kChunkSize;
        std::uint64_t end = std::min(samples, begin + kChunkSize);
        for (std::uint64_t s = begin; s < end; ++s) {
            MinorMap pi = random_two_to_one(n, rng);
            if (image_mask(pi, sel_f) & sel(apply_minor(f, pi))) ++chunk_hits[c];
        }
    });
    std::uint64_t hits = std::accumulate(chunk_hits.begin(), chunk_hits.end(), std::uint64_t{0});
    Estimate e;
    e.samples = samples;
    e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    e.half_width = binomial_half_width(e.estimate, samples);
    return e;
}

std::vector<Estimate> condition_intersection_rates(const std::vector<BooleanFunction>& fs,
                                                   const Selector& sel, std::uint64_t samples,
                                                   std::uint64_t seed) {
    std::vector<Estimate> out;
    out.reserve(fs.size());
    for (std::size_t k = 0; k < fs.size(); ++k)
        out.push_back(condition_intersection_rate(fs[k], sel, samples, derive_seed(seed, ~std::uint64_t{0} - k)));
    return out;
}

double condition_intersection_exact(const BooleanFunction& f, const Selector& sel) {
    check_even_arity(f);
    const int n = f.arity() / 2;
    const Mask sel_f = sel(f);
    auto maps = enumerate_two_to_one(n);
    std::vector<char> hit(maps.size(), 0);
    parallel_for(maps.size(), [&](std::size_t k) {
        hit[k] = (image_mask(maps[k], sel_f) & sel(apply_minor(f, maps[k]))) != 0;
    });
    std::uint64_t h = std::count(hit.begin(), hit.end(), 1);
    return static_cast<double>(h) / static_cast<double>(maps.size());
}

MinorMap random_split_map(const BooleanFunction& f, int w, int h, Rng& rng) {
    if (w < 0 || h < 0 || w + h < 1) throw ValidationError("random_split_minor: need w, h >= 0 and w + h >= 1");
    Classification c = classify(f);
    Mask strictly_down = c.domain_down & ~c.domain_up;
    if (h > 0 && !c.is_unate) throw ValidationError("random_split_minor: function is not unate");
    if (h == 0 && !c.is_increasing)
        throw ValidationError("random_split_minor: h = 0 needs an increasing function");
    if (w == 0 && (c.domain_up != 0))
        throw ValidationError("random_split_minor: w = 0 leaves increasing coordinates without targets");
    std::vector<int> img(f.arity());
    for (int i = 0; i < f.arity(); ++i) {
        if (strictly_down >> i & 1u)
            img[i] = w + static_cast<int>(rng.below(h));
        else
            img[i] = static_cast<int>(rng.below(w));
    }
    return MinorMap(f.arity(), w + h, std::move(img));
}

BooleanFunction random_split_minor(const BooleanFunction& f, int w, int h, std::uint64_t seed) {
    Rng rng(seed);
    return apply_minor(f, random_split_map(f, w, h, rng));
}

}  // namespace bfl

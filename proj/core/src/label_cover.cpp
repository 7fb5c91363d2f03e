#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "bfl/error.hpp"
#include "bfl/pcsp.hpp"

namespace bfl {

// ---------------------------------------------------------------- Label Cover

void LabelCoverInstance::validate() const {
    if (n < 1 || n > 16) throw ValidationError("label cover n must lie in [1, 16]");
    if (left < 0 || right < 0) throw ValidationError("vertex counts must be non-negative");
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= left) throw ValidationError("edge has a left endpoint out of range");
        if (e.v < 0 || e.v >= right) throw ValidationError("edge has a right endpoint out of range");
        if (e.pi.source_arity() != 2 * n || e.pi.target_arity() != n)
            throw ValidationError("edge constraint must map [2n] to [n]");
        if (!e.pi.is_two_to_one()) throw ValidationError("edge constraint is not 2-to-1");
    }
}

Rational label_cover_value(const LabelCoverInstance& lc, const Labeling& sigma) {
    lc.validate();
    if (static_cast<int>(sigma.left.size()) != lc.left || static_cast<int>(sigma.right.size()) != lc.right)
        throw ValidationError("labeling does not cover every vertex");
    for (int a : sigma.left)
        if (a < 0 || a >= 2 * lc.n) throw ValidationError("left label out of range");
    for (int b : sigma.right)
        if (b < 0 || b >= lc.n) throw ValidationError("right label out of range");
    if (lc.edges.empty()) return Rational(1);
    long long sat = 0;
    for (const auto& e : lc.edges)
        if (e.pi[sigma.left[e.u]] == sigma.right[e.v]) ++sat;
    return Rational(sat, static_cast<long long>(lc.edges.size()));
}

BestLabeling best_labeling(const LabelCoverInstance& lc, std::uint64_t budget) {
    lc.validate();
    const int n = lc.n;
    // Enumerate the side with the smaller labeling space.
    const bool enum_left = lc.left * std::log(2.0 * n) <= lc.right * std::log(double(n));
    const int s_count = enum_left ? lc.left : lc.right;
    const int o_count = enum_left ? lc.right : lc.left;
    const int s_alpha = enum_left ? 2 * n : n;
    const int o_alpha = enum_left ? n : 2 * n;

    std::vector<std::vector<int>> s_edges(s_count);
    std::vector<int> unassigned(o_count, 0);
    for (std::size_t k = 0; k < lc.edges.size(); ++k) {
        const auto& e = lc.edges[k];
        s_edges[enum_left ? e.u : e.v].push_back(static_cast<int>(k));
        ++unassigned[enum_left ? e.v : e.u];
    }
    std::vector<int> order(s_count);
    for (int i = 0; i < s_count; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return s_edges[a].size() > s_edges[b].size(); });

    // cnt[o][b]: assigned edges at o that label b on o would satisfy.
    std::vector<std::vector<int>> cnt(o_count, std::vector<int>(o_alpha, 0));
    std::vector<int> s_label(s_count, 0);
    BestLabeling res;
    long long best = -1;
    std::vector<int> best_s;

    auto touch = [&](int edge, int label, int delta) {
        const auto& e = lc.edges[edge];
        if (enum_left) {
            cnt[e.v][e.pi[label]] += delta;
        } else {
            for (int a = 0; a < 2 * n; ++a)
                if (e.pi[a] == label) cnt[e.u][a] += delta;
        }
    };
    auto score = [&](bool with_unassigned) {
        long long total = 0;
        for (int o = 0; o < o_count; ++o)
            total += *std::max_element(cnt[o].begin(), cnt[o].end()) + (with_unassigned ? unassigned[o] : 0);
        return total;
    };
    auto dfs = [&](auto&& self, int depth) -> void {
        if (depth == s_count) {
            long long v = score(false);
            if (v > best) {
                best = v;
                best_s = s_label;
            }
            return;
        }
        const int s = order[depth];
        for (int label = 0; label < s_alpha; ++label) {
            if (++res.nodes > budget) throw BudgetExceeded("best_labeling exceeded its node budget");
            for (int k : s_edges[s]) {
                touch(k, label, +1);
                --unassigned[enum_left ? lc.edges[k].v : lc.edges[k].u];
            }
            s_label[s] = label;
            if (score(true) > best) self(self, depth + 1);
            for (int k : s_edges[s]) {
                touch(k, label, -1);
                ++unassigned[enum_left ? lc.edges[k].v : lc.edges[k].u];
            }
        }
    };
    dfs(dfs, 0);

    // Fill the other side optimally for the best enumerated labels.
    for (int s = 0; s < s_count; ++s)
        for (int k : s_edges[s]) touch(k, best_s[s], +1);
    std::vector<int> o_label(o_count, 0);
    for (int o = 0; o < o_count; ++o)
        o_label[o] = static_cast<int>(std::max_element(cnt[o].begin(), cnt[o].end()) - cnt[o].begin());
    res.labeling.left = enum_left ? best_s : o_label;
    res.labeling.right = enum_left ? o_label : best_s;
    res.value = label_cover_value(lc, res.labeling);
    return res;
}

bool is_rich_2to1(const LabelCoverInstance& lc) {
    lc.validate();
    if (lc.n > 4) throw ValidationError("richness check supports n <= 4");
    const std::uint64_t maps = count_two_to_one(lc.n);
    std::vector<std::map<std::vector<int>, std::uint64_t>> seen(lc.left);
    for (const auto& e : lc.edges) {
        if (!e.pi.is_two_to_one()) return false;
        ++seen[e.u][e.pi.image()];
    }
    for (const auto& m : seen) {
        if (m.size() != maps) return false;
        const std::uint64_t c = m.begin()->second;
        for (const auto& [img, k] : m)
            if (k != c) return false;
    }
    return true;
}

namespace {

LabelCoverInstance rich_layout(int n, int left, int right, int copies, std::uint64_t seed, bool planted) {
    if (n < 1 || n > 3) throw ValidationError("random rich instances support n in [1, 3]");
    if (left < 1 || right < 1 || copies < 1)
        throw ValidationError("random rich instance needs left, right and copies >= 1");
    if (planted && right < n) throw ValidationError("planted rich instance needs right >= n");
    LabelCoverInstance lc;
    lc.n = n;
    lc.left = left;
    lc.right = right;
    Rng rng(seed);
    const auto maps = enumerate_two_to_one(n);
    for (int u = 0; u < left; ++u) {
        const int a = static_cast<int>(rng.below(2 * n));
        for (const auto& pi : maps)
            for (int c = 0; c < copies; ++c) {
                int v;
                if (planted) {
                    const int b = pi[a];
                    const int choices = (right - b + n - 1) / n;
                    v = b + n * static_cast<int>(rng.below(choices));
                } else {
                    v = static_cast<int>(rng.below(right));
                }
                lc.edges.push_back({u, v, pi});
            }
    }
    return lc;
}

}  // namespace

LabelCoverInstance random_satisfiable_rich_instance(int n, int left, int right, int copies, std::uint64_t seed) {
    return rich_layout(n, left, right, copies, seed, true);
}

LabelCoverInstance random_rich_instance(int n, int left, int right, int copies, std::uint64_t seed) {
    return rich_layout(n, left, right, copies, seed, false);
}

// -------------------------------------------------------------- minor conditions

void MinorCondition::validate() const {
    std::set<std::string> names;
    for (const auto& s : symbols) {
        if (s.arity < 1 || s.arity > kMaxArity) throw ValidationError("symbol '" + s.name + "' has invalid arity");
        if (!names.insert(s.name).second) throw ValidationError("duplicate symbol '" + s.name + "'");
    }
    std::set<int> lhs, rhs;
    const int count = static_cast<int>(symbols.size());
    for (const auto& id : identities) {
        if (id.lhs < 0 || id.lhs >= count || id.rhs < 0 || id.rhs >= count)
            throw ValidationError("identity refers to an unknown symbol");
        if (id.pi.source_arity() != symbols[id.lhs].arity || id.pi.target_arity() != symbols[id.rhs].arity)
            throw ValidationError("identity map does not match the symbol arities");
        lhs.insert(id.lhs);
        rhs.insert(id.rhs);
    }
    for (int s : lhs)
        if (rhs.count(s)) throw ValidationError("symbol '" + symbols[s].name + "' appears on both sides");
}

std::optional<int> MinorCondition::find(const std::string& name) const {
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

MinorCondition reduce_to_pmc(const LabelCoverInstance& lc) {
    lc.validate();
    MinorCondition mc;
    for (int u = 0; u < lc.left; ++u) mc.symbols.push_back({"f_" + std::to_string(u + 1), 2 * lc.n});
    for (int v = 0; v < lc.right; ++v) mc.symbols.push_back({"g_" + std::to_string(v + 1), lc.n});
    for (const auto& e : lc.edges) mc.identities.push_back({e.u, lc.left + e.v, e.pi});
    return mc;
}

namespace {

// Variables with finite domains and functional constraints
// value(rhs) = map[value(lhs)], map entries of -1 meaning "no value".
struct FunctionalCsp {
    std::vector<int> domain;
    struct Edge {
        int lhs, rhs;
        std::vector<int> map;
    };
    std::vector<Edge> edges;
};

struct CspOutcome {
    Verdict verdict = Verdict::Unknown;
    std::vector<int> assignment;
    std::uint64_t nodes = 0;
};

// Backtracking, most constrained variable first, with forward checking.
CspOutcome solve_functional(const FunctionalCsp& csp, std::uint64_t budget) {
    const int vars = static_cast<int>(csp.domain.size());
    std::vector<std::vector<int>> as_lhs(vars), as_rhs(vars);
    for (std::size_t k = 0; k < csp.edges.size(); ++k) {
        as_lhs[csp.edges[k].lhs].push_back(static_cast<int>(k));
        as_rhs[csp.edges[k].rhs].push_back(static_cast<int>(k));
    }
    using Domains = std::vector<std::vector<char>>;
    Domains dom(vars);
    std::vector<int> size(vars);
    for (int v = 0; v < vars; ++v) {
        dom[v].assign(csp.domain[v], 1);
        size[v] = csp.domain[v];
    }
    CspOutcome out;
    std::vector<int> value(vars, -1);
    bool exhausted = false;

    auto restrict_to = [](std::vector<char>& d, int& sz, auto keep) {
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] && !keep(static_cast<int>(i))) {
                d[i] = 0;
                --sz;
            }
        return sz > 0;
    };
    auto dfs = [&](auto&& self, Domains& d, std::vector<int>& sz) -> bool {
        int pick = -1;
        for (int v = 0; v < vars; ++v)
            if (value[v] < 0 && (pick < 0 || sz[v] < sz[pick])) pick = v;
        if (pick < 0) return true;
        for (int c = 0; c < static_cast<int>(d[pick].size()); ++c) {
            if (!d[pick][c]) continue;
            if (++out.nodes > budget) {
                exhausted = true;
                return false;
            }
            Domains nd = d;
            std::vector<int> nsz = sz;
            bool ok = true;
            for (int k : as_lhs[pick]) {
                const auto& e = csp.edges[k];
                const int t = e.map[c];
                ok = ok && restrict_to(nd[e.rhs], nsz[e.rhs], [&](int x) { return x == t; });
            }
            for (int k : as_rhs[pick]) {
                const auto& e = csp.edges[k];
                ok = ok && restrict_to(nd[e.lhs], nsz[e.lhs], [&](int x) { return e.map[x] == c; });
            }
            if (!ok) continue;
            value[pick] = c;
            if (self(self, nd, nsz)) return true;
            value[pick] = -1;
            if (exhausted) return false;
        }
        return false;
    };
    for (int v = 0; v < vars; ++v)
        if (size[v] == 0) {
            out.verdict = Verdict::No;
            return out;
        }
    if (dfs(dfs, dom, size)) {
        out.verdict = Verdict::Yes;
        out.assignment = value;
    } else {
        out.verdict = exhausted ? Verdict::Unknown : Verdict::No;
    }
    return out;
}

}  // namespace

TrivialityResult is_trivial(const MinorCondition& sigma, std::uint64_t budget) {
    sigma.validate();
    FunctionalCsp csp;
    for (const auto& s : sigma.symbols) csp.domain.push_back(s.arity);
    for (const auto& id : sigma.identities) csp.edges.push_back({id.lhs, id.rhs, id.pi.image()});
    auto r = solve_functional(csp, budget);
    TrivialityResult res;
    res.verdict = r.verdict;
    res.coords = std::move(r.assignment);
    res.nodes = r.nodes;
    return res;
}

Labeling labeling_from_projections(const LabelCoverInstance& lc, const std::vector<int>& coords) {
    if (static_cast<int>(coords.size()) != lc.left + lc.right)
        throw ValidationError("projection interpretation does not match the instance");
    Labeling l;
    l.left.assign(coords.begin(), coords.begin() + lc.left);
    l.right.assign(coords.begin() + lc.left, coords.end());
    return l;
}

SatisfactionResult satisfiable_in_minion(const MinorCondition& sigma, const std::vector<BooleanFunction>& minion,
                                         std::uint64_t budget) {
    sigma.validate();
    std::map<int, std::vector<int>> by_arity;
    for (std::size_t i = 0; i < minion.size(); ++i) by_arity[minion[i].arity()].push_back(static_cast<int>(i));
    const int vars = static_cast<int>(sigma.symbols.size());
    std::vector<std::vector<int>> cands(vars);
    FunctionalCsp csp;
    for (int s = 0; s < vars; ++s) {
        cands[s] = by_arity[sigma.symbols[s].arity];
        csp.domain.push_back(static_cast<int>(cands[s].size()));
    }
    for (const auto& id : sigma.identities) {
        FunctionalCsp::Edge e{id.lhs, id.rhs, {}};
        for (int i : cands[id.lhs]) {
            const BooleanFunction g = apply_minor(minion[i], id.pi);
            int hit = -1;
            for (std::size_t j = 0; j < cands[id.rhs].size(); ++j)
                if (minion[cands[id.rhs][j]] == g) {
                    hit = static_cast<int>(j);
                    break;
                }
            e.map.push_back(hit);
        }
        csp.edges.push_back(std::move(e));
    }
    auto r = solve_functional(csp, budget);
    SatisfactionResult res;
    res.verdict = r.verdict;
    res.nodes = r.nodes;
    if (r.verdict == Verdict::Yes)
        for (int s = 0; s < vars; ++s) res.interpretation.push_back(minion[cands[s][r.assignment[s]]]);
    return res;
}

namespace {

void for_each_map(int n, int m, const std::function<void(const MinorMap&)>& visit) {
    std::vector<int> img(n, 0);
    for (;;) {
        visit(MinorMap(n, m, img));
        int i = 0;
        while (i < n && img[i] + 1 == m) img[i++] = 0;
        if (i == n) return;
        ++img[i];
    }
}

struct TableLess {
    bool operator()(const BooleanFunction& a, const BooleanFunction& b) const {
        if (a.arity() != b.arity()) return a.arity() < b.arity();
        return a.words() < b.words();
    }
};

void check_closure_size(const BooleanFunction& f, int max_arity) {
    if (f.arity() < 1) throw ValidationError("minion functions need arity >= 1");
    if (max_arity < 1 || max_arity > 8) throw ValidationError("minor closure target arity must lie in [1, 8]");
    if (std::pow(double(max_arity), f.arity()) > 2e6) throw ValidationError("minor closure is too large");
}

}  // namespace

std::vector<BooleanFunction> minor_closure(const std::vector<BooleanFunction>& fs, int max_arity) {
    std::set<BooleanFunction, TableLess> out;
    for (const auto& f : fs) {
        check_closure_size(f, max_arity);
        out.insert(f);
        for (int m = 1; m <= max_arity; ++m)
            for_each_map(f.arity(), m, [&](const MinorMap& pi) { out.insert(apply_minor(f, pi)); });
    }
    return {out.begin(), out.end()};
}

bool is_minor_closed(const std::vector<BooleanFunction>& fs, int max_arity) {
    std::set<BooleanFunction, TableLess> have(fs.begin(), fs.end());
    bool closed = true;
    for (const auto& f : fs) {
        check_closure_size(f, max_arity);
        for (int m = 1; m <= max_arity && closed; ++m)
            for_each_map(f.arity(), m, [&](const MinorMap& pi) {
                if (closed && !have.count(apply_minor(f, pi))) closed = false;
            });
        if (!closed) return false;
    }
    return true;
}

SoundnessReport soundness_experiment(const MinorCondition& sigma, const std::vector<BooleanFunction>& zeta,
                                     const Selector& sel, std::uint64_t trials, std::uint64_t seed) {
    sigma.validate();
    const std::size_t vars = sigma.symbols.size();
    if (zeta.size() != vars) throw ValidationError("interpretation must assign every symbol");
    for (std::size_t s = 0; s < vars; ++s)
        if (zeta[s].arity() != sigma.symbols[s].arity)
            throw ValidationError("interpretation of '" + sigma.symbols[s].name + "' has the wrong arity");
    for (const auto& id : sigma.identities)
        if (!(apply_minor(zeta[id.lhs], id.pi) == zeta[id.rhs]))
            throw ValidationError("interpretation does not satisfy the minor condition");

    std::vector<std::vector<int>> sets(vars);
    SoundnessReport rep;
    for (std::size_t s = 0; s < vars; ++s) {
        sets[s] = coords_of(sel(zeta[s]));
        if (sets[s].empty()) throw ValidationError("Sel is empty for symbol '" + sigma.symbols[s].name + "'");
        rep.max_sel = std::max(rep.max_sel, static_cast<int>(sets[s].size()));
    }
    const std::size_t ids = sigma.identities.size();
    double exact = 0.0, meets = 0.0;
    for (const auto& id : sigma.identities) {
        const Mask right = sel(zeta[id.rhs]);
        int hits = 0;
        for (int a : sets[id.lhs])
            if (bit(right, id.pi[a])) ++hits;
        exact += double(hits) / double(sets[id.lhs].size() * sets[id.rhs].size());
        if (hits > 0) meets += 1.0;
    }
    rep.exact = ids ? exact / double(ids) : 1.0;
    rep.intersection_rate = ids ? meets / double(ids) : 1.0;
    rep.bound = rep.intersection_rate / double(rep.max_sel * rep.max_sel);

    const std::uint64_t chunks = (trials + kChunkSize - 1) / kChunkSize;
    std::vector<double> sum(chunks, 0.0), sum2(chunks, 0.0);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng(derive_seed(seed, c));
        const std::uint64_t end = std::min(trials, (c + 1) * kChunkSize);
        std::vector<int> label(vars);
        for (std::uint64_t t = c * kChunkSize; t < end; ++t) {
            for (std::size_t s = 0; s < vars; ++s) label[s] = sets[s][rng.below(sets[s].size())];
            std::size_t sat = 0;
            for (const auto& id : sigma.identities)
                if (id.pi[label[id.lhs]] == label[id.rhs]) ++sat;
            const double frac = ids ? double(sat) / double(ids) : 1.0;
            sum[c] += frac;
            sum2[c] += frac * frac;
        }
    });
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
        s1 += sum[c];
        s2 += sum2[c];
    }
    rep.trials = trials;
    if (trials > 0) {
        rep.estimate = s1 / double(trials);
        const double var = std::max(0.0, s2 / double(trials) - rep.estimate * rep.estimate);
        rep.half_width = 1.96 * std::sqrt(var / double(trials));
    }
    return rep;
}

}  // namespace bfl

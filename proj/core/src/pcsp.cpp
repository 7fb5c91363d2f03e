#include "bfl/pcsp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "bfl/error.hpp"

namespace bfl {

bool Relation::contains(Tuple t) const { return std::binary_search(tuples.begin(), tuples.end(), t); }

void Relation::normalize() {
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

void Template::validate() const {
    if (a.relations.size() != b.relations.size())
        throw ValidationError("template structures have different numbers of relations");
    auto check = [](const Relation& r) {
        if (r.arity < 1 || r.arity > 16) throw ValidationError("relation arity must lie in [1, 16]");
        for (Tuple t : r.tuples)
            if (t >> r.arity) throw ValidationError("relation tuple does not fit its arity");
    };
    for (std::size_t j = 0; j < a.relations.size(); ++j) {
        if (a.relations[j].arity != b.relations[j].arity)
            throw ValidationError("template structures are not similar");
        check(a.relations[j]);
        check(b.relations[j]);
    }
}

bool is_polymorphism(const BooleanFunction& f, const Template& t) {
    t.validate();
    const int n = f.arity();
    for (std::size_t j = 0; j < t.a.relations.size(); ++j) {
        const Relation& ra = t.a.relations[j];
        const Relation& rb = t.b.relations[j];
        const int r = ra.arity;
        if (ra.tuples.empty()) continue;
        std::vector<std::size_t> idx(n, 0);
        std::vector<Tuple> rows(r, 0);
        for (int c = 0; c < n; ++c)
            for (int k = 0; k < r; ++k)
                if (bit(ra.tuples[0], k)) rows[k] |= Tuple{1} << c;
        for (;;) {
            Tuple out = 0;
            for (int k = 0; k < r; ++k)
                if (f(rows[k])) out |= Tuple{1} << k;
            if (!rb.contains(out)) return false;
            int c = 0;
            while (c < n && idx[c] + 1 == ra.tuples.size()) {
                idx[c] = 0;
                ++c;
            }
            if (c == n) break;
            ++idx[c];
            // Columns below c wrapped to tuple 0; rewrite columns 0..c.
            for (int cc = 0; cc <= c; ++cc) {
                const Tuple tup = ra.tuples[idx[cc]];
                for (int k = 0; k < r; ++k) {
                    if (bit(tup, k))
                        rows[k] |= Tuple{1} << cc;
                    else
                        rows[k] &= ~(Tuple{1} << cc);
                }
            }
        }
    }
    return true;
}

namespace {

Relation make_relation(int arity, std::vector<Tuple> tuples) {
    Relation r{arity, std::move(tuples)};
    r.normalize();
    return r;
}

Relation full_relation(int arity) {
    Relation r{arity, {}};
    for (Tuple t = 0; t < (Tuple{1} << arity); ++t) r.tuples.push_back(t);
    return r;
}

Relation complement(int arity, const std::vector<Tuple>& excluded) {
    Relation r = full_relation(arity);
    std::erase_if(r.tuples, [&](Tuple t) { return std::find(excluded.begin(), excluded.end(), t) != excluded.end(); });
    return r;
}

// Bit k of the tuple is entry k; (a, b) -> a | b << 1.
const Relation kLe = make_relation(2, {0b00, 0b10, 0b11});
const Relation kEq = make_relation(2, {0b00, 0b11});
const Relation kNe = make_relation(2, {0b01, 0b10});
const Relation kOneInThree = make_relation(3, {0b001, 0b010, 0b100});
const Relation kNae3 = complement(3, {0b000, 0b111});

}  // namespace

Template unate_gadget() {
    Template t;
    t.name = "unate";
    // Columns (0,0,0,0), (0,0,1,1), (1,1,0,0), (1,1,1,1), (0,1,0,1).
    t.a.relations.push_back(make_relation(4, {0b0000, 0b1100, 0b0011, 0b1111, 0b1010}));
    // Everything except (0,1,1,0).
    t.b.relations.push_back(complement(4, {0b0110}));
    return t;
}

std::vector<std::string> builtin_template_names() {
    return {"unate", "le", "eq", "ne", "idempotent", "t-le-h2", "t-ne-h2"};
}

Template builtin_template(const std::string& name) {
    Template t;
    t.name = name;
    if (name == "unate") return unate_gadget();
    if (name == "le") {
        t.a.relations = {kLe};
        t.b.relations = {kLe};
    } else if (name == "eq") {
        t.a.relations = {kEq};
        t.b.relations = {kEq};
    } else if (name == "ne") {
        t.a.relations = {kNe};
        t.b.relations = {kNe};
    } else if (name == "idempotent") {
        t.a.relations = {make_relation(1, {0}), make_relation(1, {1})};
        t.b.relations = t.a.relations;
    } else if (name == "t-le-h2") {
        t.a.relations = {kLe, kOneInThree};
        t.b.relations = {kLe, kNae3};
    } else if (name == "t-ne-h2") {
        t.a.relations = {kNe, kOneInThree};
        t.b.relations = {kNe, kNae3};
    } else {
        throw ValidationError("unknown template '" + name + "'");
    }
    return t;
}

namespace {

Tuple parse_bits(const std::string& s, int arity, int line) {
    if (static_cast<int>(s.size()) != arity)
        throw ValidationError("line " + std::to_string(line) + ": tuple '" + s + "' does not match arity " +
                              std::to_string(arity));
    Tuple t = 0;
    for (int k = 0; k < arity; ++k) {
        if (s[k] == '1')
            t |= Tuple{1} << k;
        else if (s[k] != '0')
            throw ValidationError("line " + std::to_string(line) + ": tuple '" + s + "' is not a bit string");
    }
    return t;
}

std::string bits_string(Tuple t, int arity) {
    std::string s(arity, '0');
    for (int k = 0; k < arity; ++k)
        if (bit(t, k)) s[k] = '1';
    return s;
}

}  // namespace

Template parse_template(const std::string& text, const std::string& name) {
    Template t;
    t.name = name;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    long declared = -1;
    struct Pending {
        int arity = 0;
        std::vector<Tuple> a, b;
        std::vector<Tuple> b_excluded;
        bool a_full = false, b_full = false, b_complement = false, a_seen = false, b_seen = false;
    };
    std::vector<Pending> rels;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        auto fail = [&](const std::string& what) {
            throw ValidationError("line " + std::to_string(line) + ": " + what);
        };
        if (tag == "p") {
            std::string kind;
            if (!(ls >> kind >> declared) || kind != "template" || declared < 0) fail("expected 'p template <count>'");
        } else if (tag == "r") {
            Pending p;
            if (!(ls >> p.arity) || p.arity < 1 || p.arity > 16) fail("relation arity must lie in [1, 16]");
            rels.push_back(p);
        } else if (tag == "a" || tag == "b") {
            if (rels.empty()) fail("tuples before any 'r' line");
            Pending& p = rels.back();
            std::string tok;
            while (ls >> tok) {
                if (tok == "*") {
                    (tag == "a" ? p.a_full : p.b_full) = true;
                } else if (tag == "b" && tok[0] == '!') {
                    p.b_complement = true;
                    p.b_excluded.push_back(parse_bits(tok.substr(1), p.arity, line));
                } else {
                    (tag == "a" ? p.a : p.b).push_back(parse_bits(tok, p.arity, line));
                }
            }
            (tag == "a" ? p.a_seen : p.b_seen) = true;
            if (tag == "b" && p.b_complement && !p.b.empty()) fail("cannot mix listed and excluded tuples");
        } else {
            fail("unknown directive '" + tag + "'");
        }
    }
    if (declared >= 0 && static_cast<std::size_t>(declared) != rels.size())
        throw ValidationError("template declares " + std::to_string(declared) + " relations but defines " +
                              std::to_string(rels.size()));
    for (const auto& p : rels) {
        if (!p.a_seen || !p.b_seen) throw ValidationError("every relation needs both 'a' and 'b' lines");
        t.a.relations.push_back(p.a_full ? full_relation(p.arity) : make_relation(p.arity, p.a));
        if (p.b_full)
            t.b.relations.push_back(full_relation(p.arity));
        else if (p.b_complement)
            t.b.relations.push_back(complement(p.arity, p.b_excluded));
        else
            t.b.relations.push_back(make_relation(p.arity, p.b));
    }
    t.validate();
    return t;
}

std::string format_template(const Template& t) {
    std::ostringstream out;
    if (!t.name.empty()) out << "c " << t.name << '\n';
    out << "p template " << t.a.relations.size() << '\n';
    for (std::size_t j = 0; j < t.a.relations.size(); ++j) {
        const auto& ra = t.a.relations[j];
        const auto& rb = t.b.relations[j];
        out << "r " << ra.arity << '\n' << 'a';
        for (Tuple x : ra.tuples) out << ' ' << bits_string(x, ra.arity);
        out << '\n' << 'b';
        for (Tuple x : rb.tuples) out << ' ' << bits_string(x, rb.arity);
        out << '\n';
    }
    return out.str();
}

PolymorphismEnumeration enumerate_polymorphisms(const Template& t, int m, std::uint64_t budget) {
    t.validate();
    if (m < 1 || m > 5) throw ValidationError("polymorphism enumeration supports arity 1..5");
    const std::size_t points = std::size_t{1} << m;

    struct Constraint {
        std::size_t rel;
        std::vector<Tuple> rows;
    };
    // Constraints grouped by their largest row, so each is checked as soon as
    // all of its rows are assigned.
    std::vector<std::vector<Constraint>> by_last(points);
    for (std::size_t j = 0; j < t.a.relations.size(); ++j) {
        const Relation& ra = t.a.relations[j];
        if (ra.tuples.empty()) continue;
        std::set<std::vector<Tuple>> seen;
        std::vector<std::size_t> idx(m, 0);
        for (;;) {
            std::vector<Tuple> rows(ra.arity, 0);
            for (int c = 0; c < m; ++c)
                for (int k = 0; k < ra.arity; ++k)
                    if (bit(ra.tuples[idx[c]], k)) rows[k] |= Tuple{1} << c;
            if (seen.insert(rows).second) {
                Tuple last = *std::max_element(rows.begin(), rows.end());
                by_last[last].push_back({j, rows});
            }
            int c = 0;
            while (c < m && idx[c] + 1 == ra.tuples.size()) idx[c++] = 0;
            if (c == m) break;
            ++idx[c];
        }
    }

    PolymorphismEnumeration res;
    BooleanFunction f(m);
    auto consistent = [&](std::size_t x) {
        for (const auto& con : by_last[x]) {
            Tuple out = 0;
            for (std::size_t k = 0; k < con.rows.size(); ++k)
                if (f(con.rows[k])) out |= Tuple{1} << k;
            if (!t.b.relations[con.rel].contains(out)) return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, std::size_t x) -> void {
        if (x == points) {
            res.functions.push_back(f);
            return;
        }
        for (int v = 0; v < 2; ++v) {
            if (++res.nodes > budget) throw BudgetExceeded("polymorphism enumeration exceeded its node budget");
            f.set(x, v != 0);
            if (consistent(x)) self(self, x + 1);
        }
        f.set(x, false);
    };
    dfs(dfs, 0);
    return res;
}

}  // namespace bfl

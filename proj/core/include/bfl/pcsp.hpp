#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfl/boolfn.hpp"
#include "bfl/minors.hpp"

namespace bfl {

inline constexpr std::uint64_t kDefaultBudget = 1000000;

// A relation on {0,1}; bit r of a tuple is its r-th entry.
struct Relation {
    int arity = 0;
    std::vector<Tuple> tuples;  // sorted, unique

    bool contains(Tuple t) const;
    void normalize();
};

struct RelationalStructure {
    std::vector<Relation> relations;
};

// A PCSP template (A, B) over the Boolean domain.
struct Template {
    std::string name;
    RelationalStructure a;
    RelationalStructure b;

    // Throws ValidationError unless A and B are similar and tuples fit.
    void validate() const;
};

// Applies f row-wise to every choice of arity(f) tuples of each R^A and
// checks membership in R^B.
bool is_polymorphism(const BooleanFunction& f, const Template& t);

// (U_L, U_R): Pol = unate functions.
Template unate_gadget();

// Built-in templates: unate, le, eq, ne, idempotent, t-le-h2, t-ne-h2.
Template builtin_template(const std::string& name);
std::vector<std::string> builtin_template_names();

// Text format, one directive per line:
//   c <comment>
//   p template <relation count>
//   r <arity>                 starts a relation
//   a <bits> <bits> ... | a * b <bits> ... | b !<bits> ... | b *
// Each bit string lists the tuple entries in order.
Template parse_template(const std::string& text, const std::string& name = "");
std::string format_template(const Template& t);

struct PolymorphismEnumeration {
    std::vector<BooleanFunction> functions;  // lexicographic in (f(0), f(1), ...)
    std::uint64_t nodes = 0;
};

// All arity-m polymorphisms by backtracking over truth-table entries in
// tuple order (m <= 5).  Throws BudgetExceeded past `budget` nodes.
PolymorphismEnumeration enumerate_polymorphisms(const Template& t, int m,
                                                std::uint64_t budget = kDefaultBudget);

// ---------------------------------------------------------------- Label Cover

struct LabelCoverEdge {
    int u = 0;  // left vertex, 0-based
    int v = 0;  // right vertex, 0-based
    MinorMap pi;  // [2n] -> [n]
};

// Left alphabet [2n], right alphabet [n].
struct LabelCoverInstance {
    int n = 1;
    int left = 0;
    int right = 0;
    std::vector<LabelCoverEdge> edges;

    void validate() const;
};

struct Labeling {
    std::vector<int> left;   // labels in [0, 2n)
    std::vector<int> right;  // labels in [0, n)
};

// Fraction of satisfied constraints; an instance without edges has value 1.
Rational label_cover_value(const LabelCoverInstance& lc, const Labeling& sigma);

struct BestLabeling {
    Labeling labeling;
    Rational value;
    std::uint64_t nodes = 0;
};

// Exact maximum by branch and bound over the side with the smaller search
// space; the other side is filled optimally.
BestLabeling best_labeling(const LabelCoverInstance& lc, std::uint64_t budget = kDefaultBudget);

// Every left vertex sees each 2-to-1 map [2n] -> [n] equally often (n <= 4).
bool is_rich_2to1(const LabelCoverInstance& lc);

// Rich instance with a planted perfect labeling: every left vertex carries
// `copies` edges per 2-to-1 map, each to a random right vertex agreeing with
// the plant.  Right vertex v is planted with label v mod n.
LabelCoverInstance random_satisfiable_rich_instance(int n, int left, int right, int copies,
                                                    std::uint64_t seed);
// Same edge layout with right endpoints drawn uniformly.
LabelCoverInstance random_rich_instance(int n, int left, int right, int copies, std::uint64_t seed);

// -------------------------------------------------------------- minor conditions

struct Symbol {
    std::string name;
    int arity = 0;
};

// f(x_{pi(1)}, ..., x_{pi(n)}) ~ g(x_1, ..., x_m) with f = lhs, g = rhs.
struct Identity {
    int lhs = 0;
    int rhs = 0;
    MinorMap pi;
};

struct MinorCondition {
    std::vector<Symbol> symbols;
    std::vector<Identity> identities;

    // Arity consistency and disjoint left/right symbol sets.
    void validate() const;
    std::optional<int> find(const std::string& name) const;
};

// Symbols f_u (arity 2n) for left vertices, then g_v (arity n) for right
// vertices; one identity per edge, in edge order.  Names are 1-based.
MinorCondition reduce_to_pmc(const LabelCoverInstance& lc);

enum class Verdict { Yes, No, Unknown };

struct TrivialityResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<int> coords;  // projection coordinate per symbol, 0-based
    std::uint64_t nodes = 0;
};

// Searches for projections c(s) with pi(c(lhs)) = c(rhs) on every identity.
TrivialityResult is_trivial(const MinorCondition& sigma, std::uint64_t budget = kDefaultBudget);

// Reads a labeling off a projection interpretation of reduce_to_pmc(lc).
Labeling labeling_from_projections(const LabelCoverInstance& lc, const std::vector<int>& coords);

struct SatisfactionResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<BooleanFunction> interpretation;  // per symbol
    std::uint64_t nodes = 0;
};

// Looks for an interpretation of every symbol by a listed function of the
// same arity with apply_minor(zeta(lhs), pi) == zeta(rhs) on every identity.
SatisfactionResult satisfiable_in_minion(const MinorCondition& sigma,
                                         const std::vector<BooleanFunction>& minion,
                                         std::uint64_t budget = kDefaultBudget);

// All minors of the given functions with target arity in [1, max_arity],
// deduplicated and sorted by arity then table.
std::vector<BooleanFunction> minor_closure(const std::vector<BooleanFunction>& fs, int max_arity);
bool is_minor_closed(const std::vector<BooleanFunction>& fs, int max_arity);

struct SoundnessReport {
    double estimate = 0;     // Monte-Carlo mean satisfied fraction
    double half_width = 0;
    std::uint64_t trials = 0;
    double exact = 0;        // expectation over the random labeling
    double intersection_rate = 0;  // identities with pi(Sel(lhs)) meeting Sel(rhs)
    int max_sel = 0;         // the |Sel| bound M
    double bound = 0;        // intersection_rate / M^2
};

// Random labeling sigma(s) uniform in Sel(zeta(s)); fraction of identities
// with pi(sigma(lhs)) = sigma(rhs).  Throws ValidationError on an empty Sel
// or when zeta does not satisfy sigma.
SoundnessReport soundness_experiment(const MinorCondition& sigma,
                                     const std::vector<BooleanFunction>& zeta, const Selector& sel,
                                     std::uint64_t trials, std::uint64_t seed);

}  // namespace bfl

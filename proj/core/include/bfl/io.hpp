#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "bfl/boolfn.hpp"
#include "bfl/dist.hpp"
#include "bfl/pcsp.hpp"
#include "bfl/poly.hpp"

namespace bfl {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Truth table as hex: nibble j (j-th character) holds f at tuples
// 4j..4j+3, least significant bit first.  maj(1) -> "8e".
std::string table_hex(const BooleanFunction& f);
BooleanFunction from_table_hex(int n, const std::string& hex);

// Families by name: maj, xor, thr, max, min, at, an, tribes, proj, const.
// Parameters are given as strings; proj takes a 1-based coordinate.
BooleanFunction make_family(const std::string& name, const std::vector<std::string>& params);

// "maj:2", "thr:1/3:7", "proj:4:1", "hex:3:8e", "@file.json".
BooleanFunction parse_function_spec(const std::string& spec);

json function_to_json(const BooleanFunction& f, const std::string& name = "");
// {"arity", "table_hex"} or {"family", "params"}; params is an object such
// as {"t": "1/3", "m": 7} or a positional array.
BooleanFunction function_from_json(const json& j);

// "biased:0.5", "biased:1/3", "shapley", "product:0.2,0.7",
// "symmetric:1/4,1/2,1/4" (layer totals), "pullback:<spec>".
Distribution parse_distribution_spec(const std::string& spec);
json distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const json& j);

// {"n", "k", "coeffs": [{"subset": [1-based], "num", "den"} | {"subset", "value"}],
//  optional "basis": "monomial" | "character", optional "p"}.
json poly_to_json(const MultilinearPoly& q);
MultilinearPoly poly_from_json(const json& j);

// {"n", "left": [ids], "right": [ids], "edges": [{"u", "v", "pi": [1-based]}]}.
json label_cover_to_json(const LabelCoverInstance& lc);
LabelCoverInstance label_cover_from_json(const json& j);

// {"symbols": [{"name", "arity"}], "identities": [{"lhs", "rhs", "pi": [1-based]}]}.
json minor_condition_to_json(const MinorCondition& mc);
MinorCondition minor_condition_from_json(const json& j);

std::string read_text_file(const std::string& path);
json read_json_file(const std::string& path);

// 17 significant digits, '.' decimal point, no negative zero.
std::string format_double(double v);
// "{1,3}" for a 0-based mask, printed 1-based.
std::string format_subset(Mask s);
std::string csv_field(const std::string& s);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string str() const;
};

}  // namespace bfl

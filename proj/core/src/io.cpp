#include "bfl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bfl/error.hpp"

namespace bfl {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(what + ": '" + s + "' is not an integer");
    }
}

int int_param(const std::vector<std::string>& p, std::size_t i, const std::string& fam) {
    long v = parse_int(p[i], fam);
    if (v < -1000000 || v > 1000000) throw ValidationError(fam + ": parameter out of range");
    return static_cast<int>(v);
}

void expect_params(const std::vector<std::string>& p, std::size_t count, const std::string& fam,
                   const std::string& usage) {
    if (p.size() != count) throw ValidationError(fam + ": expected " + usage);
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Rational rational_from_json(const json& v, const std::string& what) {
    if (v.is_number_integer()) return Rational(static_cast<long long>(v.get<long long>()));
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    throw ValidationError(what + " must be an integer or a string");
}

json rational_to_json(const Rational& r) {
    if (r.den() == 1 && r.num() >= INT64_MIN && r.num() <= INT64_MAX) return static_cast<long long>(r.num());
    return r.str();
}

std::vector<int> one_based_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ValidationError(what + " entries must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::string id_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ValidationError("vertex ids must be strings or integers");
}

}  // namespace

std::string table_hex(const BooleanFunction& f) {
    static const char* digits = "0123456789abcdef";
    const std::uint64_t size = f.size();
    std::string out;
    for (std::uint64_t base = 0; base < size; base += 4) {
        int nib = 0;
        for (int b = 0; b < 4 && base + b < size; ++b)
            if (f(base + b)) nib |= 1 << b;
        out.push_back(digits[nib]);
    }
    return out;
}

BooleanFunction from_table_hex(int n, const std::string& hex) {
    if (n < 0 || n > kMaxArity) throw ValidationError("table arity out of range");
    BooleanFunction f(n);
    const std::uint64_t size = f.size();
    const std::size_t want = static_cast<std::size_t>((size + 3) / 4);
    if (hex.size() != want)
        throw ValidationError("table_hex for arity " + std::to_string(n) + " needs " + std::to_string(want) +
                              " hex digits, got " + std::to_string(hex.size()));
    for (std::size_t j = 0; j < hex.size(); ++j) {
        int v = hex_value(hex[j]);
        if (v < 0) throw ValidationError("table_hex contains a non-hex character");
        for (int b = 0; b < 4; ++b) {
            const std::uint64_t x = 4 * j + b;
            const bool on = (v >> b) & 1;
            if (x < size)
                f.set(x, on);
            else if (on)
                throw ValidationError("table_hex sets bits beyond the table");
        }
    }
    return f;
}

BooleanFunction make_family(const std::string& name, const std::vector<std::string>& p) {
    if (name == "maj") {
        expect_params(p, 1, name, "maj:m");
        return family::majority(int_param(p, 0, name));
    }
    if (name == "xor") {
        expect_params(p, 1, name, "xor:n");
        return family::parity(int_param(p, 0, name));
    }
    if (name == "thr") {
        expect_params(p, 2, name, "thr:t:m");
        return family::threshold(Rational::parse(p[0]), int_param(p, 1, name));
    }
    if (name == "max") {
        expect_params(p, 1, name, "max:m");
        return family::maximum(int_param(p, 0, name));
    }
    if (name == "min") {
        expect_params(p, 1, name, "min:m");
        return family::minimum(int_param(p, 0, name));
    }
    if (name == "at") {
        expect_params(p, 1, name, "at:m");
        return family::alternating_threshold(int_param(p, 0, name));
    }
    if (name == "an") {
        expect_params(p, 1, name, "an:n");
        return family::almost_negation(int_param(p, 0, name));
    }
    if (name == "tribes") {
        expect_params(p, 2, name, "tribes:s:b");
        return family::tribes(int_param(p, 0, name), int_param(p, 1, name));
    }
    if (name == "proj") {
        expect_params(p, 2, name, "proj:n:i");
        return family::projection(int_param(p, 0, name), int_param(p, 1, name) - 1);
    }
    if (name == "const") {
        expect_params(p, 2, name, "const:n:v");
        const int v = int_param(p, 1, name);
        if (v != 0 && v != 1) throw ValidationError("const: value must be 0 or 1");
        return family::constant(int_param(p, 0, name), v == 1);
    }
    throw ValidationError("unknown function family '" + name + "'");
}

BooleanFunction parse_function_spec(const std::string& spec) {
    if (spec.empty()) throw ValidationError("empty function spec");
    if (spec[0] == '@') return function_from_json(read_json_file(spec.substr(1)));
    auto parts = split(spec, ':');
    const std::string name = parts[0];
    parts.erase(parts.begin());
    if (name == "hex") {
        if (parts.size() != 2) throw ValidationError("hex: expected hex:n:<digits>");
        return from_table_hex(int_param(parts, 0, name), parts[1]);
    }
    return make_family(name, parts);
}

json function_to_json(const BooleanFunction& f, const std::string& name) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "boolean_function";
    if (!name.empty()) j["name"] = name;
    j["arity"] = f.arity();
    j["table_hex"] = table_hex(f);
    return j;
}

namespace {

// Parameter names for the object form {"family": ..., "params": {...}}.
std::vector<std::string> family_param_names(const std::string& name) {
    if (name == "thr") return {"t", "m"};
    if (name == "tribes") return {"s", "b"};
    if (name == "proj") return {"n", "i"};
    if (name == "const") return {"n", "v"};
    if (name == "xor" || name == "an") return {"n"};
    return {"m"};
}

std::string param_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

BooleanFunction function_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("function JSON must be an object");
    if (j.contains("family")) {
        if (!j["family"].is_string()) throw ValidationError("'family' must be a string");
        const std::string name = j["family"].get<std::string>();
        std::vector<std::string> params;
        if (j.contains("params")) {
            const json& ps = j["params"];
            if (ps.is_array()) {
                for (const auto& v : ps) params.push_back(param_text(v));
            } else if (ps.is_object()) {
                for (const auto& key : family_param_names(name)) {
                    if (!ps.contains(key)) throw ValidationError(name + ": missing parameter '" + key + "'");
                    params.push_back(param_text(ps[key]));
                }
                if (ps.size() != params.size()) throw ValidationError(name + ": unexpected parameters");
            } else {
                throw ValidationError("'params' must be an object or an array");
            }
        }
        return make_family(name, params);
    }
    const json& hex = field(j, "table_hex");
    if (!hex.is_string()) throw ValidationError("'table_hex' must be a string");
    return from_table_hex(j.contains("arity") ? int_field(j, "arity") : int_field(j, "n"), hex.get<std::string>());
}

Distribution parse_distribution_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "shapley") {
        if (colon != std::string::npos) throw ValidationError("shapley takes no parameters");
        return Distribution::shapley();
    }
    if (name == "biased") return Distribution::biased(Rational::parse(rest));
    if (name == "pullback") {
        if (rest.empty()) throw ValidationError("pullback needs an inner distribution");
        return Distribution::pullback(parse_distribution_spec(rest));
    }
    if (name == "product") {
        std::vector<double> r;
        for (const auto& s : split(rest, ',')) r.push_back(Rational::parse(s).to_double());
        return Distribution::product(r);
    }
    if (name == "symmetric") {
        std::vector<Rational> layers;
        for (const auto& s : split(rest, ',')) layers.push_back(Rational::parse(s));
        return Distribution::explicit_symmetric(layers);
    }
    throw ValidationError("unknown distribution '" + name + "'");
}

json distribution_to_json(const Distribution& d) {
    json j;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Biased>) {
                j["family"] = "biased";
                if (v.exact_p)
                    j["p"] = v.exact_p->str();
                else
                    j["p"] = v.p;
            } else if constexpr (std::is_same_v<T, Shapley>) {
                j["family"] = "shapley";
            } else if constexpr (std::is_same_v<T, ExplicitSymmetric>) {
                j["family"] = "symmetric";
                j["layer_mass"] = json::array();
                if (v.exact_layer_mass)
                    for (const auto& r : *v.exact_layer_mass) j["layer_mass"].push_back(r.str());
                else
                    for (double x : v.layer_mass) j["layer_mass"].push_back(x);
            } else if constexpr (std::is_same_v<T, Product>) {
                j["family"] = "product";
                j["r"] = v.r;
            } else {
                j["family"] = "pullback";
                j["inner"] = distribution_to_json(*v.inner);
            }
        },
        d.variant());
    return j;
}

Distribution distribution_from_json(const json& j) {
    const json& fam = field(j, "family");
    if (!fam.is_string()) throw ValidationError("'family' must be a string");
    const std::string name = fam.get<std::string>();
    if (name == "biased") {
        const json& p = field(j, "p");
        if (p.is_string()) return Distribution::biased(Rational::parse(p.get<std::string>()));
        if (p.is_number()) return Distribution::biased(p.get<double>());
        throw ValidationError("'p' must be a number or a string");
    }
    if (name == "shapley") return Distribution::shapley();
    if (name == "pullback") return Distribution::pullback(distribution_from_json(field(j, "inner")));
    if (name == "product") return Distribution::product(field(j, "r").get<std::vector<double>>());
    if (name == "symmetric") {
        std::vector<Rational> layers;
        for (const auto& v : field(j, "layer_mass")) {
            if (v.is_number_float()) {
                std::vector<double> dl;
                for (const auto& w : j["layer_mass"]) dl.push_back(w.get<double>());
                return Distribution::explicit_symmetric(dl);
            }
            layers.push_back(rational_from_json(v, "layer_mass entry"));
        }
        return Distribution::explicit_symmetric(layers);
    }
    throw ValidationError("unknown distribution family '" + name + "'");
}

json poly_to_json(const MultilinearPoly& q) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = q.n;
    j["k"] = q.k;
    j["basis"] = q.basis == Basis::Monomial ? "monomial" : "character";
    if (q.basis == Basis::Character) j["p"] = q.p;
    j["coeffs"] = json::array();
    auto subset = [](Mask s) {
        json a = json::array();
        for (int c : coords_of(s)) a.push_back(c + 1);
        return a;
    };
    if (q.exact) {
        for (const auto& [s, r] : *q.exact)
            j["coeffs"].push_back({{"subset", subset(s)}, {"num", rational_to_json(Rational(r.num()))},
                                   {"den", rational_to_json(Rational(r.den()))}});
    } else {
        for (const auto& [s, v] : q.coeffs) j["coeffs"].push_back({{"subset", subset(s)}, {"value", v}});
    }
    return j;
}

MultilinearPoly poly_from_json(const json& j) {
    MultilinearPoly q;
    q.n = int_field(j, "n");
    q.k = j.contains("k") ? int_field(j, "k") : q.n;
    if (j.contains("basis")) {
        const std::string b = j["basis"].get<std::string>();
        if (b == "monomial")
            q.basis = Basis::Monomial;
        else if (b == "character")
            q.basis = Basis::Character;
        else
            throw ValidationError("unknown basis '" + b + "'");
    }
    if (j.contains("p")) {
        const json& p = j["p"];
        q.p = p.is_string() ? Rational::parse(p.get<std::string>()).to_double() : p.get<double>();
    }
    if (q.n < 0 || q.n > 62) throw ValidationError("polynomial arity out of range");
    bool all_exact = true;
    std::map<Mask, Rational> exact;
    for (const auto& c : field(j, "coeffs")) {
        std::vector<int> coords;
        for (int i : one_based_list(field(c, "subset"), "subset")) {
            if (i < 1 || i > q.n) throw ValidationError("subset index out of range");
            coords.push_back(i - 1);
        }
        const Mask s = mask_of(coords, q.n);
        if (c.contains("num")) {
            Rational num = rational_from_json(c["num"], "num");
            Rational den = c.contains("den") ? rational_from_json(c["den"], "den") : Rational(1);
            if (den.is_zero()) throw ValidationError("zero denominator");
            exact[s] += num / den;
        } else {
            const json& v = field(c, "value");
            if (!v.is_number()) throw ValidationError("'value' must be a number");
            all_exact = false;
            q.coeffs[s] += v.get<double>();
        }
    }
    if (all_exact) {
        q.exact.emplace();
        for (const auto& [s, r] : exact) q.set_exact(s, r);
    } else {
        for (const auto& [s, r] : exact) q.coeffs[s] += r.to_double();
    }
    q.validate();
    return q;
}

json label_cover_to_json(const LabelCoverInstance& lc) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = lc.n;
    j["left"] = json::array();
    j["right"] = json::array();
    for (int u = 0; u < lc.left; ++u) j["left"].push_back(u + 1);
    for (int v = 0; v < lc.right; ++v) j["right"].push_back(v + 1);
    j["edges"] = json::array();
    for (const auto& e : lc.edges) j["edges"].push_back({{"u", e.u + 1}, {"v", e.v + 1}, {"pi", e.pi.one_based()}});
    return j;
}

LabelCoverInstance label_cover_from_json(const json& j) {
    LabelCoverInstance lc;
    lc.n = int_field(j, "n");
    std::map<std::string, int> left, right;
    for (const auto& v : field(j, "left")) {
        if (!left.emplace(id_string(v), static_cast<int>(left.size())).second)
            throw ValidationError("duplicate left vertex id");
    }
    for (const auto& v : field(j, "right")) {
        if (!right.emplace(id_string(v), static_cast<int>(right.size())).second)
            throw ValidationError("duplicate right vertex id");
    }
    lc.left = static_cast<int>(left.size());
    lc.right = static_cast<int>(right.size());
    for (const auto& e : field(j, "edges")) {
        auto u = left.find(id_string(field(e, "u")));
        auto v = right.find(id_string(field(e, "v")));
        if (u == left.end() || v == right.end()) throw ValidationError("edge refers to an unknown vertex");
        lc.edges.push_back({u->second, v->second, MinorMap::from_one_based(lc.n, one_based_list(field(e, "pi"), "pi"))});
    }
    lc.validate();
    return lc;
}

json minor_condition_to_json(const MinorCondition& mc) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["symbols"] = json::array();
    for (const auto& s : mc.symbols) j["symbols"].push_back({{"name", s.name}, {"arity", s.arity}});
    j["identities"] = json::array();
    for (const auto& id : mc.identities)
        j["identities"].push_back({{"lhs", mc.symbols[id.lhs].name},
                                   {"rhs", mc.symbols[id.rhs].name},
                                   {"pi", id.pi.one_based()}});
    return j;
}

MinorCondition minor_condition_from_json(const json& j) {
    MinorCondition mc;
    for (const auto& s : field(j, "symbols")) {
        const json& name = field(s, "name");
        if (!name.is_string()) throw ValidationError("symbol names must be strings");
        mc.symbols.push_back({name.get<std::string>(), int_field(s, "arity")});
    }
    for (const auto& id : field(j, "identities")) {
        auto lhs = mc.find(field(id, "lhs").get<std::string>());
        auto rhs = mc.find(field(id, "rhs").get<std::string>());
        if (!lhs || !rhs) throw ValidationError("identity refers to an unknown symbol");
        mc.identities.push_back(
            {*lhs, *rhs, MinorMap::from_one_based(mc.symbols[*rhs].arity, one_based_list(field(id, "pi"), "pi"))});
    }
    mc.validate();
    return mc;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // drops the sign of negative zero
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_subset(Mask s) {
    std::string out = "{";
    bool first = true;
    for (int c : coords_of(s)) {
        if (!first) out += ',';
        out += std::to_string(c + 1);
        first = false;
    }
    return out + "}";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_field(cells[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

}  // namespace bfl

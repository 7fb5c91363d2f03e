#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "bfl/dist.hpp"
#include "bfl/error.hpp"
#include "bfl/fourier.hpp"
#include "bfl/influence.hpp"
#include "bfl/io.hpp"
#include "bfl/minors.hpp"
#include "bfl/parallel.hpp"
#include "bfl/pcsp.hpp"
#include "bfl/ptf.hpp"

using namespace bfl;

namespace {

struct Output {
    std::string path;

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ValidationError("cannot write '" + path + "'");
        out << text;
    }
    void write(const json& j) const { write(j.dump(2) + "\n"); }
    void write(const CsvTable& t) const { write(t.str()); }
};

json report(const std::string& kind) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

json one_based(Mask m) {
    json a = json::array();
    for (int c : coords_of(m)) a.push_back(c + 1);
    return a;
}

json one_based(const std::vector<int>& v) {
    json a = json::array();
    for (int c : v) a.push_back(c + 1);
    return a;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(Rational::parse(item).to_double());
    return out;
}

double parse_prob(const std::string& s, const char* what) {
    double p = Rational::parse(s).to_double();
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + " must lie in [0, 1]");
    return p;
}

std::vector<double> unit_grid(int points) {
    if (points < 2) throw ValidationError("grid needs at least 2 points");
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = k == points - 1 ? 1.0 : double(k) / double(points - 1);
    return g;
}

Template load_template(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') return parse_template(read_text_file(spec.substr(1)), spec.substr(1));
    return builtin_template(spec);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        default: return "unknown";
    }
}

std::vector<BooleanFunction> load_minion(const std::vector<std::string>& specs, const std::string& file) {
    std::vector<BooleanFunction> out;
    for (const auto& s : specs) out.push_back(parse_function_spec(s));
    if (!file.empty()) {
        json j = read_json_file(file);
        const json& list = j.is_array() ? j : j.at("functions");
        for (const auto& f : list) out.push_back(function_from_json(f));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean function analysis toolkit"};
    app.require_subcommand(1);
    Output out;
    int threads = 0;
    app.add_option("--out", out.path, "Write output to this file instead of stdout");
    app.add_option("--threads", threads, "Worker threads (default: $BFL_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);

    std::string fn_spec, dist_spec = "biased:1/2", p_text = "1/2", name;
    std::function<void()> action;

    // ------------------------------------------------------------------ fn
    auto* fn = app.add_subcommand("fn", "Construct, inspect and import functions");
    fn->require_subcommand(1);
    auto* fn_make = fn->add_subcommand("make", "Emit a family member as JSON");
    fn_make->add_option("--fn", fn_spec, "Function spec, e.g. maj:2")->required();
    fn_make->add_option("--name", name, "Name stored in the JSON");
    fn_make->callback([&] { action = [&] { out.write(function_to_json(parse_function_spec(fn_spec), name)); }; });

    auto* fn_show = fn->add_subcommand("show", "Summarize a function");
    fn_show->add_option("--fn", fn_spec, "Function spec")->required();
    fn_show->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            auto c = classify(f);
            json j = report("function_summary");
            j["n"] = f.arity();
            j["table_hex"] = table_hex(f);
            j["ones"] = f.count_ones();
            j["essential"] = one_based(c.essential);
            j["increasing_coords"] = one_based(c.domain_up);
            j["decreasing_coords"] = one_based(c.domain_down);
            j["unate"] = c.is_unate;
            j["increasing"] = c.is_increasing;
            j["decreasing"] = c.is_decreasing;
            j["symmetric"] = c.is_symmetric;
            j["idempotent"] = c.is_idempotent;
            out.write(j);
        };
    });

    std::string file;
    auto* fn_import = fn->add_subcommand("import", "Validate a function JSON file and re-emit it in table form");
    fn_import->add_option("--file", file, "Function JSON")->required();
    fn_import->callback([&] { action = [&] { out.write(function_to_json(function_from_json(read_json_file(file)))); }; });

    // ------------------------------------------------------------- analyze
    auto* analyze = app.add_subcommand("analyze", "Per-coordinate and spectral tables");
    analyze->require_subcommand(1);
    std::string delta_text = "0.1";
    bool nonzero = false;

    auto* an_inf = analyze->add_subcommand("influence", "Influence of every coordinate");
    an_inf->add_option("--fn", fn_spec)->required();
    an_inf->add_option("--dist", dist_spec, "Distribution spec");
    an_inf->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            auto d = parse_distribution_spec(dist_spec);
            auto inf = influences(f, d);
            CsvTable t{{"coordinate", "value", "exact"}, {}};
            for (int i = 0; i < f.arity(); ++i) {
                std::string exact;
                if (d.has_exact()) {
                    try {
                        exact = exact_influence(f, i, d).str();
                    } catch (const OverflowError&) {
                    }
                }
                t.rows.push_back({std::to_string(i + 1), format_double(inf[i]), exact});
            }
            out.write(t);
        };
    });

    auto* an_spec = analyze->add_subcommand("spectrum", "Biased Fourier coefficients");
    an_spec->add_option("--fn", fn_spec)->required();
    an_spec->add_option("--p", p_text, "Bias");
    an_spec->add_flag("--nonzero", nonzero, "Only rows with |coefficient| > 1e-12");
    an_spec->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            auto s = transform(f, parse_prob(p_text, "p"));
            CsvTable t{{"mask", "subset", "coefficient"}, {}};
            for (Mask m = 0; m < s.coeffs.size(); ++m) {
                if (nonzero && std::abs(s.coeffs[m]) <= 1e-12) continue;
                t.rows.push_back({std::to_string(m), format_subset(m), format_double(s.coeffs[m])});
            }
            out.write(t);
        };
    });

    auto* an_noise = analyze->add_subcommand("noise", "Noise stability and sensitivity");
    an_noise->add_option("--fn", fn_spec)->required();
    an_noise->add_option("--p", p_text, "Bias");
    an_noise->add_option("--delta", delta_text, "Comma-separated noise rates");
    an_noise->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            const double p = parse_prob(p_text, "p");
            auto s = transform(f, p);
            CsvTable t{{"delta", "stability", "sensitivity", "sensitivity_direct"}, {}};
            for (double delta : parse_doubles(delta_text)) {
                if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("delta must lie in [0, 1]");
                std::string direct;
                if (f.arity() <= kMaxDirectNoiseArity)
                    direct = format_double(noise_sensitivity(f, p, delta, NoiseMode::Direct));
                t.rows.push_back({format_double(delta), format_double(noise_stability(s, delta)),
                                  format_double(noise_sensitivity(f, p, delta)), direct});
            }
            out.write(t);
        };
    });

    auto* an_tails = analyze->add_subcommand("tails", "Spectral weight per level and tails");
    an_tails->add_option("--fn", fn_spec)->required();
    an_tails->add_option("--p", p_text, "Bias");
    an_tails->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            auto s = transform(f, parse_prob(p_text, "p"));
            auto lw = level_weights(s);
            CsvTable t{{"level", "weight", "tail_above"}, {}};
            for (int d = 0; d <= f.arity(); ++d)
                t.rows.push_back({std::to_string(d), format_double(lw[d]), format_double(tail_weight(s, d))});
            out.write(t);
        };
    });

    // -------------------------------------------------------------- curves
    auto* curves = app.add_subcommand("curves", "Plot-ready curve data");
    curves->require_subcommand(1);
    int grid = 101, w_grid = 21, h_grid = 21;
    std::string eps_text = "1/2";

    auto* c_ep = curves->add_subcommand("ep", "E_p[f] on a uniform p grid");
    c_ep->add_option("--fn", fn_spec)->required();
    c_ep->add_option("--grid", grid, "Number of grid points");
    c_ep->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            if (grid < 2) throw ValidationError("grid needs at least 2 points");
            CsvTable t{{"p", "value"}, {}};
            for (auto [p, e] : ep_curve(f, grid)) t.rows.push_back({format_double(p), format_double(e)});
            out.write(t);
        };
    });

    auto* c_epq = curves->add_subcommand("epq", "E_{p,q}[f] heatmap");
    c_epq->add_option("--fn", fn_spec)->required();
    c_epq->add_option("--w-grid", w_grid, "Points for p (increasing coordinates)");
    c_epq->add_option("--h-grid", h_grid, "Points for q (decreasing coordinates)");
    c_epq->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            PQExpectation e(f);
            CsvTable t{{"p", "q", "value"}, {}};
            for (double p : unit_grid(w_grid))
                for (double q : unit_grid(h_grid))
                    t.rows.push_back({format_double(p), format_double(q), format_double(e(p, q))});
            out.write(t);
        };
    });

    auto* c_level = curves->add_subcommand("level", "Level curve E_{p,q}[f] = eps");
    c_level->add_option("--fn", fn_spec)->required();
    c_level->add_option("--eps", eps_text, "Level");
    c_level->add_option("--grid", grid, "Number of q grid points");
    c_level->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            auto pts = level_curve(f, parse_prob(eps_text, "eps"), unit_grid(grid));
            CsvTable t{{"q", "p", "found"}, {}};
            for (const auto& pt : pts)
                t.rows.push_back({format_double(pt.q), pt.ok ? format_double(pt.p) : "", pt.ok ? "1" : "0"});
            out.write(t);
        };
    });

    // ------------------------------------------------------------ preserve
    auto* preserve = app.add_subcommand("preserve", "Influence preservation under a random 2-to-1 minor");
    int coord = 1;
    std::string tau_text = "1/10", mode_text = "exact";
    std::uint64_t samples = 100000, seed = 1;
    bool two_step = false, as_json = false;
    preserve->add_option("--fn", fn_spec)->required();
    preserve->add_option("--i", coord, "Coordinate (1-based)")->required();
    preserve->add_option("--dist", dist_spec, "Distribution spec");
    preserve->add_option("--tau", tau_text, "Influence threshold");
    preserve->add_option("--mode", mode_text, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    preserve->add_option("--samples", samples, "Monte-Carlo samples");
    preserve->add_option("--seed", seed, "Monte-Carlo seed");
    preserve->add_flag("--two-step", two_step, "Also report the two-step decomposition");
    preserve->add_flag("--json", as_json, "Emit a JSON experiment report instead of CSV");
    preserve->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            if (coord < 1 || coord > f.arity()) throw ValidationError("--i must lie in [1, n]");
            PreservationOptions o;
            o.mode = mode_text == "exact" ? Mode::Exact : Mode::MonteCarlo;
            o.samples = samples;
            o.seed = seed;
            o.two_step = two_step;
            auto r = preservation_probability(f, coord - 1, parse_distribution_spec(dist_spec),
                                              Rational::parse(tau_text).to_double(), o);
            if (as_json) {
                json j = report("preservation");
                j["function"] = function_to_json(f);
                j["distribution"] = dist_spec;
                j["i"] = coord;
                j["tau"] = tau_text;
                j["mode"] = mode_text;
                j["estimate"] = r.estimate;
                j["half_width"] = r.half_width;
                j["samples"] = r.samples;
                j["seed"] = r.seed;
                if (r.two_step_estimate) j["two_step_estimate"] = *r.two_step_estimate;
                out.write(j);
                return;
            }
            CsvTable t{{"mode", "estimate", "half_width", "samples", "seed"}, {}};
            t.rows.push_back({mode_text, format_double(r.estimate), format_double(r.half_width),
                              std::to_string(r.samples), std::to_string(r.seed)});
            if (r.two_step_estimate) t.rows.push_back({"two-step", format_double(*r.two_step_estimate), "0",
                                                       std::to_string(r.samples), std::to_string(r.seed)});
            out.write(t);
        };
    });

    // ---------------------------------------------------------------- dist
    auto* dist = app.add_subcommand("dist", "Distribution checks");
    dist->require_subcommand(1);
    auto* d_check = dist->add_subcommand("check", "Reasonable-distribution axioms at one dimension");
    ReasonableParams rp;
    int dim = 10;
    std::string family = "biased:1/3";
    d_check->add_option("--family", family, "Distribution spec");
    d_check->add_option("--eps", rp.eps);
    d_check->add_option("--alpha", rp.alpha);
    d_check->add_option("--beta", rp.beta);
    d_check->add_option("--lambda", rp.lambda);
    d_check->add_option("--N", rp.N, "Threshold dimension");
    d_check->add_option("--n", dim, "Dimension to check");
    d_check->callback([&] {
        action = [&] {
            auto r = check_reasonable(parse_distribution_spec(family), rp, dim);
            json j = report("reasonable_check");
            j["family"] = family;
            j["n"] = r.n;
            j["params"] = {{"eps", rp.eps}, {"alpha", rp.alpha}, {"beta", rp.beta}, {"lambda", rp.lambda}, {"N", rp.N}};
            j["n_at_least_N"] = r.n_at_least_N;
            j["band"] = {{"mass", r.band_mass}, {"ok", r.band_ok}};
            j["flatness"] = {{"max_layer_mass", r.max_layer_mass}, {"layer", r.max_layer}, {"ok", r.flat_ok}};
            j["smoothness"] = {{"min_ratio", r.min_smooth_ratio}, {"max_ratio", r.max_smooth_ratio}, {"ok", r.smooth_ok}};
            j["consistency"] = {{"min_ratio", r.min_consistency_ratio},
                                {"max_ratio", r.max_consistency_ratio},
                                {"ok", r.consistency_ok}};
            j["pullback_c"] = r.pullback_c;
            if (r.exact_pullback_c) j["pullback_c_exact"] = r.exact_pullback_c->str();
            j["pullback_lower_c"] = r.pullback_lower_c;
            if (r.exact_pullback_lower_c) j["pullback_lower_c_exact"] = r.exact_pullback_lower_c->str();
            j["all_ok"] = r.all_ok();
            out.write(j);
        };
    });

    // ----------------------------------------------------------------- ptf
    auto* ptf = app.add_subcommand("ptf", "Polynomial threshold functions");
    ptf->require_subcommand(1);
    int degree = 1, fixed = 0;
    std::string poly_file, values_text;

    auto* p_degree = ptf->add_subcommand("degree", "Is f the sign of a degree-k polynomial?");
    p_degree->add_option("--fn", fn_spec)->required();
    p_degree->add_option("--k", degree, "Degree bound")->required();
    p_degree->callback([&] {
        action = [&] {
            auto f = parse_function_spec(fn_spec);
            auto r = ptf_degree_at_most(f, degree);
            json j = report("ptf_degree");
            j["n"] = f.arity();
            j["k"] = degree;
            j["feasible"] = r.feasible;
            j["pivots"] = r.pivots;
            if (r.witness) j["witness"] = poly_to_json(*r.witness);
            if (!r.feasible) {
                j["certificate"] = json::array();
                for (Tuple x = 0; x < r.certificate.size(); ++x)
                    if (!r.certificate[x].is_zero())
                        j["certificate"].push_back({{"point", one_based(x)}, {"weight", r.certificate[x].str()}});
            }
            out.write(j);
        };
    });

    auto load_sign_rep = [&](const std::string& path, double p) {
        auto q = poly_from_json(read_json_file(path));
        return q.basis == Basis::Monomial ? to_sign_representation(q, p) : q;
    };

    auto* p_reg = ptf->add_subcommand("regularity", "Regularity profile of a sign representation");
    p_reg->add_option("--poly", poly_file, "Polynomial JSON")->required();
    p_reg->add_option("--eps", eps_text, "Regularity parameter");
    p_reg->add_option("--p", p_text, "Bias used to convert a monomial-basis input");
    p_reg->callback([&] {
        action = [&] {
            auto q = load_sign_rep(poly_file, parse_prob(p_text, "p"));
            auto r = regularity_profile(q, Rational::parse(eps_text).to_double());
            json j = report("regularity_profile");
            j["eps"] = r.eps;
            j["order"] = one_based(r.order);
            j["w2"] = r.w2;
            j["sigma2"] = r.sigma2;
            j["sum_w4"] = r.sum_w4;
            j["regular"] = r.regular;
            j["critical_index"] = r.critical_index;
            j["degree"] = r.degree;
            j["max_w2"] = r.max_w2;
            j["small_influence_claim"] = r.small_influence_claim;
            j["sigma_recursion"] = r.sigma_recursion;
            out.write(j);
        };
    });

    auto* p_restrict = ptf->add_subcommand("restrict", "Fix the first m variables");
    p_restrict->add_option("--poly", poly_file, "Polynomial JSON")->required();
    p_restrict->add_option("--m", fixed, "Number of fixed variables")->required();
    p_restrict->add_option("--values", values_text, "Comma-separated variable values");
    p_restrict->callback([&] {
        action = [&] {
            auto q = poly_from_json(read_json_file(poly_file));
            out.write(poly_to_json(restrict_poly(q, fixed, parse_doubles(values_text))));
        };
    });

    auto* p_det = ptf->add_subcommand("determined", "Pr[Q > 0] under mu_p and eps-determinedness");
    p_det->add_option("--poly", poly_file, "Polynomial JSON")->required();
    p_det->add_option("--eps", eps_text, "Determinedness parameter");
    p_det->add_option("--p", p_text, "Bias");
    p_det->callback([&] {
        action = [&] {
            auto q = poly_from_json(read_json_file(poly_file));
            const double p = parse_prob(p_text, "p");
            auto r = is_determined(q, Rational::parse(eps_text).to_double(), p);
            json j = report("determinedness");
            j["p"] = p;
            j["prob_positive"] = r.prob_positive;
            j["determined"] = r.determined;
            out.write(j);
        };
    });

    // ---------------------------------------------------------------- pcsp
    auto* pcsp = app.add_subcommand("pcsp", "Templates, Label Cover and minor conditions");
    pcsp->require_subcommand(1);
    std::string lc_file, mc_file, template_spec = "unate", minion_file, check_spec;
    std::vector<std::string> minion_specs;
    std::uint64_t budget = kDefaultBudget;
    int closure = 0, arity = 2;

    auto* c_reduce = pcsp->add_subcommand("reduce", "Label Cover instance to minor condition");
    c_reduce->add_option("--lc", lc_file, "Label Cover JSON")->required();
    c_reduce->callback([&] {
        action = [&] {
            json j = minor_condition_to_json(reduce_to_pmc(label_cover_from_json(read_json_file(lc_file))));
            out.write(j);
        };
    });

    auto* c_trivial = pcsp->add_subcommand("trivial", "Is the minor condition satisfied by projections?");
    c_trivial->add_option("--mc", mc_file, "Minor condition JSON");
    c_trivial->add_option("--lc", lc_file, "Label Cover JSON (reduced first)");
    c_trivial->add_option("--budget", budget, "Search node budget");
    c_trivial->callback([&] {
        action = [&] {
            if (mc_file.empty() == lc_file.empty()) throw ValidationError("give exactly one of --mc and --lc");
            MinorCondition mc = mc_file.empty() ? reduce_to_pmc(label_cover_from_json(read_json_file(lc_file)))
                                                : minor_condition_from_json(read_json_file(mc_file));
            auto r = is_trivial(mc, budget);
            json j = report("triviality");
            j["trivial"] = verdict_name(r.verdict);
            j["nodes"] = r.nodes;
            if (r.verdict == Verdict::Yes) {
                json w = json::object();
                for (std::size_t s = 0; s < mc.symbols.size(); ++s) w[mc.symbols[s].name] = r.coords[s] + 1;
                j["projections"] = w;
            }
            out.write(j);
            if (r.verdict == Verdict::Unknown) throw BudgetExceeded("triviality search exceeded its budget");
        };
    });

    auto* c_satisfy = pcsp->add_subcommand("satisfy", "Search an interpretation in an explicit minion");
    c_satisfy->add_option("--mc", mc_file, "Minor condition JSON")->required();
    c_satisfy->add_option("--minion", minion_specs, "Function specs")->delimiter(',');
    c_satisfy->add_option("--minion-file", minion_file, "JSON list of functions");
    c_satisfy->add_option("--closure", closure, "Close the list under minors up to this arity first");
    c_satisfy->add_option("--budget", budget, "Search node budget");
    c_satisfy->callback([&] {
        action = [&] {
            auto mc = minor_condition_from_json(read_json_file(mc_file));
            auto minion = load_minion(minion_specs, minion_file);
            if (closure > 0) minion = minor_closure(minion, closure);
            auto r = satisfiable_in_minion(mc, minion, budget);
            json j = report("minion_satisfaction");
            j["satisfiable"] = verdict_name(r.verdict);
            j["nodes"] = r.nodes;
            j["minion_size"] = minion.size();
            if (r.verdict == Verdict::Yes) {
                json w = json::object();
                for (std::size_t s = 0; s < mc.symbols.size(); ++s) w[mc.symbols[s].name] = table_hex(r.interpretation[s]);
                j["interpretation"] = w;
            }
            out.write(j);
            if (r.verdict == Verdict::Unknown) throw BudgetExceeded("minion search exceeded its budget");
        };
    });

    auto* c_rich = pcsp->add_subcommand("rich", "Rich 2-to-1 check and best labeling");
    bool with_value = false;
    c_rich->add_option("--lc", lc_file, "Label Cover JSON")->required();
    c_rich->add_flag("--value", with_value, "Also compute the exact value");
    c_rich->add_option("--budget", budget, "Search node budget for --value");
    c_rich->callback([&] {
        action = [&] {
            auto lc = label_cover_from_json(read_json_file(lc_file));
            json j = report("label_cover");
            j["rich_2to1"] = is_rich_2to1(lc);
            if (with_value) {
                auto b = best_labeling(lc, budget);
                j["value"] = b.value.str();
                j["labeling"] = {{"left", one_based(b.labeling.left)}, {"right", one_based(b.labeling.right)}};
            }
            out.write(j);
        };
    });

    auto* c_pol = pcsp->add_subcommand("polymorphisms", "Enumerate or check polymorphisms");
    c_pol->add_option("--template", template_spec, "Built-in name or @file");
    c_pol->add_option("--m", arity, "Arity to enumerate");
    c_pol->add_option("--check", check_spec, "Check this function instead of enumerating");
    c_pol->add_option("--budget", budget, "Search node budget");
    c_pol->callback([&] {
        action = [&] {
            auto t = load_template(template_spec);
            if (!check_spec.empty()) {
                json j = report("polymorphism_check");
                j["template"] = template_spec;
                j["polymorphism"] = is_polymorphism(parse_function_spec(check_spec), t);
                out.write(j);
                return;
            }
            auto r = enumerate_polymorphisms(t, arity, budget);
            CsvTable tab{{"index", "table_hex", "unate"}, {}};
            for (std::size_t i = 0; i < r.functions.size(); ++i)
                tab.rows.push_back({std::to_string(i + 1), table_hex(r.functions[i]),
                                    classify(r.functions[i]).is_unate ? "1" : "0"});
            out.write(tab);
        };
    });

    try {
        app.parse(argc, argv);
        if (threads > 0) set_thread_count(threads);
        if (action) action();
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return 2;
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

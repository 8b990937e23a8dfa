#include "subshift/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "subshift/asymptotic.hpp"
#include "subshift/autgroup.hpp"
#include "subshift/error.hpp"
#include "subshift/io.hpp"
#include "subshift/kernels.hpp"
#include "subshift/language.hpp"
#include "subshift/mixedbuild.hpp"
#include "subshift/nilcode.hpp"
#include "subshift/realize.hpp"

namespace subshift {

namespace {

using nlohmann::json;

struct Options {
  std::string out;
  std::string format = "json";
  int threads = 0;
  std::uint64_t seed = 1;

  std::vector<std::string> subst;
  std::vector<std::string> seq;
  std::size_t n = 10;
  std::string side = "left";
  std::size_t state_cap = kVisitStateCap;
  std::size_t depth = kDefaultTailDepth;
  std::size_t cutoff = kDefaultAperiodicCutoff;
  bool doubling = false;
  std::size_t samples = 100;

  std::string mode = "hp";
  std::size_t radius = 1;
  std::size_t check_depth = 0;
  std::optional<std::size_t> inverse_radius;
  std::size_t rule_cap = kRuleSpaceCap;

  std::vector<std::string> groups;
  bool catalog = false;
  bool verify = false;

  std::string phi = "n^2";
  std::size_t stages = 2;
  std::uint64_t budget = kDefaultPrefixBudget;

  std::size_t d = 2;
  std::string alpha = "golden";
  std::size_t orbit = 100000;
  std::size_t nmax = 8;
  bool formula_only = false;
};

struct Artifact {
  json result = json::object();
  json certification = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  int exit_code = 0;
  std::string status = "ok";
  std::string message;

  void inconclusive(std::string why) {
    exit_code = 2;
    status = "inconclusive";
    message = std::move(why);
  }
};

Execution execution_for(const Options& o) {
  return o.threads == 1 ? Execution::serial : Execution::parallel;
}

void attach_cache(const FactorLanguage& lang) {
  if (const char* dir = std::getenv("SUBSHIFT_CACHE_DIR"); dir && *dir) lang.set_cache_dir(dir);
}

FactorLanguage load_language(const Options& o) {
  std::vector<FactorLanguage> parts;
  for (const auto& p : o.subst) parts.push_back(FactorLanguage::from_substitution(load_substitution(p)));
  for (const auto& p : o.seq) parts.push_back(load_sequence(p));
  if (parts.empty()) throw PreconditionError("give an input with --subst or --seq");
  if (parts.size() > 1) throw PreconditionError("only the product subcommand takes several inputs");
  attach_cache(parts.front());
  return parts.front();
}

std::string render(const Alphabet& a, std::span<const Letter> w) { return a.render(w); }

json letters_json(const Alphabet& a, const std::vector<Letter>& ls) {
  json out = json::array();
  for (Letter l : ls) out.push_back(a.label(l));
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

json descriptor_json(const AutomorphismDescriptor& d) {
  json j{{"shift", d.shift},
         {"radius", d.rule.radius()},
         {"rule", d.rule.to_hex()},
         {"status", to_string(d.status)},
         {"shift_power", d.shift_power}};
  if (d.inverse) {
    j["inverse"] = {{"shift", d.inverse_shift}, {"radius", d.inverse->radius()}, {"rule", d.inverse->to_hex()}};
  }
  return j;
}

// ---- subcommands ----

Artifact cmd_lang(const Options& o) {
  Artifact a;
  auto lang = load_language(o);
  const auto& words = lang.factors(o.n);
  a.result = {{"n", o.n}, {"count", words.size()}, {"fingerprint", lang.fingerprint()}};
  a.certification = {{"exact", true}};
  a.columns = {"word"};
  for (const auto& w : words) a.rows.push_back({render(lang.alphabet(), w)});
  return a;
}

Artifact complexity_rows(const FactorLanguage& lang, std::size_t n) {
  Artifact a;
  auto prof = lang.profile(n);
  a.result = {{"max_n", n}, {"diff_bound", prof.diff_bound}, {"fingerprint", lang.fingerprint()}};
  a.certification = {{"exact", true}};
  a.columns = {"n", "p", "first_difference"};
  for (std::size_t k = 0; k <= n; ++k) {
    json diff = k < prof.first_differences.size() ? json(prof.first_differences[k]) : json("");
    a.rows.push_back({k, prof.values[k], diff});
  }
  return a;
}

Artifact cmd_complexity(const Options& o) { return complexity_rows(load_language(o), o.n); }

Artifact cmd_product(const Options& o) {
  std::vector<FactorLanguage> parts;
  for (const auto& p : o.subst) parts.push_back(FactorLanguage::from_substitution(load_substitution(p)));
  for (const auto& p : o.seq) parts.push_back(load_sequence(p));
  if (parts.size() < 2) throw PreconditionError("product needs at least two inputs");
  auto lang = FactorLanguage::product(std::move(parts));
  attach_cache(lang);
  return complexity_rows(lang, o.n);
}

Artifact cmd_special(const Options& o) {
  Artifact a;
  auto lang = load_language(o);
  Side side;
  if (o.side == "left") side = Side::left;
  else if (o.side == "right") side = Side::right;
  else throw PreconditionError("--side must be left or right");
  auto words = special_words(lang, o.n, side);
  a.result = {{"n", o.n}, {"side", o.side}, {"count", words.size()}};
  a.certification = {{"exact", true}};
  a.columns = {"word", "extensions"};
  for (const auto& sw : words) {
    std::vector<std::string> ext;
    for (Letter l : sw.extensions) ext.push_back(lang.alphabet().label(l));
    a.rows.push_back({render(lang.alphabet(), sw.word), join(ext, " ")});
  }
  return a;
}

Artifact cmd_visit(const Options& o) {
  Artifact a;
  auto lang = load_language(o);
  a.columns = {"n", "visiting", "lower_bound", "method", "at_least_bound"};
  bool all_ok = true;
  std::size_t done = 0;
  try {
    for (std::size_t k = 1; k <= o.n; ++k) {
      auto v = visiting_time(lang, k, o.state_cap);
      const std::uint64_t lower = lang.complexity(k) + k - 1;
      const bool ok = v.value >= lower;
      all_ok = all_ok && ok;
      a.rows.push_back({k, v.value, lower, v.method, ok});
      done = k;
    }
  } catch (const CapExceeded& e) {
    a.inconclusive(e.what());
  }
  a.result = {{"max_n", o.n}, {"computed_through", done}, {"state_cap", o.state_cap}};
  a.certification = {{"exact", true}, {"lower_bound_holds", all_ok}};
  return a;
}

Artifact cmd_asymptotic(const Options& o) {
  Artifact a;
  if (o.doubling) {
    auto rep = verify_doubling_component(o.n, {{0, 0}, {1, 0, 1, 0}, {1, 1, 0, 1, 1}}, 5, o.samples, 30, o.seed);
    const Alphabet bin = Alphabet::of_size(2);
    a.columns = {"word", "absent", "witness"};
    for (const auto& f : rep.forbidden)
      a.rows.push_back({render(bin, f.word), !f.witness, f.witness ? render(bin, *f.witness) : ""});
    json fails = json::array();
    for (const auto& s : rep.failures) fails.push_back({{"word", render(bin, s.word)}, {"parses", s.parses}});
    a.result = {{"max_n", rep.max_n},
                {"forbidden_detail", rep.forbidden_detail},
                {"tails_detail", rep.tails_detail},
                {"words_checked", rep.words_checked},
                {"desubstitution_failures", fails}};
    a.certification = {{"forbidden_absent", rep.forbidden_absent},
                       {"tails_are_ones", rep.tails_are_ones},
                       {"unique_desubstitution", rep.unique_desubstitution},
                       {"ok", rep.ok()}};
    return a;
  }
  auto lang = load_language(o);
  auto rep = asymptotic_components(lang, o.depth, o.cutoff);
  const auto& al = lang.alphabet();
  a.columns = {"seed", "branches", "tail"};
  json comps = json::array();
  for (const auto& c : rep.components) {
    comps.push_back({{"seed", al.label(c.seed)}, {"branches", letters_json(al, c.branches)}, {"tail", render(al, c.tail)}});
    std::vector<std::string> br;
    for (Letter l : c.branches) br.push_back(al.label(l));
    a.rows.push_back({al.label(c.seed), join(br, " "), render(al, c.tail)});
  }
  a.result = {{"period", rep.period}, {"depth", rep.depth}, {"count", rep.components.size()}, {"components", comps}, {"note", rep.note}};
  a.certification = {{"exact", rep.exact}};
  if (!rep.exact) a.inconclusive("component separation not certified at depth " + std::to_string(rep.depth));
  return a;
}

Artifact aut_hp(const Options& o, const FactorLanguage& lang) {
  Artifact a;
  auto q = letter_automorphisms(lang, o.cutoff);
  auto summary = q.summary();
  auto comps = asymptotic_components(lang, o.depth, o.cutoff);
  auto action = aut_action_on_components(q, comps);
  const auto& al = lang.alphabet();
  a.columns = {"element", "letter_map", "order", "component_permutation"};
  auto g = q.as_group();
  for (std::size_t i = 0; i < q.elements.size(); ++i) {
    std::vector<std::string> perm;
    if (i < action.permutations.size())
      for (auto c : action.permutations[i]) perm.push_back(std::to_string(c));
    a.rows.push_back({i, render(al, q.elements[i]), g.element_order(i), join(perm, " ")});
  }
  const std::size_t count = comps.components.size();
  a.result = {{"quotient_order", summary.order},
              {"abelian", summary.abelian},
              {"element_orders", summary.element_orders},
              {"iso_label", summary.iso_label},
              {"components", count},
              {"divides", count % summary.order == 0},
              {"action_free", action.free},
              {"action_homomorphism", action.homomorphism},
              {"action_note", action.note}};
  a.certification = {{"quotient_status", to_string(q.status)},
                     {"components_exact", comps.exact},
                     {"action_decided", action.decided}};
  if (!comps.exact || !action.decided) a.inconclusive("component data not certified");
  return a;
}

Artifact aut_search(const Options& o, const FactorLanguage& lang) {
  Artifact a;
  SearchOptions so;
  so.radius = o.radius;
  so.check_depth = o.check_depth;
  so.inverse_radius = o.inverse_radius;
  so.rule_space_cap = o.rule_cap;
  so.execution = execution_for(o);
  auto res = search_automorphisms(lang, so);
  a.columns = {"shift", "radius", "rule", "status", "shift_power"};
  json classes = json::array();
  for (const auto& d : res.classes) {
    classes.push_back(descriptor_json(d));
    a.rows.push_back({d.shift, d.rule.radius(), d.rule.to_hex(), to_string(d.status), d.shift_power});
  }
  a.result = {{"radius", res.radius},
              {"check_depth", res.check_depth},
              {"inverse_radius", res.inverse_radius},
              {"rules_passing", res.rules_passing},
              {"classes", classes},
              {"nontrivial", res.nontrivial()}};
  a.certification = {{"truncation_depth", res.check_depth}, {"only_shift_powers", res.nontrivial() == 0}};
  return a;
}

Artifact aut_ball(const Options& o, const FactorLanguage& lang) {
  Artifact a;
  const std::size_t k = lang.alphabet().size();
  std::vector<AutomorphismDescriptor> gens{shift_descriptor(k, 1)};
  std::string gen_note = "shift";
  if (lang.source() == FactorLanguage::Source::substitution && lang.substitution().flags().bijective) {
    auto q = letter_automorphisms(lang, o.cutoff);
    auto ds = q.descriptors();
    for (std::size_t i = 1; i < ds.size(); ++i) gens.push_back(ds[i]);
    gen_note = "shift and letter automorphisms";
  }
  a.columns = {"n", "ball", "evaluation_length", "visiting", "bound", "within_bound"};
  bool all_within = true;
  try {
    for (std::size_t m = 1; m <= o.n; ++m) {
      auto b = ball_growth(lang, gens, m, o.state_cap);
      all_within = all_within && b.within_bound;
      a.rows.push_back({m, b.count, b.evaluation_length, b.visiting ? json(*b.visiting) : json(""),
                        b.bound ? json(*b.bound) : json(""), b.within_bound});
      if (!b.visiting) a.inconclusive(b.note.empty() ? "visiting time not computed" : b.note);
    }
  } catch (const CapExceeded& e) {
    a.inconclusive(e.what());
  }
  json gj = json::array();
  for (const auto& g : gens) gj.push_back(descriptor_json(g));
  a.result = {{"generators", gj}, {"generator_set", gen_note}, {"max_n", o.n}};
  a.certification = {{"within_bound", all_within}};
  return a;
}

Artifact cmd_aut(const Options& o) {
  auto lang = load_language(o);
  if (o.mode == "hp" || o.mode == "letters") return aut_hp(o, lang);
  if (o.mode == "search") return aut_search(o, lang);
  if (o.mode == "ball") return aut_ball(o, lang);
  throw PreconditionError("--mode must be hp, search or ball");
}

Artifact cmd_realize(const Options& o) {
  Artifact a;
  std::vector<std::string> names;
  std::vector<FiniteGroup> groups;
  for (const auto& p : o.groups) {
    names.push_back(p);
    groups.push_back(load_group(p));
  }
  if (o.catalog)
    for (const auto& ng : group_catalog())
      if (ng.group.order() <= 8) {
        names.push_back(ng.name);
        groups.push_back(ng.group);
      }
  if (groups.empty()) throw PreconditionError("give --group files or --catalog");
  if (!o.verify) {
    a.columns = {"group", "order", "substitution"};
    json subs = json::array();
    for (std::size_t i = 0; i < groups.size(); ++i) {
      auto s = group_substitution(groups[i]);
      subs.push_back(substitution_to_json(s));
      a.rows.push_back({names[i], groups[i].order(), substitution_to_json(s)["rules"].dump()});
    }
    a.result = {{"substitutions", subs}};
    a.certification = {{"verified", false}};
    return a;
  }
  auto reports = verify_realizations(groups, execution_for(o));
  a.columns = {"group", "order", "quotient_order", "iso_label", "witness_ok", "components", "components_exact", "ok"};
  json reps = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    all_ok = all_ok && r.ok;
    reps.push_back({{"group", names[i]},
                    {"order", r.order},
                    {"enumeration", r.enumeration},
                    {"substitution", substitution_to_json(r.substitution)},
                    {"quotient_order", r.summary.order},
                    {"iso_label", r.summary.iso_label},
                    {"quotient_status", to_string(r.quotient.status)},
                    {"witness", r.witness},
                    {"witness_ok", r.witness_ok},
                    {"aperiodicity_evidence", r.aperiodicity_evidence},
                    {"components", r.components},
                    {"components_exact", r.components_exact},
                    {"ok", r.ok},
                    {"note", r.note}});
    a.rows.push_back({names[i], r.order, r.summary.order, r.summary.iso_label, r.witness_ok, r.components,
                      r.components_exact, r.ok});
  }
  a.result = {{"reports", reps}};
  a.certification = {{"all_ok", all_ok}};
  return a;
}

Artifact cmd_mixed(const Options& o) {
  Artifact a;
  auto phi = GrowthFunction::parse(o.phi);
  auto plan = plan_stages(phi, o.stages, o.budget);
  auto rep = materialize_and_check(plan);
  json stages = json::array();
  for (const auto& s : plan.stages)
    stages.push_back({{"k", s.k}, {"tau_length", s.tau_length}, {"outer_length", s.outer_length},
                      {"ell", s.ell}, {"m", s.m}, {"phi_m", static_cast<double>(s.phi_m)}});
  a.columns = {"checkpoint", "length", "relation", "target", "count", "symbols", "verdict", "detail"};
  bool any_inconclusive = false;
  for (const auto& c : rep.checkpoints) {
    any_inconclusive = any_inconclusive || c.verdict == Verdict::inconclusive;
    a.rows.push_back({c.name, c.length, c.relation, static_cast<double>(c.target),
                      c.count ? json(*c.count) : json(""), c.symbols, to_string(c.verdict), c.detail});
  }
  json window_checks = json::array();
  for (const auto& w : rep.window_checks) window_checks.push_back({{"verdict", to_string(w.verdict)}, {"detail", w.detail}});
  a.result = {{"phi", o.phi},
              {"stages", stages},
              {"interleaved", plan.interleaved},
              {"prefix_length", rep.prefix_length},
              {"recurrence_detail", rep.recurrence_detail},
              {"window_checks", window_checks}};
  a.certification = {{"prefix_property", to_string(rep.prefix_property)},
                     {"recurrence", to_string(rep.recurrence)},
                     {"coverage_ok", rep.coverage_ok},
                     {"all_pass", rep.all_pass()}};
  if (any_inconclusive) a.inconclusive("some checkpoints are out of reach of the budget");
  return a;
}

QuadraticField parse_field(const std::string& text) {
  if (text == "golden") return QuadraticField::golden();
  std::istringstream in(text);
  std::int64_t p, q;
  long double lo, hi;
  char c1, c2, c3;
  if (!(in >> p >> c1 >> q >> c2 >> lo >> c3 >> hi) || c1 != ',' || c2 != ',' || c3 != ',' || !in.eof())
    throw PreconditionError("--alpha must be 'golden' or 'p,q,lo,hi' for a root of x^2+px+q in (lo,hi)");
  return QuadraticField(p, q, lo, hi);
}

Artifact cmd_nilcode(const Options& o) {
  Artifact a;
  a.columns = {"n", "empirical", "formula"};
  if (o.formula_only) {
    for (std::size_t k = 1; k <= o.nmax; ++k) a.rows.push_back({k, "", vandermonde_complexity(o.d, k).str()});
    a.result = {{"d", o.d}};
    a.certification = {{"formula", "exact"}};
    return a;
  }
  AffineNilsystem sys(o.d, parse_field(o.alpha));
  auto arr = TorusArrangement::build(sys);
  auto coding = code_orbit(sys, arr, default_start(o.d), o.orbit);
  auto rows = empirical_complexity(coding, o.d, o.nmax, execution_for(o));
  bool within = true;
  std::size_t attained = 0;  // formula reached for every n up to here
  for (const auto& r : rows) {
    const boost::multiprecision::cpp_int e(r.empirical);
    within = within && e <= r.formula;
    if (e == r.formula && attained + 1 == r.n) attained = r.n;
    a.rows.push_back({r.n, r.empirical, r.formula.str()});
  }
  json cells = json::array();
  for (const auto& c : arr.cells()) cells.push_back({{"label", c.label}, {"pieces", c.pieces}});
  a.result = {{"d", o.d}, {"alpha", o.alpha}, {"orbit_length", o.orbit}, {"cells", cells},
              {"matrix", sys.matrix()}, {"alpha_multiples", sys.alpha_multiples()}};
  a.certification = {{"exact_arithmetic", true}, {"within_formula", within}, {"attained_through", attained}};
  return a;
}

// ---- output ----

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

void write_artifact(std::ostream& os, const std::string& command, const json& config,
                    const Artifact& a, const std::string& format) {
  if (format == "csv") {
    os << "# tool=subshift version=" << kToolVersion << " command=" << command << '\n';
    os << "# config=" << config.dump() << '\n';
    os << "# certification=" << a.certification.dump() << '\n';
    os << "# status=" << a.status;
    if (!a.message.empty()) os << " message=" << a.message;
    os << '\n';
    for (std::size_t i = 0; i < a.columns.size(); ++i) os << (i ? "," : "") << a.columns[i];
    os << '\n';
    for (const auto& row : a.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << '\n';
    }
    return;
  }
  json rows = json::array();
  for (const auto& row : a.rows) rows.push_back(row);
  json j{{"tool", "subshift"},
         {"version", kToolVersion},
         {"command", command},
         {"config", config},
         {"certification", a.certification},
         {"status", a.status},
         {"result", a.result},
         {"table", {{"columns", a.columns}, {"rows", rows}}}};
  if (!a.message.empty()) j["message"] = a.message;
  os << j.dump(2) << '\n';
}

json config_echo(const CLI::App& sub) {
  json c = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    std::string name = opt->get_name();
    if (name == "--help" || name == "--threads") continue;
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    const auto& res = opt->results();
    if (opt->get_expected_max() == 0) c[name] = !res.empty();
    else if (opt->get_expected_max() > 1 || opt->get_items_expected_max() > 1) c[name] = res;
    else if (!res.empty()) c[name] = res.back();
    else c[name] = opt->get_default_str();
  }
  return c;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Symbolic dynamics toolkit: languages, automorphisms and complexity of subshifts", "subshift"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "Write the artifact to this path; 'csv' or 'json' writes that format to stdout");
    s->add_option("--format", o.format, "Artifact format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    s->add_option("--threads", o.threads, "Threads for parallel kernels (1 runs serial references)")->check(CLI::NonNegativeNumber);
    s->add_option("--seed", o.seed, "Seed for sampled checks")->capture_default_str();
  };
  auto input = [&](CLI::App* s) {
    s->add_option("--subst", o.subst, "Substitution JSON file");
    s->add_option("--seq", o.seq, "Sequence text file");
  };
  auto positive = CLI::PositiveNumber;

  std::map<std::string, std::function<Artifact(const Options&)>> handlers;
  auto add = [&](const std::string& name, const std::string& desc, auto handler) {
    auto* s = app.add_subcommand(name, desc);
    common(s);
    handlers[name] = handler;
    return s;
  };

  auto* lang = add("lang", "List the words of length n", cmd_lang);
  input(lang);
  lang->add_option("-n", o.n, "Word length")->capture_default_str();

  auto* comp = add("complexity", "Complexity p(0..n)", cmd_complexity);
  input(comp);
  comp->add_option("-n", o.n, "Largest length")->check(positive)->capture_default_str();

  auto* special = add("special", "Left or right special words of length n", cmd_special);
  input(special);
  special->add_option("-n", o.n, "Word length")->check(positive)->capture_default_str();
  special->add_option("--side", o.side, "left or right")->capture_default_str();

  auto* visit = add("visit", "Visiting times R''(1..n)", cmd_visit);
  input(visit);
  visit->add_option("-n", o.n, "Largest length")->check(positive)->capture_default_str();
  visit->add_option("--state-cap", o.state_cap, "State cap of the exact search")->check(positive)->capture_default_str();

  auto* asym = add("asymptotic", "Asymptotic components", cmd_asymptotic);
  input(asym);
  asym->add_option("--depth", o.depth, "Tail depth")->check(positive)->capture_default_str();
  asym->add_option("--cutoff", o.cutoff, "Aperiodicity cutoff")->check(positive)->capture_default_str();
  asym->add_flag("--doubling", o.doubling, "Check the doubling example 0->010, 1->11 instead");
  asym->add_option("-n", o.n, "Largest word length for --doubling")->check(positive)->capture_default_str();
  asym->add_option("--samples", o.samples, "Sampled words for --doubling")->check(positive)->capture_default_str();

  auto* aut = add("aut", "Automorphisms modulo the shift", cmd_aut);
  input(aut);
  aut->add_option("--mode", o.mode, "hp (letter automorphisms), search, or ball")->capture_default_str();
  aut->add_option("--cutoff", o.cutoff, "Aperiodicity cutoff")->check(positive)->capture_default_str();
  aut->add_option("--depth", o.depth, "Tail depth for components")->check(positive)->capture_default_str();
  aut->add_option("--radius", o.radius, "Search radius")->capture_default_str();
  aut->add_option("--check-depth", o.check_depth, "Truncation depth (0: 4r+6)")->capture_default_str();
  aut->add_option("--inverse-radius", o.inverse_radius, "Inverse search radius (default 2r)");
  aut->add_option("--rule-cap", o.rule_cap, "Largest rule space |A|^(2r+1)")->check(positive)->capture_default_str();
  aut->add_option("-n", o.n, "Ball radius for --mode ball")->check(positive)->capture_default_str();
  aut->add_option("--state-cap", o.state_cap, "State cap for visiting times")->check(positive)->capture_default_str();

  auto* real = add("realize", "Group substitutions and their verification", cmd_realize);
  real->add_option("--group", o.groups, "Cayley table JSON file");
  real->add_flag("--catalog", o.catalog, "Every group of order at most 8");
  real->add_flag("--verify", o.verify, "Run the full verification");

  auto* mixed = add("mixed", "Staged construction with prescribed complexity", cmd_mixed);
  mixed->add_option("--phi", o.phi, "Growth function of n")->capture_default_str();
  mixed->add_option("--stages", o.stages, "Number of stages")->check(positive)->capture_default_str();
  mixed->add_option("--budget", o.budget, "Symbols of the limit point to materialize")->check(positive)->capture_default_str();

  auto* nil = add("nilcode", "Orbit coding of an affine nilsystem", cmd_nilcode);
  nil->add_option("--d", o.d, "Dimension")->check(positive)->capture_default_str();
  nil->add_option("--alpha", o.alpha, "golden or p,q,lo,hi")->capture_default_str();
  nil->add_option("--orbit", o.orbit, "Orbit length")->check(positive)->capture_default_str();
  nil->add_option("--nmax", o.nmax, "Largest word length")->check(positive)->capture_default_str();
  nil->add_flag("--formula-only", o.formula_only, "Only evaluate the closed form");

  auto* prod = add("product", "Complexity of a product of subshifts", cmd_product);
  input(prod);
  prod->add_option("-n", o.n, "Largest length")->check(positive)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "subshift: " << e.what() << '\n';
    return 1;
  }

  if (o.out == "csv" || o.out == "json") {
    o.format = o.out;
    o.out.clear();
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  set_thread_count(o.threads);
  const json config = config_echo(*sub);

  Artifact a;
  try {
    a = handlers.at(command)(o);
  } catch (const PreconditionError& e) {
    err << "subshift " << command << ": " << e.what() << '\n';
    return 1;
  } catch (const CapExceeded& e) {
    a.inconclusive(e.what());
  } catch (const CLI::Error& e) {
    err << "subshift " << command << ": " << e.what() << '\n';
    return 1;
  }

  if (o.out.empty()) {
    write_artifact(out, command, config, a, o.format);
  } else {
    std::ofstream f(o.out);
    if (!f) {
      err << "subshift: cannot write " << o.out << '\n';
      return 1;
    }
    write_artifact(f, command, config, a, o.format);
  }
  if (a.exit_code == 2) err << "subshift " << command << ": inconclusive: " << a.message << '\n';
  return a.exit_code;
}

}  // namespace subshift

#include "gf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gf/amalgam.hpp"
#include "gf/combing.hpp"
#include "gf/conj.hpp"
#include "gf/error.hpp"
#include "gf/fibre.hpp"
#include "gf/gamma.hpp"
#include "gf/oracle.hpp"
#include "gf/presentation.hpp"
#include "gf/rips.hpp"

namespace gf {
namespace {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  int radius = 6;
  int budget = 0; // 0 means the subcommand default
  int k = 0;      // rips only; 0 means the shipped default
  std::string format = "text";
  std::string out_path;
  long long seed = 0; // reserved for randomized commands; none randomize today
  std::vector<std::string> args;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::malformed_input, "cannot read input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::precondition, "cannot open output path " + path);
  f << text;
}

ordered_json parse_json(const std::string& text, const std::string& what) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::malformed_input, what + " is not valid json");
  return j;
}

const ordered_json& jfield(const ordered_json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorKind::malformed_input, what + " needs field '" + key + "'");
  return j.at(key);
}

std::string jstr(const ordered_json& j, const char* key, const std::string& what) {
  const ordered_json& f = jfield(j, key, what);
  if (!f.is_string())
    fail(ErrorKind::malformed_input, what + " field '" + key + "' must be a string");
  return f.get<std::string>();
}

std::vector<std::string> jstrings(const ordered_json& j, const char* key,
                                  const std::string& what) {
  const ordered_json& f = jfield(j, key, what);
  if (!f.is_array())
    fail(ErrorKind::malformed_input, what + " field '" + key + "' must be an array");
  std::vector<std::string> out;
  for (const ordered_json& e : f) {
    if (!e.is_string())
      fail(ErrorKind::malformed_input, what + " field '" + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

// Report rows accumulate in both renderings; `finish` picks one.
struct Report {
  ordered_json j = ordered_json::object();
  std::string lines;

  void add(const std::string& key, const std::string& value) {
    j[key] = value;
    lines += key + ": " + value + "\n";
  }
  void add(const std::string& key, long long value) {
    j[key] = value;
    lines += key + ": " + std::to_string(value) + "\n";
  }
  void add_flag(const std::string& key, bool value, const char* yes = "yes",
                const char* no = "no") {
    j[key] = value;
    lines += key + ": " + (value ? yes : no) + "\n";
  }
  void add_list(const std::string& key, const std::string& line_key,
                const std::vector<std::string>& values) {
    j[key] = values;
    for (const std::string& v : values) lines += line_key + ": " + v + "\n";
  }
};

// The report goes to the stream in the chosen format.  An artifact
// (an emitted presentation) goes to --out when given, otherwise follows the
// report after a separator; --out on artifact-free commands captures the
// report itself.
int finish(const RunConfig& cfg, std::ostream& out, Report& rep, int code,
           const std::string& artifact = "", const char* artifact_key = "presentation") {
  if (cfg.format == "json" && !artifact.empty()) rep.j[artifact_key] = artifact;
  std::string report_text = cfg.format == "json" ? rep.j.dump(2) + "\n" : rep.lines;
  if (!cfg.out_path.empty()) {
    write_file(cfg.out_path, artifact.empty() ? report_text : artifact);
    if (!artifact.empty()) out << report_text;
  } else {
    out << report_text;
    if (cfg.format != "json" && !artifact.empty())
      out << (rep.lines.empty() ? "" : "---\n") << artifact;
  }
  return code;
}

void need_args(const RunConfig& cfg, size_t n, const char* usage) {
  if (cfg.args.size() != n)
    fail(ErrorKind::malformed_input, std::string("expected arguments: ") + usage);
}

int code_for(Verdict v) {
  switch (v) {
    case Verdict::yes: return 0;
    case Verdict::no: return 1;
    default: return 3;
  }
}

// ---- shared loaders ----

struct LoadedAmalgam {
  AmalgamSpec spec;
  std::optional<FiniteGroupTable> left_table;
};

LoadedAmalgam load_amalgam(const std::string& path) {
  ordered_json j = parse_json(read_file(path), "amalgam spec");
  std::string kind = jstr(j, "kind", "amalgam spec");
  if (kind == "finite-amalgam") {
    FiniteGroupTable left = FiniteGroupTable::parse(jstr(j, "left", kind));
    FiniteGroupTable right = FiniteGroupTable::parse(jstr(j, "right", kind));
    FiniteGroupTable edge = FiniteGroupTable::parse(jstr(j, "edge", kind));
    Alphabet la = table_alphabet(left), ra = table_alphabet(right);
    std::vector<Word> el, er;
    for (const std::string& w : jstrings(j, "embed_left", kind)) el.push_back(parse_word(la, w));
    for (const std::string& w : jstrings(j, "embed_right", kind)) er.push_back(parse_word(ra, w));
    return {make_finite_amalgam(left, right, edge, el, er), left};
  }
  if (kind == "mirror") {
    FinitePresentation q = parse_presentation(jstr(j, "presentation", kind));
    return {build_mirror_setting(q).d, std::nullopt};
  }
  if (kind == "free-double") {
    Alphabet gens{jstrings(j, "gens", kind)};
    std::vector<std::string> edge_names = jstrings(j, "edge_gens", kind);
    std::vector<bool> in_edge(static_cast<size_t>(gens.size()), false);
    for (const std::string& n : edge_names) {
      int idx = gens.index_of(n);
      if (idx < 0)
        fail(ErrorKind::malformed_input, "edge generator '" + n + "' is not a generator");
      in_edge[static_cast<size_t>(idx)] = true;
    }
    auto member = [in_edge](const Word& w) {
      return std::all_of(w.letters.begin(), w.letters.end(), [&](const Letter& l) {
        return in_edge[static_cast<size_t>(l.gen)];
      });
    };
    AmalgamSpec spec = make_double(make_free_oracle(gens), member);
    OraclePtr edge_free = make_free_oracle(Alphabet{edge_names});
    std::vector<int> embed;
    for (const std::string& n : edge_names) embed.push_back(gens.index_of(n));
    spec.edge_enumerator = [edge_free, embed](int budget) {
      std::vector<Word> out;
      for (const Word& w : ball_enumerate(*edge_free, budget)) {
        Word mapped;
        for (const Letter& l : w.letters)
          mapped.letters.push_back(Letter{embed[static_cast<size_t>(l.gen)], l.sign});
        out.push_back(mapped);
      }
      return out;
    };
    return {spec, std::nullopt};
  }
  fail(ErrorKind::malformed_input, "unknown amalgam kind '" + kind + "'");
}

struct FactorInput {
  FinitePresentation pres;
  OraclePtr oracle;
};

FactorInput load_factor(const ordered_json& j, const std::string& what) {
  FactorInput f;
  f.pres = parse_presentation(jstr(j, "presentation", what));
  if (j.contains("table")) {
    f.oracle = make_finite_oracle(FiniteGroupTable::parse(jstr(j, "table", what)));
  } else {
    if (!f.pres.relators.empty())
      fail(ErrorKind::malformed_input, what + " needs a table when relators are present");
    f.oracle = make_free_oracle(f.pres.gens);
  }
  return f;
}

GammaSpec load_gamma_spec(const ordered_json& j) {
  FactorInput a = load_factor(jfield(j, "a", "family spec"), "factor a");
  FactorInput b = load_factor(jfield(j, "b", "family spec"), "factor b");
  const ordered_json& mj = jfield(j, "m", "family spec");
  if (!mj.is_number_integer())
    fail(ErrorKind::malformed_input, "family spec field 'm' must be an integer");
  std::vector<Word> s;
  for (const std::string& w : jstrings(j, "s", "family spec"))
    s.push_back(parse_word(b.pres.gens, w));
  return make_gamma_spec(a.pres, a.oracle, b.pres, b.oracle, mj.get<int>(), s);
}

Alphabet gamma_f_alphabet(const GammaSpec& spec) {
  std::vector<std::string> names = spec.sigma_names;
  for (const std::string& n : spec.tau_names) names.push_back(n);
  return Alphabet{names};
}

std::string nielsen_move_text(const Alphabet& basis, const NielsenMove& mv) {
  std::string xi = basis.name(mv.i);
  switch (mv.kind) {
    case NielsenMove::Kind::swap_gens:
      return "swap " + xi + " " + basis.name(mv.j);
    case NielsenMove::Kind::invert_gen:
      return "invert " + xi;
    default:
      return xi + " := " + xi + " " + basis.name(mv.j) + (mv.sign < 0 ? "^-1" : "");
  }
}

ordered_json nielsen_move_json(const NielsenMove& mv) {
  ordered_json m = ordered_json::object();
  switch (mv.kind) {
    case NielsenMove::Kind::swap_gens: m["kind"] = "swap"; break;
    case NielsenMove::Kind::invert_gen: m["kind"] = "invert"; break;
    default: m["kind"] = "right-mult"; break;
  }
  m["i"] = mv.i;
  if (mv.kind != NielsenMove::Kind::invert_gen) m["j"] = mv.j;
  if (mv.kind == NielsenMove::Kind::right_mult) m["sign"] = mv.sign;
  return m;
}

ordered_json certificate_json(const HomCertificate& c) {
  ordered_json rec = ordered_json::object();
  rec["source"] = serialize_presentation(c.source);
  ordered_json images = ordered_json::array();
  for (const Word& w : c.images.images)
    images.push_back(word_to_string(c.images.target, w));
  rec["images"] = images;
  rec["verdict"] = "yes";
  return rec;
}

HomCertificate certificate_from_json(const ordered_json& j, EqualityPtr target,
                                     const std::string& what) {
  HomCertificate c;
  c.source = parse_presentation(jstr(j, "source", what));
  c.target = target;
  c.images.source = c.source.gens;
  c.images.target = target->alphabet();
  for (const std::string& w : jstrings(j, "images", what))
    c.images.images.push_back(parse_word(c.images.target, w));
  c.validate();
  return c;
}

// ---- subcommands ----

int cmd_fmt(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 1, "fmt PRESENTATION_FILE");
  FinitePresentation p = parse_presentation(read_file(cfg.args[0]));
  Report rep;
  rep.add("kind", "fmt");
  rep.lines.clear(); // text output is exactly the canonical form
  return finish(cfg, out, rep, 0, serialize_presentation(p));
}

int cmd_fibre_gens(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 1, "fibre-gens PRESENTATION_FILE");
  FinitePresentation p = parse_presentation(read_file(cfg.args[0]));
  Alphabet syms = fibre_alphabet(p);
  auto gens = fibre_product_generators(p);
  Report rep;
  rep.add("kind", "fibre-gens");
  ordered_json pairs = ordered_json::object();
  for (size_t i = 0; i < gens.size(); ++i) {
    std::string shown = pair_to_string(p.gens, gens[i]);
    pairs[syms.name(static_cast<int>(i))] = shown;
    rep.lines += syms.name(static_cast<int>(i)) + ": " + shown + "\n";
  }
  rep.j["generators"] = pairs;
  return finish(cfg, out, rep, 0);
}

int cmd_fibre_member(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 2, "fibre-member PRESENTATION_FILE WORD");
  FinitePresentation p = parse_presentation(read_file(cfg.args[0]));
  Word w = parse_word(p.gens, cfg.args[1]);
  PairWord target = fibre_membership_instance(w);
  Alphabet syms = fibre_alphabet(p);
  int budget = cfg.budget > 0 ? cfg.budget : 6;

  Report rep;
  rep.add("kind", "fibre-member");
  rep.add("word", word_to_string(p.gens, w));
  bool kill_form = std::all_of(p.relators.begin(), p.relators.end(),
                               [](const Word& r) { return r.size() == 1; });
  std::optional<Word> expr;
  if (kill_form) {
    expr = constructive_express(p, target);
    if (!expr) {
      rep.add("member", "no");
      return finish(cfg, out, rep, 1);
    }
  } else {
    expr = fibre_express(p, target, budget);
    if (!expr) {
      rep.add("member", "undecided");
      rep.add("budget", static_cast<long long>(budget));
      return finish(cfg, out, rep, 3);
    }
  }
  rep.add("member", "yes");
  rep.add("expression", word_to_string(syms, *expr));
  return finish(cfg, out, rep, 0);
}

int cmd_sc_check(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 1, "sc-check PRESENTATION_FILE");
  FinitePresentation p = parse_presentation(read_file(cfg.args[0]));
  CancellationReport r = small_cancellation_ratio(p.relators);
  Report rep;
  rep.add("kind", "sc-check");
  rep.add("lambda", ratio_to_string(r.lambda));
  rep.add("max-piece", r.max_piece);
  rep.add("min-relator", r.min_relator_length);
  rep.add("symmetrized", static_cast<long long>(r.symmetrized_size));
  rep.add_flag("sixth", r.meets_sixth, "pass", "fail");
  return finish(cfg, out, rep, r.meets_sixth ? 0 : 1);
}

int cmd_rips(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 1, "rips PRESENTATION_FILE");
  FinitePresentation p = parse_presentation(read_file(cfg.args[0]));
  RipsOutput r = rips_construction(p, cfg.k > 0 ? cfg.k : rips_default_k);
  Report rep;
  rep.add("kind", "rips");
  rep.add("generators", static_cast<long long>(r.pres.gens.size()));
  rep.add("relators", static_cast<long long>(r.pres.relators.size()));
  rep.add("k", static_cast<long long>(r.k));
  rep.add("lambda", ratio_to_string(r.report.lambda));
  rep.add_flag("certified", r.certified);
  return finish(cfg, out, rep, r.certified ? 0 : 1, serialize_presentation(r.pres));
}

int cmd_conj_instance(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 2, "conj-instance PRESENTATION_FILE B_WORD");
  std::string pres_text = read_file(cfg.args[0]);
  MirrorSetting s = build_mirror_setting(parse_presentation(pres_text));
  Word b = parse_word(s.n_oracle->alphabet(), cfg.args[1]);
  ConjugacyInstance inst = mirror_instance(s, b);
  Report rep;
  rep.add("kind", "conj-instance");
  ordered_json inputs = ordered_json::object();
  inputs["presentation"] = pres_text;
  inputs["b"] = word_to_string(s.n_oracle->alphabet(), b);
  rep.j["inputs"] = inputs;
  ordered_json words = ordered_json::object();
  std::string u = word_to_string(inst.d.combined, element_word(inst.d, inst.u));
  std::string v = word_to_string(inst.d.combined, element_word(inst.d, inst.v));
  words["u"] = u;
  words["v"] = v;
  rep.j["words"] = words;
  rep.lines += "u: " + u + "\n";
  rep.lines += "v: " + v + "\n";
  rep.add("verdict", std::string(*inst.verdict ? "yes" : "no"));
  return finish(cfg, out, rep, 0);
}

int cmd_conj_search(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 3, "conj-search AMALGAM_FILE U_WORD V_WORD");
  LoadedAmalgam am = load_amalgam(cfg.args[0]);
  Word u = parse_word(am.spec.combined, cfg.args[1]);
  Word v = parse_word(am.spec.combined, cfg.args[2]);
  Report rep;
  rep.add("kind", "conj-search");
  ordered_json words = ordered_json::object();
  words["u"] = word_to_string(am.spec.combined, u);
  words["v"] = word_to_string(am.spec.combined, v);
  rep.j["words"] = words;
  rep.add("radius", static_cast<long long>(cfg.radius));

  if (cfg.radius == 0) {
    // No search budget: only equal normal forms resolve.
    if (amalgam_equal(am.spec, u, v)) {
      rep.add("verdict", "yes");
      rep.add("witness", "1");
      return finish(cfg, out, rep, 0);
    }
    rep.add("verdict", "undecided");
    return finish(cfg, out, rep, 3);
  }

  ConjugatorSearchResult res = conjugator_search(am.spec, u, v, cfg.radius);
  if (res.witness) {
    rep.add("verdict", "yes");
    rep.add("witness", word_to_string(am.spec.combined, *res.witness));
    return finish(cfg, out, rep, 0);
  }
  if (res.definite_no) {
    rep.add("verdict", "no");
    return finish(cfg, out, rep, 1);
  }
  rep.add("verdict", "undecided");
  return finish(cfg, out, rep, 3);
}

int cmd_centralizer(const RunConfig& cfg, std::ostream& out) {
  if (cfg.args.size() < 2)
    fail(ErrorKind::malformed_input, "expected arguments: centralizer AMALGAM_FILE WORD...");
  LoadedAmalgam am = load_amalgam(cfg.args[0]);
  std::vector<Word> s;
  for (size_t i = 1; i < cfg.args.size(); ++i)
    s.push_back(parse_word(am.spec.combined, cfg.args[i]));
  std::vector<Word> z = centralizer_ball(am.spec, s, cfg.radius);
  Report rep;
  rep.add("kind", "centralizer");
  rep.add("radius", static_cast<long long>(cfg.radius));
  rep.add("count", static_cast<long long>(z.size()));
  std::vector<std::string> shown;
  for (const Word& w : z) shown.push_back(word_to_string(am.spec.combined, w));
  rep.add_list("elements", "element", shown);
  return finish(cfg, out, rep, 0);
}

int cmd_lemma_conj_ab(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 5, "lemma-check conj-ab AMALGAM_FILE A A2 B B2");
  LoadedAmalgam am = load_amalgam(cfg.args[0]);
  Word a = parse_word(am.spec.combined, cfg.args[1]);
  Word a2 = parse_word(am.spec.combined, cfg.args[2]);
  Word b = parse_word(am.spec.combined, cfg.args[3]);
  Word b2 = parse_word(am.spec.combined, cfg.args[4]);
  ConjAbReport r = check_conj_ab(am.spec, a, a2, b, b2, cfg.radius);
  if (!r.inputs_valid) fail(ErrorKind::precondition, r.reason);
  Report rep;
  rep.add("kind", "lemma-check conj-ab");
  rep.add_flag("criterion", r.exists_c);
  if (r.c_witness) rep.add("c", word_to_string(am.spec.combined, *r.c_witness));
  rep.add_flag("search", r.bfs_found);
  if (r.bfs_witness) rep.add("witness", word_to_string(am.spec.combined, *r.bfs_witness));
  rep.add_flag("agree", r.pass, "pass", "fail");
  return finish(cfg, out, rep, r.pass ? 0 : 1);
}

int cmd_lemma_centralizer(const RunConfig& cfg, std::ostream& out) {
  if (cfg.args.size() < 2)
    fail(ErrorKind::malformed_input,
         "expected arguments: lemma-check centralizer AMALGAM_FILE WORD...");
  LoadedAmalgam am = load_amalgam(cfg.args[0]);
  if (!am.left_table)
    fail(ErrorKind::unsupported, "centralizer comparison needs a finite-amalgam spec");
  const FiniteGroupTable& t = *am.left_table;
  int lsize = am.spec.left_size();

  std::vector<Word> s;
  std::vector<int> s_idx;
  for (size_t i = 1; i < cfg.args.size(); ++i) {
    Word w = parse_word(am.spec.combined, cfg.args[i]);
    for (const Letter& l : w.letters)
      if (l.gen >= lsize)
        fail(ErrorKind::precondition, "centralizer comparison words must lie in the left factor");
    if (am.spec.edge_member(Side::left, am.spec.left->canonical(w)))
      fail(ErrorKind::precondition,
           "centralizer comparison words must lie outside the edge subgroup");
    s.push_back(w);
    s_idx.push_back(table_eval(t, w));
  }

  // Independent side: centralizer inside the left multiplication table.
  std::vector<std::optional<Word>> canon = table_canonical_words(t);
  std::vector<Word> expected;
  for (int x = 0; x < t.order; ++x) {
    bool commutes = std::all_of(s_idx.begin(), s_idx.end(),
                                [&](int e) { return t.mul(x, e) == t.mul(e, x); });
    if (!commutes) continue;
    if (!canon[static_cast<size_t>(x)])
      fail(ErrorKind::precondition, "left table generators do not reach every element");
    expected.push_back(*canon[static_cast<size_t>(x)]);
  }

  std::vector<Word> got = centralizer_ball(am.spec, s, cfg.radius);
  auto contains = [&](const std::vector<Word>& pool, const Word& w) {
    return std::any_of(pool.begin(), pool.end(),
                       [&](const Word& p) { return amalgam_equal(am.spec, p, w); });
  };
  bool match = std::all_of(expected.begin(), expected.end(),
                           [&](const Word& w) { return contains(got, w); }) &&
               std::all_of(got.begin(), got.end(),
                           [&](const Word& w) { return contains(expected, w); });

  Report rep;
  rep.add("kind", "lemma-check centralizer");
  rep.add("radius", static_cast<long long>(cfg.radius));
  rep.add("expected", static_cast<long long>(expected.size()));
  rep.add("found", static_cast<long long>(got.size()));
  rep.add_flag("match", match, "pass", "fail");
  return finish(cfg, out, rep, match ? 0 : 1);
}

int cmd_lemma_kerphi(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 1, "lemma-check kerphi SPEC_FILE");
  ordered_json j = parse_json(read_file(cfg.args[0]), "kerphi spec");
  FiniteGroupTable a = FiniteGroupTable::parse(jstr(j, "a", "kerphi spec"));
  FiniteGroupTable b = FiniteGroupTable::parse(jstr(j, "b", "kerphi spec"));
  FiniteGroupTable q = FiniteGroupTable::parse(jstr(j, "q", "kerphi spec"));
  GeneratorMap phi;
  phi.source = table_alphabet(q);
  phi.target = table_alphabet(b);
  for (const std::string& w : jstrings(j, "phi", "kerphi spec"))
    phi.images.push_back(parse_word(phi.target, w));
  phi.validate();
  KerphiReport r = check_kerphi_characteristic(a, b, q, phi, cfg.radius);
  if (!r.hypotheses_ok) fail(ErrorKind::precondition, r.hypothesis_failure);
  Report rep;
  rep.add("kind", "lemma-check kerphi");
  rep.add("radius", static_cast<long long>(cfg.radius));
  rep.add("kernel-size", static_cast<long long>(r.ker_elements.size()));
  rep.add("q-cap-qbar", static_cast<long long>(r.q_cap_qbar.size()));
  rep.add_flag("centralize", r.centralize_ok, "pass", "fail");
  rep.add_flag("intersection", r.intersection_ok, "pass", "fail");
  rep.add_flag("match", r.pass, "pass", "fail");
  return finish(cfg, out, rep, r.pass ? 0 : 1);
}

int cmd_gamma_emit(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 1, "gamma-emit SPEC_FILE");
  GammaSpec spec = load_gamma_spec(parse_json(read_file(cfg.args[0]), "family spec"));
  FinitePresentation g = gamma_presentation(spec);
  Report rep;
  rep.add("kind", "gamma-emit");
  rep.add("generators", static_cast<long long>(g.gens.size()));
  rep.add("relators", static_cast<long long>(g.relators.size()));
  return finish(cfg, out, rep, 0, serialize_presentation(g));
}

int cmd_retract(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 2, "retract SPEC_FILE WORD");
  GammaSpec spec = load_gamma_spec(parse_json(read_file(cfg.args[0]), "family spec"));
  Alphabet doubled = gamma_presentation(spec).gens;
  Word w = parse_word(doubled, cfg.args[1]);
  Word r = retraction_to_F(spec, w);
  Report rep;
  rep.add("kind", "retract");
  rep.add("word", word_to_string(gamma_f_alphabet(spec), r));
  return finish(cfg, out, rep, 0);
}

int cmd_rapaport(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 1, "rapaport SPEC_FILE");
  ordered_json j = parse_json(read_file(cfg.args[0]), "automorphism spec");
  const ordered_json& qj = jfield(j, "q", "automorphism spec");
  OraclePtr q;
  if (qj.contains("table")) {
    q = make_finite_oracle(FiniteGroupTable::parse(jstr(qj, "table", "quotient")));
  } else {
    Alphabet gens{jstrings(qj, "gens", "quotient")};
    q = make_kill_generators(gens, jstrings(qj, "kill", "quotient"));
  }
  Alphabet basis{jstrings(j, "basis", "automorphism spec")};
  std::vector<Word> images, targets;
  for (const std::string& w : jstrings(j, "images", "automorphism spec"))
    images.push_back(parse_word(q->alphabet(), w));
  for (const std::string& w : jstrings(j, "targets", "automorphism spec"))
    targets.push_back(parse_word(q->alphabet(), w));
  int budget = cfg.budget > 0 ? cfg.budget : 8;

  RapaportResult r = rapaport_automorphism(q, basis, images, targets, budget);
  Report rep;
  rep.add("kind", "rapaport");
  ordered_json moves = ordered_json::array();
  std::vector<std::string> move_lines;
  for (const NielsenMove& mv : r.record.moves) {
    moves.push_back(nielsen_move_json(mv));
    move_lines.push_back(nielsen_move_text(basis, mv));
  }
  rep.j["moves"] = moves;
  for (const std::string& m : move_lines) rep.lines += "move: " + m + "\n";
  ordered_json imgs = ordered_json::object();
  for (int i = 0; i < basis.size(); ++i) {
    std::string shown = word_to_string(basis, r.images.images[static_cast<size_t>(i)]);
    imgs[basis.name(i)] = shown;
    rep.lines += "image: " + basis.name(i) + " -> " + shown + "\n";
  }
  rep.j["images"] = imgs;
  rep.add("verdict", "pass");
  return finish(cfg, out, rep, 0);
}

int cmd_iso_witness(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 2, "iso-witness SPEC_FILE SPEC_FILE");
  ordered_json jn = parse_json(read_file(cfg.args[0]), "family spec");
  ordered_json jnp = parse_json(read_file(cfg.args[1]), "family spec");
  GammaSpec n = load_gamma_spec(jn);
  GammaSpec np = load_gamma_spec(jnp);
  int budget = cfg.budget > 0 ? cfg.budget : 8;
  IsoWitness w = iso_witness(n, np, budget);
  Report rep;
  rep.add("kind", "iso-witness");
  rep.j["spec_n"] = jn;
  rep.j["spec_np"] = jnp;
  rep.j["forward"] = certificate_json(w.to_n);
  rep.j["backward"] = certificate_json(w.to_np);
  rep.add("verdict", "yes");
  return finish(cfg, out, rep, 0);
}

int cmd_verify_cert(const RunConfig& cfg, std::ostream& out) {
  need_args(cfg, 1, "verify-cert RECORD_FILE");
  ordered_json j = parse_json(read_file(cfg.args[0]), "certificate record");
  if (jstr(j, "kind", "certificate record") != "iso-witness")
    fail(ErrorKind::malformed_input, "certificate record kind must be 'iso-witness'");
  GammaSpec n = load_gamma_spec(jfield(j, "spec_n", "certificate record"));
  GammaSpec np = load_gamma_spec(jfield(j, "spec_np", "certificate record"));
  EqualityPtr eq_n = equality_from_amalgam(gamma_double(n));
  EqualityPtr eq_np = equality_from_amalgam(gamma_double(np));
  HomCertificate fwd =
      certificate_from_json(jfield(j, "forward", "certificate record"), eq_n, "forward");
  HomCertificate bwd =
      certificate_from_json(jfield(j, "backward", "certificate record"), eq_np, "backward");
  Verdict v = verify_iso_certificate(fwd, bwd);
  Report rep;
  rep.add("kind", "verify-cert");
  rep.add("verdict", std::string(verdict_name(v)));
  return finish(cfg, out, rep, code_for(v));
}

int cmd_fellow_traveller(const RunConfig& cfg, std::ostream& out) {
  if (cfg.args.empty())
    fail(ErrorKind::malformed_input, "expected arguments: fellow-traveller GEN_NAME...");
  Alphabet gens{cfg.args};
  OraclePtr o = make_free_oracle(gens);
  size_t cap = cfg.budget > 0 ? static_cast<size_t>(cfg.budget) : 200000;
  int k = fellow_traveller_bound(*o, canonical_combing(), cfg.radius, cap);
  Report rep;
  rep.add("kind", "fellow-traveller");
  rep.add("radius", static_cast<long long>(cfg.radius));
  rep.add("k", static_cast<long long>(k));
  return finish(cfg, out, rep, 0);
}

} // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string chosen;

  CLI::App app{"workbench for group constructions and their verifiers", "groupforge"};
  app.require_subcommand(1);
  app.add_option("--radius", cfg.radius, "search radius (default 6)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--budget", cfg.budget, "search budget (subcommand-specific default)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format (default text)")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", cfg.out_path, "write the artifact or report to this path");
  app.add_option("--seed", cfg.seed, "reserved for randomized commands");

  auto add_sub = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                     const std::string& full) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    sub->fallthrough(true);
    sub->add_option("args", cfg.args, "positional arguments");
    sub->callback([&chosen, full] { chosen = full; });
    return sub;
  };

  add_sub(&app, "fmt", "canonicalize a presentation file", "fmt");
  add_sub(&app, "fibre-gens", "print the fibre generating pairs", "fibre-gens");
  add_sub(&app, "fibre-member", "express (w,1) in the fibre generators", "fibre-member");
  CLI::App* rips = add_sub(&app, "rips", "pad a presentation into a certified one", "rips");
  rips->add_option("--k", cfg.k, "padding segments per relator")->check(CLI::PositiveNumber);
  add_sub(&app, "sc-check", "measure the small-cancellation ratio", "sc-check");
  add_sub(&app, "conj-instance", "emit a mirror-pair conjugacy instance", "conj-instance");
  add_sub(&app, "conj-search", "search for an edge conjugator", "conj-search");
  add_sub(&app, "centralizer", "enumerate ball elements centralizing the words", "centralizer");
  CLI::App* lemma = app.add_subcommand("lemma-check", "verify a structure lemma");
  lemma->fallthrough(true);
  lemma->require_subcommand(1);
  add_sub(lemma, "conj-ab", "two-syllable conjugacy criterion", "lemma-check conj-ab");
  add_sub(lemma, "centralizer", "factor centralizer against the table", "lemma-check centralizer");
  add_sub(lemma, "kerphi", "kernel characterization in the double", "lemma-check kerphi");
  add_sub(&app, "gamma-emit", "emit a family member presentation", "gamma-emit");
  add_sub(&app, "retract", "project a doubled word to its free part", "retract");
  add_sub(&app, "rapaport", "build the steering automorphism", "rapaport");
  add_sub(&app, "iso-witness", "produce a two-sided isomorphism record", "iso-witness");
  add_sub(&app, "verify-cert", "re-verify an isomorphism record", "verify-cert");
  add_sub(&app, "fellow-traveller", "measure the combing constant", "fellow-traveller");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (chosen == "fmt") return cmd_fmt(cfg, out);
    if (chosen == "fibre-gens") return cmd_fibre_gens(cfg, out);
    if (chosen == "fibre-member") return cmd_fibre_member(cfg, out);
    if (chosen == "rips") return cmd_rips(cfg, out);
    if (chosen == "sc-check") return cmd_sc_check(cfg, out);
    if (chosen == "conj-instance") return cmd_conj_instance(cfg, out);
    if (chosen == "conj-search") return cmd_conj_search(cfg, out);
    if (chosen == "centralizer") return cmd_centralizer(cfg, out);
    if (chosen == "lemma-check conj-ab") return cmd_lemma_conj_ab(cfg, out);
    if (chosen == "lemma-check centralizer") return cmd_lemma_centralizer(cfg, out);
    if (chosen == "lemma-check kerphi") return cmd_lemma_kerphi(cfg, out);
    if (chosen == "gamma-emit") return cmd_gamma_emit(cfg, out);
    if (chosen == "retract") return cmd_retract(cfg, out);
    if (chosen == "rapaport") return cmd_rapaport(cfg, out);
    if (chosen == "iso-witness") return cmd_iso_witness(cfg, out);
    if (chosen == "verify-cert") return cmd_verify_cert(cfg, out);
    if (chosen == "fellow-traveller") return cmd_fellow_traveller(cfg, out);
    err << "usage error: no subcommand selected\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::resource:
      case ErrorKind::not_witnessed:
        return 3;
      default:
        return 2;
    }
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace gf

// End-to-end acceptance checks over desk-scale instances.  Each check prints
// one PASS/FAIL line with its elapsed time; the process exits nonzero if any
// check fails or overruns its time budget.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "gf/amalgam.hpp"
#include "gf/combing.hpp"
#include "gf/conj.hpp"
#include "gf/error.hpp"
#include "gf/folding.hpp"
#include "gf/gamma.hpp"
#include "gf/genmap.hpp"
#include "gf/oracle.hpp"
#include "gf/presentation.hpp"
#include "gf/rips.hpp"
#include "gf/word.hpp"

using namespace gf;

namespace {

struct CheckResult {
  bool pass = false;
  std::string detail;
};

Word random_word(std::mt19937& rng, int gens, int len) {
  std::vector<Letter> letters;
  for (int i = 0; i < len; ++i)
    letters.push_back(Letter{static_cast<int>(rng() % gens), rng() % 2 ? 1 : -1});
  return Word{free_reduce(letters)};
}

// ---- 1: subgroup membership vs product enumeration -------------------------

struct BruteSet {
  std::unordered_set<std::string> keys;
  bool capped = false;
};

// Shortest-first closure of the identity under right multiplication by the
// generators and their inverses, pruned at max_len.  Everything collected is
// a certified subgroup element, so a hit for a word the folded graph rejects
// is a genuine disagreement at any budget.
BruteSet enumerate_products(const std::vector<Word>& gens, size_t max_len, size_t cap) {
  BruteSet out;
  std::vector<Word> muls;
  for (const Word& g : gens) {
    muls.push_back(g);
    muls.push_back(winv(g));
  }
  auto longer = [](const Word& x, const Word& y) { return x.size() > y.size(); };
  std::priority_queue<Word, std::vector<Word>, decltype(longer)> pq(longer);
  out.keys.insert(word_key(Word{}));
  pq.push(Word{});
  while (!pq.empty()) {
    Word w = pq.top();
    pq.pop();
    for (const Word& m : muls) {
      Word nw = wmul(w, m);
      if (nw.size() > max_len) continue;
      if (!out.keys.insert(word_key(nw)).second) continue;
      if (out.keys.size() >= cap) {
        out.capped = true;
        return out;
      }
      pq.push(nw);
    }
  }
  return out;
}

CheckResult check_membership_enumeration() {
  std::mt19937 rng(20251);
  Alphabet ab({"a", "b"});
  int disagreements = 0;
  int escalations = 0;
  long long words_tested = 0;
  for (int si = 0; si < 50; ++si) {
    int ngens = 1 + static_cast<int>(rng() % 3);
    std::vector<Word> gens;
    while (static_cast<int>(gens.size()) < ngens) {
      Word g = random_word(rng, 2, 1 + static_cast<int>(rng() % 6));
      if (!g.empty()) gens.push_back(g);
    }
    SubgroupGraph graph = fold_subgroup(ab, gens);

    std::vector<Word> tests;
    tests.push_back(Word{});
    for (int t = 0; t < 200; ++t)
      tests.push_back(random_word(rng, 2, 1 + static_cast<int>(rng() % 8)));

    std::vector<char> member(tests.size());
    for (size_t i = 0; i < tests.size(); ++i)
      member[i] = subgroup_member(graph, tests[i]) ? 1 : 0;

    // Escalate the enumeration budget until every accepted word is reachable;
    // a miss at the final budget counts as a disagreement.
    static const std::pair<size_t, size_t> budgets[] = {
        {12, 50000}, {18, 400000}, {24, 2000000}};
    BruteSet brute;
    for (size_t round = 0; round < 3; ++round) {
      brute = enumerate_products(gens, budgets[round].first, budgets[round].second);
      bool all_found = true;
      for (size_t i = 0; i < tests.size(); ++i)
        if (member[i] && brute.keys.count(word_key(tests[i])) == 0) {
          all_found = false;
          break;
        }
      if (all_found) break;
      ++escalations;
    }
    for (size_t i = 0; i < tests.size(); ++i) {
      bool enumerated = brute.keys.count(word_key(tests[i])) > 0;
      if (enumerated != static_cast<bool>(member[i])) ++disagreements;
      ++words_tested;
    }
  }
  std::ostringstream d;
  d << "50 subgroups, " << words_tested << " words, " << disagreements
    << " disagreements, " << escalations << " budget escalations";
  return {disagreements == 0, d.str()};
}

// ---- shared finite-edge amalgam fixtures for 2 and 3 -----------------------

struct FiniteAmalgamFixture {
  std::string name;
  FiniteGroupTable left;
  AmalgamSpec spec;
  AmalgamBall ball;
};

std::vector<FiniteAmalgamFixture>& finite_fixtures() {
  static std::vector<FiniteAmalgamFixture> fs = [] {
    std::vector<FiniteAmalgamFixture> out;
    {
      FiniteGroupTable left = s3_table("s1", "r1");
      FiniteGroupTable right = s3_table("s2", "r2");
      FiniteGroupTable edge = cyclic_table(2, "c");
      AmalgamSpec spec = make_finite_amalgam(
          left, right, edge, {parse_word(table_alphabet(left), "s1")},
          {parse_word(table_alphabet(right), "s2")});
      AmalgamBall ball = amalgam_ball(spec, 8);
      out.push_back({"s3*s3", left, spec, std::move(ball)});
    }
    {
      FiniteGroupTable left = cyclic_table(4, "p");
      FiniteGroupTable right = cyclic_table(6, "q");
      FiniteGroupTable edge = cyclic_table(2, "c");
      AmalgamSpec spec = make_finite_amalgam(
          left, right, edge, {parse_word(table_alphabet(left), "p p")},
          {parse_word(table_alphabet(right), "q q q")});
      AmalgamBall ball = amalgam_ball(spec, 8);
      out.push_back({"z4*z6", left, spec, std::move(ball)});
    }
    return out;
  }();
  return fs;
}

// Factor elements outside the edge subgroup, as combined-alphabet words.
std::vector<Word> outside_edge(const AmalgamSpec& spec, const FiniteGroupTable& t,
                               Side side) {
  std::vector<Word> out;
  Alphabet ta = table_alphabet(t);
  for (const std::optional<Word>& cw : table_canonical_words(t)) {
    if (!cw || spec.edge_member(side, *cw)) continue;
    out.push_back(parse_word(spec.combined, word_to_string(ta, *cw)));
  }
  return out;
}

CheckResult check_conjugacy_criterion() {
  int tuples = 0, failures = 0;
  std::ostringstream d;
  for (FiniteAmalgamFixture& f : finite_fixtures()) {
    FiniteGroupTable right_table =
        f.name == "s3*s3" ? s3_table("s2", "r2") : cyclic_table(6, "q");
    std::vector<Word> lefts = outside_edge(f.spec, f.left, Side::left);
    std::vector<Word> rights = outside_edge(f.spec, right_table, Side::right);
    int local = 0;
    for (const Word& a : lefts)
      for (const Word& a2 : lefts)
        for (const Word& b : rights)
          for (const Word& b2 : rights) {
            ConjAbReport rep = check_conj_ab(f.spec, a, a2, b, b2, 8, &f.ball);
            ++tuples;
            ++local;
            if (!rep.inputs_valid || !rep.pass) ++failures;
          }
    d << f.name << ": " << local << " tuples  ";
  }
  d << failures << " counterexamples";
  return {failures == 0, d.str()};
}

// ---- 3: centralizers collapse into the factor ------------------------------

CheckResult check_centralizer_localization() {
  int sets = 0, failures = 0;
  for (FiniteAmalgamFixture& f : finite_fixtures()) {
    Alphabet ta = table_alphabet(f.left);
    std::vector<std::optional<Word>> canon = table_canonical_words(f.left);
    std::vector<int> valid;
    for (int e = 0; e < f.left.order; ++e)
      if (canon[static_cast<size_t>(e)] &&
          !f.spec.edge_member(Side::left, *canon[static_cast<size_t>(e)]))
        valid.push_back(e);

    std::vector<std::vector<int>> subsets;
    for (size_t i = 0; i < valid.size(); ++i) {
      subsets.push_back({valid[i]});
      for (size_t j = i + 1; j < valid.size(); ++j)
        subsets.push_back({valid[i], valid[j]});
    }

    for (const std::vector<int>& s : subsets) {
      ++sets;
      std::vector<Word> s_words;
      for (int e : s)
        s_words.push_back(
            parse_word(f.spec.combined, word_to_string(ta, *canon[static_cast<size_t>(e)])));

      // Table-side centralizer of s inside the left factor.
      std::vector<Word> expected;
      for (int x = 0; x < f.left.order; ++x) {
        bool commutes = true;
        for (int e : s)
          if (f.left.mul(x, e) != f.left.mul(e, x)) {
            commutes = false;
            break;
          }
        if (commutes)
          expected.push_back(
              parse_word(f.spec.combined, word_to_string(ta, *canon[static_cast<size_t>(x)])));
      }

      std::vector<Word> found = centralizer_ball(f.spec, s_words, 8, &f.ball);

      bool ok = found.size() == expected.size();
      for (const Word& fw : found) {
        bool matched = false;
        for (const Word& ew : expected)
          if (amalgam_equal(f.spec, fw, ew)) {
            matched = true;
            break;
          }
        if (!matched) ok = false;
      }
      for (const Word& ew : expected) {
        bool matched = false;
        for (const Word& fw : found)
          if (amalgam_equal(f.spec, fw, ew)) {
            matched = true;
            break;
          }
        if (!matched) ok = false;
      }
      if (!ok) ++failures;
    }
  }
  std::ostringstream d;
  d << sets << " generating sets, " << failures << " counterexamples";
  return {failures == 0, d.str()};
}

// ---- 4: kernel characterization in the doubled product ---------------------

CheckResult check_kernel_characterization() {
  FiniteGroupTable a = cyclic_table(2, "t");
  FiniteGroupTable b = cyclic_table(3, "v");
  FiniteGroupTable q = cyclic_table(3, "u");
  Alphabet ba = table_alphabet(b);
  std::vector<Word> images = {Word{}, parse_word(ba, "v"), parse_word(ba, "v v")};
  std::ostringstream d;
  d << "kernel sizes";
  bool all = true;
  for (const Word& img : images) {
    GeneratorMap phi;
    phi.source = table_alphabet(q);
    phi.target = ba;
    phi.images = {img};
    KerphiReport rep = check_kerphi_characteristic(a, b, q, phi, 6);
    d << " " << rep.ker_elements.size();
    if (!rep.pass) all = false;
  }
  d << " across 3 homomorphisms";
  return {all, d.str()};
}

// ---- 5: basis-change automorphisms hit their targets -----------------------

bool elements_generate(const FiniteGroupTable& t, const std::vector<int>& elems) {
  std::vector<char> in(static_cast<size_t>(t.order), 0);
  in[static_cast<size_t>(t.identity)] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int x = 0; x < t.order; ++x) {
      if (!in[static_cast<size_t>(x)]) continue;
      for (int e : elems) {
        int y = t.mul(x, e);
        if (!in[static_cast<size_t>(y)]) {
          in[static_cast<size_t>(y)] = 1;
          grew = true;
        }
      }
    }
  }
  for (int x = 0; x < t.order; ++x)
    if (!in[static_cast<size_t>(x)]) return false;
  return true;
}

std::vector<Word> sample_generating_tuple(std::mt19937& rng, const FiniteGroupTable& t,
                                          int m) {
  Alphabet ta = table_alphabet(t);
  while (true) {
    std::vector<Word> words;
    std::vector<int> elems;
    for (int i = 0; i < m; ++i) {
      Word w = random_word(rng, ta.size(), 1 + static_cast<int>(rng() % 4));
      words.push_back(w);
      elems.push_back(table_eval(t, w));
    }
    if (elements_generate(t, elems)) return words;
  }
}

CheckResult check_basis_change() {
  // One-generator tuples cannot generate the symmetric group, so that grid
  // cell admits no valid inputs; the 20 runs cover the five satisfiable cells.
  struct Combo {
    const char* name;
    FiniteGroupTable q;
    int m;
  };
  std::vector<Combo> combos = {
      {"z2 m=1", cyclic_table(2, "g"), 1},  {"z2 m=2", cyclic_table(2, "g"), 2},
      {"z6 m=1", cyclic_table(6, "g"), 1},  {"z6 m=2", cyclic_table(6, "g"), 2},
      {"s3 m=2", s3_table("g", "h"), 2}};
  std::mt19937 rng(4242);
  int runs = 0, passed = 0;
  double slowest = 0.0;
  for (const Combo& c : combos) {
    OraclePtr qo = make_finite_oracle(c.q);
    std::vector<std::string> names;
    for (int i = 1; i <= c.m; ++i) names.push_back("s" + std::to_string(i));
    for (int i = 1; i <= c.m; ++i) names.push_back("t" + std::to_string(i));
    Alphabet basis(names);
    for (int run = 0; run < 4; ++run) {
      ++runs;
      auto t0 = std::chrono::steady_clock::now();
      std::vector<Word> images = sample_generating_tuple(rng, c.q, c.m);
      std::vector<Word> targets = sample_generating_tuple(rng, c.q, c.m);
      RapaportResult r = rapaport_automorphism(qo, basis, images, targets, 10);

      GeneratorMap phi;
      phi.source = basis;
      phi.target = table_alphabet(c.q);
      phi.images = images;
      for (int i = 0; i < c.m; ++i) phi.images.push_back(Word{});

      bool ok = true;
      for (int i = 0; i < c.m; ++i) {
        if (!qo->is_trivial(apply_map(phi, r.images.images[static_cast<size_t>(i)])))
          ok = false;
        if (!qo->equal(apply_map(phi, r.images.images[static_cast<size_t>(c.m + i)]),
                       targets[static_cast<size_t>(i)]))
          ok = false;
      }
      SubgroupGraph g = fold_subgroup(basis, r.images.images);
      if (!g.is_full_group() || g.rank() != 2 * c.m) ok = false;
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      slowest = std::max(slowest, secs);
      if (ok && secs < 5.0) ++passed;
    }
  }
  std::ostringstream d;
  d << passed << "/" << runs << " runs, slowest " << std::fixed << std::setprecision(2)
    << slowest << "s";
  return {passed == runs, d.str()};
}

// ---- 6: conjugacy instances decide and certify -----------------------------

CheckResult check_conjugacy_instances() {
  MirrorSetting s = build_mirror_setting(parse_presentation("gens: a b\nrel: a\n"));
  Alphabet n = s.n_oracle->alphabet();
  int ib = n.index_of("b");
  int ib2 = n.index_of("b2");
  std::mt19937 rng(9090);

  auto balanced = [&](Word w) {
    int delta = exponent_sum(w, ib) - exponent_sum(w, ib2);
    return wmul(w, wpow(Word{{Letter{ib2, 1}}}, delta));
  };

  int confirmed = 0, refuted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Word w = balanced(random_word(rng, n.size(), 1 + static_cast<int>(rng() % 6)));
    ConjugacyInstance inst = mirror_instance(s, w);
    if (inst.verdict != std::optional<bool>(true)) continue;
    Word u = element_word(inst.d, inst.u);
    Word v = element_word(inst.d, inst.v);
    ConjugatorSearchResult res = conjugator_search(inst.d, u, v, 6);
    if (res.witness &&
        amalgam_equal(inst.d, wmul(*res.witness, u, winv(*res.witness)), v))
      ++confirmed;
  }
  for (int trial = 0; trial < 100; ++trial) {
    Word w = balanced(random_word(rng, n.size(), 1 + static_cast<int>(rng() % 6)));
    int delta = (1 + static_cast<int>(rng() % 3)) * (rng() % 2 ? 1 : -1);
    w = wmul(w, wpow(Word{{Letter{ib2, 1}}}, delta));
    ConjugacyInstance inst = mirror_instance(s, w);
    if (inst.verdict != std::optional<bool>(false)) continue;
    Word u = element_word(inst.d, inst.u);
    Word v = element_word(inst.d, inst.v);
    // The installed solver refutes globally; the radius-6 search coming back
    // empty is the one-sided confirmation on top of that verdict.
    ConjugatorSearchResult res = conjugator_search(inst.d, u, v, 6);
    if (res.definite_no && !res.witness) ++refuted;
  }
  std::ostringstream d;
  d << confirmed << "/100 witnessed, " << refuted << "/100 refuted with empty radius-6 search";
  return {confirmed == 100 && refuted == 100, d.str()};
}

// ---- 7: isomorphism certificates and the retraction ------------------------

GammaSpec desk_spec(const std::vector<std::string>& steering) {
  FinitePresentation a = parse_presentation("gens: t\nrel: t t\n");
  FinitePresentation b = parse_presentation("gens: a b\n");
  std::vector<Word> s;
  for (const std::string& w : steering) s.push_back(parse_word(b.gens, w));
  FiniteGroupTable t2 = cyclic_table(2, "t");
  return make_gamma_spec(a, make_finite_oracle(t2), b, make_free_oracle(b.gens),
                         static_cast<int>(s.size()), s);
}

CheckResult check_iso_certificates() {
  GammaSpec n = desk_spec({"a", "b"});
  GammaSpec np = desk_spec({"b", "a"});
  IsoWitness w = iso_witness(n, np, 8);
  if (verify_iso_certificate(w.to_n, w.to_np) != Verdict::yes ||
      verify_iso_certificate(w.to_np, w.to_n) != Verdict::yes)
    return {false, "certificates do not verify unmutated"};

  AmalgamSpec dn = gamma_double(n);
  AmalgamSpec dnp = gamma_double(np);

  int mutations = 0, survived = 0, preserved = 0;
  auto mutate_cert = [&](bool mutate_to_n) {
    const HomCertificate& cert = mutate_to_n ? w.to_n : w.to_np;
    const AmalgamSpec& target = mutate_to_n ? dn : dnp;
    int ngens = cert.images.target.size();
    for (size_t i = 0; i < cert.images.images.size(); ++i) {
      const Word& orig = cert.images.images[i];
      for (size_t p = 0; p < orig.size(); ++p) {
        for (int g = 0; g < ngens; ++g)
          for (int sgn : {+1, -1}) {
            Letter l{g, sgn};
            if (l == orig.letters[p]) continue;
            std::vector<Letter> letters = orig.letters;
            letters[p] = l;
            Word mutated{free_reduce(letters)};
            if (amalgam_equal(target, mutated, orig)) {
              ++preserved;
              continue;
            }
            ++mutations;
            IsoWitness broken = w;
            (mutate_to_n ? broken.to_n : broken.to_np).images.images[i] = mutated;
            bool flipped;
            try {
              flipped = verify_iso_certificate(broken.to_n, broken.to_np) != Verdict::yes;
            } catch (const Error&) {
              flipped = true;
            }
            if (!flipped) ++survived;
          }
      }
    }
  };
  mutate_cert(true);
  mutate_cert(false);

  std::mt19937 rng(1331);
  int roundtrips = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Word fw = random_word(rng, 4, 1 + static_cast<int>(rng() % 10));
    std::vector<Letter> embedded;
    for (const Letter& l : fw.letters) embedded.push_back(Letter{l.gen + 3, l.sign});
    if (retraction_to_F(n, Word{embedded}) == fw) ++roundtrips;
  }

  std::ostringstream d;
  d << mutations << " element-changing mutations, " << survived << " survived, "
    << preserved << " element-preserving skipped; retraction roundtrips " << roundtrips
    << "/200";
  return {survived == 0 && roundtrips == 200, d.str()};
}

// ---- 8: padded presentations certify small cancellation --------------------

CheckResult check_small_cancellation() {
  Alphabet ab({"a", "b"});
  CancellationReport commutator =
      small_cancellation_ratio({parse_word(ab, "a b a^-1 b^-1")});
  bool reject = commutator.lambda.num == 1 && commutator.lambda.den == 4 &&
                !commutator.meets_sixth;

  const char* samples[] = {
      "gens: a b\nrel: a b a^-1 b^-1\n",
      "gens: a b c\nrel: a b c\n",
      "gens: a b\nrel: a a b a^-1 b^-1\n",
  };
  bool padded_ok = true;
  std::ostringstream d;
  d << "commutator ratio " << ratio_to_string(commutator.lambda) << "; padded ratios";
  for (const char* text : samples) {
    FinitePresentation p = parse_presentation(text);
    RipsOutput out = rips_construction(p);
    bool counts = out.pres.gens.size() == p.gens.size() + 2 &&
                  out.pres.relators.size() == 4 * p.gens.size() + p.relators.size();
    if (!out.certified || !out.report.meets_sixth || !counts) padded_ok = false;
    d << " " << ratio_to_string(out.report.lambda);
  }
  return {reject && padded_ok, d.str()};
}

// ---- 9: combing fellow-traveller constant ----------------------------------

CheckResult check_fellow_traveller() {
  OraclePtr f = make_free_oracle(Alphabet({"a", "b"}));
  int k = fellow_traveller_bound(*f, canonical_combing(), 6);
  std::ostringstream d;
  d << "k = " << k << " at radius 6";
  return {k == 1, d.str()};
}

} // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<CheckResult()> fn;
    double budget_s;
  };
  std::vector<Entry> entries = {
      {"subgroup membership vs product enumeration", check_membership_enumeration, 10.0},
      {"edge conjugacy criterion matches ball search", check_conjugacy_criterion, 60.0},
      {"amalgam centralizers collapse into the factor", check_centralizer_localization, 60.0},
      {"kernel characterization in the doubled product", check_kernel_characterization, 120.0},
      {"basis-change automorphisms hit their targets", check_basis_change, 100.0},
      {"conjugacy instances decide and certify", check_conjugacy_instances, 300.0},
      {"isomorphism certificates and retraction", check_iso_certificates, 120.0},
      {"padded presentations certify small cancellation", check_small_cancellation, 30.0},
      {"combing fellow-traveller constant", check_fellow_traveller, 10.0},
  };

  int failures = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = entries[i].fn();
    } catch (const Error& e) {
      r = {false, std::string("error: ") + e.what()};
    } catch (const std::exception& e) {
      r = {false, std::string("unexpected: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs < entries[i].budget_s;
    bool pass = r.pass && in_budget;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << (i + 1) << " " << entries[i].name
              << "  (" << std::fixed << std::setprecision(2) << secs << "s";
    if (!r.detail.empty()) std::cout << "; " << r.detail;
    if (!in_budget) std::cout << "; over the " << entries[i].budget_s << "s budget";
    std::cout << ")\n";
  }
  return failures == 0 ? 0 : 1;
}

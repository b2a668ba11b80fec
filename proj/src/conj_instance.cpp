#include "gf/conj.hpp"

#include <algorithm>

#include "gf/error.hpp"
#include "gf/fibre.hpp"

namespace gf {

namespace {

void check_range(const Word& w, int size, const char* what) {
  for (const Letter& l : w.letters)
    if (l.gen < 0 || l.gen >= size)
      fail(ErrorKind::precondition, std::string(what) + " uses a letter outside its alphabet");
}

// Letters with gen in [lo, hi), reindexed down by lo.
Word project_range(const Word& w, int lo, int hi) {
  std::vector<Letter> out;
  for (const Letter& l : w.letters)
    if (l.gen >= lo && l.gen < hi) out.push_back(Letter{l.gen - lo, l.sign});
  return free_reduce(out);
}

Word shift_word(const Word& w, int by) {
  Word out = w;
  for (Letter& l : out.letters) l.gen += by;
  return out;
}

AmalgamElement mirror_pair(const AmalgamSpec& d, const Word& w) {
  return amalgam_reduce_raw(d, {Syllable{Side::left, w}, Syllable{Side::right, w}});
}

// Edge data for the double of g = n x free(symbols) along the graph of phi.
struct GraphEdge {
  std::function<bool(const Word&)> member;
  std::function<std::vector<Word>(int)> enumerate;
};

GraphEdge graph_edge(OraclePtr n, OraclePtr f_free, const GeneratorMap& phi) {
  int n_size = n->alphabet().size();
  auto member = [n, phi, n_size](const Word& g) {
    Word f_part = project_range(g, n_size, n_size + phi.source.size());
    Word n_part = project_range(g, 0, n_size);
    return n->equal(n_part, apply_map(phi, f_part));
  };
  auto enumerate = [n_size, f_free, phi](int budget) {
    std::vector<Word> out;
    for (const Word& x : ball_enumerate(*f_free, budget)) {
      Word c = apply_map(phi, x);
      Word tail = shift_word(x, n_size);
      c.letters.insert(c.letters.end(), tail.letters.begin(), tail.letters.end());
      out.push_back(c);
    }
    return out;
  };
  return {member, enumerate};
}

} // namespace

ConjugacyInstance basic_conjugacy_instance(OraclePtr n, const GeneratorMap& phi, const Word& a0,
                                           const Word& b, MembershipOracle i_member) {
  if (!n) fail(ErrorKind::precondition, "missing ambient oracle");
  phi.validate();
  if (phi.target != n->alphabet())
    fail(ErrorKind::precondition, "map target must be the ambient alphabet");
  for (const std::string& name : phi.source.names())
    if (n->alphabet().has(name))
      fail(ErrorKind::precondition, "symbol alphabet collides with the ambient alphabet");
  check_range(a0, n->alphabet().size(), "a0");
  check_range(b, n->alphabet().size(), "b");
  if (n->is_trivial(a0)) fail(ErrorKind::precondition, "a0 must be nontrivial");

  OraclePtr f_free = make_free_oracle(phi.source);
  OraclePtr g = make_direct_product(n, f_free);
  GraphEdge edge = graph_edge(n, f_free, phi);

  ConjugacyInstance inst;
  inst.d = make_double(g, edge.member);
  inst.d.edge_enumerator = edge.enumerate;
  Word w = wmul(b, a0, winv(b));
  inst.u = mirror_pair(inst.d, w);
  inst.v = mirror_pair(inst.d, a0);
  if (i_member) inst.verdict = i_member(b);
  return inst;
}

namespace {

// Exact edge-conjugacy answers for mirror pairs with trivial symbol parts.
// Conjugation by an edge element acts coordinatewise, so the two free
// coordinates are solved independently and the solution line of each is a
// centralizer coset; membership of a combined solution in the fibre
// subgroup is then a quotient equation.  When both centralizer generators
// die in the quotient the equation is a single decidable check, which makes
// the answer definite in both directions.
EdgeSolver make_mirror_solver(FinitePresentation q_pres, int k0, int f_count, OraclePtr q_oracle,
                             OraclePtr g_oracle) {
  return [=](const std::vector<Syllable>& from, const std::vector<Syllable>& to) {
    EdgeSolution unknown;
    int n_size = 2 * k0;
    if (from.size() != 2 || to.size() != 2) return unknown;
    if (from[0].side != Side::left || from[1].side != Side::right) return unknown;
    if (to[0].side != Side::left || to[1].side != Side::right) return unknown;
    if (!g_oracle->equal(from[0].w, from[1].w)) return unknown;
    if (!g_oracle->equal(to[0].w, to[1].w)) return unknown;
    Word fu = project_range(from[0].w, n_size, n_size + f_count);
    Word fv = project_range(to[0].w, n_size, n_size + f_count);
    if (!fu.empty() || !fv.empty()) return unknown;

    Word u[2] = {project_range(from[0].w, 0, k0), project_range(from[0].w, k0, n_size)};
    Word v[2] = {project_range(to[0].w, 0, k0), project_range(to[0].w, k0, n_size)};

    Word h[2];
    std::optional<Word> zgen[2];
    for (int i = 0; i < 2; ++i) {
      auto h0 = free_conjugator(u[i], v[i]);
      if (!h0) {
        EdgeSolution no;
        no.definite_no = true;
        return no;
      }
      h[i] = *h0;
      zgen[i] = centralizer_generator(v[i]);
    }

    // Solutions are (z1^s h1, z2^t h2); fibre membership asks for equality
    // of the two quotient images.
    auto q_eq = [&](const Word& x, const Word& y) {
      return q_oracle->is_trivial(wmul(x, winv(y)));
    };
    if (!zgen[0] && !zgen[1]) {
      h[0] = Word{};
      h[1] = Word{};
    } else if (!zgen[0]) {
      h[0] = h[1]; // free coordinate copies the constrained one
    } else if (!zgen[1]) {
      h[1] = h[0];
    } else {
      bool z0_dies = q_oracle->is_trivial(*zgen[0]);
      bool z1_dies = q_oracle->is_trivial(*zgen[1]);
      if (z0_dies && z1_dies) {
        if (!q_eq(h[0], h[1])) {
          EdgeSolution no;
          no.definite_no = true;
          return no;
        }
      } else {
        const int span = 12;
        bool found = false;
        for (int a = -span; a <= span && !found; ++a) {
          for (int bb = -span; bb <= span && !found; ++bb) {
            if (q_eq(wmul(wpow(*zgen[0], a), h[0]), wmul(wpow(*zgen[1], bb), h[1]))) {
              h[0] = wmul(wpow(*zgen[0], a), h[0]);
              h[1] = wmul(wpow(*zgen[1], bb), h[1]);
              found = true;
            }
          }
        }
        if (!found) return unknown;
      }
    }

    auto x = constructive_express(q_pres, PairWord{h[0], h[1]});
    if (!x) fail(ErrorKind::precondition, "fibre expression missing for a checked member");
    Word c = h[0];
    Word right = shift_word(h[1], k0);
    c.letters.insert(c.letters.end(), right.letters.begin(), right.letters.end());
    Word tail = shift_word(*x, n_size);
    c.letters.insert(c.letters.end(), tail.letters.begin(), tail.letters.end());
    EdgeSolution out;
    out.conjugator_left = c;
    return out;
  };
}

} // namespace

MirrorSetting build_mirror_setting(const FinitePresentation& q) {
  q.validate();
  MirrorSetting s;

  NormalizedPresentation norm = normalize_for_centralizer(q);
  s.q_pres = norm.pres;
  s.fresh = norm.fresh;
  int k0 = s.q_pres.gens.size();
  s.base_size = k0;

  std::vector<std::string> killed;
  for (const Word& r : s.q_pres.relators) {
    if (r.size() != 1)
      fail(ErrorKind::unsupported, "the decidable family needs single-letter relators");
    killed.push_back(s.q_pres.gens.name(r.letters[0].gen));
  }
  s.q_oracle = make_kill_generators(s.q_pres.gens, killed);

  std::string suffix = "2";
  auto collides = [&]() {
    for (const std::string& name : s.q_pres.gens.names())
      if (s.q_pres.gens.has(name + suffix)) return true;
    return false;
  };
  while (collides()) suffix += "2";
  std::vector<std::string> copy_names;
  for (const std::string& name : s.q_pres.gens.names()) copy_names.push_back(name + suffix);
  s.n_oracle = make_direct_product(make_free_oracle(s.q_pres.gens),
                                   make_free_oracle(Alphabet{copy_names}));

  std::string prefix = "x";
  auto prefix_collides = [&]() {
    size_t count = static_cast<size_t>(k0) + s.q_pres.relators.size();
    for (size_t i = 1; i <= count; ++i)
      if (s.n_oracle->alphabet().has(prefix + std::to_string(i))) return true;
    return false;
  };
  while (prefix_collides()) prefix += "x";
  s.f_symbols = fibre_alphabet(s.q_pres, prefix);

  s.phi.source = s.f_symbols;
  s.phi.target = s.n_oracle->alphabet();
  for (int i = 0; i < k0; ++i)
    s.phi.images.push_back(Word{{Letter{i, 1}, Letter{k0 + i, 1}}});
  for (const Word& r : s.q_pres.relators) s.phi.images.push_back(r);
  s.phi.validate();

  OraclePtr f_free = make_free_oracle(s.f_symbols);
  s.g_oracle = make_direct_product(s.n_oracle, f_free);

  int z = s.q_pres.gens.index_of(s.fresh);
  s.a0 = Word{{Letter{z, 1}, Letter{k0 + z, 1}}};

  OraclePtr q_oracle = s.q_oracle;
  s.i_member = [q_oracle, k0](const Word& w) {
    check_range(w, 2 * k0, "membership query");
    Word left = project_range(w, 0, k0);
    Word right = project_range(w, k0, 2 * k0);
    return q_oracle->is_trivial(wmul(left, winv(right)));
  };

  GraphEdge edge = graph_edge(s.n_oracle, f_free, s.phi);
  s.d = make_double(s.g_oracle, edge.member);
  s.d.edge_enumerator = edge.enumerate;
  s.d.edge_solver =
      make_mirror_solver(s.q_pres, k0, s.f_symbols.size(), s.q_oracle, s.g_oracle);
  return s;
}

ConjugacyInstance mirror_instance(const MirrorSetting& s, const Word& b) {
  check_range(b, 2 * s.base_size, "b");
  ConjugacyInstance inst;
  inst.d = s.d;
  Word w = wmul(b, s.a0, winv(b));
  inst.u = mirror_pair(inst.d, w);
  inst.v = mirror_pair(inst.d, s.a0);
  inst.verdict = s.i_member(b);
  return inst;
}

} // namespace gf

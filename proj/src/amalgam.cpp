#include "gf/amalgam.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "gf/error.hpp"

namespace gf {

void AmalgamSpec::validate() const {
  if (!left || !right) fail(ErrorKind::precondition, "amalgam factors missing");
  if (!edge_member) fail(ErrorKind::precondition, "amalgam edge membership missing");
  if (!transfer) fail(ErrorKind::precondition, "amalgam edge transfer missing");
  int total = left->alphabet().size() + right->alphabet().size();
  if (combined.size() != total)
    fail(ErrorKind::precondition, "combined alphabet size does not match factors");
  if (edge_elements) {
    for (const auto& pair : *edge_elements) {
      if (!edge_member(Side::left, pair[0]) || !edge_member(Side::right, pair[1]))
        fail(ErrorKind::precondition, "edge element list entry fails edge membership");
    }
  }
}

AmalgamSpec make_double(OraclePtr factor, std::function<bool(const Word&)> h_member,
                        std::optional<std::vector<Word>> edge_elements) {
  if (!factor) fail(ErrorKind::precondition, "double requires a factor oracle");
  if (!h_member) fail(ErrorKind::precondition, "double requires an edge membership predicate");
  std::vector<std::string> names;
  for (const auto& n : factor->alphabet().names()) names.push_back(n);
  for (const auto& n : factor->alphabet().names()) names.push_back(n + "_bar");
  AmalgamSpec spec;
  spec.left = factor;
  spec.right = factor;
  spec.combined = Alphabet(names); // throws on a name collision
  spec.is_double = true;
  spec.edge_member = [h_member](Side, const Word& w) { return h_member(w); };
  spec.transfer = [](Side, const Word& w) { return w; };
  if (edge_elements) {
    std::vector<std::array<Word, 2>> pairs;
    for (const auto& w : *edge_elements) pairs.push_back({w, w});
    spec.edge_elements = std::move(pairs);
  }
  spec.validate();
  return spec;
}

namespace {

struct EmbeddedEdge {
  std::vector<int> image;          // edge element -> factor element
  std::vector<int> preimage;       // factor element -> edge element or -1
  std::vector<Word> element_words; // factor canonical word per edge element
};

EmbeddedEdge resolve_embedding(const FiniteGroupTable& factor, const FiniteGroupTable& edge,
                               const std::vector<Word>& gen_images, const char* which) {
  if (gen_images.size() != edge.gens.size())
    fail(ErrorKind::precondition,
         std::string("edge embedding image count mismatch on ") + which + " factor");
  if (!table_generators_generate(edge))
    fail(ErrorKind::precondition, "edge table generators do not generate the edge group");
  Alphabet ea = table_alphabet(edge);
  auto canon = table_canonical_words(edge);
  GeneratorMap to_factor{ea, table_alphabet(factor), gen_images};
  to_factor.validate();
  EmbeddedEdge out;
  out.image.resize(edge.order);
  out.preimage.assign(factor.order, -1);
  out.element_words.resize(edge.order);
  for (int c = 0; c < edge.order; ++c) {
    Word w = apply_map(to_factor, *canon[size_t(c)]);
    out.image[size_t(c)] = table_eval(factor, w);
  }
  for (int x = 0; x < edge.order; ++x)
    for (int y = 0; y < edge.order; ++y) {
      int lhs = out.image[size_t(edge.mult[size_t(x)][size_t(y)])];
      int rhs = factor.mult[size_t(out.image[size_t(x)])][size_t(out.image[size_t(y)])];
      if (lhs != rhs)
        fail(ErrorKind::precondition,
             std::string("edge embedding into ") + which + " factor is not a homomorphism");
    }
  for (int x = 0; x < edge.order; ++x) {
    int fx = out.image[size_t(x)];
    if (out.preimage[size_t(fx)] != -1)
      fail(ErrorKind::precondition,
           std::string("edge embedding into ") + which + " factor is not injective");
    out.preimage[size_t(fx)] = x;
  }
  auto fcanon = table_canonical_words(factor);
  for (int c = 0; c < edge.order; ++c) {
    const auto& w = fcanon[size_t(out.image[size_t(c)])];
    if (!w)
      fail(ErrorKind::precondition,
           std::string(which) + " factor generators do not reach an edge image element");
    out.element_words[size_t(c)] = *w;
  }
  return out;
}

} // namespace

AmalgamSpec make_finite_amalgam(FiniteGroupTable left, FiniteGroupTable right,
                                FiniteGroupTable edge, const std::vector<Word>& embed_left,
                                const std::vector<Word>& embed_right) {
  left.validate();
  right.validate();
  edge.validate();
  auto el = std::make_shared<EmbeddedEdge>(resolve_embedding(left, edge, embed_left, "left"));
  auto er = std::make_shared<EmbeddedEdge>(resolve_embedding(right, edge, embed_right, "right"));
  auto lt = std::make_shared<FiniteGroupTable>(left);
  auto rt = std::make_shared<FiniteGroupTable>(right);

  AmalgamSpec spec;
  spec.left = make_finite_oracle(left);
  spec.right = make_finite_oracle(right);
  std::vector<std::string> names;
  for (const auto& n : spec.left->alphabet().names()) names.push_back(n);
  for (const auto& n : spec.right->alphabet().names()) names.push_back(n);
  spec.combined = Alphabet(names);
  spec.edge_member = [lt, rt, el, er](Side s, const Word& w) {
    if (s == Side::left) return el->preimage[size_t(table_eval(*lt, w))] != -1;
    return er->preimage[size_t(table_eval(*rt, w))] != -1;
  };
  spec.transfer = [lt, rt, el, er](Side s, const Word& w) {
    if (s == Side::left) {
      int c = el->preimage[size_t(table_eval(*lt, w))];
      if (c == -1) fail(ErrorKind::precondition, "transfer applied to a non-edge element");
      return er->element_words[size_t(c)];
    }
    int c = er->preimage[size_t(table_eval(*rt, w))];
    if (c == -1) fail(ErrorKind::precondition, "transfer applied to a non-edge element");
    return el->element_words[size_t(c)];
  };
  std::vector<std::array<Word, 2>> pairs;
  for (int c = 0; c < edge.order; ++c)
    pairs.push_back({el->element_words[size_t(c)], er->element_words[size_t(c)]});
  spec.edge_elements = std::move(pairs);
  spec.validate();
  return spec;
}

std::vector<Syllable> word_syllables(const AmalgamSpec& spec, const Word& w) {
  int ls = spec.left_size();
  std::vector<Syllable> out;
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || l.gen >= spec.combined.size())
      fail(ErrorKind::precondition, "letter outside the combined alphabet");
    Side s = l.gen < ls ? Side::left : Side::right;
    Letter local{s == Side::left ? l.gen : l.gen - ls, l.sign};
    if (out.empty() || out.back().side != s) out.push_back({s, Word{}});
    out.back().w.letters.push_back(local);
  }
  return out;
}

Word element_word(const AmalgamSpec& spec, const AmalgamElement& e) {
  int ls = spec.left_size();
  Word out;
  for (const Syllable& s : e.syllables)
    for (const Letter& l : s.w.letters)
      out.letters.push_back({s.side == Side::left ? l.gen : l.gen + ls, l.sign});
  return out; // sides alternate and each syllable is reduced, nothing cancels
}

namespace {

// Push-machine reduction: the stack prefix is always reduced.  Merging a
// same-side neighbour or transferring an edge syllable across can cascade;
// every recursive step strictly shrinks the pending syllable count.
void push_syllable(const AmalgamSpec& spec, std::vector<Syllable>& stack, Side side, Word w) {
  w = spec.factor(side).canonical(w);
  if (w.letters.empty()) return;
  if (!stack.empty() && stack.back().side == side) {
    Word top = std::move(stack.back().w);
    stack.pop_back();
    push_syllable(spec, stack, side, wmul(top, w));
    return;
  }
  if (!stack.empty() && spec.edge_member(stack.back().side, stack.back().w)) {
    Syllable top = std::move(stack.back());
    stack.pop_back();
    push_syllable(spec, stack, side, wmul(spec.transfer(top.side, top.w), w));
    return;
  }
  if (!stack.empty() && spec.edge_member(side, w)) {
    Syllable top = std::move(stack.back());
    stack.pop_back();
    push_syllable(spec, stack, top.side, wmul(top.w, spec.transfer(side, w)));
    return;
  }
  stack.push_back({side, std::move(w)});
}

} // namespace

AmalgamElement amalgam_reduce_raw(const AmalgamSpec& spec, const std::vector<Syllable>& raw) {
  std::vector<Syllable> stack;
  for (const Syllable& s : raw) push_syllable(spec, stack, s.side, s.w);
  if (stack.size() == 1 && stack[0].side == Side::right &&
      spec.edge_member(Side::right, stack[0].w)) {
    Word moved = spec.factor(Side::left).canonical(spec.transfer(Side::right, stack[0].w));
    stack[0] = {Side::left, std::move(moved)};
  }
  return AmalgamElement{std::move(stack)};
}

AmalgamElement amalgam_reduce(const AmalgamSpec& spec, const Word& combined_word) {
  return amalgam_reduce_raw(spec, word_syllables(spec, combined_word));
}

AmalgamElement amalgam_inverse(const AmalgamElement& e) {
  AmalgamElement out;
  for (auto it = e.syllables.rbegin(); it != e.syllables.rend(); ++it)
    out.syllables.push_back({it->side, winv(it->w)});
  return out;
}

AmalgamElement amalgam_multiply(const AmalgamSpec& spec, const AmalgamElement& a,
                                const AmalgamElement& b) {
  std::vector<Syllable> raw = a.syllables;
  raw.insert(raw.end(), b.syllables.begin(), b.syllables.end());
  return amalgam_reduce_raw(spec, raw);
}

bool amalgam_equal_elements(const AmalgamSpec& spec, const AmalgamElement& a,
                            const AmalgamElement& b) {
  return amalgam_multiply(spec, a, amalgam_inverse(b)).is_identity();
}

bool amalgam_equal(const AmalgamSpec& spec, const Word& u, const Word& v) {
  return amalgam_reduce(spec, wmul(u, winv(v))).is_identity();
}

AmalgamCyclicReduction amalgam_cyclic_reduce(const AmalgamSpec& spec, const AmalgamElement& e) {
  AmalgamCyclicReduction out;
  out.core = e;
  while (out.core.size() >= 2 && out.core.syllables.front().side == out.core.syllables.back().side) {
    Syllable first = out.core.syllables.front();
    std::vector<Syllable> rest(out.core.syllables.begin() + 1, out.core.syllables.end());
    rest.push_back(first);
    out.conjugator.syllables.push_back(first);
    out.core = amalgam_reduce_raw(spec, rest);
  }
  out.conjugator = amalgam_reduce_raw(spec, out.conjugator.syllables);
  return out;
}

namespace {

Word edge_word_on(const std::array<Word, 2>& pair, Side s) {
  return s == Side::left ? pair[0] : pair[1];
}

// Invariant of the element under the normal form theorem: tags plus the
// coset x1*C, double cosets C*xi*C, and C*xn.  Necessary, not sufficient,
// so ball dedup still compares within a bucket.
std::string amalgam_fingerprint(const AmalgamSpec& spec, const AmalgamElement& e) {
  if (e.is_identity()) return "e";
  const auto& edge = *spec.edge_elements;
  auto least_key = [&](const Syllable& s, bool left_cosets, bool right_cosets) {
    std::string best;
    bool have = false;
    for (size_t i = 0; i < (left_cosets ? edge.size() : 1); ++i) {
      Word lw = left_cosets ? edge_word_on(edge[i], s.side) : Word{};
      for (size_t j = 0; j < (right_cosets ? edge.size() : 1); ++j) {
        Word rw = right_cosets ? edge_word_on(edge[j], s.side) : Word{};
        Word cand = spec.factor(s.side).canonical(wmul(lw, s.w, rw));
        std::string key = word_key(cand);
        if (!have || key < best) {
          best = std::move(key);
          have = true;
        }
      }
    }
    return best;
  };
  std::string fp;
  for (const Syllable& s : e.syllables) fp += s.side == Side::left ? 'L' : 'R';
  if (e.size() == 1) {
    fp += '|';
    fp += word_key(e.syllables[0].w);
    return fp;
  }
  size_t n = e.size();
  for (size_t i = 0; i < n; ++i) {
    fp += '|';
    fp += least_key(e.syllables[i], i > 0, i + 1 < n);
  }
  return fp;
}

} // namespace

AmalgamBall amalgam_ball(const AmalgamSpec& spec, int radius, size_t cap) {
  if (!spec.has_finite_edge())
    fail(ErrorKind::unsupported, "ball enumeration needs a finite edge element list");
  AmalgamBall ball;
  ball.radius = radius;
  std::unordered_map<std::string, std::vector<size_t>> buckets;
  auto try_add = [&](const Word& w) -> bool {
    AmalgamElement e = amalgam_reduce(spec, w);
    std::string fp = amalgam_fingerprint(spec, e);
    auto& bucket = buckets[fp];
    for (size_t idx : bucket)
      if (amalgam_equal_elements(spec, ball.elements[idx], e)) return false;
    if (ball.reps.size() >= cap)
      fail(ErrorKind::resource, "amalgam ball exceeded the element cap");
    bucket.push_back(ball.reps.size());
    ball.reps.push_back(w);
    ball.elements.push_back(std::move(e));
    return true;
  };
  try_add(Word{});
  size_t frontier_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    size_t frontier_end = ball.reps.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      if (int(ball.reps[i].letters.size()) != len - 1) continue;
      Word base = ball.reps[i];
      for (int g = 0; g < spec.combined.size(); ++g)
        for (int sgn : {+1, -1}) {
          Letter l{g, sgn};
          if (!base.letters.empty() && base.letters.back() == l.inverse()) continue;
          Word cand = base;
          cand.letters.push_back(l);
          try_add(cand);
        }
    }
    frontier_begin = frontier_end;
  }
  return ball;
}

namespace {

bool verify_conjugation(const AmalgamSpec& spec, const Word& g, const Word& u, const Word& v) {
  return amalgam_equal(spec, wmul(g, u, winv(g)), v);
}

// Conjugating a reduced alternating sequence by an edge element keeps it
// reduced syllable by syllable, so a per-shift edge solve is complete for
// cyclically reduced cores of length >= 2.
ConjugatorSearchResult search_by_structure(const AmalgamSpec& spec, const Word& u, const Word& v,
                                           int radius) {
  ConjugatorSearchResult out;
  AmalgamCyclicReduction cu = amalgam_cyclic_reduce(spec, amalgam_reduce(spec, u));
  AmalgamCyclicReduction cv = amalgam_cyclic_reduce(spec, amalgam_reduce(spec, v));
  size_t n = cu.core.size(), m = cv.core.size();
  if (n >= 2 || m >= 2) {
    if (n != m) {
      out.definite_no = true;
      return out;
    }
    bool all_shifts_refuted = true;
    for (size_t shift = 0; shift < n; ++shift) {
      std::vector<Syllable> rot(cu.core.syllables.begin() + long(shift), cu.core.syllables.end());
      rot.insert(rot.end(), cu.core.syllables.begin(), cu.core.syllables.begin() + long(shift));
      bool tags_match = true;
      for (size_t i = 0; i < n; ++i)
        if (rot[i].side != cv.core.syllables[i].side) tags_match = false;
      if (!tags_match) continue;

      std::optional<Word> c_left;
      bool refuted = false;
      if (amalgam_equal_elements(spec, AmalgamElement{rot}, cv.core)) c_left = Word{};
      if (!c_left && spec.edge_solver) {
        EdgeSolution sol = spec.edge_solver(rot, cv.core.syllables);
        if (sol.conjugator_left) c_left = sol.conjugator_left;
        refuted = sol.definite_no;
      }
      if (!c_left && !refuted && spec.edge_enumerator) {
        for (const Word& cw : spec.edge_enumerator(radius)) {
          AmalgamElement conj = amalgam_reduce_raw(spec, {{Side::left, cw}});
          AmalgamElement lhs = amalgam_multiply(
              spec, conj,
              amalgam_multiply(spec, AmalgamElement{rot}, amalgam_inverse(conj)));
          if (amalgam_equal_elements(spec, lhs, cv.core)) {
            c_left = cw;
            break;
          }
        }
      }
      if (!refuted) all_shifts_refuted = false;
      if (c_left) {
        // g = conj_v * c * prefix^-1 * conj_u^-1 where core_u = prefix * rot * prefix^-1
        AmalgamElement prefix{std::vector<Syllable>(cu.core.syllables.begin(),
                                                    cu.core.syllables.begin() + long(shift))};
        AmalgamElement g = amalgam_multiply(
            spec, cv.conjugator,
            amalgam_multiply(spec, amalgam_reduce_raw(spec, {{Side::left, *c_left}}),
                             amalgam_multiply(spec, amalgam_inverse(prefix),
                                              amalgam_inverse(cu.conjugator))));
        Word gw = element_word(spec, g);
        if (!verify_conjugation(spec, gw, u, v))
          fail(ErrorKind::precondition, "edge solver produced a non-verifying conjugator");
        out.witness = gw;
        return out;
      }
    }
    out.definite_no = all_shifts_refuted;
    return out;
  }

  // Both cores have at most one syllable.  No completeness theorem applies
  // without a finite edge, so fall back to a bounded syntactic word search.
  if (amalgam_equal(spec, u, v)) {
    out.witness = Word{};
    return out;
  }
  std::vector<Word> frontier{Word{}};
  std::set<std::string> seen{word_key(Word{})};
  for (int len = 1; len <= radius; ++len) {
    std::vector<Word> next;
    for (const Word& base : frontier)
      for (int g = 0; g < spec.combined.size(); ++g)
        for (int sgn : {+1, -1}) {
          Letter l{g, sgn};
          if (!base.letters.empty() && base.letters.back() == l.inverse()) continue;
          Word cand = base;
          cand.letters.push_back(l);
          if (!seen.insert(word_key(cand)).second) continue;
          if (seen.size() > 200000)
            fail(ErrorKind::resource, "conjugator word search exceeded its cap");
          if (verify_conjugation(spec, cand, u, v)) {
            out.witness = cand;
            return out;
          }
          next.push_back(std::move(cand));
        }
    frontier = std::move(next);
  }
  return out;
}

} // namespace

ConjugatorSearchResult conjugator_search(const AmalgamSpec& spec, const Word& u, const Word& v,
                                         int radius, const AmalgamBall* cached) {
  if (radius < 0) fail(ErrorKind::precondition, "radius must be nonnegative");
  if (!spec.has_finite_edge()) return search_by_structure(spec, u, v, radius);

  ConjugatorSearchResult out;
  AmalgamCyclicReduction cu = amalgam_cyclic_reduce(spec, amalgam_reduce(spec, u));
  AmalgamCyclicReduction cv = amalgam_cyclic_reduce(spec, amalgam_reduce(spec, v));
  if ((cu.core.size() >= 2 || cv.core.size() >= 2) && cu.core.size() != cv.core.size()) {
    out.definite_no = true;
    return out;
  }
  AmalgamBall local;
  const AmalgamBall* ball = cached;
  if (!ball || ball->radius < radius) {
    local = amalgam_ball(spec, radius);
    ball = &local;
  }
  for (size_t i = 0; i < ball->reps.size(); ++i) {
    if (int(ball->reps[i].letters.size()) > radius) continue;
    if (verify_conjugation(spec, ball->reps[i], u, v)) {
      out.witness = ball->reps[i];
      return out;
    }
  }
  return out;
}

std::vector<Word> centralizer_ball(const AmalgamSpec& spec, const std::vector<Word>& s, int radius,
                                   const AmalgamBall* cached) {
  AmalgamBall local;
  const AmalgamBall* ball = cached;
  if (!ball || ball->radius < radius) {
    local = amalgam_ball(spec, radius);
    ball = &local;
  }
  std::vector<Word> out;
  for (size_t i = 0; i < ball->reps.size(); ++i) {
    if (int(ball->reps[i].letters.size()) > radius) continue;
    bool commutes = true;
    for (const Word& w : s)
      if (!amalgam_equal(spec, wmul(ball->reps[i], w), wmul(w, ball->reps[i]))) {
        commutes = false;
        break;
      }
    if (commutes) out.push_back(ball->reps[i]);
  }
  return out;
}

ConjAbReport check_conj_ab(const AmalgamSpec& spec, const Word& a, const Word& a2, const Word& b,
                           const Word& b2, int radius, const AmalgamBall* cached) {
  ConjAbReport rep;
  if (!spec.has_finite_edge())
    fail(ErrorKind::unsupported, "conjugacy criterion check needs a finite edge element list");
  // Inputs are combined-alphabet words, each one-sided, outside the edge.
  auto outside = [&](const Word& w, Side s) {
    std::vector<Syllable> syl = word_syllables(spec, w);
    if (syl.size() != 1 || syl[0].side != s) return false;
    Word local = spec.factor(s).canonical(syl[0].w);
    return !local.empty() && !spec.edge_member(s, local);
  };
  if (!outside(a, Side::left) || !outside(a2, Side::left)) {
    rep.reason = "a and a' must lie in the left factor outside the edge subgroup";
    return rep;
  }
  if (!outside(b, Side::right) || !outside(b2, Side::right)) {
    rep.reason = "b and b' must lie in the right factor outside the edge subgroup";
    return rep;
  }
  rep.inputs_valid = true;

  Word u = wmul(a, b);
  Word v = wmul(a2, b2);

  size_t shortest_c = 0;
  for (const auto& pair : *spec.edge_elements) {
    Word cw = pair[0];
    if (amalgam_equal(spec, wmul(cw, u, winv(cw)), v)) {
      if (!rep.exists_c || cw.letters.size() < shortest_c) {
        rep.c_witness = cw;
        shortest_c = cw.letters.size();
      }
      rep.exists_c = true;
    }
  }

  ConjugatorSearchResult found = conjugator_search(spec, u, v, radius, cached);
  rep.bfs_found = found.witness.has_value();
  rep.bfs_witness = found.witness;

  if (rep.bfs_found && !rep.exists_c) rep.pass = false;
  else if (rep.exists_c && int(shortest_c) <= radius && !rep.bfs_found) rep.pass = false;
  else rep.pass = true;
  return rep;
}

KerphiReport check_kerphi_characteristic(FiniteGroupTable a, FiniteGroupTable b,
                                         FiniteGroupTable q, const GeneratorMap& phi,
                                         int radius) {
  KerphiReport rep;
  a.validate();
  b.validate();
  q.validate();
  if (!table_generators_generate(a) || !table_generators_generate(b) ||
      !table_generators_generate(q)) {
    rep.hypothesis_failure = "designated generators must generate each table";
    return rep;
  }
  if (!(phi.source == table_alphabet(q)) || !(phi.target == table_alphabet(b)) ||
      phi.images.size() != q.gens.size()) {
    rep.hypothesis_failure = "phi must map the generators of Q into B";
    return rep;
  }
  if (exists_nontrivial_hom(a, q)) {
    rep.hypothesis_failure = "a nontrivial homomorphism A -> Q exists";
    return rep;
  }
  if (exists_embedded_copy(a, b)) {
    rep.hypothesis_failure = "B contains an embedded copy of A";
    return rep;
  }
  // Element-level phi, with a homomorphism check.
  auto q_canon_opt = table_canonical_words(q);
  std::vector<Word> q_canon;
  for (const auto& w : q_canon_opt) q_canon.push_back(*w);
  std::vector<int> phi_elt(size_t(q.order));
  for (int x = 0; x < q.order; ++x)
    phi_elt[size_t(x)] = table_eval(b, apply_map(phi, q_canon[size_t(x)]));
  for (int x = 0; x < q.order; ++x)
    for (int y = 0; y < q.order; ++y)
      if (phi_elt[size_t(q.mult[size_t(x)][size_t(y)])] !=
          b.mult[size_t(phi_elt[size_t(x)])][size_t(phi_elt[size_t(y)])]) {
        rep.hypothesis_failure = "phi is not a homomorphism Q -> B";
        return rep;
      }
  rep.hypotheses_ok = true;

  for (int x = 0; x < q.order; ++x)
    if (phi_elt[size_t(x)] == b.identity) rep.ker_elements.push_back(x);

  OraclePtr ao = make_finite_oracle(a);
  OraclePtr bo = make_finite_oracle(b);
  OraclePtr qo = make_finite_oracle(q);
  OraclePtr ab = make_free_product(ao, bo);
  OraclePtr g = make_direct_product(ab, qo);
  int ab_size = ab->alphabet().size();
  auto b_canon_opt = table_canonical_words(b);
  std::vector<Word> b_canon;
  for (const auto& w : b_canon_opt) b_canon.push_back(*w);
  int a_size = ao->alphabet().size();

  auto shift_q = [&](const Word& w) {
    Word out;
    for (const Letter& l : w.letters) out.letters.push_back({l.gen + ab_size, l.sign});
    return out;
  };
  auto shift_b = [&](const Word& w) {
    Word out;
    for (const Letter& l : w.letters) out.letters.push_back({l.gen + a_size, l.sign});
    return out;
  };

  auto hat_member = [&, phi_elt](const Word& w) {
    Word ab_part, q_part;
    for (const Letter& l : w.letters) {
      if (l.gen < ab_size) ab_part.letters.push_back(l);
      else q_part.letters.push_back({l.gen - ab_size, l.sign});
    }
    int qe = table_eval(q, q_part);
    Word expect = shift_b(b_canon[size_t(phi_elt[size_t(qe)])]);
    return ab->is_trivial(wmul(ab_part, winv(expect)));
  };
  std::vector<Word> edge_words;
  for (int x = 0; x < q.order; ++x)
    edge_words.push_back(
        wmul(shift_b(b_canon[size_t(phi_elt[size_t(x)])]), shift_q(q_canon[size_t(x)])));
  AmalgamSpec d = make_double(g, hat_member, edge_words);

  int gsize = g->alphabet().size();
  auto bar = [gsize](const Word& w) {
    Word out;
    for (const Letter& l : w.letters) out.letters.push_back({l.gen + gsize, l.sign});
    return out;
  };

  // Conjugating element: the least non-identity element of B.
  int b_elt = -1;
  for (int x = 0; x < b.order && b_elt == -1; ++x)
    if (x != b.identity) b_elt = x;
  Word b_word = shift_b(b_canon[size_t(b_elt)]);

  std::vector<std::pair<std::string, std::vector<Word>>> families;
  std::vector<Word> a_gens, a_gens_b, a_gens_bar, a_gens_bbar;
  for (size_t i = 0; i < a.gens.size(); ++i) {
    Word gw{{Letter{int(i), +1}}};
    a_gens.push_back(gw);
    a_gens_b.push_back(wconj(b_word, gw));
    a_gens_bar.push_back(bar(gw));
    a_gens_bbar.push_back(bar(wconj(b_word, gw)));
  }
  families.push_back({"A", a_gens});
  families.push_back({"A^b", a_gens_b});
  families.push_back({"Abar", a_gens_bar});
  families.push_back({"Abar^bbar", a_gens_bbar});

  rep.centralize_ok = true;
  for (int x : rep.ker_elements) {
    Word k = wmul(shift_b(b_canon[size_t(phi_elt[size_t(x)])]), shift_q(q_canon[size_t(x)]));
    for (const auto& fam : families)
      for (const Word& h : fam.second)
        if (!amalgam_equal(d, wmul(k, h), wmul(h, k))) {
          rep.centralize_ok = false;
          rep.centralize_failures.push_back("Q element " + std::to_string(x) +
                                            " fails to centralize " + fam.first);
        }
  }

  rep.intersection_ok = true;
  std::vector<int> ker_in_ball;
  for (int x : rep.ker_elements)
    if (int(q_canon[size_t(x)].letters.size()) <= radius) ker_in_ball.push_back(x);
  for (int x = 0; x < q.order; ++x) {
    Word xq = shift_q(q_canon[size_t(x)]);
    if (int(xq.letters.size()) > radius) continue;
    bool in_bar = false;
    for (int y = 0; y < q.order && !in_bar; ++y)
      if (amalgam_equal(d, xq, bar(shift_q(q_canon[size_t(y)])))) in_bar = true;
    if (in_bar) rep.q_cap_qbar.push_back(x);
  }
  if (rep.q_cap_qbar != ker_in_ball) rep.intersection_ok = false;

  rep.pass = rep.hypotheses_ok && rep.centralize_ok && rep.intersection_ok;
  return rep;
}

} // namespace gf

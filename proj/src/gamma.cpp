#include "gf/gamma.hpp"

#include <deque>

#include "gf/error.hpp"

namespace gf {

namespace {

void check_range(const Word& w, int size, const char* what) {
  for (const Letter& l : w.letters)
    if (l.gen < 0 || l.gen >= size)
      fail(ErrorKind::precondition, std::string(what) + " uses a letter outside its alphabet");
}

Word shift_word(const Word& w, int by) {
  Word out = w;
  for (Letter& l : out.letters) l.gen += by;
  return out;
}

// Image of an f-word under sigma_i -> s_i, tau_i -> 1, as a B word.
Word steer_image(const GammaSpec& spec, const Word& x) {
  Word acc;
  for (const Letter& l : x.letters) {
    if (l.gen >= spec.m) continue;
    const Word& s = spec.s_n[static_cast<size_t>(l.gen)];
    acc = wmul(acc, l.sign > 0 ? s : winv(s));
  }
  return acc;
}

} // namespace

void GammaSpec::validate() const {
  a_pres.validate();
  b_pres.validate();
  if (!a_oracle || !b_oracle || !ab_oracle || !g_oracle)
    fail(ErrorKind::precondition, "missing factor oracle");
  if (!(a_oracle->alphabet() == a_pres.gens) || !(b_oracle->alphabet() == b_pres.gens))
    fail(ErrorKind::precondition, "oracle alphabet does not match its presentation");
  if (m < 1) fail(ErrorKind::precondition, "free rank parameter must be at least 1");
  if (s_n.size() != static_cast<size_t>(m))
    fail(ErrorKind::precondition, "steering word count must equal the rank parameter");
  for (const Word& s : s_n) check_range(s, b_pres.gens.size(), "steering word");
  if (sigma_names.size() != static_cast<size_t>(m) || tau_names.size() != static_cast<size_t>(m))
    fail(ErrorKind::precondition, "designated generator lists must have length m");
  if (x.size() != ab_size() + 2 * m)
    fail(ErrorKind::precondition, "combined alphabet has the wrong size");
}

GammaSpec make_gamma_spec(const FinitePresentation& a_pres, OraclePtr a_oracle,
                          const FinitePresentation& b_pres, OraclePtr b_oracle, int m,
                          const std::vector<Word>& s_words) {
  GammaSpec spec;
  spec.a_pres = a_pres;
  spec.b_pres = b_pres;
  spec.a_oracle = a_oracle;
  spec.b_oracle = b_oracle;
  spec.m = m;
  spec.s_n = s_words;
  if (!a_oracle || !b_oracle) fail(ErrorKind::precondition, "missing factor oracle");
  if (m < 1) fail(ErrorKind::precondition, "free rank parameter must be at least 1");

  std::vector<std::string> names = a_pres.gens.names();
  for (const std::string& n : b_pres.gens.names()) names.push_back(n);
  auto taken = [&](const std::string& n) {
    return a_pres.gens.has(n) || b_pres.gens.has(n);
  };
  std::string s_stem = "sg", t_stem = "tu";
  auto stem_clear = [&](const std::string& stem) {
    for (int i = 1; i <= m; ++i)
      if (taken(stem + std::to_string(i))) return false;
    return true;
  };
  while (!stem_clear(s_stem)) s_stem += "g";
  while (!stem_clear(t_stem)) t_stem += "u";
  for (int i = 1; i <= m; ++i) spec.sigma_names.push_back(s_stem + std::to_string(i));
  for (int i = 1; i <= m; ++i) spec.tau_names.push_back(t_stem + std::to_string(i));
  for (const std::string& n : spec.sigma_names) names.push_back(n);
  for (const std::string& n : spec.tau_names) names.push_back(n);
  spec.x = Alphabet{names};

  int asize = a_pres.gens.size();
  int ab = spec.ab_size();
  for (const Word& r : a_pres.relators) spec.relators.push_back(r);
  for (const Word& r : b_pres.relators) spec.relators.push_back(shift_word(r, asize));
  for (int g = 0; g < ab; ++g)
    for (int f = ab; f < ab + 2 * m; ++f)
      spec.relators.push_back(Word{{Letter{g, 1}, Letter{f, 1}, Letter{g, -1}, Letter{f, -1}}});

  spec.ab_oracle = make_free_product(a_oracle, b_oracle);
  std::vector<std::string> f_names = spec.sigma_names;
  for (const std::string& n : spec.tau_names) f_names.push_back(n);
  spec.g_oracle = make_direct_product(spec.ab_oracle, make_free_oracle(Alphabet{f_names}));
  spec.validate();
  return spec;
}

FinitePresentation gamma_presentation(const GammaSpec& spec) {
  spec.validate();
  int xsize = spec.x.size();
  std::vector<std::string> names = spec.x.names();
  for (const std::string& n : spec.x.names()) {
    if (spec.x.has(n + "_bar"))
      fail(ErrorKind::malformed_input, "generator name collides with its bar copy");
    names.push_back(n + "_bar");
  }
  FinitePresentation out;
  out.gens = Alphabet{names};
  for (const Word& r : spec.relators) out.relators.push_back(r);
  for (const Word& r : spec.relators) out.relators.push_back(shift_word(r, xsize));
  int ab = spec.ab_size();
  int asize = spec.a_pres.gens.size();
  for (int i = 0; i < spec.m; ++i) {
    int tau = ab + spec.m + i;
    out.relators.push_back(Word{{Letter{tau, 1}, Letter{tau + xsize, -1}}});
  }
  for (int i = 0; i < spec.m; ++i) {
    Word w{{Letter{ab + i, 1}}};
    w = wmul(w, shift_word(spec.s_n[static_cast<size_t>(i)], asize));
    out.relators.push_back(wmul(w, winv(shift_word(w, xsize))));
  }
  out.validate();
  return out;
}

bool sigma_membership(const GammaSpec& spec, const Word& g, const Word& x) {
  check_range(g, spec.ab_size(), "product part");
  check_range(x, 2 * spec.m, "free part");
  Word img = steer_image(spec, x);
  return spec.ab_oracle->equal(g, shift_word(img, spec.a_pres.gens.size()));
}

AmalgamSpec gamma_double(const GammaSpec& spec) {
  spec.validate();
  GammaSpec s = spec;
  int ab = s.ab_size();
  int fsize = 2 * s.m;
  auto member = [s, ab, fsize](const Word& w) {
    std::vector<Letter> g_part, f_part;
    for (const Letter& l : w.letters) {
      if (l.gen < ab)
        g_part.push_back(l);
      else
        f_part.push_back(Letter{l.gen - ab, l.sign});
    }
    return sigma_membership(s, free_reduce(g_part), free_reduce(f_part));
  };
  AmalgamSpec d = make_double(s.g_oracle, member);
  std::vector<std::string> f_names = s.sigma_names;
  for (const std::string& n : s.tau_names) f_names.push_back(n);
  OraclePtr f_free = make_free_oracle(Alphabet{f_names});
  int asize = s.a_pres.gens.size();
  d.edge_enumerator = [s, f_free, ab, asize](int budget) {
    std::vector<Word> out;
    for (const Word& x : ball_enumerate(*f_free, budget)) {
      Word c = shift_word(steer_image(s, x), asize);
      Word tail = shift_word(x, ab);
      c.letters.insert(c.letters.end(), tail.letters.begin(), tail.letters.end());
      out.push_back(c);
    }
    return out;
  };
  return d;
}

Word retraction_to_F(const GammaSpec& spec, const Word& w) {
  int xsize = spec.x.size();
  int ab = spec.ab_size();
  std::vector<Letter> kept;
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || l.gen >= 2 * xsize)
      fail(ErrorKind::precondition, "letter outside the doubled alphabet");
    int g = l.gen >= xsize ? l.gen - xsize : l.gen;
    if (g >= ab) kept.push_back(Letter{g - ab, l.sign});
  }
  return free_reduce(kept);
}

namespace {

class AmalgamEquality final : public EqualityOracle {
public:
  explicit AmalgamEquality(AmalgamSpec s) : spec_(std::move(s)) {}
  const Alphabet& alphabet() const override { return spec_.combined; }
  Verdict is_trivial(const Word& w) const override {
    return amalgam_reduce(spec_, w).is_identity() ? Verdict::yes : Verdict::no;
  }

private:
  AmalgamSpec spec_;
};

} // namespace

EqualityPtr equality_from_amalgam(AmalgamSpec spec) {
  return std::make_shared<AmalgamEquality>(std::move(spec));
}

namespace {

// Shortlex-least word over abstract symbols with the given values whose
// image in q equals goal; empty optional past max_len.
std::optional<Word> least_expression(const OraclePtr& q, const std::vector<Word>& symbol_values,
                                     const Word& goal, int max_len) {
  struct Node {
    Word word, value;
  };
  std::deque<Node> frontier{{Word{}, Word{}}};
  if (q->equal(Word{}, goal)) return Word{};
  int n = static_cast<int>(symbol_values.size());
  for (int len = 1; len <= max_len; ++len) {
    std::deque<Node> next;
    for (const Node& cur : frontier) {
      for (int g = 0; g < n; ++g) {
        for (int sign : {1, -1}) {
          if (!cur.word.empty()) {
            const Letter& last = cur.word.letters.back();
            if (last.gen == g && last.sign == -sign) continue;
          }
          Node child;
          child.word = cur.word;
          child.word.letters.push_back(Letter{g, sign});
          const Word& s = symbol_values[static_cast<size_t>(g)];
          child.value = wmul(cur.value, sign > 0 ? s : winv(s));
          if (q->equal(child.value, goal)) return child.word;
          next.push_back(std::move(child));
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

} // namespace

RapaportResult rapaport_automorphism(OraclePtr q, const Alphabet& basis,
                                     const std::vector<Word>& phi_images,
                                     const std::vector<Word>& targets, int max_len) {
  if (!q) fail(ErrorKind::precondition, "missing quotient oracle");
  if (basis.size() % 2 != 0) fail(ErrorKind::precondition, "basis must have even rank");
  int m = basis.size() / 2;
  if (phi_images.size() != static_cast<size_t>(m) || targets.size() != static_cast<size_t>(m))
    fail(ErrorKind::precondition, "need one image and one target per designated generator");
  if (max_len < 0) fail(ErrorKind::precondition, "negative search budget");
  for (const Word& w : phi_images) check_range(w, q->alphabet().size(), "image");
  for (const Word& w : targets) check_range(w, q->alphabet().size(), "target");

  // phi on the basis: sigma_i -> phi_images[i], tau_i -> 1.
  auto phi = [&](const Word& w) {
    Word acc;
    for (const Letter& l : w.letters) {
      if (l.gen >= m) continue;
      const Word& s = phi_images[static_cast<size_t>(l.gen)];
      acc = wmul(acc, l.sign > 0 ? s : winv(s));
    }
    return acc;
  };

  NielsenRecord rec;
  rec.basis = basis;
  std::vector<Word> u(static_cast<size_t>(m)), v(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto ui = least_expression(q, phi_images, targets[static_cast<size_t>(i)], max_len);
    if (!ui)
      fail(ErrorKind::not_witnessed, "target not expressed in the images within the budget");
    u[static_cast<size_t>(i)] = *ui;
    auto vi = least_expression(q, targets, phi_images[static_cast<size_t>(i)], max_len);
    if (!vi)
      fail(ErrorKind::not_witnessed, "image not expressed in the targets within the budget");
    v[static_cast<size_t>(i)] = *vi;
  }

  // tau_i picks up the sigma-expression of its target.
  for (int i = 0; i < m; ++i)
    for (const Letter& l : u[static_cast<size_t>(i)].letters)
      rec.moves.push_back(NielsenMove{NielsenMove::right_mult, m + i, l.gen, l.sign});
  // sigma_i cancels against the updated tau slots.
  for (int i = 0; i < m; ++i) {
    const Word& vi = v[static_cast<size_t>(i)];
    for (auto it = vi.letters.rbegin(); it != vi.letters.rend(); ++it)
      rec.moves.push_back(NielsenMove{NielsenMove::right_mult, i, m + it->gen, -it->sign});
  }
  rec.validate();

  RapaportResult out;
  out.record = rec;
  out.images = nielsen_to_map(rec);
  for (int i = 0; i < m; ++i) {
    if (!q->is_trivial(phi(out.images.images[static_cast<size_t>(i)])))
      fail(ErrorKind::precondition, "automorphism failed its first postcondition");
    if (!q->equal(phi(out.images.images[static_cast<size_t>(m + i)]),
                  targets[static_cast<size_t>(i)]))
      fail(ErrorKind::precondition, "automorphism failed its second postcondition");
  }
  return out;
}

IsoWitness iso_witness(const GammaSpec& spec_n, const GammaSpec& spec_np, int budget) {
  spec_n.validate();
  spec_np.validate();
  if (!(spec_n.x == spec_np.x) || spec_n.m != spec_np.m ||
      !(spec_n.a_pres.gens == spec_np.a_pres.gens) || spec_n.a_pres.relators != spec_np.a_pres.relators ||
      !(spec_n.b_pres.gens == spec_np.b_pres.gens) || spec_n.b_pres.relators != spec_np.b_pres.relators)
    fail(ErrorKind::precondition, "family members must agree apart from the steering words");

  // Both steering sets must visibly generate the second factor.
  for (const GammaSpec* s : {&spec_n, &spec_np}) {
    for (int g = 0; g < s->b_pres.gens.size(); ++g) {
      Word goal{{Letter{g, 1}}};
      if (!least_expression(s->b_oracle, s->s_n, goal, budget))
        fail(ErrorKind::not_witnessed,
             "steering words do not visibly generate the factor within the budget");
    }
  }

  std::vector<std::string> f_names = spec_n.sigma_names;
  for (const std::string& n : spec_n.tau_names) f_names.push_back(n);
  Alphabet f_basis{f_names};
  RapaportResult rap =
      rapaport_automorphism(spec_n.b_oracle, f_basis, spec_n.s_n, spec_np.s_n, budget);
  GeneratorMap inv = nielsen_to_map(invert_record(rap.record));

  int m = spec_n.m;
  int ab = spec_n.ab_size();
  int xsize = spec_n.x.size();
  auto swap_roles = [m](const Word& w) {
    Word out = w;
    for (Letter& l : out.letters) l.gen = l.gen < m ? l.gen + m : l.gen - m;
    return out;
  };
  auto embed_f = [ab](const Word& w) { return shift_word(w, ab); };

  // Forward: swap the slot, then read the automorphism.  Backward: read the
  // inverse, then swap the letters.  The two compose to the identity.
  auto build_images = [&](const GeneratorMap& fmap, bool swap_slot, bool swap_letters) {
    std::vector<Word> images;
    for (int i = 0; i < ab; ++i) images.push_back(Word{{Letter{i, 1}}});
    for (int i = 0; i < 2 * m; ++i) {
      int slot = swap_slot ? (i < m ? m + i : i - m) : i;
      Word w = fmap.images[static_cast<size_t>(slot)];
      if (swap_letters) w = swap_roles(w);
      images.push_back(embed_f(w));
    }
    for (int i = 0; i < xsize; ++i) images.push_back(shift_word(images[static_cast<size_t>(i)], xsize));
    return images;
  };

  IsoWitness out;
  out.to_n.source = gamma_presentation(spec_np);
  out.to_n.target = equality_from_amalgam(gamma_double(spec_n));
  out.to_n.images.source = out.to_n.source.gens;
  out.to_n.images.target = out.to_n.source.gens;
  out.to_n.images.images = build_images(rap.images, true, false);
  out.to_n.validate();

  out.to_np.source = gamma_presentation(spec_n);
  out.to_np.target = equality_from_amalgam(gamma_double(spec_np));
  out.to_np.images.source = out.to_np.source.gens;
  out.to_np.images.target = out.to_np.source.gens;
  out.to_np.images.images = build_images(inv, false, true);
  out.to_np.validate();

  if (verify_iso_certificate(out.to_n, out.to_np) != Verdict::yes)
    fail(ErrorKind::not_witnessed, "isomorphism certificates failed verification");
  return out;
}

} // namespace gf

#include "gf/fibre.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "gf/error.hpp"

namespace gf {

PairWord pair_mul(const PairWord& a, const PairWord& b) {
  return {wmul(a.left, b.left), wmul(a.right, b.right)};
}

PairWord pair_inv(const PairWord& a) { return {winv(a.left), winv(a.right)}; }

bool pair_eq(const PairWord& a, const PairWord& b) {
  return free_reduce(a.left.letters) == free_reduce(b.left.letters) &&
         free_reduce(a.right.letters) == free_reduce(b.right.letters);
}

std::string pair_to_string(const Alphabet& a, const PairWord& p) {
  return "[" + word_to_string(a, p.left) + " | " + word_to_string(a, p.right) + "]";
}

std::vector<PairWord> fibre_product_generators(const FinitePresentation& p) {
  p.validate();
  std::vector<PairWord> out;
  for (int g = 0; g < p.gens.size(); ++g) {
    Word w{{Letter{g, 1}}};
    out.push_back({w, w});
  }
  for (const Word& r : p.relators) out.push_back({free_reduce(r.letters), Word{}});
  return out;
}

Alphabet fibre_alphabet(const FinitePresentation& p, const std::string& prefix) {
  p.validate();
  std::vector<std::string> names;
  size_t k = static_cast<size_t>(p.gens.size()) + p.relators.size();
  for (size_t i = 1; i <= k; ++i) names.push_back(prefix + std::to_string(i));
  return Alphabet{names};
}

PairWord fibre_eval(const FinitePresentation& p, const Word& expr) {
  auto gens = fibre_product_generators(p);
  PairWord acc;
  for (const Letter& l : expr.letters) {
    if (l.gen < 0 || static_cast<size_t>(l.gen) >= gens.size())
      fail(ErrorKind::precondition, "expression letter outside the symbol alphabet");
    PairWord g = gens[static_cast<size_t>(l.gen)];
    if (l.sign < 0) g = pair_inv(g);
    acc = pair_mul(acc, g);
  }
  return acc;
}

PairWord fibre_membership_instance(const Word& w) { return {free_reduce(w.letters), Word{}}; }

std::optional<Word> fibre_express(const FinitePresentation& p, const PairWord& target,
                                  int max_symbols, size_t cap) {
  if (max_symbols < 0) fail(ErrorKind::precondition, "negative expression budget");
  auto gens = fibre_product_generators(p);
  PairWord goal{free_reduce(target.left.letters), free_reduce(target.right.letters)};

  auto key = [&](const PairWord& pw) {
    return word_key(pw.left) + "|" + word_key(pw.right);
  };

  struct Node {
    PairWord value;
    Word expr;
  };
  std::deque<Node> frontier;
  std::unordered_set<std::string> seen;
  frontier.push_back({PairWord{}, Word{}});
  seen.insert(key(PairWord{}));
  if (pair_eq(PairWord{}, goal)) return Word{};

  for (int depth = 0; depth < max_symbols; ++depth) {
    size_t level = frontier.size();
    if (level == 0) break;
    for (size_t i = 0; i < level; ++i) {
      Node cur = frontier.front();
      frontier.pop_front();
      for (size_t g = 0; g < gens.size(); ++g) {
        for (int sign : {1, -1}) {
          PairWord step = sign > 0 ? gens[g] : pair_inv(gens[g]);
          PairWord next{wmul(cur.value.left, step.left),
                        wmul(cur.value.right, step.right)};
          std::string k = key(next);
          if (!seen.insert(k).second) continue;
          if (seen.size() > cap)
            fail(ErrorKind::resource, "expression search exceeded its state cap");
          Word expr = cur.expr;
          expr.letters.push_back(Letter{static_cast<int>(g), sign});
          if (pair_eq(next, goal)) return expr;
          frontier.push_back({next, expr});
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

// Symbol index and orientation expressing the pair (c, 1) for a killed
// letter c, derived from the first relator equal to c or its inverse.
struct KilledSymbol {
  int symbol;
  int sign;
};

std::unordered_map<int, KilledSymbol> killed_symbols(const FinitePresentation& p) {
  std::unordered_map<int, KilledSymbol> out;
  for (size_t i = 0; i < p.relators.size(); ++i) {
    const Word r = free_reduce(p.relators[i].letters);
    if (r.letters.size() != 1)
      fail(ErrorKind::unsupported, "constructive expression needs single-letter relators");
    const Letter& l = r.letters[0];
    int symbol = p.gens.size() + static_cast<int>(i);
    if (!out.count(l.gen)) out[l.gen] = {symbol, l.sign};
  }
  return out;
}

// Diagonal spelling: each base letter as its own symbol.
void append_diagonal(Word& expr, const Word& w) {
  for (const Letter& l : w.letters) expr.letters.push_back(l);
}

} // namespace

std::optional<Word> constructive_express(const FinitePresentation& p, const PairWord& target) {
  p.validate();
  auto killed = killed_symbols(p);

  Word v = wmul(free_reduce(target.left.letters), winv(free_reduce(target.right.letters)));
  Word expr;
  while (true) {
    size_t at = v.letters.size();
    for (size_t i = 0; i < v.letters.size(); ++i) {
      if (killed.count(v.letters[i].gen)) {
        at = i;
        break;
      }
    }
    if (at == v.letters.size()) break;
    Word prefix;
    prefix.letters.assign(v.letters.begin(), v.letters.begin() + at);
    Letter c = v.letters[at];
    const KilledSymbol& ks = killed.at(c.gen);
    append_diagonal(expr, prefix);
    expr.letters.push_back(Letter{ks.symbol, c.sign * ks.sign});
    append_diagonal(expr, winv(prefix));
    Word rest;
    rest.letters.assign(v.letters.begin() + at + 1, v.letters.end());
    v = wmul(prefix, rest);
  }
  if (!v.letters.empty()) return std::nullopt;
  append_diagonal(expr, free_reduce(target.right.letters));
  Word out = free_reduce(expr.letters);
  PairWord check = fibre_eval(p, out);
  if (!pair_eq(check, target))
    fail(ErrorKind::precondition, "constructed expression failed its own check");
  return out;
}

NormalizedPresentation normalize_for_centralizer(const FinitePresentation& p) {
  p.validate();
  std::string fresh = "z";
  for (int n = 0; p.gens.has(fresh); ++n) fresh = "z" + std::to_string(n);
  std::vector<std::string> names = p.gens.names();
  names.push_back(fresh);
  FinitePresentation out;
  out.gens = Alphabet{names};
  out.relators = p.relators;
  out.relators.push_back(Word{{Letter{p.gens.size(), 1}}});
  out.validate();
  return {out, fresh};
}

} // namespace gf

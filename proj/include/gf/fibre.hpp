#ifndef GF_FIBRE_HPP
#define GF_FIBRE_HPP

#include <optional>
#include <string>
#include <vector>

#include "gf/presentation.hpp"
#include "gf/word.hpp"

namespace gf {

// Element of F x F over one base alphabet; coordinates multiply independently.
struct PairWord {
  Word left, right;
  bool empty() const { return left.empty() && right.empty(); }
};

PairWord pair_mul(const PairWord& a, const PairWord& b);
PairWord pair_inv(const PairWord& a);
bool pair_eq(const PairWord& a, const PairWord& b);
std::string pair_to_string(const Alphabet& a, const PairWord& p);

// Generating set of the fibre subgroup attached to a presentation: one
// diagonal pair per generator, then one (relator, 1) pair per relator.
std::vector<PairWord> fibre_product_generators(const FinitePresentation& p);

// Symbol alphabet naming those generators in order: prefix1..prefixK.
Alphabet fibre_alphabet(const FinitePresentation& p, const std::string& prefix = "x");

// Value of a word over the symbol alphabet as a pair.
PairWord fibre_eval(const FinitePresentation& p, const Word& expr);

// Membership of w in the normal closure of the relators turns into
// membership of (w, 1) in the fibre subgroup.
PairWord fibre_membership_instance(const Word& w);

// Breadth-first expression search over the symbol alphabet; empty optional
// once max_symbols is exhausted.
std::optional<Word> fibre_express(const FinitePresentation& p, const PairWord& target,
                                  int max_symbols, size_t cap = 200000);

// Exact expression when every relator is a single generator letter: peel
// killed letters off left*right^-1 as conjugated relator symbols, then spell
// the right coordinate diagonally.  Empty optional when the pair lies
// outside the subgroup.
std::optional<Word> constructive_express(const FinitePresentation& p, const PairWord& target);

// Same group with a fresh generator adjoined and immediately killed; the
// fresh diagonal then has a visible centralizer inside the fibre subgroup.
struct NormalizedPresentation {
  FinitePresentation pres;
  std::string fresh;
};
NormalizedPresentation normalize_for_centralizer(const FinitePresentation& p);

} // namespace gf

#endif

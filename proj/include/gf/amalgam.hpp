#ifndef GF_AMALGAM_HPP
#define GF_AMALGAM_HPP

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gf/genmap.hpp"
#include "gf/oracle.hpp"
#include "gf/word.hpp"

namespace gf {

enum class Side { left, right };

inline Side other_side(Side s) { return s == Side::left ? Side::right : Side::left; }

// Syllable of an amalgam element; w is a word over the tagged factor's own
// alphabet and is kept factor-canonical inside reduced elements.
struct Syllable {
  Side side;
  Word w;
};

// Reduced form: empty, or a single syllable (possibly an edge element,
// normalized to the left tag), or alternating tags with every syllable
// outside the edge subgroup.
struct AmalgamElement {
  std::vector<Syllable> syllables;
  bool is_identity() const { return syllables.empty(); }
  size_t size() const { return syllables.size(); }
};

// Answer of an instance-installed edge-conjugacy solver: a left-factor word
// for an edge element c with c*from*c^-1 = to, or a proof that none exists.
// Solvers may also decline (neither field set).
struct EdgeSolution {
  std::optional<Word> conjugator_left;
  bool definite_no = false;
};

using EdgeSolver =
    std::function<EdgeSolution(const std::vector<Syllable>& from, const std::vector<Syllable>& to)>;

// Amalgamated free product of the two factor oracles over a common edge
// subgroup, or a double when both factors are one oracle.  Words over
// `combined` use left factor names first, then right names (bar-suffixed for
// doubles).  The edge subgroup is given by membership predicates and a
// transfer map; a finite edge additionally carries its element list, which
// unlocks the exhaustive search modes.
struct AmalgamSpec {
  OraclePtr left, right;
  Alphabet combined;
  bool is_double = false;
  std::function<bool(Side, const Word&)> edge_member;
  // Defined exactly on edge elements; result is a word on the other side.
  std::function<Word(Side, const Word&)> transfer;
  // Finite edge subgroups only: each entry is {left word, right word}.
  std::optional<std::vector<std::array<Word, 2>>> edge_elements;
  // Semi-decision hooks for infinite edge subgroups.
  std::function<std::vector<Word>(int budget)> edge_enumerator; // left words
  EdgeSolver edge_solver;

  const GroupOracle& factor(Side s) const { return s == Side::left ? *left : *right; }
  int left_size() const { return left->alphabet().size(); }
  bool has_finite_edge() const { return edge_elements.has_value(); }
  void validate() const;
};

AmalgamSpec make_double(OraclePtr factor, std::function<bool(const Word&)> h_member,
                        std::optional<std::vector<Word>> edge_elements = std::nullopt);

// Edge group embeds into both factors via generator images; embeddings are
// checked to be injective homomorphisms (exhaustively, tables are small).
AmalgamSpec make_finite_amalgam(FiniteGroupTable left, FiniteGroupTable right,
                                FiniteGroupTable edge, const std::vector<Word>& embed_left,
                                const std::vector<Word>& embed_right);

// Splits a combined-alphabet word into maximal one-sided runs.
std::vector<Syllable> word_syllables(const AmalgamSpec& spec, const Word& w);
Word element_word(const AmalgamSpec& spec, const AmalgamElement& e);

AmalgamElement amalgam_reduce_raw(const AmalgamSpec& spec, const std::vector<Syllable>& raw);
AmalgamElement amalgam_reduce(const AmalgamSpec& spec, const Word& combined_word);
AmalgamElement amalgam_inverse(const AmalgamElement& e);
AmalgamElement amalgam_multiply(const AmalgamSpec& spec, const AmalgamElement& a,
                                const AmalgamElement& b);

bool amalgam_equal(const AmalgamSpec& spec, const Word& u, const Word& v);
bool amalgam_equal_elements(const AmalgamSpec& spec, const AmalgamElement& a,
                            const AmalgamElement& b);

// e = conjugator * core * conjugator^-1 with core cyclically reduced:
// either at most one syllable, or first and last tags differ.
struct AmalgamCyclicReduction {
  AmalgamElement core;
  AmalgamElement conjugator;
};
AmalgamCyclicReduction amalgam_cyclic_reduce(const AmalgamSpec& spec, const AmalgamElement& e);

// Shortlex-least representative word per distinct element of length <=
// radius over the combined alphabet, in shortlex order.  Exact dedup uses
// the finite edge list (coset fingerprints plus in-bucket equality), so a
// finite edge subgroup is required.
struct AmalgamBall {
  int radius = 0;
  std::vector<Word> reps;
  std::vector<AmalgamElement> elements;
};
AmalgamBall amalgam_ball(const AmalgamSpec& spec, int radius, size_t cap = 500000);

// Finite edge: exhaustive scan of the radius ball, shortlex-least witness.
// Infinite edge: semi-decision driven by the cyclic normal form structure;
// a returned witness is always re-verified but may be longer than `radius`,
// and `definite_no` is set only when the structure theorem rules conjugacy
// out globally (or an installed solver proves it).
struct ConjugatorSearchResult {
  std::optional<Word> witness;
  bool definite_no = false;
};
ConjugatorSearchResult conjugator_search(const AmalgamSpec& spec, const Word& u, const Word& v,
                                         int radius, const AmalgamBall* cached = nullptr);

// Ball elements commuting with every word in S.
std::vector<Word> centralizer_ball(const AmalgamSpec& spec, const std::vector<Word>& s,
                                   int radius, const AmalgamBall* cached = nullptr);

// Conjugacy criterion for length-2 elements ab, a'b': some edge element c
// with c(ab)c^-1 = a'b' exists iff a BFS conjugator exists.
struct ConjAbReport {
  bool inputs_valid = false;
  std::string reason;
  bool exists_c = false;
  std::optional<Word> c_witness; // left-factor word
  bool bfs_found = false;
  std::optional<Word> bfs_witness;
  bool pass = false;
};
ConjAbReport check_conj_ab(const AmalgamSpec& spec, const Word& a, const Word& a2, const Word& b,
                           const Word& b2, int radius, const AmalgamBall* cached = nullptr);

// In the double of (A*B)xQ along {(phi(q), q)}: ker phi centralizes A, A^b,
// and both bar copies, and Q meets its bar copy exactly in ker phi.
// Hypotheses (no nontrivial hom A->Q, no copy of A inside B, phi a
// homomorphism) are checked exhaustively first; a failure is reported, not
// thrown.
struct KerphiReport {
  bool hypotheses_ok = false;
  std::string hypothesis_failure;
  std::vector<int> ker_elements; // Q element indices
  bool centralize_ok = false;
  std::vector<std::string> centralize_failures;
  bool intersection_ok = false;
  std::vector<int> q_cap_qbar; // Q element indices found in the bar copy
  bool pass = false;
};
KerphiReport check_kerphi_characteristic(FiniteGroupTable a, FiniteGroupTable b,
                                         FiniteGroupTable q, const GeneratorMap& phi, int radius);

} // namespace gf

#endif

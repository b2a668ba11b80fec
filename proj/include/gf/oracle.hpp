#ifndef GF_ORACLE_HPP
#define GF_ORACLE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gf/word.hpp"

namespace gf {

// Finite group as a multiplication table with designated generators.
// Group axioms are checked at construction time.
struct FiniteGroupTable {
  int order = 1;
  std::vector<std::vector<int>> mult;
  std::vector<std::pair<std::string, int>> gens; // name -> element index
  int identity = 0;
  std::vector<int> inverse;

  void validate();
  int mul(int a, int b) const { return mult[static_cast<size_t>(a)][static_cast<size_t>(b)]; }

  static FiniteGroupTable parse(const std::string& text);
  std::string serialize() const;
};

FiniteGroupTable cyclic_table(int n, const std::string& gen_name);
// gens: transposition and 3-cycle.
FiniteGroupTable s3_table(const std::string& transposition_name, const std::string& threecycle_name);
// Order 2n; designated generators are two reflections, so the subgroup they
// generate is all of D_n and small balls agree with the free product Z2 * Z2.
FiniteGroupTable dihedral_table(int n, const std::string& c_name, const std::string& d_name);

// Shortlex-least word (over the table's generator alphabet) per element,
// empty optional for elements outside the subgroup the generators reach.
std::vector<std::optional<Word>> table_canonical_words(const FiniteGroupTable& t);
bool table_generators_generate(const FiniteGroupTable& t);

// Alphabet of the table's designated generator names.
Alphabet table_alphabet(const FiniteGroupTable& t);
// Evaluate a word over the generator alphabet to an element index.
int table_eval(const FiniteGroupTable& t, const Word& w);

// Element maps Q -> B preserving multiplication.  Determined by generator
// images, checked exhaustively; tables stay desk-sized.
std::vector<std::vector<int>> all_table_homomorphisms(const FiniteGroupTable& from,
                                                      const FiniteGroupTable& to);
bool exists_nontrivial_hom(const FiniteGroupTable& from, const FiniteGroupTable& to);
bool exists_embedded_copy(const FiniteGroupTable& sub, const FiniteGroupTable& host);

// Word-problem oracle for one of the supported group kinds.  canonical()
// returns the shortlex-least representative word, which for every kind here
// is also geodesic in the oracle's generating set.
class GroupOracle {
public:
  virtual ~GroupOracle() = default;
  const Alphabet& alphabet() const { return alph_; }
  virtual bool is_trivial(const Word& w) const = 0;
  virtual Word canonical(const Word& w) const = 0;
  bool equal(const Word& u, const Word& v) const { return is_trivial(wmul(u, winv(v))); }

protected:
  explicit GroupOracle(Alphabet a) : alph_(std::move(a)) {}
  Alphabet alph_;
};

using OraclePtr = std::shared_ptr<const GroupOracle>;

OraclePtr make_free_oracle(Alphabet a);
OraclePtr make_finite_oracle(FiniteGroupTable t);
// Component alphabets must be disjoint; letters keep their side.
OraclePtr make_direct_product(OraclePtr left, OraclePtr right);
OraclePtr make_free_product(OraclePtr left, OraclePtr right);
// Free group on `a` modulo killing the listed generators.
OraclePtr make_kill_generators(Alphabet a, const std::vector<std::string>& killed);

// For product oracles: number of generators belonging to the left factor
// (0 when the oracle is not a product).  Used to split words by side.
int product_left_size(const GroupOracle& o);

// Shortlex-least representatives of all elements of word length <= radius,
// in shortlex order.  Dedup is by canonical representative word.
std::vector<Word> ball_enumerate(const GroupOracle& o, int radius, size_t cap = 200000);

// Exact word-metric distance between elements given by representatives.
int oracle_distance(const GroupOracle& o, const Word& u, const Word& v);

} // namespace gf

#endif

#ifndef GF_WORD_HPP
#define GF_WORD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gf/error.hpp"

namespace gf {

// Ordered list of distinct generator names.  Names are non-empty strings
// over [a-z0-9_]; the list order induces the shortlex order on words.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& names() const { return names_; }
  // -1 when absent.
  int index_of(const std::string& name) const;
  bool has(const std::string& name) const { return index_of(name) >= 0; }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }

  static bool valid_name(const std::string& s);

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

struct Letter {
  int32_t gen = 0;  // index into an Alphabet
  int32_t sign = 1; // +1 or -1

  bool operator==(const Letter& o) const { return gen == o.gen && sign == o.sign; }
  bool operator!=(const Letter& o) const { return !(*this == o); }
  Letter inverse() const { return Letter{gen, -sign}; }
  // Position in the letter order g0 < g0^-1 < g1 < g1^-1 < ...
  int order_key() const { return gen * 2 + (sign < 0 ? 1 : 0); }
};

// Freely reduced word.  All constructors and operations below maintain the
// no-adjacent-cancellation invariant.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator!=(const Word& o) const { return !(*this == o); }
};

// Cancels adjacent inverse pairs until none remain.
Word free_reduce(const std::vector<Letter>& letters);

Word winv(const Word& w);
// Reduced concatenation.
Word wmul(const Word& a, const Word& b);
Word wmul(const Word& a, const Word& b, const Word& c);
// w conjugated: g w g^-1.
Word wconj(const Word& g, const Word& w);
Word wpow(const Word& w, int k);

struct CyclicReduction {
  Word core;       // cyclically reduced
  Word conjugator; // input == conjugator * core * conjugator^-1
};
CyclicReduction cyclic_reduce(const Word& w);

bool is_cyclically_reduced(const Word& w);

// Shortlex: shorter first, ties by the letter order of Letter::order_key.
bool shortlex_less(const Word& a, const Word& b);

// Alphabet-independent key for hashing words.
std::string word_key(const Word& w);

// Tokens separated by whitespace; `name` or `name^-1`; empty word is `1`.
std::string word_to_string(const Alphabet& a, const Word& w);
// Rejects unknown generators and malformed tokens.
Word parse_word(const Alphabet& a, const std::string& text);

// Exponent sum of the given generator.
int exponent_sum(const Word& w, int gen);

// Shortest r with w = r^k; input must be cyclically reduced and nonempty.
Word primitive_root(const Word& w);

// g with g u g^-1 = v in the free group, empty optional when u and v are
// not conjugate.
std::optional<Word> free_conjugator(const Word& u, const Word& v);

// Generator of the centralizer of w, i.e. the primitive root of w up to
// conjugacy; empty optional when w is trivial (whole group centralizes).
std::optional<Word> centralizer_generator(const Word& w);

} // namespace gf

#endif

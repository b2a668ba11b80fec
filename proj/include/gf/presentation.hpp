#ifndef GF_PRESENTATION_HPP
#define GF_PRESENTATION_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gf/genmap.hpp"
#include "gf/oracle.hpp"
#include "gf/word.hpp"

namespace gf {

struct FinitePresentation {
  Alphabet gens;
  std::vector<Word> relators; // freely reduced, nonempty

  void validate() const;
};

// Text form: '#' comments, one 'gens:' line, then 'rel:' lines.
// Errors carry 1-based line numbers.
FinitePresentation parse_presentation(const std::string& text);
std::string serialize_presentation(const FinitePresentation& p);

// Word-problem backend a certificate is checked against.  May answer
// `undecided` when its budget runs out; that is never conflated with `no`.
class EqualityOracle {
public:
  virtual ~EqualityOracle() = default;
  virtual const Alphabet& alphabet() const = 0;
  virtual Verdict is_trivial(const Word& w) const = 0;
};

using EqualityPtr = std::shared_ptr<const EqualityOracle>;

EqualityPtr equality_from_oracle(OraclePtr o);

// Claimed homomorphism source -> target, given on generators.
struct HomCertificate {
  FinitePresentation source;
  EqualityPtr target;
  GeneratorMap images; // source.gens -> target alphabet

  void validate() const;
};

// yes: every relator image is trivial.  no: some image is provably
// nontrivial.  undecided: no failures, but some check hit the budget.
Verdict verify_hom_certificate(const HomCertificate& c);

// Two-sided witness: forward and backward certificates whose compositions
// fix every generator up to the respective equality oracle.
Verdict verify_iso_certificate(const HomCertificate& fwd, const HomCertificate& bwd);

// Repeats the last element until the set has m entries.
std::vector<Word> pad_generating_set(const std::vector<Word>& s, int m);

struct SequenceSource {
  std::string name;
  std::function<FinitePresentation(int)> at;
  // Ground truth about triviality when known.
  std::function<std::optional<bool>(int)> trivial_truth;
};

// Kinds: toy-trivial, toy-infinite, alternating.
SequenceSource make_sequence_source(const std::string& kind);
// Blocks separated by '---' lines, each an optional 'truth:' line followed by
// a presentation; at(n) cycles through the blocks.  All blocks must share the
// alphabet and relator count (pad relators to equalize).
SequenceSource make_file_sequence_source(const std::string& text);

} // namespace gf

#endif

#ifndef GF_RIPS_HPP
#define GF_RIPS_HPP

#include <string>
#include <vector>

#include "gf/presentation.hpp"
#include "gf/word.hpp"

namespace gf {

// Exact nonnegative fraction.
struct Ratio {
  long long num = 0;
  long long den = 1;
};
bool ratio_less(const Ratio& a, const Ratio& b);
std::string ratio_to_string(const Ratio& r);

struct CancellationReport {
  Ratio lambda;               // max piece length / min relator length
  long long max_piece = 0;
  long long min_relator_length = 0;
  size_t symmetrized_size = 0; // distinct cyclic rotations counted
  bool meets_sixth = false;    // lambda < 1/6
};

// Metric small-cancellation ratio of the symmetrized closure of the given
// relators.  A piece is a common prefix of two distinct elements of the
// closure.  Relators must be cyclically reduced, nonempty, and not proper
// powers.
CancellationReport small_cancellation_ratio(const std::vector<Word>& relators);

struct RipsOutput {
  FinitePresentation pres;
  int k = 0;            // segments per padding word
  std::string x1, x2;   // the two fresh generators
  CancellationReport report;
  bool certified = false; // report.meets_sixth
};

extern const int rips_default_k;

// Pads a presentation into one with two extra generators whose relators are
// long aperiodic words: each original generator conjugates the fresh ones
// into the fresh subgroup, and each original relator dies there.  Produces
// size + 2 generators and 4*size + relator-count relators.
RipsOutput rips_construction(const FinitePresentation& p, int k = rips_default_k);

} // namespace gf

#endif

#ifndef GF_GENMAP_HPP
#define GF_GENMAP_HPP

#include <vector>

#include "gf/word.hpp"

namespace gf {

// Homomorphism between free groups, given by generator images.
struct GeneratorMap {
  Alphabet source;
  Alphabet target;
  std::vector<Word> images; // one per source generator

  void validate() const;
};

GeneratorMap identity_map(const Alphabet& a);
Word apply_map(const GeneratorMap& m, const Word& w);
// compose(f, g): first g, then f.  Requires g.target == f.source.
GeneratorMap compose_maps(const GeneratorMap& f, const GeneratorMap& g);

// Elementary Nielsen moves over a fixed basis.  A record is a sequence of
// moves; each move is invertible, so records induce automorphisms.
struct NielsenMove {
  enum Kind { swap_gens, invert_gen, right_mult } kind;
  int i = 0;
  int j = 0;    // unused for invert_gen
  int sign = 1; // right_mult only: x_i := x_i * x_j^sign

  bool operator==(const NielsenMove& o) const {
    return kind == o.kind && i == o.i && j == o.j && sign == o.sign;
  }
};

struct NielsenRecord {
  Alphabet basis;
  std::vector<NielsenMove> moves;

  void validate() const;
};

// Images are updated in place move by move, so the induced automorphism is
// move_1 composed after ... after move_k applied to the identity images;
// nielsen_to_map(invert_record(r)) is its two-sided inverse.
GeneratorMap nielsen_to_map(const NielsenRecord& r);
NielsenRecord invert_record(const NielsenRecord& r);
NielsenRecord concat_records(const NielsenRecord& a, const NielsenRecord& b);

} // namespace gf

#endif

#ifndef GF_FOLDING_HPP
#define GF_FOLDING_HPP

#include <optional>
#include <vector>

#include "gf/word.hpp"

namespace gf {

// Folded core graph of a finitely generated subgroup of a free group.
// States are renumbered canonically (BFS from the base over edge labels in
// order), so structural equality compares subgroups of a fixed free group.
struct SubgroupGraph {
  Alphabet alphabet;
  int n_states = 1;
  int base = 0;
  // out[s][g]: target of the g-labeled edge leaving s, or -1.
  // in[s][g]: source of the g-labeled edge entering s, or -1.
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;

  int edge_count() const;
  // Spanning-tree rank of the core graph: edges - states + 1.
  int rank() const;
  bool is_full_group() const { return n_states == 1 && edge_count() == alphabet.size(); }
  bool operator==(const SubgroupGraph& o) const;
};

SubgroupGraph fold_subgroup(const Alphabet& a, const std::vector<Word>& generators);
bool subgroup_member(const SubgroupGraph& g, const Word& w);
// Freely reduced subgroup elements of length <= max_len, in shortlex order.
std::vector<Word> subgroup_elements(const SubgroupGraph& g, int max_len,
                                    size_t cap = 1u << 22);

} // namespace gf

#endif

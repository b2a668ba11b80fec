#ifndef GF_COMBING_HPP
#define GF_COMBING_HPP

#include <functional>
#include <optional>

#include "gf/oracle.hpp"

namespace gf {

// Maps a shortlex-least representative to the combing path word for that
// element; nullopt means the combing is not defined there.
using Combing = std::function<std::optional<Word>(const Word& representative)>;

// Empirical synchronous fellow-traveller constant over the ball of the given
// radius: max over ball elements g, positive generators a, and times t of
// d(path_g(t), path_ga(t)), where a path sits at its endpoint once finished.
// Throws an incomplete-combing error if a required normal form is missing.
int fellow_traveller_bound(const GroupOracle& o, const Combing& combing, int radius,
                           size_t cap = 200000);

// Combing by the representatives themselves (reduced words for free groups,
// coordinate-sorted forms for products).
Combing canonical_combing();

} // namespace gf

#endif

#include "gf/combing.hpp"

#include <algorithm>

namespace gf {

namespace {

Word prefix(const Word& w, size_t t) {
  if (t >= w.size()) return w;
  return Word(std::vector<Letter>(w.letters.begin(), w.letters.begin() + static_cast<long>(t)));
}

} // namespace

int fellow_traveller_bound(const GroupOracle& o, const Combing& combing, int radius, size_t cap) {
  std::vector<Word> ball = ball_enumerate(o, radius, cap);
  auto path_of = [&](const Word& rep) {
    std::optional<Word> p = combing(rep);
    if (!p)
      fail(ErrorKind::incomplete_combing,
           "combing undefined for element '" + word_key(rep) + "'");
    return *p;
  };
  int k = 0;
  for (const Word& rep : ball) {
    Word pg = path_of(rep);
    for (int gen = 0; gen < o.alphabet().size(); ++gen) {
      Word neighbor = o.canonical(wmul(rep, Word({Letter{gen, 1}})));
      Word ph = path_of(neighbor);
      size_t tmax = std::max(pg.size(), ph.size());
      for (size_t t = 0; t <= tmax; ++t) {
        int d = oracle_distance(o, prefix(pg, t), prefix(ph, t));
        k = std::max(k, d);
      }
    }
  }
  return k;
}

Combing canonical_combing() {
  return [](const Word& rep) { return std::optional<Word>(rep); };
}

} // namespace gf

#include "gf/genmap.hpp"

#include <algorithm>

namespace gf {

void GeneratorMap::validate() const {
  if (static_cast<int>(images.size()) != source.size())
    fail(ErrorKind::malformed_input, "generator map needs one image per source generator");
  for (const Word& w : images)
    for (const Letter& l : w.letters)
      if (l.gen < 0 || l.gen >= target.size())
        fail(ErrorKind::malformed_input, "image letter outside target alphabet");
}

GeneratorMap identity_map(const Alphabet& a) {
  GeneratorMap m;
  m.source = a;
  m.target = a;
  for (int i = 0; i < a.size(); ++i)
    m.images.push_back(Word({Letter{i, 1}}));
  return m;
}

Word apply_map(const GeneratorMap& m, const Word& w) {
  Word out;
  for (const Letter& l : w.letters) {
    const Word& img = m.images[static_cast<size_t>(l.gen)];
    out = wmul(out, l.sign > 0 ? img : winv(img));
  }
  return out;
}

GeneratorMap compose_maps(const GeneratorMap& f, const GeneratorMap& g) {
  if (g.target != f.source)
    fail(ErrorKind::precondition, "compose_maps: inner target must match outer source");
  GeneratorMap out;
  out.source = g.source;
  out.target = f.target;
  for (const Word& w : g.images)
    out.images.push_back(apply_map(f, w));
  return out;
}

void NielsenRecord::validate() const {
  int n = basis.size();
  for (const NielsenMove& m : moves) {
    bool ok = m.i >= 0 && m.i < n;
    if (m.kind != NielsenMove::invert_gen)
      ok = ok && m.j >= 0 && m.j < n && m.i != m.j;
    if (m.kind == NielsenMove::right_mult)
      ok = ok && (m.sign == 1 || m.sign == -1);
    if (!ok)
      fail(ErrorKind::malformed_input, "invalid Nielsen move for basis");
  }
}

GeneratorMap nielsen_to_map(const NielsenRecord& r) {
  r.validate();
  GeneratorMap m = identity_map(r.basis);
  for (const NielsenMove& mv : r.moves) {
    switch (mv.kind) {
      case NielsenMove::swap_gens:
        std::swap(m.images[static_cast<size_t>(mv.i)], m.images[static_cast<size_t>(mv.j)]);
        break;
      case NielsenMove::invert_gen:
        m.images[static_cast<size_t>(mv.i)] = winv(m.images[static_cast<size_t>(mv.i)]);
        break;
      case NielsenMove::right_mult: {
        const Word& yj = m.images[static_cast<size_t>(mv.j)];
        Word& yi = m.images[static_cast<size_t>(mv.i)];
        yi = wmul(yi, mv.sign > 0 ? yj : winv(yj));
        break;
      }
    }
  }
  return m;
}

NielsenRecord invert_record(const NielsenRecord& r) {
  NielsenRecord out;
  out.basis = r.basis;
  for (auto it = r.moves.rbegin(); it != r.moves.rend(); ++it) {
    NielsenMove m = *it;
    if (m.kind == NielsenMove::right_mult) m.sign = -m.sign;
    out.moves.push_back(m);
  }
  return out;
}

NielsenRecord concat_records(const NielsenRecord& a, const NielsenRecord& b) {
  if (a.basis != b.basis)
    fail(ErrorKind::precondition, "concat_records: basis mismatch");
  NielsenRecord out = a;
  out.moves.insert(out.moves.end(), b.moves.begin(), b.moves.end());
  return out;
}

} // namespace gf

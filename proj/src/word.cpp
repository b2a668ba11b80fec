#include "gf/word.hpp"

#include <sstream>

namespace gf {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (!valid_name(names_[i]))
      fail(ErrorKind::malformed_input, "invalid generator name '" + names_[i] + "'");
    auto [it, fresh] = index_.emplace(names_[i], static_cast<int>(i));
    (void)it;
    if (!fresh)
      fail(ErrorKind::malformed_input, "duplicate generator '" + names_[i] + "'");
  }
}

int Alphabet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

bool Alphabet::valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  return true;
}

Word free_reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.sign != 1 && l.sign != -1)
      fail(ErrorKind::malformed_input, "letter sign must be +1 or -1");
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word winv(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.push_back(it->inverse());
  return Word(std::move(out));
}

Word wmul(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters;
  for (const Letter& l : b.letters) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word wmul(const Word& a, const Word& b, const Word& c) { return wmul(wmul(a, b), c); }

Word wconj(const Word& g, const Word& w) { return wmul(wmul(g, w), winv(g)); }

Word wpow(const Word& w, int k) {
  Word base = k < 0 ? winv(w) : w;
  int n = k < 0 ? -k : k;
  Word out;
  for (int i = 0; i < n; ++i) out = wmul(out, base);
  return out;
}

CyclicReduction cyclic_reduce(const Word& w) {
  CyclicReduction r;
  std::vector<Letter> core = w.letters;
  std::vector<Letter> conj;
  while (core.size() >= 2 && core.front() == core.back().inverse()) {
    conj.push_back(core.front());
    core.erase(core.begin());
    core.pop_back();
  }
  r.core = Word(std::move(core));
  r.conjugator = Word(std::move(conj));
  return r;
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || w.letters.front() != w.letters.back().inverse();
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int ka = a.letters[i].order_key(), kb = b.letters[i].order_key();
    if (ka != kb) return ka < kb;
  }
  return false;
}

std::string word_key(const Word& w) {
  std::string k;
  k.reserve(w.size() * 3);
  for (const Letter& l : w.letters) {
    k += std::to_string(l.gen);
    k += l.sign > 0 ? '+' : '-';
  }
  return k;
}

std::string word_to_string(const Alphabet& a, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    const Letter& l = w.letters[i];
    if (l.gen < 0 || l.gen >= a.size())
      fail(ErrorKind::malformed_input, "letter index out of range for alphabet");
    if (i) out += ' ';
    out += a.name(l.gen);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

Word parse_word(const Alphabet& a, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::vector<Letter> letters;
  bool saw_one = false, saw_gen = false;
  while (in >> tok) {
    if (tok == "1") {
      saw_one = true;
      continue;
    }
    saw_gen = true;
    int sign = 1;
    std::string name = tok;
    if (auto pos = tok.find('^'); pos != std::string::npos) {
      if (tok.substr(pos) != "^-1")
        fail(ErrorKind::malformed_input, "bad token '" + tok + "' (only ^-1 allowed)");
      name = tok.substr(0, pos);
      sign = -1;
    }
    int idx = a.index_of(name);
    if (idx < 0)
      fail(ErrorKind::malformed_input, "unknown generator '" + name + "'");
    letters.push_back(Letter{idx, sign});
  }
  if (saw_one && saw_gen)
    fail(ErrorKind::malformed_input, "'1' cannot be mixed with generator tokens");
  return free_reduce(letters);
}

int exponent_sum(const Word& w, int gen) {
  int s = 0;
  for (const Letter& l : w.letters)
    if (l.gen == gen) s += l.sign;
  return s;
}

Word primitive_root(const Word& w) {
  if (w.empty()) fail(ErrorKind::precondition, "primitive root of the empty word");
  if (!is_cyclically_reduced(w))
    fail(ErrorKind::precondition, "primitive root needs a cyclically reduced word");
  size_t n = w.size();
  for (size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (size_t i = 0; i + d < n && periodic; ++i)
      periodic = w.letters[i] == w.letters[i + d];
    if (periodic) {
      Word r;
      r.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<long>(d));
      return r;
    }
  }
  return w;
}

std::optional<Word> free_conjugator(const Word& u, const Word& v) {
  CyclicReduction cu = cyclic_reduce(free_reduce(u.letters));
  CyclicReduction cv = cyclic_reduce(free_reduce(v.letters));
  if (cu.core.size() != cv.core.size()) return std::nullopt;
  if (cu.core.empty()) return Word{};
  size_t n = cu.core.size();
  for (size_t r = 0; r < n; ++r) {
    bool match = true;
    for (size_t i = 0; i < n && match; ++i)
      match = cu.core.letters[(r + i) % n] == cv.core.letters[i];
    if (!match) continue;
    Word x;
    x.letters.assign(cu.core.letters.begin(), cu.core.letters.begin() + static_cast<long>(r));
    // rotate(core_u, r) = x^-1 core_u x = core_v, so v = (q x^-1 p^-1) u (...)^-1.
    return wmul(cv.conjugator, winv(x), winv(cu.conjugator));
  }
  return std::nullopt;
}

std::optional<Word> centralizer_generator(const Word& w) {
  Word r = free_reduce(w.letters);
  if (r.empty()) return std::nullopt;
  CyclicReduction cr = cyclic_reduce(r);
  return wconj(cr.conjugator, primitive_root(cr.core));
}

} // namespace gf

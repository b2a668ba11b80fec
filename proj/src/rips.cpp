#include "gf/rips.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "gf/error.hpp"

namespace gf {

bool ratio_less(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }

std::string ratio_to_string(const Ratio& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

namespace {

struct Block {
  Letter letter;
  long long count = 0;
};

// Cyclic run-length form; wrap-around runs merge into one block.
std::vector<Block> cyclic_blocks(const Word& w) {
  std::vector<Block> out;
  for (const Letter& l : w.letters) {
    if (!out.empty() && out.back().letter == l)
      out.back().count++;
    else
      out.push_back({l, 1});
  }
  if (out.size() > 1 && out.front().letter == out.back().letter) {
    out.front().count += out.back().count;
    out.pop_back();
  }
  return out;
}

bool same_letter_multiset(const Word& u, const Word& v) {
  std::map<std::pair<int, int>, int> cu, cv;
  for (const Letter& l : u.letters) cu[{l.gen, l.sign}]++;
  for (const Letter& l : v.letters) cv[{l.gen, l.sign}]++;
  return cu == cv;
}

bool cyclic_equal(const Word& u, const Word& v) {
  if (u.size() != v.size()) return false;
  if (u.empty()) return true;
  if (!same_letter_multiset(u, v)) return false;
  size_t n = u.size();
  for (size_t shift = 0; shift < n; ++shift) {
    bool match = true;
    for (size_t i = 0; i < n && match; ++i)
      match = v.letters[i] == u.letters[(i + shift) % n];
    if (match) return true;
  }
  return false;
}

bool is_proper_power_cyclic(const Word& w) {
  size_t n = w.size();
  for (size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (size_t i = 0; i < n && periodic; ++i)
      periodic = w.letters[i] == w.letters[(i + d) % n];
    if (periodic) return true;
  }
  return false;
}

struct Position {
  size_t word;
  size_t block;
};

} // namespace

CancellationReport small_cancellation_ratio(const std::vector<Word>& relators) {
  if (relators.empty()) fail(ErrorKind::precondition, "empty relator set");
  for (const Word& r : relators) {
    if (r.empty()) fail(ErrorKind::precondition, "empty relator");
    if (!is_cyclically_reduced(r))
      fail(ErrorKind::precondition, "relator is not cyclically reduced");
    if (is_proper_power_cyclic(r))
      fail(ErrorKind::unsupported, "relator is a proper power");
  }

  // Base words: each relator and its inverse, one representative per cyclic
  // class.  The symmetrized closure is then all rotations of these.
  std::vector<Word> base;
  for (const Word& r : relators) {
    for (const Word& cand : {r, winv(r)}) {
      bool dup = false;
      for (const Word& kept : base)
        if (cyclic_equal(kept, cand)) {
          dup = true;
          break;
        }
      if (!dup) base.push_back(cand);
    }
  }

  std::vector<std::vector<Block>> blocks;
  size_t total_blocks = 0;
  for (const Word& w : base) {
    blocks.push_back(cyclic_blocks(w));
    total_blocks += blocks.back().size();
  }

  long long min_len = -1;
  size_t sym_size = 0;
  for (const Word& w : base) {
    long long len = static_cast<long long>(w.size());
    if (min_len < 0 || len < min_len) min_len = len;
    sym_size += w.size();
  }

  // Letters matched past equal-count runs; the chase is block-aligned and,
  // since no base word is cyclically periodic and no two are cyclically
  // equal, strictly shorter than a full cycle.
  auto succ = [&](Position p) {
    p.block = (p.block + 1) % blocks[p.word].size();
    return p;
  };
  std::function<long long(Position, Position, size_t)> aligned_lcp =
      [&](Position p, Position q, size_t depth) -> long long {
    if (depth > 2 * total_blocks + 4)
      fail(ErrorKind::precondition, "piece scan found cyclically equal relators");
    const Block& bp = blocks[p.word][p.block];
    const Block& bq = blocks[q.word][q.block];
    if (!(bp.letter == bq.letter)) return 0;
    if (bp.count != bq.count) return std::min(bp.count, bq.count);
    return bp.count + aligned_lcp(succ(p), succ(q), depth + 1);
  };

  long long max_piece = 0;
  for (size_t wi = 0; wi < blocks.size(); ++wi) {
    for (size_t bi = 0; bi < blocks[wi].size(); ++bi) {
      const Block& P = blocks[wi][bi];
      // Two rotations inside one run share at most count-1 letters.
      max_piece = std::max(max_piece, P.count - 1);
      for (size_t wj = wi; wj < blocks.size(); ++wj) {
        size_t start = (wj == wi) ? bi + 1 : 0;
        for (size_t bj = start; bj < blocks[wj].size(); ++bj) {
          const Block& Q = blocks[wj][bj];
          if (!(P.letter == Q.letter)) continue;
          // A rotation may start mid-run, so the shorter run can always be
          // matched in full and the comparison continues block-aligned.
          long long cand =
              std::min(P.count, Q.count) + aligned_lcp(succ({wi, bi}), succ({wj, bj}), 0);
          max_piece = std::max(max_piece, cand);
        }
      }
    }
  }

  CancellationReport rep;
  rep.max_piece = max_piece;
  rep.min_relator_length = min_len;
  rep.symmetrized_size = sym_size;
  long long g = std::gcd(max_piece, min_len);
  if (max_piece == 0)
    rep.lambda = Ratio{0, 1};
  else
    rep.lambda = Ratio{max_piece / g, min_len / g};
  rep.meets_sixth = 6 * max_piece < min_len;
  return rep;
}

const int rips_default_k = 32;

RipsOutput rips_construction(const FinitePresentation& p, int k) {
  p.validate();
  if (k < 1) fail(ErrorKind::precondition, "padding segment count must be positive");

  std::vector<Word> cores;
  for (const Word& r : p.relators) {
    Word core = cyclic_reduce(r).core;
    if (core.empty()) fail(ErrorKind::precondition, "relator reduces to the identity");
    cores.push_back(core);
  }

  std::string stem = "x";
  while (p.gens.has(stem + "1") || p.gens.has(stem + "2")) stem += "x";
  std::vector<std::string> names = p.gens.names();
  names.push_back(stem + "1");
  names.push_back(stem + "2");
  Alphabet out_gens{names};
  int x1 = p.gens.size();
  int x2 = x1 + 1;

  long long n_rel = 4LL * p.gens.size() + static_cast<long long>(cores.size());
  long long base_exp = std::max<long long>(2, n_rel * k);
  long long next_exp = base_exp;

  // One padding word per output relator; every exponent in the whole family
  // is distinct, which keeps common substrings short and the words aperiodic.
  auto padding = [&]() {
    Word w;
    for (int i = 0; i < k; ++i) {
      w.letters.push_back(Letter{x1, 1});
      for (long long j = 0; j < next_exp; ++j) w.letters.push_back(Letter{x2, 1});
      next_exp++;
    }
    return w;
  };

  std::vector<Word> rels;
  for (int a = 0; a < p.gens.size(); ++a) {
    for (int sign : {1, -1}) {
      for (int xj : {x1, x2}) {
        Word conj = wconj(Word{{Letter{a, sign}}}, Word{{Letter{xj, 1}}});
        rels.push_back(wmul(conj, winv(padding())));
      }
    }
  }
  for (const Word& core : cores) rels.push_back(wmul(core, winv(padding())));

  RipsOutput out;
  out.pres = FinitePresentation{out_gens, rels};
  out.pres.validate();
  out.k = k;
  out.x1 = out_gens.name(x1);
  out.x2 = out_gens.name(x2);
  out.report = small_cancellation_ratio(rels);
  out.certified = out.report.meets_sixth;
  return out;
}

} // namespace gf

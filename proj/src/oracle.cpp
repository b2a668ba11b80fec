#include "gf/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gf {

void FiniteGroupTable::validate() {
  if (order < 1) fail(ErrorKind::malformed_input, "table order must be positive");
  if (order > 128) fail(ErrorKind::malformed_input, "table order above desk-scale limit 128");
  if (static_cast<int>(mult.size()) != order)
    fail(ErrorKind::malformed_input, "table row count mismatch");
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != order)
      fail(ErrorKind::malformed_input, "table column count mismatch");
    for (int v : row)
      if (v < 0 || v >= order) fail(ErrorKind::malformed_input, "table entry out of range");
  }
  identity = -1;
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int x = 0; x < order && ok; ++x)
      ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) fail(ErrorKind::malformed_input, "table has no identity element");
  inverse.assign(static_cast<size_t>(order), -1);
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y)
      if (mul(x, y) == identity && mul(y, x) == identity) {
        inverse[static_cast<size_t>(x)] = y;
        break;
      }
    if (inverse[static_cast<size_t>(x)] < 0)
      fail(ErrorKind::malformed_input, "table element without inverse");
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          fail(ErrorKind::malformed_input, "table is not associative");
  std::set<std::string> names;
  for (const auto& [name, idx] : gens) {
    if (!Alphabet::valid_name(name))
      fail(ErrorKind::malformed_input, "invalid generator name '" + name + "'");
    if (!names.insert(name).second)
      fail(ErrorKind::malformed_input, "duplicate generator name '" + name + "'");
    if (idx < 0 || idx >= order)
      fail(ErrorKind::malformed_input, "generator index out of range");
  }
}

FiniteGroupTable FiniteGroupTable::parse(const std::string& text) {
  FiniteGroupTable t;
  t.order = -1;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int rows_read = 0;
  auto err = [&](const std::string& msg) {
    fail(ErrorKind::malformed_input, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "order:") {
      if (t.order >= 0) err("duplicate order line");
      if (!(ls >> t.order) || t.order < 1) err("bad order");
      t.mult.clear();
    } else if (first == "gen:") {
      std::string name;
      int idx;
      if (!(ls >> name >> idx)) err("bad gen line");
      t.gens.emplace_back(name, idx);
    } else {
      if (t.order < 0) err("table row before order line");
      if (rows_read >= t.order) err("too many table rows");
      std::vector<int> row;
      std::istringstream rs(line);
      int v;
      while (rs >> v) row.push_back(v);
      if (static_cast<int>(row.size()) != t.order) err("row width mismatch");
      t.mult.push_back(std::move(row));
      ++rows_read;
    }
  }
  if (t.order < 0) fail(ErrorKind::malformed_input, "missing order line");
  if (rows_read != t.order) fail(ErrorKind::malformed_input, "missing table rows");
  t.validate();
  return t;
}

std::string FiniteGroupTable::serialize() const {
  std::ostringstream out;
  out << "order: " << order << "\n";
  for (const auto& row : mult) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << "\n";
  }
  for (const auto& [name, idx] : gens) out << "gen: " << name << " " << idx << "\n";
  return out.str();
}

FiniteGroupTable cyclic_table(int n, const std::string& gen_name) {
  FiniteGroupTable t;
  t.order = n;
  t.mult.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i + j) % n;
  if (n > 1) t.gens = {{gen_name, 1}};
  t.validate();
  return t;
}

namespace {

std::vector<std::array<int, 3>> s3_perms() {
  std::vector<std::array<int, 3>> ps;
  std::array<int, 3> p{0, 1, 2};
  do {
    ps.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return ps;
}

} // namespace

FiniteGroupTable s3_table(const std::string& transposition_name, const std::string& threecycle_name) {
  auto ps = s3_perms();
  auto index_of = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < ps.size(); ++i)
      if (ps[i] == p) return static_cast<int>(i);
    return -1;
  };
  FiniteGroupTable t;
  t.order = 6;
  t.mult.assign(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> comp;
      for (int k = 0; k < 3; ++k)
        comp[static_cast<size_t>(k)] =
            ps[static_cast<size_t>(i)][static_cast<size_t>(ps[static_cast<size_t>(j)][static_cast<size_t>(k)])];
      t.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] = index_of(comp);
    }
  t.gens = {{transposition_name, index_of({1, 0, 2})}, {threecycle_name, index_of({1, 2, 0})}};
  t.validate();
  return t;
}

FiniteGroupTable dihedral_table(int n, const std::string& c_name, const std::string& d_name) {
  FiniteGroupTable t;
  t.order = 2 * n;
  t.mult.assign(static_cast<size_t>(2 * n), std::vector<int>(static_cast<size_t>(2 * n)));
  auto idx = [&](int rot, int flip) { return rot + n * flip; };
  for (int r1 = 0; r1 < n; ++r1)
    for (int f1 = 0; f1 < 2; ++f1)
      for (int r2 = 0; r2 < n; ++r2)
        for (int f2 = 0; f2 < 2; ++f2) {
          int rot = f1 ? (r1 + n - r2) % n : (r1 + r2) % n;
          t.mult[static_cast<size_t>(idx(r1, f1))][static_cast<size_t>(idx(r2, f2))] =
              idx(rot, f1 ^ f2);
        }
  t.gens = {{c_name, idx(0, 1)}, {d_name, idx(1, 1)}};
  t.validate();
  return t;
}

std::vector<std::optional<Word>> table_canonical_words(const FiniteGroupTable& t) {
  std::vector<std::optional<Word>> least(static_cast<size_t>(t.order));
  least[static_cast<size_t>(t.identity)] = Word{};
  std::deque<int> queue{t.identity};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (size_t gi = 0; gi < t.gens.size(); ++gi) {
      for (int sign : {1, -1}) {
        int g = t.gens[gi].second;
        if (sign < 0) g = t.inverse[static_cast<size_t>(g)];
        int y = t.mul(x, g);
        if (!least[static_cast<size_t>(y)]) {
          Word w = *least[static_cast<size_t>(x)];
          w.letters.push_back(Letter{static_cast<int>(gi), sign});
          least[static_cast<size_t>(y)] = std::move(w);
          queue.push_back(y);
        }
      }
    }
  }
  return least;
}

bool table_generators_generate(const FiniteGroupTable& t) {
  auto least = table_canonical_words(t);
  return std::all_of(least.begin(), least.end(), [](const auto& w) { return w.has_value(); });
}

Alphabet table_alphabet(const FiniteGroupTable& t) {
  std::vector<std::string> names;
  for (const auto& [n, i] : t.gens) {
    (void)i;
    names.push_back(n);
  }
  return Alphabet(names);
}

int table_eval(const FiniteGroupTable& t, const Word& w) {
  int x = t.identity;
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || l.gen >= static_cast<int>(t.gens.size()))
      fail(ErrorKind::precondition, "letter outside the table's generator alphabet");
    int g = t.gens[static_cast<size_t>(l.gen)].second;
    if (l.sign < 0) g = t.inverse[static_cast<size_t>(g)];
    x = t.mul(x, g);
  }
  return x;
}

std::vector<std::vector<int>> all_table_homomorphisms(const FiniteGroupTable& from,
                                                      const FiniteGroupTable& to) {
  if (!table_generators_generate(from))
    fail(ErrorKind::precondition, "table generators do not generate the group");
  auto words = table_canonical_words(from);
  size_t ng = from.gens.size();
  std::vector<std::vector<int>> homs;
  std::vector<int> images(ng, 0);
  auto eval = [&](const Word& w) {
    int x = to.identity;
    for (const Letter& l : w.letters) {
      int g = images[static_cast<size_t>(l.gen)];
      if (l.sign < 0) g = to.inverse[static_cast<size_t>(g)];
      x = to.mul(x, g);
    }
    return x;
  };
  std::vector<size_t> idx(ng, 0);
  // Odometer over generator image tuples.
  while (true) {
    for (size_t i = 0; i < ng; ++i) images[i] = static_cast<int>(idx[i]);
    std::vector<int> emap(static_cast<size_t>(from.order));
    for (int x = 0; x < from.order; ++x) emap[static_cast<size_t>(x)] = eval(*words[static_cast<size_t>(x)]);
    bool ok = true;
    for (int a = 0; a < from.order && ok; ++a)
      for (int b = 0; b < from.order && ok; ++b)
        ok = to.mul(emap[static_cast<size_t>(a)], emap[static_cast<size_t>(b)]) ==
             emap[static_cast<size_t>(from.mul(a, b))];
    if (ok) homs.push_back(std::move(emap));
    size_t pos = 0;
    while (pos < ng) {
      if (++idx[pos] < static_cast<size_t>(to.order)) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == ng) break;
  }
  return homs;
}

bool exists_nontrivial_hom(const FiniteGroupTable& from, const FiniteGroupTable& to) {
  for (const auto& h : all_table_homomorphisms(from, to))
    for (int x = 0; x < from.order; ++x)
      if (h[static_cast<size_t>(x)] != to.identity) return true;
  return false;
}

bool exists_embedded_copy(const FiniteGroupTable& sub, const FiniteGroupTable& host) {
  for (const auto& h : all_table_homomorphisms(sub, host)) {
    std::set<int> img(h.begin(), h.end());
    if (static_cast<int>(img.size()) == sub.order) return true;
  }
  return false;
}

namespace {

class FreeOracle final : public GroupOracle {
public:
  explicit FreeOracle(Alphabet a) : GroupOracle(std::move(a)) {}
  bool is_trivial(const Word& w) const override { return w.empty(); }
  Word canonical(const Word& w) const override { return w; }
};

class FiniteOracle final : public GroupOracle {
public:
  explicit FiniteOracle(FiniteGroupTable t)
      : GroupOracle(gen_alphabet(t)), table_(std::move(t)), least_(table_canonical_words(table_)) {}

  bool is_trivial(const Word& w) const override { return eval(w) == table_.identity; }

  Word canonical(const Word& w) const override {
    const auto& lw = least_[static_cast<size_t>(eval(w))];
    if (!lw) fail(ErrorKind::precondition, "element unreachable from designated generators");
    return *lw;
  }

  const FiniteGroupTable& table() const { return table_; }

  int eval(const Word& w) const {
    int x = table_.identity;
    for (const Letter& l : w.letters) {
      int g = table_.gens[static_cast<size_t>(l.gen)].second;
      if (l.sign < 0) g = table_.inverse[static_cast<size_t>(g)];
      x = table_.mul(x, g);
    }
    return x;
  }

private:
  static Alphabet gen_alphabet(const FiniteGroupTable& t) {
    std::vector<std::string> names;
    for (const auto& [n, i] : t.gens) {
      (void)i;
      names.push_back(n);
    }
    return Alphabet(names);
  }

  FiniteGroupTable table_;
  std::vector<std::optional<Word>> least_;
};

Alphabet joined_alphabet(const GroupOracle& l, const GroupOracle& r) {
  std::vector<std::string> names = l.alphabet().names();
  for (const auto& n : r.alphabet().names()) names.push_back(n);
  return Alphabet(names); // duplicate names rejected here
}

class ProductBase : public GroupOracle {
public:
  ProductBase(OraclePtr l, OraclePtr r)
      : GroupOracle(joined_alphabet(*l, *r)), left_(std::move(l)), right_(std::move(r)) {}

  int left_size() const { return left_->alphabet().size(); }
  const GroupOracle& left() const { return *left_; }
  const GroupOracle& right() const { return *right_; }

  Word to_side(const Word& w, bool right_side) const {
    int nl = left_size();
    std::vector<Letter> out;
    for (const Letter& l : w.letters) {
      if (!right_side && l.gen < nl) out.push_back(l);
      if (right_side && l.gen >= nl) out.push_back(Letter{l.gen - nl, l.sign});
    }
    return free_reduce(out);
  }

  Word from_side(const Word& w, bool right_side) const {
    int nl = left_size();
    std::vector<Letter> out;
    for (const Letter& l : w.letters)
      out.push_back(Letter{right_side ? l.gen + nl : l.gen, l.sign});
    return Word(std::move(out));
  }

protected:
  OraclePtr left_, right_;
};

class DirectProductOracle final : public ProductBase {
public:
  using ProductBase::ProductBase;

  bool is_trivial(const Word& w) const override {
    return left_->is_trivial(to_side(w, false)) && right_->is_trivial(to_side(w, true));
  }

  Word canonical(const Word& w) const override {
    Word lc = left_->canonical(to_side(w, false));
    Word rc = right_->canonical(to_side(w, true));
    return wmul(from_side(lc, false), from_side(rc, true));
  }
};

class FreeProductOracle final : public ProductBase {
public:
  using ProductBase::ProductBase;

  bool is_trivial(const Word& w) const override { return normal_form(w).empty(); }

  Word canonical(const Word& w) const override {
    Word out;
    for (const auto& [right_side, sw] : normal_form(w))
      out = wmul(out, from_side(sw, right_side));
    return out;
  }

  // Alternating sequence of nonempty factor-canonical syllables; unique.
  std::vector<std::pair<bool, Word>> normal_form(const Word& w) const {
    int nl = left_size();
    std::vector<std::pair<bool, Word>> stack;
    for (const Letter& l : w.letters) {
      bool side = l.gen >= nl;
      Word lw(std::vector<Letter>{side ? Letter{l.gen - nl, l.sign} : l});
      const GroupOracle& fac = side ? *right_ : *left_;
      if (!stack.empty() && stack.back().first == side) {
        stack.back().second = fac.canonical(wmul(stack.back().second, lw));
        if (stack.back().second.empty()) stack.pop_back();
      } else {
        Word c = fac.canonical(lw);
        if (!c.empty()) stack.emplace_back(side, std::move(c));
      }
    }
    return stack;
  }
};

class KillGeneratorsOracle final : public GroupOracle {
public:
  KillGeneratorsOracle(Alphabet a, const std::vector<std::string>& killed)
      : GroupOracle(std::move(a)), killed_(static_cast<size_t>(alph_.size()), false) {
    for (const auto& name : killed) {
      int idx = alph_.index_of(name);
      if (idx < 0)
        fail(ErrorKind::malformed_input, "killed generator '" + name + "' not in alphabet");
      killed_[static_cast<size_t>(idx)] = true;
    }
  }

  bool is_trivial(const Word& w) const override { return canonical(w).empty(); }

  Word canonical(const Word& w) const override {
    std::vector<Letter> out;
    for (const Letter& l : w.letters)
      if (!killed_[static_cast<size_t>(l.gen)]) out.push_back(l);
    return free_reduce(out);
  }

  const std::vector<bool>& killed() const { return killed_; }

private:
  std::vector<bool> killed_;
};

} // namespace

OraclePtr make_free_oracle(Alphabet a) { return std::make_shared<FreeOracle>(std::move(a)); }

OraclePtr make_finite_oracle(FiniteGroupTable t) {
  t.validate();
  return std::make_shared<FiniteOracle>(std::move(t));
}

OraclePtr make_direct_product(OraclePtr left, OraclePtr right) {
  return std::make_shared<DirectProductOracle>(std::move(left), std::move(right));
}

OraclePtr make_free_product(OraclePtr left, OraclePtr right) {
  return std::make_shared<FreeProductOracle>(std::move(left), std::move(right));
}

OraclePtr make_kill_generators(Alphabet a, const std::vector<std::string>& killed) {
  return std::make_shared<KillGeneratorsOracle>(std::move(a), killed);
}

int product_left_size(const GroupOracle& o) {
  if (auto p = dynamic_cast<const ProductBase*>(&o)) return p->left_size();
  return 0;
}

std::vector<Word> ball_enumerate(const GroupOracle& o, int radius, size_t cap) {
  std::vector<Word> reps;
  std::unordered_set<std::string> seen;
  reps.push_back(Word{});
  seen.insert(word_key(o.canonical(Word{})));
  std::vector<Word> frontier{Word{}};
  int nletters = o.alphabet().size() * 2;
  for (int len = 1; len <= radius; ++len) {
    std::vector<Word> next;
    for (const Word& rep : frontier) {
      for (int k = 0; k < nletters; ++k) {
        Letter l{k / 2, k % 2 == 0 ? 1 : -1};
        if (!rep.empty() && rep.letters.back() == l.inverse()) continue;
        Word cand = rep;
        cand.letters.push_back(l);
        std::string key = word_key(o.canonical(cand));
        if (seen.insert(std::move(key)).second) {
          reps.push_back(cand);
          next.push_back(std::move(cand));
          if (reps.size() > cap)
            fail(ErrorKind::resource, "ball_enumerate: element cap exceeded");
        }
      }
    }
    frontier = std::move(next);
  }
  return reps;
}

int oracle_distance(const GroupOracle& o, const Word& u, const Word& v) {
  return static_cast<int>(o.canonical(wmul(winv(u), v)).size());
}

} // namespace gf

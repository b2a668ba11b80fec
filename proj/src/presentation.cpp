#include "gf/presentation.hpp"

#include <sstream>

namespace gf {

void FinitePresentation::validate() const {
  for (const Word& r : relators) {
    if (r.empty())
      fail(ErrorKind::malformed_input, "relator reduces to the empty word");
    for (const Letter& l : r.letters)
      if (l.gen < 0 || l.gen >= gens.size())
        fail(ErrorKind::malformed_input, "relator letter outside alphabet");
  }
}

namespace {

FinitePresentation parse_presentation_lines(const std::vector<std::pair<int, std::string>>& lines) {
  FinitePresentation p;
  bool saw_gens = false;
  std::vector<std::pair<int, std::string>> rel_texts;
  for (const auto& [lineno, raw] : lines) {
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto err = [lineno = lineno](const std::string& msg) {
      fail(ErrorKind::malformed_input, "line " + std::to_string(lineno) + ": " + msg);
    };
    if (first == "gens:") {
      if (saw_gens) err("duplicate gens line");
      std::vector<std::string> names;
      std::string n;
      while (ls >> n) names.push_back(n);
      try {
        p.gens = Alphabet(names);
      } catch (const Error& e) {
        err(e.what());
      }
      saw_gens = true;
    } else if (first == "rel:") {
      std::string rest;
      std::getline(ls, rest);
      rel_texts.emplace_back(lineno, rest);
    } else {
      err("expected 'gens:' or 'rel:', got '" + first + "'");
    }
  }
  if (!saw_gens) fail(ErrorKind::malformed_input, "missing gens line");
  for (const auto& [lineno, text] : rel_texts) {
    try {
      Word r = parse_word(p.gens, text);
      if (r.empty())
        fail(ErrorKind::malformed_input, "relator reduces to the empty word");
      p.relators.push_back(std::move(r));
    } catch (const Error& e) {
      fail(ErrorKind::malformed_input, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  p.validate();
  return p;
}

} // namespace

FinitePresentation parse_presentation(const std::string& text) {
  std::vector<std::pair<int, std::string>> lines;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) lines.emplace_back(++lineno, line);
  return parse_presentation_lines(lines);
}

std::string serialize_presentation(const FinitePresentation& p) {
  std::ostringstream out;
  out << "gens:";
  for (const auto& n : p.gens.names()) out << " " << n;
  out << "\n";
  for (const Word& r : p.relators) out << "rel: " << word_to_string(p.gens, r) << "\n";
  return out.str();
}

namespace {

class OracleEquality final : public EqualityOracle {
public:
  explicit OracleEquality(OraclePtr o) : oracle_(std::move(o)) {}
  const Alphabet& alphabet() const override { return oracle_->alphabet(); }
  Verdict is_trivial(const Word& w) const override {
    return oracle_->is_trivial(w) ? Verdict::yes : Verdict::no;
  }

private:
  OraclePtr oracle_;
};

} // namespace

EqualityPtr equality_from_oracle(OraclePtr o) {
  return std::make_shared<OracleEquality>(std::move(o));
}

void HomCertificate::validate() const {
  source.validate();
  images.validate();
  if (images.source != source.gens)
    fail(ErrorKind::malformed_input, "certificate images not indexed by source generators");
  if (!target)
    fail(ErrorKind::malformed_input, "certificate lacks a target equality oracle");
  if (images.target != target->alphabet())
    fail(ErrorKind::malformed_input, "certificate image alphabet differs from target oracle");
}

Verdict verify_hom_certificate(const HomCertificate& c) {
  c.validate();
  bool undecided = false;
  for (const Word& r : c.source.relators) {
    switch (c.target->is_trivial(apply_map(c.images, r))) {
      case Verdict::no: return Verdict::no;
      case Verdict::undecided: undecided = true; break;
      case Verdict::yes: break;
    }
  }
  return undecided ? Verdict::undecided : Verdict::yes;
}

Verdict verify_iso_certificate(const HomCertificate& fwd, const HomCertificate& bwd) {
  if (fwd.images.target != bwd.images.source || bwd.images.target != fwd.images.source)
    fail(ErrorKind::malformed_input, "iso certificates do not compose");
  bool undecided = false;
  auto fold = [&undecided](Verdict v) {
    if (v == Verdict::no) return false;
    if (v == Verdict::undecided) undecided = true;
    return true;
  };
  if (!fold(verify_hom_certificate(fwd))) return Verdict::no;
  if (!fold(verify_hom_certificate(bwd))) return Verdict::no;
  // Round trips must fix generators up to the matching equality oracle.
  for (int i = 0; i < fwd.source.gens.size(); ++i) {
    Word round = apply_map(bwd.images, fwd.images.images[static_cast<size_t>(i)]);
    Word test = wmul(round, winv(Word({Letter{i, 1}})));
    if (!fold(bwd.target->is_trivial(test))) return Verdict::no;
  }
  for (int i = 0; i < bwd.source.gens.size(); ++i) {
    Word round = apply_map(fwd.images, bwd.images.images[static_cast<size_t>(i)]);
    Word test = wmul(round, winv(Word({Letter{i, 1}})));
    if (!fold(fwd.target->is_trivial(test))) return Verdict::no;
  }
  return undecided ? Verdict::undecided : Verdict::yes;
}

std::vector<Word> pad_generating_set(const std::vector<Word>& s, int m) {
  if (s.empty())
    fail(ErrorKind::precondition, "pad_generating_set: empty set");
  if (m < static_cast<int>(s.size()))
    fail(ErrorKind::precondition, "pad_generating_set: m smaller than the set");
  std::vector<Word> out = s;
  while (static_cast<int>(out.size()) < m) out.push_back(s.back());
  return out;
}

namespace {

FinitePresentation fixed_presentation(const std::vector<std::string>& gens,
                                      const std::vector<std::string>& rels) {
  FinitePresentation p;
  p.gens = Alphabet(gens);
  for (const auto& r : rels) p.relators.push_back(parse_word(p.gens, r));
  return p;
}

} // namespace

SequenceSource make_sequence_source(const std::string& kind) {
  SequenceSource s;
  s.name = kind;
  if (kind == "toy-trivial") {
    auto p = fixed_presentation({"a", "b"}, {"a", "b"});
    s.at = [p](int) { return p; };
    s.trivial_truth = [](int) { return std::optional<bool>(true); };
  } else if (kind == "toy-infinite") {
    auto p = fixed_presentation({"a", "b"}, {"a", "a"});
    s.at = [p](int) { return p; };
    s.trivial_truth = [](int) { return std::optional<bool>(false); };
  } else if (kind == "alternating") {
    auto even = fixed_presentation({"a", "b"}, {"a", "b"});
    auto odd = fixed_presentation({"a", "b"}, {"a", "a"});
    s.at = [even, odd](int n) { return n % 2 == 0 ? even : odd; };
    s.trivial_truth = [](int n) { return std::optional<bool>(n % 2 == 0); };
  } else {
    fail(ErrorKind::malformed_input, "unknown sequence source kind '" + kind + "'");
  }
  return s;
}

SequenceSource make_file_sequence_source(const std::string& text) {
  std::vector<FinitePresentation> blocks;
  std::vector<std::optional<bool>> truths;
  std::vector<std::pair<int, std::string>> cur;
  std::optional<bool> cur_truth;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto flush = [&]() {
    if (cur.empty() && !cur_truth) return;
    blocks.push_back(parse_presentation_lines(cur));
    truths.push_back(cur_truth);
    cur.clear();
    cur_truth.reset();
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line;
    if (auto pos = stripped.find('#'); pos != std::string::npos) stripped.resize(pos);
    std::istringstream ls(stripped);
    std::string first;
    if (!(ls >> first)) {
      continue;
    }
    if (first == "---") {
      flush();
    } else if (first == "truth:") {
      std::string v;
      ls >> v;
      if (v == "trivial")
        cur_truth = true;
      else if (v == "infinite")
        cur_truth = false;
      else if (v == "unknown")
        cur_truth.reset();
      else
        fail(ErrorKind::malformed_input,
             "line " + std::to_string(lineno) + ": bad truth value '" + v + "'");
    } else {
      cur.emplace_back(lineno, line);
    }
  }
  flush();
  if (blocks.empty())
    fail(ErrorKind::malformed_input, "sequence file holds no presentations");
  for (const auto& b : blocks) {
    if (b.gens != blocks.front().gens)
      fail(ErrorKind::malformed_input, "sequence blocks must share one alphabet");
    if (b.relators.size() != blocks.front().relators.size())
      fail(ErrorKind::malformed_input,
           "sequence blocks must share the relator count (pad to equalize)");
  }
  SequenceSource s;
  s.name = "file";
  int count = static_cast<int>(blocks.size());
  s.at = [blocks, count](int n) {
    int i = ((n % count) + count) % count;
    return blocks[static_cast<size_t>(i)];
  };
  s.trivial_truth = [truths, count](int n) {
    int i = ((n % count) + count) % count;
    return truths[static_cast<size_t>(i)];
  };
  return s;
}

} // namespace gf

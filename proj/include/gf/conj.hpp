#ifndef GF_CONJ_HPP
#define GF_CONJ_HPP

#include <functional>
#include <optional>
#include <string>

#include "gf/amalgam.hpp"
#include "gf/genmap.hpp"
#include "gf/oracle.hpp"
#include "gf/presentation.hpp"

namespace gf {

using MembershipOracle = std::function<bool(const Word&)>;

// Conjugacy question inside the double of N x F along the graph subgroup
// {(phi(x), x)}: u = (b a0 b^-1)(bar copy) against v = a0 (bar a0).  The
// elements are conjugate exactly when b lies in a decidable subgroup of N;
// `verdict` carries that answer when a membership oracle is supplied.
struct ConjugacyInstance {
  AmalgamSpec d;
  AmalgamElement u, v;
  std::optional<bool> verdict;
};

// Generic builder: any oracle N, any map phi from a symbol alphabet into N,
// any nontrivial a0.  The double gets a generic edge-membership test and a
// budgeted edge enumerator, but no exact solver.
ConjugacyInstance basic_conjugacy_instance(OraclePtr n, const GeneratorMap& phi,
                                           const Word& a0, const Word& b,
                                           MembershipOracle i_member = nullptr);

// Decidable family built from a presentation whose relators are single
// letters.  A fresh killed generator is adjoined; N is two free copies of
// the enlarged alphabet, phi maps fibre symbols to diagonal and relator
// pairs, a0 is the fresh diagonal, and the double carries an exact
// edge-conjugacy solver for the mirror-pair instances, so conjugator
// searches terminate with a definite answer either way.
struct MirrorSetting {
  FinitePresentation q_pres; // normalized
  std::string fresh;
  int base_size = 0;   // generators of q_pres; N has twice this many
  OraclePtr q_oracle;  // quotient by the killed letters
  OraclePtr n_oracle;  // free copy x free copy, second suffixed
  Alphabet f_symbols;
  GeneratorMap phi;    // f_symbols -> n alphabet
  OraclePtr g_oracle;  // n x free(f_symbols)
  Word a0;             // fresh diagonal, as an n word
  MembershipOracle i_member;
  AmalgamSpec d;
};

MirrorSetting build_mirror_setting(const FinitePresentation& q);

ConjugacyInstance mirror_instance(const MirrorSetting& s, const Word& b);

} // namespace gf

#endif

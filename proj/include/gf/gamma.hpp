#ifndef GF_GAMMA_HPP
#define GF_GAMMA_HPP

#include <string>
#include <vector>

#include "gf/amalgam.hpp"
#include "gf/genmap.hpp"
#include "gf/oracle.hpp"
#include "gf/presentation.hpp"

namespace gf {

// Data for one member of the presentation family: the product (A*B) x F
// with F free of rank 2m, together with the m-tuple of B-words that steer
// the designated subgroup.
struct GammaSpec {
  FinitePresentation a_pres, b_pres;
  OraclePtr a_oracle, b_oracle;
  int m = 0;
  std::vector<Word> s_n; // over B's alphabet
  // Derived:
  Alphabet x;                          // A gens, B gens, sigma_1..m, tau_1..m
  std::vector<Word> relators;          // presents (A*B) x F over x
  std::vector<std::string> sigma_names, tau_names;
  OraclePtr ab_oracle;                 // A * B
  OraclePtr g_oracle;                  // (A * B) x F

  int ab_size() const { return a_pres.gens.size() + b_pres.gens.size(); }
  void validate() const;
};

GammaSpec make_gamma_spec(const FinitePresentation& a_pres, OraclePtr a_oracle,
                          const FinitePresentation& b_pres, OraclePtr b_oracle, int m,
                          const std::vector<Word>& s_words);

// Two copies of the product glued along the steered subgroup: generators
// X and their _bar copies; relators both copies of `relators` plus the 2m
// identifications tau_i = bar tau_i and sigma_i s_i = bar(sigma_i s_i).
FinitePresentation gamma_presentation(const GammaSpec& spec);

// The same group as an amalgam: the double of g_oracle along the subgroup
// generated by the (s_i, sigma_i) and (1, tau_i).
AmalgamSpec gamma_double(const GammaSpec& spec);

// Membership in that subgroup: (g, x) belongs iff g equals the image of x
// under sigma_i -> s_i, tau_i -> 1.  g is over the A*B alphabet, x over the
// rank-2m free alphabet.
bool sigma_membership(const GammaSpec& spec, const Word& g, const Word& x);

// Kill the bars, then the A*B letters; what is left is the free part.
Word retraction_to_F(const GammaSpec& spec, const Word& w);

// Exact equality backend from an amalgam's normal form.
EqualityPtr equality_from_amalgam(AmalgamSpec spec);

// Free automorphism of the rank-2m basis (first m generators sigma, last m
// tau) with phi(record(sigma_i)) trivial and phi(record(tau_i)) = target_i,
// where phi sends sigma_i to phi_images[i] and tau_i to the identity.
struct RapaportResult {
  NielsenRecord record;
  GeneratorMap images; // basis -> basis, the induced automorphism
};
RapaportResult rapaport_automorphism(OraclePtr q, const Alphabet& basis,
                                     const std::vector<Word>& phi_images,
                                     const std::vector<Word>& targets, int max_len);

// Two-sided isomorphism witness between family members sharing everything
// but the steering words.  Certificates fix A and B letters, twist the free
// letters through the automorphism above, and act bar-equivariantly; both
// are verified against the amalgam equality backends before returning.
struct IsoWitness {
  HomCertificate to_n;  // gamma(spec_np) -> gamma(spec_n)
  HomCertificate to_np; // gamma(spec_n) -> gamma(spec_np)
};
IsoWitness iso_witness(const GammaSpec& spec_n, const GammaSpec& spec_np, int budget);

} // namespace gf

#endif

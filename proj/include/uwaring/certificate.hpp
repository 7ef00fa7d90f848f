#pragma once

// Finite-index certificates for integral decomposition.
//
// At every derived level the decomposer is guaranteed to realize each
// quotient target in the lattice sum_i D_i O e_i (D_i from the abelian
// solver). A certificate records those lattices, their indices in O^m, and
// the Hirsch-number ledger: full rank at every level gives total Hirsch
// number [K:Q] * dim g, the equality case that forces finite index.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "uwaring/decomposer.hpp"
#include "uwaring/errors.hpp"
#include "uwaring/lattice.hpp"

namespace uwaring {

struct CertificateLevel {
  std::size_t level = 0;
  std::size_t quotient_dim = 0;
  std::vector<mpz_class> divisors;
  Lattice sublattice;
  mpz_class index;
  std::size_t hirsch = 0;  // Z-rank of the sublattice
};

struct IndexCertificate {
  RingTag ring = RingTag::Z;
  std::size_t group_dim = 0;
  std::vector<CertificateLevel> levels;
  std::size_t total_hirsch = 0;
  mpz_class total_index{1};

  std::size_t expected_hirsch() const { return field_degree(ring) * group_dim; }
  bool finite_index() const { return total_hirsch == expected_hirsch(); }
};

inline IndexCertificate certificate_of(const Decomposer& dec) {
  if (dec.mode() != Mode::Integral) throw InvalidInput("certificates need an integral decomposer");
  const GroupSpec& spec = *dec.family().spec();
  IndexCertificate cert;
  cert.ring = spec.ring();
  cert.group_dim = spec.dim();
  for (const auto& st : dec.stages()) {
    CertificateLevel lv;
    lv.level = st.level;
    lv.quotient_dim = st.solver.abelianized().m;
    lv.divisors = st.solver.divisors();
    std::vector<RingVec> gens;
    for (std::size_t i = 0; i < lv.quotient_dim; ++i) {
      RingVec v(lv.quotient_dim);
      v[i] = GaussInt(lv.divisors[i]);
      gens.push_back(std::move(v));
    }
    lv.sublattice = hermite_normal_form(cert.ring, lv.quotient_dim, std::move(gens));
    auto idx = lattice_index(lv.sublattice, Lattice::standard(cert.ring, lv.quotient_dim));
    if (!idx) throw RankDeficient(st.level, "sublattice of rank " + std::to_string(lv.sublattice.rank()));
    lv.index = *idx;
    lv.hirsch = field_degree(cert.ring) * lv.sublattice.rank();
    cert.total_hirsch += lv.hirsch;
    cert.total_index *= lv.index;
    cert.levels.push_back(std::move(lv));
  }
  if (!cert.finite_index()) throw RankDeficient(cert.levels.size(), "Hirsch number below [K:Q] dim g");
  return cert;
}

// Runs the integral descent and certifies it. A level where the family (or
// the commutator family built for it) fails to generate is rank deficient.
inline IndexCertificate subgroup_certificate(const MorphismFamily& fam, const DecomposeOptions& opts = {}) {
  if (!is_integral_ring(fam.spec()->ring())) throw InvalidInput("certificates need ring Z or ZI");
  try {
    return certificate_of(Decomposer(fam, Mode::Integral, opts));
  } catch (const NotGenerating& e) {
    throw RankDeficient(e.level, "not generating, witness " + e.witness);
  } catch (const DescentStalled& e) {
    throw RankDeficient(e.level, "descent stalled, witness " + e.witness);
  }
}

}  // namespace uwaring

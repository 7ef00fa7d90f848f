#pragma once

// Shared generators and small independent reference routines for the tests.
// The references are deliberately naive (cofactor determinants, plain
// elimination) so they share no code with the library paths they check.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "uwaring/uwaring.hpp"

namespace uwtest {

using namespace uwaring;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)); }

  // num/den with |num|, den <= height
  Scalar rational(long height) {
    long num = integer(-height, height);
    long den = integer(1, height);
    return Scalar::ratio(num, den);
  }
  Scalar gaussian_rational(long height) { return Scalar(rational(height).re(), rational(height).re()); }
  Scalar element(RingTag r, long height) {
    switch (r) {
      case RingTag::Q: return rational(height);
      case RingTag::QI: return gaussian_rational(height);
      case RingTag::Z: return Scalar(integer(-height, height));
      case RingTag::ZI: return Scalar(mpq_class(integer(-height, height)), mpq_class(integer(-height, height)));
    }
    return {};
  }
  GaussInt gauss_int(long height, bool gaussian) {
    return GaussInt(mpz_class(integer(-height, height)), mpz_class(gaussian ? integer(-height, height) : 0));
  }

  NilMatrix nil(std::size_t k, RingTag r, long height) {
    std::vector<Scalar> c(upper_dim(k));
    for (auto& v : c) v = element(r, height);
    return NilMatrix::from_coords(k, c);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline GroupSpecPtr full(std::size_t k, RingTag r) {
  return std::make_shared<const GroupSpec>(GroupSpec::full_unitriangular(k, r));
}

// exp(x * E_ij) as a polynomial matrix, scaled by c
inline PolyMatrix unit_morphism(std::size_t k, std::size_t i, std::size_t j, const Scalar& c = 1,
                                std::size_t degree = 1) {
  PolyMatrix m = PolyMatrix::identity(k);
  m(i, j) = Poly::monomial(c, degree);
  return m;
}

// exp of sum_d x^d N_d, computed through the library's polynomial exp
inline PolyMatrix exp_poly(const std::vector<ScalarMatrix>& coeffs) {
  const std::size_t k = coeffs.front().size();
  PolyMatrix n(k);
  for (std::size_t d = 0; d < coeffs.size(); ++d)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!coeffs[d](i, j).is_zero()) n(i, j) += Poly::monomial(coeffs[d](i, j), d);
  return nilpotent_exp(n);
}

inline MorphismFamily family(const GroupSpecPtr& spec, const std::vector<PolyMatrix>& ms) {
  std::vector<PolyMorphism> v;
  for (const auto& m : ms) v.push_back(validate_morphism(m, spec));
  return MorphismFamily(spec, std::move(v));
}

inline MorphismFamily heisenberg(RingTag r) {
  auto s = full(3, r);
  return family(s, {unit_morphism(3, 0, 1), unit_morphism(3, 1, 2)});
}

// Random family of polynomial morphisms exp(sum_{d=1..deg} x^d N_d) with N_d
// random strictly upper, over the fraction field of r.
inline MorphismFamily random_family(Gen& g, const GroupSpecPtr& spec, std::size_t n, std::size_t deg, long height) {
  const RingTag coeff_ring = fraction_field(spec->ring());
  std::vector<PolyMatrix> ms;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<ScalarMatrix> c{ScalarMatrix(spec->k())};
    for (std::size_t d = 1; d <= deg; ++d) {
      ScalarMatrix m(spec->k());
      for (std::size_t a = 0; a < spec->k(); ++a)
        for (std::size_t b = a + 1; b < spec->k(); ++b)
          if (g.integer(0, 2) > 0) m(a, b) = g.element(coeff_ring, height);
      c.push_back(m);
    }
    ms.push_back(exp_poly(c));
  }
  return family(spec, ms);
}

// Plain Gaussian elimination rank over the field of scalars.
inline std::size_t naive_rank(std::vector<std::vector<Scalar>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && !rows[r][c].is_zero()) {
        Scalar f = rows[r][c] / rows[rank][c];
        for (std::size_t t = 0; t < cols; ++t) rows[r][t] -= f * rows[rank][t];
      }
    ++rank;
  }
  return rank;
}

// Cofactor determinant over Z[i] (small sizes only).
inline GaussInt naive_det(const std::vector<std::vector<GaussInt>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return GaussInt(1);
  if (n == 1) return m[0][0];
  GaussInt acc(0);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<GaussInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<GaussInt> row;
      for (std::size_t t = 0; t < n; ++t)
        if (t != c) row.push_back(m[r][t]);
      minor.push_back(std::move(row));
    }
    GaussInt term = m[0][c] * naive_det(minor);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Naive product of upper unitriangular matrices given by entries.
inline ScalarMatrix naive_mul(const ScalarMatrix& a, const ScalarMatrix& b) {
  const std::size_t k = a.size();
  ScalarMatrix c(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Scalar s;
      for (std::size_t l = 0; l < k; ++l) s += a(i, l) * b(l, j);
      c(i, j) = s;
    }
  return c;
}

}  // namespace uwtest

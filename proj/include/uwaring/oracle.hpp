#pragma once

// Brute-force check at finite scale: reduce a family modulo a prime and
// enumerate, by breadth-first search, the elements of U_k(F_p) reachable by
// signed words. Heuristic: a proper closure at one prime says nothing about
// generation in characteristic zero.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "uwaring/errors.hpp"
#include "uwaring/matrix.hpp"
#include "uwaring/morphism.hpp"

namespace uwaring {

// Unitriangular matrix over F_p stored by its upper entries (row-major).
using ModElement = std::vector<std::uint32_t>;

struct FiniteQuotientFamily {
  std::uint32_t p = 0;
  std::size_t k = 0;
  std::size_t group_dim = 0;
  std::optional<std::uint32_t> root_of_minus_one;  // image of i, Gaussian rings only
  // morphisms[j][e][c]: x^c coefficient of upper entry e of f_j, reduced mod p
  std::vector<std::vector<std::vector<std::uint32_t>>> morphisms;

  std::size_t size() const { return morphisms.size(); }

  ModElement evaluate(std::size_t j, std::uint32_t x) const {
    ModElement out(upper_dim(k));
    for (std::size_t e = 0; e < out.size(); ++e) {
      std::uint64_t acc = 0;
      const auto& c = morphisms[j][e];
      for (std::size_t t = c.size(); t-- > 0;) acc = (acc * x + c[t]) % p;
      out[e] = static_cast<std::uint32_t>(acc);
    }
    return out;
  }

  // group order p^dim, or nullopt when it does not fit in 64 bits
  std::optional<std::uint64_t> group_order() const {
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < group_dim; ++i) {
      if (o > UINT64_MAX / p) return std::nullopt;
      o *= p;
    }
    return o;
  }
};

namespace detail {

inline std::uint32_t reduce_rational(const mpq_class& q, std::uint32_t p) {
  mpz_class pp(p);
  mpz_class num, den, inv;
  mpz_mod(num.get_mpz_t(), q.get_num_mpz_t(), pp.get_mpz_t());
  mpz_mod(den.get_mpz_t(), q.get_den_mpz_t(), pp.get_mpz_t());
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()) == 0)
    throw BadPrime("coefficient " + q.get_str() + " has a denominator divisible by " +
                   std::to_string(p));
  mpz_class r = num * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
  return static_cast<std::uint32_t>(r.get_ui());
}

inline ModElement mod_multiply(const ModElement& a, const ModElement& b, std::size_t k,
                               std::uint32_t p) {
  ModElement r(a.size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      std::uint64_t v = a[upper_index(k, i, j)] + static_cast<std::uint64_t>(b[upper_index(k, i, j)]);
      for (std::size_t l = i + 1; l < j; ++l)
        v += static_cast<std::uint64_t>(a[upper_index(k, i, l)]) * b[upper_index(k, l, j)];
      r[upper_index(k, i, j)] = static_cast<std::uint32_t>(v % p);
    }
  return r;
}

inline ModElement mod_inverse(const ModElement& a, std::size_t k, std::uint32_t p) {
  // back substitution on (I + A) X = I, X unitriangular
  ModElement x(a.size());
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = j; i-- > 0;) {
      std::uint64_t v = a[upper_index(k, i, j)];
      for (std::size_t l = i + 1; l < j; ++l)
        v += static_cast<std::uint64_t>(a[upper_index(k, i, l)]) * x[upper_index(k, l, j)];
      x[upper_index(k, i, j)] = static_cast<std::uint32_t>((p - v % p) % p);
    }
  return x;
}

inline std::uint64_t encode(const ModElement& e, std::uint32_t p) {
  std::uint64_t key = 0;
  for (std::size_t t = e.size(); t-- > 0;) key = key * p + e[t];
  return key;
}

}  // namespace detail

inline FiniteQuotientFamily reduce_mod_p(const MorphismFamily& fam, std::uint32_t p) {
  const GroupSpec& spec = *fam.spec();
  if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
    throw BadPrime(std::to_string(p) + " is not prime");
  FiniteQuotientFamily q;
  q.p = p;
  q.k = spec.k();
  q.group_dim = spec.dim();
  if (spec.dim() != upper_dim(spec.k()) && p < spec.k())
    throw BadPrime("p = " + std::to_string(p) + " is too small to reduce a proper subgroup of U_" +
                   std::to_string(spec.k()));
  if (is_gaussian_ring(spec.ring())) {
    if (p % 4 != 1)
      throw BadPrime("Gaussian families reduce only at split primes p = 1 mod 4, got " +
                     std::to_string(p));
    for (std::uint64_t r = 1; r < p; ++r)
      if ((r * r + 1) % p == 0) {
        q.root_of_minus_one = static_cast<std::uint32_t>(r);
        break;
      }
  }
  for (const auto& f : fam.morphisms()) {
    std::vector<std::vector<std::uint32_t>> entries;
    for (std::size_t i = 0; i < q.k; ++i)
      for (std::size_t j = i + 1; j < q.k; ++j) {
        const Poly& poly = f.entries()(i, j);
        if (!poly.is_zero() && poly.degree() >= p)
          throw BadPrime("p = " + std::to_string(p) + " does not exceed the degree " +
                         std::to_string(poly.degree()));
        std::vector<std::uint32_t> c;
        for (const auto& s : poly.coefficients()) {
          std::uint64_t v = detail::reduce_rational(s.re(), p);
          if (!s.is_real()) {
            if (!q.root_of_minus_one) throw BadPrime("non-real coefficient over a real ring");
            v = (v + static_cast<std::uint64_t>(detail::reduce_rational(s.im(), p)) * *q.root_of_minus_one) % p;
          }
          c.push_back(static_cast<std::uint32_t>(v));
        }
        entries.push_back(std::move(c));
      }
    q.morphisms.push_back(std::move(entries));
  }
  return q;
}

struct CoverageProfile {
  // counts[l]: distinct elements expressible by words of length <= l
  std::vector<std::uint64_t> counts;
  std::uint64_t closure_order = 0;
  std::uint64_t group_order = 0;
  bool full() const { return closure_order == group_order; }
};

inline CoverageProfile coverage_bfs(const FiniteQuotientFamily& q, std::size_t max_len,
                                    std::uint64_t cap = 1000000) {
  auto order = q.group_order();
  if (!order || *order > cap)
    throw CapExceeded("group order " + std::to_string(q.p) + "^" + std::to_string(q.group_dim) +
                      " exceeds the cap " + std::to_string(cap));
  {
    // keys must fit in 64 bits over the ambient U_k
    mpz_class amb;
    mpz_ui_pow_ui(amb.get_mpz_t(), q.p, upper_dim(q.k));
    if (amb > mpz_class("18446744073709551615"))
      throw CapExceeded("U_" + std::to_string(q.k) + "(F_" + std::to_string(q.p) + ") is too large to index");
  }
  // distinct one-factor steps, in sorted key order
  std::vector<std::pair<std::uint64_t, ModElement>> gens;
  for (std::size_t j = 0; j < q.size(); ++j)
    for (std::uint32_t x = 0; x < q.p; ++x) {
      ModElement g = q.evaluate(j, x);
      ModElement gi = detail::mod_inverse(g, q.k, q.p);
      gens.emplace_back(detail::encode(g, q.p), std::move(g));
      gens.emplace_back(detail::encode(gi, q.p), std::move(gi));
    }
  std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  gens.erase(std::unique(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
             gens.end());

  CoverageProfile prof;
  prof.group_order = *order;
  const ModElement id(upper_dim(q.k));
  std::unordered_set<std::uint64_t> seen{detail::encode(id, q.p)};
  std::vector<ModElement> frontier{id};
  prof.counts.push_back(1);
  while (!frontier.empty()) {
    std::vector<std::pair<std::uint64_t, ModElement>> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        ModElement prod = detail::mod_multiply(e, g.second, q.k, q.p);
        std::uint64_t key = detail::encode(prod, q.p);
        if (seen.insert(key).second) next.emplace_back(key, std::move(prod));
      }
    if (seen.size() > *order) throw std::logic_error("closure larger than the group");
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    frontier.clear();
    for (auto& n : next) frontier.push_back(std::move(n.second));
    if (prof.counts.size() <= max_len) prof.counts.push_back(seen.size());
  }
  while (prof.counts.size() <= max_len) prof.counts.push_back(seen.size());
  prof.closure_order = seen.size();
  return prof;
}

}  // namespace uwaring

#pragma once

// Lattices (finitely generated submodules of O^r) over O = Z or Z[i],
// canonicalized by Hermite normal form.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uwaring/errors.hpp"
#include "uwaring/scalar.hpp"

namespace uwaring {

using RingVec = std::vector<GaussInt>;

namespace detail {

// Row-style HNF: upper echelon, pivots are canonical associates, entries
// above each pivot are canonical residues modulo the pivot.
inline std::vector<RingVec> hermite_rows(const EuclideanRing& ring, std::vector<RingVec> rows,
                                         std::size_t ncols, std::vector<std::size_t>& pivots) {
  pivots.clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    // Euclid on column c among rows r..end until a single nonzero remains.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c].is_zero()) continue;
        if (best == rows.size() || cmp(ring.index_of(rows[i][c]), ring.index_of(rows[best][c])) < 0)
          best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool others = false;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c].is_zero()) continue;
        GaussInt q = ring.quotient(rows[i][c], rows[r][c]);
        for (std::size_t j = c; j < ncols; ++j)
          if (!rows[r][j].is_zero()) rows[i][j] -= q * rows[r][j];
        if (!rows[i][c].is_zero()) others = true;
      }
      if (!others) break;
    }
    if (rows[r][c].is_zero()) continue;
    GaussInt u = ring.normalizing_unit(rows[r][c]);
    for (std::size_t j = c; j < ncols; ++j) rows[r][j] *= u;
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i][c].is_zero()) continue;
      GaussInt rem = ring.residue(rows[i][c], rows[r][c]);
      if (rem == rows[i][c]) continue;
      GaussInt q = ring.quotient(rows[i][c] - rem, rows[r][c]);
      for (std::size_t j = c; j < ncols; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= q * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace detail

class Lattice {
 public:
  Lattice() = default;
  Lattice(RingTag ring, std::size_t ambient_rank, std::vector<RingVec> generators)
      : ring_(ring), r_(ambient_rank), gens_(std::move(generators)) {
    if (!is_integral_ring(ring_)) throw InvalidInput("lattices live over Z or ZI");
    const EuclideanRing er = EuclideanRing::of(ring_);
    for (const auto& g : gens_) {
      if (g.size() != r_) throw InvalidInput("lattice generator has wrong length");
      if (!er.gaussian)
        for (const auto& x : g)
          if (sgn(x.im()) != 0) throw InvalidInput("non-integer generator over Z");
    }
    basis_ = detail::hermite_rows(er, gens_, r_, pivots_);
    for (const auto& g : gens_)
      if (!contains(g)) throw std::logic_error("HNF lost a generator");
    for (const auto& b : basis_)
      if (!Lattice::spanned_by(er, gens_, r_, b)) throw std::logic_error("HNF row outside span");
  }

  static Lattice standard(RingTag ring, std::size_t r) {
    std::vector<RingVec> g(r, RingVec(r));
    for (std::size_t i = 0; i < r; ++i) g[i][i] = GaussInt(1);
    return Lattice(ring, r, std::move(g));
  }

  RingTag ring() const { return ring_; }
  std::size_t ambient_rank() const { return r_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<RingVec>& generators() const { return gens_; }
  const std::vector<RingVec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool full_rank() const { return rank() == r_; }

  bool contains(RingVec v) const {
    if (v.size() != r_) return false;
    const EuclideanRing er = EuclideanRing::of(ring_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::size_t c = pivots_[i];
      if (v[c].is_zero()) continue;
      if (!er.divides(basis_[i][c], v[c])) return false;
      GaussInt q = er.quotient(v[c], basis_[i][c]);
      for (std::size_t j = c; j < r_; ++j) v[j] -= q * basis_[i][j];
    }
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }

  // Canonical representative of v modulo the lattice (meaningful for full
  // rank lattices; coordinates without a pivot are left untouched).
  RingVec residue(RingVec v) const {
    const EuclideanRing er = EuclideanRing::of(ring_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::size_t c = pivots_[i];
      GaussInt rem = er.residue(v[c], basis_[i][c]);
      if (rem == v[c]) continue;
      GaussInt q = er.quotient(v[c] - rem, basis_[i][c]);
      for (std::size_t j = c; j < r_; ++j) v[j] -= q * basis_[i][j];
    }
    return v;
  }

  // Product of the pivot indices: the group index of the lattice in its
  // saturation-free ambient O^r when full rank.
  mpz_class covolume() const {
    const EuclideanRing er = EuclideanRing::of(ring_);
    mpz_class v(1);
    for (std::size_t i = 0; i < basis_.size(); ++i) v *= er.index_of(basis_[i][pivots_[i]]);
    return v;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ring_ == b.ring_ && a.r_ == b.r_ && a.basis_ == b.basis_;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (i) s += ", ";
      s += "(";
      for (std::size_t j = 0; j < r_; ++j) {
        if (j) s += ", ";
        s += basis_[i][j].str();
      }
      s += ")";
    }
    return s + "}";
  }

 private:
  // Independent check that b is in the module spanned by gens: HNF of gens
  // plus b must equal HNF of gens.
  static bool spanned_by(const EuclideanRing& er, const std::vector<RingVec>& gens, std::size_t r,
                         const RingVec& b) {
    std::vector<std::size_t> p1, p2;
    auto with = gens;
    with.push_back(b);
    return detail::hermite_rows(er, gens, r, p1) == detail::hermite_rows(er, with, r, p2);
  }

  RingTag ring_ = RingTag::Z;
  std::size_t r_ = 0;
  std::vector<RingVec> gens_;
  std::vector<RingVec> basis_;
  std::vector<std::size_t> pivots_;
};

inline Lattice hermite_normal_form(RingTag ring, std::size_t rank, std::vector<RingVec> gens) {
  return Lattice(ring, rank, std::move(gens));
}

// Group index [ambient : sub], or nullopt when sub has lower rank (infinite).
inline std::optional<mpz_class> lattice_index(const Lattice& sub, const Lattice& ambient) {
  if (sub.ambient_rank() != ambient.ambient_rank() || sub.ring() != ambient.ring())
    throw InvalidInput("lattice_index: lattices live in different ambient modules");
  for (const auto& b : sub.basis())
    if (!ambient.contains(b)) throw NotSublattice("lattice_index: sub is not contained in ambient");
  if (sub.rank() < ambient.rank()) return std::nullopt;
  mpz_class a = ambient.covolume();
  mpz_class s = sub.covolume();
  return mpz_class(s / a);
}

// Limit of the sumset chain X, X+X, ... for a signed base set X (closed under
// negation): the subgroup generated, i.e. the lattice spanned by the base
// vectors and their pairwise differences.
inline Lattice stabilize_sumset(RingTag ring, std::size_t rank, const std::vector<RingVec>& base) {
  std::vector<RingVec> gens = base;
  for (std::size_t a = 0; a < base.size(); ++a)
    for (std::size_t b = a + 1; b < base.size(); ++b) {
      RingVec d(rank);
      for (std::size_t i = 0; i < rank; ++i) d[i] = base[b][i] - base[a][i];
      gens.push_back(std::move(d));
    }
  return Lattice(ring, rank, std::move(gens));
}

}  // namespace uwaring

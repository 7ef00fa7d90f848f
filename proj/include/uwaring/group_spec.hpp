#pragma once

// A unipotent group given by a Lie subalgebra of n_k, with its derived series
// and the linear coordinates on each derived quotient.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "uwaring/errors.hpp"
#include "uwaring/linalg.hpp"
#include "uwaring/matrix.hpp"
#include "uwaring/scalar.hpp"

namespace uwaring {

// Subalgebra stored as a reduced echelon basis in upper-entry coordinates.
struct Subalgebra {
  std::size_t k = 0;
  Echelon<Scalar> basis;

  std::size_t dim() const { return basis.rank(); }
  bool contains(const Vec<Scalar>& coords) const { return in_span(basis, coords); }
  bool contains(const NilMatrix& n) const { return contains(n.coords()); }
  std::vector<NilMatrix> matrices() const {
    std::vector<NilMatrix> out;
    for (const auto& row : basis.rows) out.push_back(NilMatrix::from_coords(k, row));
    return out;
  }
};

// Linear coordinates on g^(level) / g^(level+1).
//
// The complement basis is obtained by reducing g^(level) modulo g^(level+1)
// and putting the remainder in reduced echelon form, so the coordinates of v
// are read off at the complement's pivot positions after clearing the
// g^(level+1) pivots.
class QuotientMap {
 public:
  QuotientMap() = default;
  QuotientMap(std::size_t level, const Subalgebra& upper, const Subalgebra& lower)
      : level_(level), k_(upper.k), lower_(lower.basis) {
    std::vector<Vec<Scalar>> rem;
    for (const auto& row : upper.basis.rows) {
      Vec<Scalar> r = reduce(lower_, row);
      if (!is_zero_vec(r)) rem.push_back(std::move(r));
    }
    complement_ = rref(std::move(rem), upper_dim(k_));
  }

  std::size_t level() const { return level_; }
  std::size_t dim() const { return complement_.rank(); }
  const Echelon<Scalar>& complement() const { return complement_; }
  // Entry positions (in upper coordinates) read by each quotient coordinate.
  const std::vector<std::size_t>& positions() const { return complement_.pivots; }

  // v must lie in g^(level); returns its dim() quotient coordinates.
  Vec<Scalar> apply(const Vec<Scalar>& v) const {
    Vec<Scalar> r = reduce(lower_, v);
    Vec<Scalar> c;
    c.reserve(dim());
    for (std::size_t p : complement_.pivots) c.push_back(r[p]);
    return c;
  }
  Vec<Scalar> apply(const NilMatrix& n) const { return apply(n.coords()); }

  // Section of the projection: sum_i c_i * complement_i.
  NilMatrix lift(const Vec<Scalar>& c) const {
    Vec<Scalar> v(upper_dim(k_));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!complement_.rows[i][j].is_zero()) v[j] += c[i] * complement_.rows[i][j];
    }
    return NilMatrix::from_coords(k_, v);
  }

 private:
  std::size_t level_ = 0;
  std::size_t k_ = 0;
  Echelon<Scalar> lower_;
  Echelon<Scalar> complement_;
};

class GroupSpec {
 public:
  GroupSpec(std::size_t k, RingTag ring, std::vector<NilMatrix> lie_basis)
      : k_(k), ring_(ring), lie_basis_(std::move(lie_basis)) {
    if (k_ == 0) throw InvalidInput("group size k must be positive");
    std::vector<Vec<Scalar>> rows;
    for (const auto& b : lie_basis_) {
      if (b.size() != k_) throw InvalidInput("lie basis element has wrong size");
      rows.push_back(b.coords());
    }
    Subalgebra top{k_, rref(rows, upper_dim(k_))};
    if (top.dim() != lie_basis_.size()) throw InvalidInput("lie basis is linearly dependent");
    for (std::size_t a = 0; a < lie_basis_.size(); ++a)
      for (std::size_t b = a + 1; b < lie_basis_.size(); ++b)
        if (!top.contains(bracket(lie_basis_[a], lie_basis_[b]))) throw NotClosed(a + 1, b + 1);

    series_.push_back(std::move(top));
    while (series_.back().dim() > 0) {
      const auto gens = series_.back().matrices();
      std::vector<Vec<Scalar>> br;
      for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b) {
          NilMatrix c = bracket(gens[a], gens[b]);
          if (!c.is_zero()) br.push_back(c.coords());
        }
      series_.push_back(Subalgebra{k_, rref(std::move(br), upper_dim(k_))});
    }
    for (std::size_t l = 0; l + 1 < series_.size(); ++l)
      quotients_.emplace_back(l, series_[l], series_[l + 1]);
  }

  static GroupSpec full_unitriangular(std::size_t k, RingTag ring) {
    std::vector<NilMatrix> basis;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) basis.push_back(NilMatrix::unit(k, i, j));
    return GroupSpec(k, ring, std::move(basis));
  }

  GroupSpec with_ring(RingTag ring) const {
    GroupSpec g = *this;
    g.ring_ = ring;
    return g;
  }

  std::size_t k() const { return k_; }
  RingTag ring() const { return ring_; }
  std::size_t dim() const { return series_.front().dim(); }
  const std::vector<NilMatrix>& lie_basis() const { return lie_basis_; }

  // g = g^(0) > g^(1) > ... > g^(L) = 0; the last member is always zero.
  const std::vector<Subalgebra>& derived_series() const { return series_; }
  // Number of nonzero quotients, i.e. L.
  std::size_t derived_length() const { return quotients_.size(); }

  const QuotientMap& quotient_map(std::size_t level) const {
    if (level >= quotients_.size()) throw BadLevel(level, quotients_.size());
    return quotients_[level];
  }

  bool contains(const NilMatrix& n, std::size_t level = 0) const {
    if (level >= series_.size()) throw BadLevel(level, series_.size());
    return series_[level].contains(n);
  }
  bool contains(const UniMatrix& u, std::size_t level = 0) const {
    return u.size() == k_ && contains(log(u), level);
  }

 private:
  std::size_t k_;
  RingTag ring_;
  std::vector<NilMatrix> lie_basis_;
  std::vector<Subalgebra> series_;
  std::vector<QuotientMap> quotients_;
};

using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

inline const std::vector<Subalgebra>& derived_series(const GroupSpec& spec) {
  return spec.derived_series();
}

inline const QuotientMap& quotient_map(const GroupSpec& spec, std::size_t level) {
  return spec.quotient_map(level);
}

}  // namespace uwaring

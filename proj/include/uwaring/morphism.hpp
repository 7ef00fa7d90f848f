#pragma once

// Polynomial one-parameter maps A^1 -> G, their abelianized coefficients,
// and the rank test that decides whether a family is generating.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uwaring/errors.hpp"
#include "uwaring/group_spec.hpp"
#include "uwaring/linalg.hpp"
#include "uwaring/matrix.hpp"
#include "uwaring/polynomial.hpp"

namespace uwaring {

using Poly = Polynomial<Scalar>;

// Coefficient matrices of a polynomial matrix: result[d](i, j) is the x^d
// coefficient of entry (i, j).
inline std::vector<ScalarMatrix> coefficient_matrices(const PolyMatrix& m) {
  const std::size_t k = m.size();
  std::size_t deg = 0;
  bool any = false;
  for (const auto& p : m.entries())
    if (!p.is_zero()) {
      deg = std::max(deg, p.degree());
      any = true;
    }
  std::vector<ScalarMatrix> out(any ? deg + 1 : 0, ScalarMatrix(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto& c = m(i, j).coefficients();
      for (std::size_t d = 0; d < c.size(); ++d) out[d](i, j) = c[d];
    }
  return out;
}

inline UniMatrix evaluate(const PolyMatrix& m, const Scalar& x) {
  return UniMatrix(m.map([&](const Poly& p) { return p(x); }));
}

inline std::string vec_str(const Vec<Scalar>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

// A validated polynomial map A^1 -> G^(level). The polynomial logarithm is
// cached because every downstream step reads its coefficients.
class PolyMorphism {
 public:
  const GroupSpecPtr& spec() const { return spec_; }
  std::size_t level() const { return level_; }
  const PolyMatrix& entries() const { return entries_; }
  const PolyMatrix& log_entries() const { return log_; }
  // x^d coefficients of log f(x), each a Lie element of g^(level).
  const std::vector<ScalarMatrix>& log_coefficients() const { return log_coeffs_; }

  UniMatrix operator()(const Scalar& x) const { return evaluate(entries_, x); }

  // f(a x + b)
  PolyMorphism reparametrized(const Scalar& a, const Scalar& b) const {
    PolyMatrix e = entries_.map([&](const Poly& p) { return p.compose_affine(a, b); });
    return PolyMorphism(spec_, std::move(e), level_);
  }
  PolyMorphism left_translated(const UniMatrix& g) const {
    PolyMatrix gm = g.matrix().map([](const Scalar& s) { return Poly(s); });
    return PolyMorphism(spec_, gm * entries_, level_);
  }
  PolyMorphism right_translated(const UniMatrix& g) const {
    PolyMatrix gm = g.matrix().map([](const Scalar& s) { return Poly(s); });
    return PolyMorphism(spec_, entries_ * gm, level_);
  }

  friend PolyMorphism validate_morphism(PolyMatrix entries, GroupSpecPtr spec, std::size_t level);

 private:
  PolyMorphism(GroupSpecPtr spec, PolyMatrix entries, std::size_t level)
      : spec_(std::move(spec)), level_(level), entries_(std::move(entries)) {
    if (entries_.size() != spec_->k())
      throw InvalidInput("morphism has size " + std::to_string(entries_.size()) + ", group has k = " +
                         std::to_string(spec_->k()));
    if (!entries_.is_unitriangular())
      throw NotUnitriangular("morphism is not unitriangular identically in x");
    log_ = unipotent_log(entries_);
    log_coeffs_ = coefficient_matrices(log_);
    for (std::size_t d = 0; d < log_coeffs_.size(); ++d) {
      NilMatrix n(log_coeffs_[d]);
      if (!spec_->contains(n, level_))
        throw NotInGroup("coefficient of x^" + std::to_string(d) + " of log f(x) is outside g^(" +
                             std::to_string(level_) + ")",
                         n.str());
    }
  }

  GroupSpecPtr spec_;
  std::size_t level_ = 0;
  PolyMatrix entries_;
  PolyMatrix log_;
  std::vector<ScalarMatrix> log_coeffs_;
};

// Checks unitriangularity identically in x, then that every coefficient of
// log f(x) lies in g^(level).
inline PolyMorphism validate_morphism(PolyMatrix entries, GroupSpecPtr spec,
                                      std::size_t level = 0) {
  return PolyMorphism(std::move(spec), std::move(entries), level);
}

class MorphismFamily {
 public:
  MorphismFamily(GroupSpecPtr spec, std::vector<PolyMorphism> morphisms)
      : spec_(std::move(spec)), morphisms_(std::move(morphisms)) {
    for (const auto& f : morphisms_)
      if (f.spec().get() != spec_.get() && f.spec()->k() != spec_->k())
        throw InvalidInput("family members do not share one group");
  }

  const GroupSpecPtr& spec() const { return spec_; }
  std::size_t size() const { return morphisms_.size(); }
  bool empty() const { return morphisms_.empty(); }
  const PolyMorphism& operator[](std::size_t j) const { return morphisms_[j]; }
  const std::vector<PolyMorphism>& morphisms() const { return morphisms_; }

 private:
  GroupSpecPtr spec_;
  std::vector<PolyMorphism> morphisms_;
};

// a[i][j][k]: x^k coefficient of quotient coordinate i of the projected log
// of morphism j, at one derived level.
struct AbelianizedFamily {
  std::size_t level = 0;
  std::size_t m = 0;  // quotient dimension
  std::size_t n = 0;  // number of morphisms
  std::size_t d = 0;  // max degree over all projected coordinates
  std::vector<std::vector<std::vector<Scalar>>> a;

  const Scalar& at(std::size_t i, std::size_t j, std::size_t k) const { return a[i][j][k]; }

  // Highest k with a nonzero column a[.][j][k]; 0 for a constant morphism.
  std::size_t degree_of(std::size_t j) const {
    std::size_t best = 0;
    for (std::size_t k = 1; k <= d; ++k)
      for (std::size_t i = 0; i < m; ++i)
        if (!a[i][j][k].is_zero()) best = k;
    return best;
  }
  bool column_nonzero(std::size_t j, std::size_t k) const {
    for (std::size_t i = 0; i < m; ++i)
      if (!a[i][j][k].is_zero()) return true;
    return false;
  }
  Vec<Scalar> column(std::size_t j, std::size_t k) const {
    Vec<Scalar> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = a[i][j][k];
    return v;
  }
  // sum_k a[.][j][k] x^k
  Vec<Scalar> image(std::size_t j, const Scalar& x) const {
    Vec<Scalar> v(m);
    Scalar p(1);
    for (std::size_t k = 0; k <= d; ++k) {
      for (std::size_t i = 0; i < m; ++i)
        if (!a[i][j][k].is_zero()) v[i] += a[i][j][k] * p;
      p *= x;
    }
    return v;
  }
};

inline AbelianizedFamily abelianize(const std::vector<PolyMorphism>& fam, const QuotientMap& q) {
  AbelianizedFamily ab;
  ab.level = q.level();
  ab.m = q.dim();
  ab.n = fam.size();
  // projected[j][k] = quotient coordinates of the x^k coefficient
  std::vector<std::vector<Vec<Scalar>>> projected(fam.size());
  for (std::size_t j = 0; j < fam.size(); ++j) {
    for (const auto& c : fam[j].log_coefficients()) projected[j].push_back(q.apply(upper_coords(c)));
    while (!projected[j].empty() && is_zero_vec(projected[j].back())) projected[j].pop_back();
    if (!projected[j].empty()) ab.d = std::max(ab.d, projected[j].size() - 1);
  }
  ab.a.assign(ab.m, std::vector<std::vector<Scalar>>(ab.n, std::vector<Scalar>(ab.d + 1)));
  for (std::size_t j = 0; j < fam.size(); ++j)
    for (std::size_t k = 0; k < projected[j].size(); ++k)
      for (std::size_t i = 0; i < ab.m; ++i) ab.a[i][j][k] = projected[j][k][i];
  return ab;
}

inline AbelianizedFamily abelianize(const MorphismFamily& fam, std::size_t level = 0) {
  return abelianize(fam.morphisms(), fam.spec()->quotient_map(level));
}

struct GeneratingReport {
  bool generating = false;
  std::size_t rank = 0;
  std::size_t m = 0;
  // On failure: nonzero b with sum_i b_i a[i][j][k] = 0 for all j and k >= 1.
  Vec<Scalar> witness;
};

inline GeneratingReport is_generating(const AbelianizedFamily& ab) {
  std::vector<Vec<Scalar>> rows;
  for (std::size_t j = 0; j < ab.n; ++j)
    for (std::size_t k = 1; k <= ab.d; ++k)
      if (ab.column_nonzero(j, k)) rows.push_back(ab.column(j, k));
  GeneratingReport rep;
  rep.m = ab.m;
  rep.rank = rank_of(rows, ab.m);
  rep.generating = rep.rank == ab.m;
  if (!rep.generating) rep.witness = *kernel_vector(std::move(rows), ab.m);
  return rep;
}

}  // namespace uwaring

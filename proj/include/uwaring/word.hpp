#pragma once

// Signed words f_{j1}(x1)^{e1} ... f_{jL}(xL)^{eL} over a morphism family,
// and word templates with one free argument (the descent morphisms).

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "uwaring/errors.hpp"
#include "uwaring/matrix.hpp"
#include "uwaring/morphism.hpp"

namespace uwaring {

struct Factor {
  std::size_t index = 0;  // zero-based morphism index
  Scalar arg;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const Factor& a, const Factor& b) {
    return a.index == b.index && a.exponent == b.exponent && a.arg == b.arg;
  }
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Factor> f) : factors_(std::move(f)) {}

  std::size_t length() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  const std::vector<Factor>& factors() const { return factors_; }

  void push(Factor f) { factors_.push_back(std::move(f)); }
  void append(const Word& w) { factors_.insert(factors_.end(), w.factors_.begin(), w.factors_.end()); }

  Word inverse() const {
    Word w;
    w.factors_.reserve(factors_.size());
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
      w.factors_.push_back({it->index, it->arg, -it->exponent});
    return w;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<Factor> factors_;
};

inline UniMatrix eval_factor(const Factor& f, const std::vector<PolyMorphism>& fam) {
  if (f.index >= fam.size()) throw IndexOutOfRange(f.index, fam.size());
  UniMatrix v = fam[f.index](f.arg);
  return f.exponent > 0 ? v : v.inverse();
}

inline UniMatrix eval_word(const Word& w, const std::vector<PolyMorphism>& fam, std::size_t k) {
  UniMatrix acc = UniMatrix::identity(k);
  for (const auto& f : w.factors()) acc *= eval_factor(f, fam);
  return acc;
}

inline UniMatrix eval_word(const Word& w, const MorphismFamily& fam) {
  return eval_word(w, fam.morphisms(), fam.spec()->k());
}

// Drops factors that evaluate to the identity and cancels adjacent inverse
// pairs. The evaluation is unchanged.
inline Word reduce_word(const Word& w, const std::vector<PolyMorphism>& fam) {
  std::vector<Factor> out;
  for (const auto& f : w.factors()) {
    if (f.index >= fam.size()) throw IndexOutOfRange(f.index, fam.size());
    if (fam[f.index](f.arg).is_identity()) continue;
    if (!out.empty() && out.back().index == f.index && out.back().exponent == -f.exponent &&
        out.back().arg == f.arg) {
      out.pop_back();
      continue;
    }
    out.push_back(f);
  }
  return Word(std::move(out));
}

// f_index(slope * x + offset)^exponent over the base family.
struct TemplateFactor {
  std::size_t index = 0;
  Scalar slope;
  Scalar offset;
  int exponent = 1;

  friend bool operator==(const TemplateFactor& a, const TemplateFactor& b) {
    return a.index == b.index && a.exponent == b.exponent && a.slope == b.slope &&
           a.offset == b.offset;
  }
};

using WordTemplate = std::vector<TemplateFactor>;

inline WordTemplate identity_template(std::size_t index) { return {{index, Scalar(1), Scalar(0), 1}}; }

inline WordTemplate constant_template(const Word& w) {
  WordTemplate t;
  for (const auto& f : w.factors()) t.push_back({f.index, Scalar(0), f.arg, f.exponent});
  return t;
}

inline WordTemplate inverse_template(const WordTemplate& t) {
  WordTemplate r;
  for (auto it = t.rbegin(); it != t.rend(); ++it)
    r.push_back({it->index, it->slope, it->offset, -it->exponent});
  return r;
}

inline Word instantiate(const WordTemplate& t, const Scalar& x) {
  Word w;
  for (const auto& f : t) w.push({f.index, f.slope * x + f.offset, f.exponent});
  return w;
}

// Polynomial matrix of the template as a function of its free argument.
inline PolyMatrix template_matrix(const WordTemplate& t, const std::vector<PolyMorphism>& base,
                                  std::size_t k) {
  PolyMatrix acc = PolyMatrix::identity(k);
  for (const auto& f : t) {
    if (f.index >= base.size()) throw IndexOutOfRange(f.index, base.size());
    PolyMatrix m = base[f.index].entries().map(
        [&](const Poly& p) { return p.compose_affine(f.slope, f.offset); });
    acc = acc * (f.exponent > 0 ? m : unitriangular_inverse(m));
  }
  return acc;
}

// Same simplifications as reduce_word, for constant factors and exact
// adjacent inverses.
inline WordTemplate reduce_template(const WordTemplate& t, const std::vector<PolyMorphism>& base) {
  WordTemplate out;
  for (const auto& f : t) {
    if (f.slope.is_zero() && base[f.index](f.offset).is_identity()) continue;
    if (!out.empty() && out.back().index == f.index && out.back().exponent == -f.exponent &&
        out.back().slope == f.slope && out.back().offset == f.offset) {
      out.pop_back();
      continue;
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace uwaring

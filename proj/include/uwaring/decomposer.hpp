#pragma once

// The easier-Waring solver: write a group element as a signed word in a
// generating family.
//
// Level s of the derived series is handled by a family mapping into G^(s).
// Level 0 uses the input family. Each later family is built from commutators
// [w, f_j(x)], where f_j comes from the previous family and w is a word that
// realizes a chosen direction of the previous quotient. A target is peeled
// one quotient at a time: solve the linear system for that quotient, realize
// the solution with moment-curve points, divide the result off, and descend.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uwaring/errors.hpp"
#include "uwaring/group_spec.hpp"
#include "uwaring/linalg.hpp"
#include "uwaring/moments.hpp"
#include "uwaring/morphism.hpp"
#include "uwaring/word.hpp"

namespace uwaring {

enum class Mode { Field, Integral };

struct DecomposeOptions {
  // Largest multiplier tried for each commutator direction.
  std::size_t gamma_cap = 8;
};

namespace detail {

inline mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Smallest positive integer D with D * s in Z[i] (or Z).
inline mpz_class clearing_denominator(const Scalar& s) {
  return lcm(s.re().get_den(), s.im().get_den());
}

}  // namespace detail

// Solves sum_{j,k>=1} a[i][j][k] y_{jk} = c_i at one level and realizes each
// per-morphism vector y_j with moment-curve points.
//
// The particular solution comes from a tracked RREF of the coefficient
// matrix (free unknowns are zero), so y = S c for a fixed rational matrix S.
// Over rings, coordinate i is guaranteed solvable once c_i is a multiple of
// divisors()[i], the smallest integer pushing column i of S into the moment
// solver's integral guarantee.
class AbelianSolver {
 public:
  AbelianSolver() = default;
  AbelianSolver(AbelianizedFamily ab, RingTag ring, Mode mode)
      : ab_(std::move(ab)), ring_(ring), mode_(mode) {
    if (mode_ == Mode::Integral && !is_integral_ring(ring_))
      throw InvalidInput("integral decomposition needs ring Z or ZI");
    report_ = is_generating(ab_);
    degree_.resize(ab_.n);
    required_.resize(ab_.n);
    for (std::size_t j = 0; j < ab_.n; ++j) {
      degree_[j] = ab_.degree_of(j);
      required_[j].resize(degree_[j]);
      for (std::size_t k = 1; k <= degree_[j]; ++k) {
        required_[j][k - 1] = ab_.column_nonzero(j, k);
        if (required_[j][k - 1]) columns_.push_back({j, k});
      }
    }
    // rows of the system: one per quotient coordinate
    std::vector<Vec<Scalar>> rows(ab_.m, Vec<Scalar>(columns_.size()));
    for (std::size_t i = 0; i < ab_.m; ++i)
      for (std::size_t c = 0; c < columns_.size(); ++c)
        rows[i][c] = ab_.at(i, columns_[c].first, columns_[c].second);
    echelon_ = rref(std::move(rows), columns_.size(), true);

    divisors_.assign(ab_.m, mpz_class(1));
    if (mode_ == Mode::Integral && report_.generating) {
      std::vector<IntegralGuarantee> guarantee;
      for (std::size_t j = 0; j < ab_.n; ++j)
        guarantee.push_back(integral_guarantee(degree_[j], required_[j]));
      for (std::size_t r = 0; r < echelon_.rank(); ++r) {
        const auto [j, k] = columns_[echelon_.pivots[r]];
        const Scalar lam(guarantee[j].divisor[k - 1]);
        for (std::size_t i = 0; i < ab_.m; ++i) {
          const Scalar& s = echelon_.transform[r][i];
          if (s.is_zero()) continue;
          divisors_[i] = detail::lcm(divisors_[i], detail::clearing_denominator(s / lam));
        }
      }
    }
  }

  const AbelianizedFamily& abelianized() const { return ab_; }
  const GeneratingReport& report() const { return report_; }
  bool generating() const { return report_.generating; }
  Mode mode() const { return mode_; }
  const std::vector<mpz_class>& divisors() const { return divisors_; }
  std::size_t degree_of(std::size_t j) const { return degree_[j]; }

  // y[j][k-1] for k = 1..degree_of(j)
  std::vector<Vec<Scalar>> solve_linear(const Vec<Scalar>& c) const {
    if (!generating()) throw NotGenerating(ab_.level, vec_str(report_.witness));
    std::vector<Vec<Scalar>> y(ab_.n);
    for (std::size_t j = 0; j < ab_.n; ++j) y[j].assign(degree_[j], Scalar{});
    for (std::size_t r = 0; r < echelon_.rank(); ++r) {
      Scalar v;
      for (std::size_t i = 0; i < ab_.m; ++i)
        if (!echelon_.transform[r][i].is_zero() && !c[i].is_zero()) v += echelon_.transform[r][i] * c[i];
      const auto [j, k] = columns_[echelon_.pivots[r]];
      y[j][k - 1] = v;
    }
    return y;
  }

  // True when c lies in the lattice of guaranteed targets (always over fields).
  bool guaranteed(const Vec<Scalar>& c) const {
    if (mode_ == Mode::Field) return true;
    for (std::size_t i = 0; i < ab_.m; ++i)
      if (!in_ring(c[i] / Scalar(divisors_[i]))) return false;
    return true;
  }

  std::string divisors_str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
      if (i) s += ", ";
      s += divisors_[i].get_str();
    }
    return s + ")";
  }

  // Componentwise canonical residue of c modulo divisors().
  std::string residue_str(const Vec<Scalar>& c) const {
    const EuclideanRing er = EuclideanRing::of(ring_);
    Vec<Scalar> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto gi = GaussInt::from_scalar(c[i]);
      if (!gi || (ring_ == RingTag::Z && !c[i].is_real()))
        r[i] = c[i];
      else
        r[i] = er.residue(*gi, GaussInt(divisors_[i])).to_scalar();
    }
    return vec_str(r);
  }

  // A word over this level's family whose abelianized image is exactly c.
  Word solve(const Vec<Scalar>& c) const {
    if (c.size() != ab_.m) throw InvalidInput("quotient target has wrong dimension");
    if (!generating()) throw NotGenerating(ab_.level, vec_str(report_.witness));
    if (is_zero_vec(c)) return {};
    if (!guaranteed(c)) throw DivisibilityError(residue_str(c), divisors_str());
    const auto y = solve_linear(c);
    Word w;
    for (std::size_t j = 0; j < ab_.n; ++j) {
      if (is_zero_vec(y[j])) continue;
      MomentRepresentation rep = mode_ == Mode::Field
                                     ? solve_moments_field(y[j], required_[j])
                                     : solve_moments_integral(y[j], ring_, required_[j]);
      for (const auto& x : rep.plus) w.push({j, x, +1});
      for (const auto& x : rep.minus) w.push({j, x, -1});
    }
    if (abelian_image(w) != c) throw std::logic_error("abelian solve produced the wrong image");
    return w;
  }

  // sum of e * (projected log f_j(x)) over the word's factors
  Vec<Scalar> abelian_image(const Word& w) const {
    Vec<Scalar> v(ab_.m);
    for (const auto& f : w.factors()) {
      Vec<Scalar> p = ab_.image(f.index, f.arg);
      for (std::size_t i = 0; i < ab_.m; ++i) {
        if (f.exponent > 0)
          v[i] += p[i];
        else
          v[i] -= p[i];
      }
    }
    return v;
  }

 private:
  bool in_ring(const Scalar& s) const {
    return s.is_integral() && (ring_ != RingTag::Z || s.is_real());
  }

  AbelianizedFamily ab_;
  RingTag ring_ = RingTag::Q;
  Mode mode_ = Mode::Field;
  GeneratingReport report_;
  std::vector<std::size_t> degree_;
  std::vector<std::vector<bool>> required_;
  std::vector<std::pair<std::size_t, std::size_t>> columns_;  // (j, k) per unknown
  Echelon<Scalar> echelon_;
  std::vector<mpz_class> divisors_;
};

struct AbelianDecomposition {
  std::vector<Vec<Scalar>> y;  // y[j][k-1]
  Word word;
};

inline AbelianDecomposition decompose_abelian(const Vec<Scalar>& c, const AbelianizedFamily& ab,
                                              RingTag ring) {
  AbelianSolver s(ab, ring, is_integral_ring(ring) ? Mode::Integral : Mode::Field);
  AbelianDecomposition out;
  out.word = s.solve(c);
  out.y = s.solve_linear(c);
  return out;
}

// One level of the descent: a family mapping into G^(level), each member
// given both as a polynomial matrix and as a template over the input family.
struct DerivedFamilyStage {
  std::size_t level = 0;
  std::vector<PolyMorphism> family;
  std::vector<WordTemplate> expansion;
  AbelianSolver solver;

  std::size_t template_length() const {
    std::size_t t = 0;
    for (const auto& e : expansion) t = std::max(t, e.size());
    return t;
  }

  // Rewrites a word over this stage's family as a word over the input family.
  Word flatten(const Word& w) const {
    Word out;
    for (const auto& f : w.factors()) {
      Word piece = instantiate(expansion[f.index], f.arg);
      out.append(f.exponent > 0 ? piece : piece.inverse());
    }
    return out;
  }
};

namespace detail {

inline std::vector<Vec<Scalar>> candidate_directions(std::size_t m) {
  std::vector<Vec<Scalar>> dirs;
  for (std::size_t i = 0; i < m; ++i) {
    Vec<Scalar> v(m);
    v[i] = 1;
    dirs.push_back(std::move(v));
  }
  for (int sign : {1, -1})
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        Vec<Scalar> v(m);
        v[a] = 1;
        v[b] = sign;
        dirs.push_back(std::move(v));
      }
  return dirs;
}

}  // namespace detail

inline DerivedFamilyStage make_base_stage(const MorphismFamily& fam, Mode mode) {
  DerivedFamilyStage st;
  st.level = 0;
  st.family = fam.morphisms();
  for (std::size_t j = 0; j < fam.size(); ++j) st.expansion.push_back(identity_template(j));
  st.solver = AbelianSolver(abelianize(st.family, fam.spec()->quotient_map(0)), fam.spec()->ring(), mode);
  return st;
}

// Builds the family for level stage.level + 1 from commutators
// [w, f_j(x)] (and the other interleaving [w^{-1}, f_j(x)]), accepting a
// candidate only when it enlarges the span of abelianized coefficient vectors
// at the next level. Directions are tried as basis vectors first, then sums
// and differences of two basis vectors, each scaled by 1..gamma_cap (and by
// the guaranteed divisors over rings so that w has ring arguments).
inline DerivedFamilyStage build_commutator_family(const DerivedFamilyStage& stage,
                                                  const MorphismFamily& base, Mode mode,
                                                  const DecomposeOptions& opts = {}) {
  const GroupSpec& spec = *base.spec();
  const std::size_t next = stage.level + 1;
  DerivedFamilyStage out;
  out.level = next;
  if (next >= spec.derived_length()) return out;
  if (!stage.solver.generating())
    throw NotGenerating(stage.level, vec_str(stage.solver.report().witness));

  const QuotientMap& q = spec.quotient_map(next);
  const std::size_t m_next = q.dim();
  const std::size_t k = spec.k();
  const std::size_t m = stage.solver.abelianized().m;
  Echelon<Scalar> span;
  span.ncols = m_next;
  std::vector<Vec<Scalar>> accepted_rows;

  auto coefficient_rows = [&](const PolyMorphism& h) {
    AbelianizedFamily a = abelianize(std::vector<PolyMorphism>{h}, q);
    std::vector<Vec<Scalar>> rows;
    for (std::size_t kk = 1; kk <= a.d; ++kk)
      if (a.column_nonzero(0, kk)) rows.push_back(a.column(0, kk));
    return rows;
  };

  for (const auto& dir : detail::candidate_directions(m)) {
    for (std::size_t mu = 1; mu <= opts.gamma_cap; ++mu) {
      if (span.rank() == m_next) break;
      Vec<Scalar> gamma(m);
      for (std::size_t i = 0; i < m; ++i) {
        gamma[i] = dir[i] * Scalar(static_cast<long>(mu));
        if (mode == Mode::Integral) gamma[i] *= Scalar(stage.solver.divisors()[i]);
      }
      const Word w_stage = stage.solver.solve(gamma);
      const UniMatrix w_val = eval_word(w_stage, stage.family, k);
      const WordTemplate w_tpl = reduce_template(constant_template(stage.flatten(w_stage)), base.morphisms());
      const PolyMatrix w_mat = w_val.matrix().map([](const Scalar& s) { return Poly(s); });
      const PolyMatrix w_inv = w_val.inverse().matrix().map([](const Scalar& s) { return Poly(s); });

      for (std::size_t j = 0; j < stage.family.size() && span.rank() < m_next; ++j) {
        const PolyMatrix& f = stage.family[j].entries();
        const PolyMatrix f_inv = unitriangular_inverse(f);
        // try1: w f(x) w^-1 f(x)^-1, try2: w^-1 f(x) w f(x)^-1
        for (int variant = 0; variant < 2; ++variant) {
          const PolyMatrix& a = variant == 0 ? w_mat : w_inv;
          const PolyMatrix& b = variant == 0 ? w_inv : w_mat;
          PolyMorphism h = validate_morphism(a * f * b * f_inv, base.spec(), next);
          auto rows = coefficient_rows(h);
          bool grows = false;
          for (const auto& r : rows)
            if (!in_span(span, r)) grows = true;
          if (!grows) continue;
          for (auto& r : rows) accepted_rows.push_back(std::move(r));
          span = rref(accepted_rows, m_next);

          WordTemplate tpl = variant == 0 ? w_tpl : inverse_template(w_tpl);
          const WordTemplate& fj = stage.expansion[j];
          tpl.insert(tpl.end(), fj.begin(), fj.end());
          const WordTemplate back = variant == 0 ? inverse_template(w_tpl) : w_tpl;
          tpl.insert(tpl.end(), back.begin(), back.end());
          const WordTemplate fj_inv = inverse_template(fj);
          tpl.insert(tpl.end(), fj_inv.begin(), fj_inv.end());
          out.family.push_back(std::move(h));
          out.expansion.push_back(reduce_template(tpl, base.morphisms()));
          break;
        }
      }
    }
    if (span.rank() == m_next) break;
  }
  if (span.rank() < m_next) {
    auto b = kernel_vector(accepted_rows, m_next);
    throw DescentStalled(next, vec_str(*b));
  }
  out.solver = AbelianSolver(abelianize(out.family, q), spec.ring(), mode);
  return out;
}

struct StageShape {
  std::size_t morphisms = 0;        // n_s
  std::size_t degree = 0;           // d_s
  std::size_t template_length = 0;  // longest expansion T_s
};

// B = sum_s n_s * 2 (2^{d_s} - 1) * T_s. Each level uses at most one moment
// representation per morphism, of size at most 2 (2^d - 1), and each factor
// flattens into at most T_s factors of the input family.
inline mpz_class length_bound(const std::vector<StageShape>& shapes) {
  mpz_class b(0);
  for (const auto& s : shapes) {
    mpz_class pts;
    mpz_ui_pow_ui(pts.get_mpz_t(), 2, s.degree);
    pts = 2 * (pts - 1);
    b += mpz_class(static_cast<unsigned long>(s.morphisms)) * pts *
         mpz_class(static_cast<unsigned long>(s.template_length));
  }
  return b;
}

struct Decomposition {
  Word word;
  mpz_class bound;
};

class Decomposer {
 public:
  Decomposer(MorphismFamily fam, Mode mode, DecomposeOptions opts = {})
      : fam_(std::move(fam)), mode_(mode), opts_(opts) {
    const GroupSpec& spec = *fam_.spec();
    if (mode_ == Mode::Integral && !is_integral_ring(spec.ring()))
      throw InvalidInput("integral decomposition needs ring Z or ZI");
    if (spec.derived_length() == 0) return;
    stages_.push_back(make_base_stage(fam_, mode_));
    if (!stages_[0].solver.generating())
      throw NotGenerating(0, vec_str(stages_[0].solver.report().witness));
    while (stages_.size() < spec.derived_length())
      stages_.push_back(build_commutator_family(stages_.back(), fam_, mode_, opts_));
  }

  const MorphismFamily& family() const { return fam_; }
  Mode mode() const { return mode_; }
  const std::vector<DerivedFamilyStage>& stages() const { return stages_; }

  std::vector<StageShape> shapes() const {
    std::vector<StageShape> s;
    for (const auto& st : stages_)
      s.push_back({st.family.size(), st.solver.abelianized().d, st.template_length()});
    return s;
  }
  mpz_class length_bound() const { return uwaring::length_bound(shapes()); }

  // Word over the input family realizing quotient coordinates c at level s
  // (its evaluation lies in G^(s) and projects to c).
  Word realize_level(std::size_t s, const Vec<Scalar>& c) const {
    return stages_.at(s).flatten(stages_.at(s).solver.solve(c));
  }

  Decomposition decompose(const UniMatrix& g) const {
    const GroupSpec& spec = *fam_.spec();
    if (g.size() != spec.k()) throw InvalidInput("target has the wrong size");
    if (!spec.contains(g)) throw NotInGroup("target is not in the group", log(g).str());
    if (mode_ == Mode::Integral) {
      for (const auto& v : g.matrix().entries())
        if (!v.is_integral() || (spec.ring() == RingTag::Z && !v.is_real()))
          throw InvalidInput("target entry " + v.str() + " is not a ring element");
    }
    UniMatrix residual = g;
    Word word;
    for (const auto& st : stages_) {
      const Vec<Scalar> c = spec.quotient_map(st.level).apply(log(residual));
      if (is_zero_vec(c)) continue;
      Word w;
      try {
        w = st.solver.solve(c);
      } catch (const DivisibilityError& e) {
        throw NotInCertifiedSubgroup(st.level, e.residue, e.divisors);
      }
      residual = eval_word(w, st.family, spec.k()).inverse() * residual;
      word.append(st.flatten(w));
    }
    if (!residual.is_identity()) throw std::logic_error("descent left a nontrivial residual");
    word = reduce_word(word, fam_.morphisms());
    if (eval_word(word, fam_) != g) throw std::logic_error("decomposition failed to re-evaluate");
    if (mode_ == Mode::Integral)
      for (const auto& f : word.factors())
        if (!f.arg.is_integral()) throw std::logic_error("integral decomposition used a non-ring argument");
    return {std::move(word), length_bound()};
  }

 private:
  MorphismFamily fam_;
  Mode mode_;
  DecomposeOptions opts_;
  std::vector<DerivedFamilyStage> stages_;
};

inline Decomposition decompose_field(const UniMatrix& g, const MorphismFamily& fam,
                                     const DecomposeOptions& opts = {}) {
  return Decomposer(fam, Mode::Field, opts).decompose(g);
}

inline Decomposition decompose_integral(const UniMatrix& g, const MorphismFamily& fam,
                                        const DecomposeOptions& opts = {}) {
  return Decomposer(fam, Mode::Integral, opts).decompose(g);
}

}  // namespace uwaring

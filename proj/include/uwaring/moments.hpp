#pragma once

// Signed sums of moment-curve points phi(x) = (x, x^2, ..., x^d).
//
// Targets are hit level by level with finite-difference gadgets: the
// (l-1)-th forward difference of phi kills coordinates below l-1, and
// differencing that once more in the base point leaves exactly t in
// coordinate l. Anything the gadget leaves in coordinates above l is carried
// into the residual and cleared by later levels.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "uwaring/errors.hpp"
#include "uwaring/linalg.hpp"
#include "uwaring/scalar.hpp"

namespace uwaring {

struct MomentRepresentation {
  std::size_t d = 0;
  std::vector<Scalar> plus;
  std::vector<Scalar> minus;

  std::size_t size() const { return plus.size() + minus.size(); }
  bool empty() const { return plus.empty() && minus.empty(); }

  void append(const MomentRepresentation& o) {
    plus.insert(plus.end(), o.plus.begin(), o.plus.end());
    minus.insert(minus.end(), o.minus.begin(), o.minus.end());
  }
};

inline Vec<Scalar> moment_point(const Scalar& x, std::size_t d) {
  Vec<Scalar> v(d);
  Scalar p = x;
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = p;
    if (i + 1 < d) p *= x;
  }
  return v;
}

inline Vec<Scalar> value(const MomentRepresentation& rep) {
  Vec<Scalar> v(rep.d);
  for (const auto& x : rep.plus) {
    auto p = moment_point(x, rep.d);
    for (std::size_t i = 0; i < rep.d; ++i) v[i] += p[i];
  }
  for (const auto& x : rep.minus) {
    auto p = moment_point(x, rep.d);
    for (std::size_t i = 0; i < rep.d; ++i) v[i] -= p[i];
  }
  return v;
}

// Delta^{l-1} phi(x0 + t/l!) - Delta^{l-1} phi(x0), where
// Delta^m phi(x) = sum_s (-1)^{m-s} C(m, s) phi(x + s). The value is zero in
// coordinates < l and t in coordinate l. 2^l points.
inline MomentRepresentation finite_difference_gadget(std::size_t level, const Scalar& t,
                                                     const Scalar& x0, std::size_t d) {
  if (level < 1 || level > d) throw InvalidInput("gadget level must be in 1..d");
  const unsigned m = static_cast<unsigned>(level - 1);
  MomentRepresentation rep;
  rep.d = d;
  const Scalar shifted = x0 + t / Scalar(factorial(static_cast<unsigned>(level)));
  for (unsigned s = 0; s <= m; ++s) {
    const bool positive = (m - s) % 2 == 0;
    const unsigned long mult = binomial(m, s).get_ui();
    for (unsigned long c = 0; c < mult; ++c) {
      (positive ? rep.plus : rep.minus).push_back(shifted + Scalar(static_cast<long>(s)));
      (positive ? rep.minus : rep.plus).push_back(x0 + Scalar(static_cast<long>(s)));
    }
  }
  return rep;
}

namespace detail {

inline std::vector<bool> all_required(std::size_t d) { return std::vector<bool>(d, true); }

// Shared elimination. When `integral` is set, each level's residual must be
// divisible by l! in the ring, so every gadget point is a ring element.
inline MomentRepresentation eliminate(const Vec<Scalar>& y, const std::vector<bool>& required,
                                      bool integral) {
  const std::size_t d = y.size();
  MomentRepresentation rep;
  rep.d = d;
  Vec<Scalar> residual = y;
  for (std::size_t level = 1; level <= d; ++level) {
    if (!required[level - 1]) continue;
    const Scalar t = residual[level - 1];
    if (t.is_zero()) continue;
    if (integral && !(t / Scalar(factorial(static_cast<unsigned>(level)))).is_integral())
      throw NotRepresented(level, t.str());
    MomentRepresentation g = finite_difference_gadget(level, t, Scalar(0), d);
    Vec<Scalar> gv = value(g);
    for (std::size_t i = 0; i < d; ++i) residual[i] -= gv[i];
    rep.append(g);
  }
  return rep;
}

}  // namespace detail

// Over Q or Q(i): always succeeds, value(rep) = y, size <= 2(2^d - 1).
inline MomentRepresentation solve_moments_field(const Vec<Scalar>& y) {
  return detail::eliminate(y, detail::all_required(y.size()), false);
}

// Only coordinates with required[l-1] set are matched; the others are left at
// whatever the gadgets produce.
inline MomentRepresentation solve_moments_field(const Vec<Scalar>& y,
                                                const std::vector<bool>& required) {
  return detail::eliminate(y, required, false);
}

// Per-level divisibility that makes the integral elimination succeed.
//
// Level l divides its residual by l!, and the junk a level-l gadget adds to
// higher coordinates is a multiple of t/l!. Working top-down, c_l is the lcm
// of j! * c_j over required j > l, so demanding y_l in l! c_l O keeps every
// later residual divisible by its own factorial.
struct IntegralGuarantee {
  std::size_t d = 0;
  std::vector<mpz_class> clearing;  // c_l, index l-1
  std::vector<mpz_class> divisor;   // l! * c_l, or 1 for levels that are not required
  mpz_class lambda;                 // lcm of all divisors
};

inline IntegralGuarantee integral_guarantee(std::size_t d, const std::vector<bool>& required) {
  IntegralGuarantee g;
  g.d = d;
  g.clearing.assign(d, mpz_class(1));
  g.divisor.assign(d, mpz_class(1));
  mpz_class acc(1);  // lcm of j! c_j over required j above the current level
  for (std::size_t level = d; level >= 1; --level) {
    g.clearing[level - 1] = acc;
    if (required[level - 1]) {
      g.divisor[level - 1] = factorial(static_cast<unsigned>(level)) * acc;
      mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), g.divisor[level - 1].get_mpz_t());
    }
  }
  g.lambda = 1;
  for (const auto& v : g.divisor) mpz_lcm(g.lambda.get_mpz_t(), g.lambda.get_mpz_t(), v.get_mpz_t());
  return g;
}

inline IntegralGuarantee integral_guarantee(std::size_t d) {
  return integral_guarantee(d, detail::all_required(d));
}

// Over Z or Z[i]. Succeeds whenever y lies in lambda * O^d (more precisely,
// y_l in divisor[l-1] * O); otherwise it may still succeed, or throws
// NotRepresented naming the first level whose residual is not divisible.
inline MomentRepresentation solve_moments_integral(const Vec<Scalar>& y, RingTag ring,
                                                   const std::vector<bool>& required) {
  if (!is_integral_ring(ring)) throw InvalidInput("solve_moments_integral needs ring Z or ZI");
  for (const auto& v : y) {
    if (!v.is_integral()) throw InvalidInput("moment target " + v.str() + " is not a ring element");
    if (ring == RingTag::Z && !v.is_real())
      throw InvalidInput("moment target " + v.str() + " is not an integer");
  }
  return detail::eliminate(y, required, true);
}

inline MomentRepresentation solve_moments_integral(const Vec<Scalar>& y, RingTag ring) {
  return solve_moments_integral(y, ring, detail::all_required(y.size()));
}

// i! * alpha = sum_m (-1)^{i-1-m} C(i-1, m) (alpha + m)^i + constant, with
// constant = -(i-1) i! / 2. The sign runs from the top term down so the
// identity holds exactly (the (i-1)-th forward difference of x^i is
// i! x + (i-1) i!/2).
struct PowerIdentity {
  struct Term {
    Scalar argument;
    int sign;
    mpz_class multiplicity;
  };
  unsigned power = 0;
  Scalar alpha;
  std::vector<Term> terms;
  Scalar constant;

  Scalar evaluate() const {
    Scalar s = constant;
    for (const auto& t : terms) {
      Scalar v = pow(t.argument, power) * Scalar(t.multiplicity);
      if (t.sign > 0)
        s += v;
      else
        s -= v;
    }
    return s;
  }
};

inline PowerIdentity signed_power_identity(unsigned i, const Scalar& alpha) {
  if (i < 1) throw InvalidInput("power must be positive");
  PowerIdentity id;
  id.power = i;
  id.alpha = alpha;
  for (unsigned m = i; m-- > 0;) {
    const int sign = (i - 1 - m) % 2 == 0 ? 1 : -1;
    id.terms.push_back({alpha + Scalar(static_cast<long>(m)), sign, binomial(i - 1, m)});
  }
  mpq_class c(mpz_class(factorial(i) * (i - 1)), mpz_class(2));
  c.canonicalize();
  id.constant = -Scalar(c);
  if (id.evaluate() != Scalar(factorial(i)) * alpha)
    throw std::logic_error("signed power identity failed to verify");
  return id;
}

}  // namespace uwaring

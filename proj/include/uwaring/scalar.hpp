#pragma once

// Exact scalars: Gaussian rationals (which contain Q), Gaussian integers
// (which contain Z), and the ring tags that select among Q, Q(i), Z, Z[i].

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace uwaring {

enum class RingTag { Q, QI, Z, ZI };

inline bool is_integral_ring(RingTag r) { return r == RingTag::Z || r == RingTag::ZI; }
inline bool is_gaussian_ring(RingTag r) { return r == RingTag::QI || r == RingTag::ZI; }
// [K:Q]
inline unsigned field_degree(RingTag r) { return is_gaussian_ring(r) ? 2 : 1; }

inline RingTag fraction_field(RingTag r) {
  switch (r) {
    case RingTag::Z: return RingTag::Q;
    case RingTag::ZI: return RingTag::QI;
    default: return r;
  }
}

inline const char* to_string(RingTag r) {
  switch (r) {
    case RingTag::Q: return "Q";
    case RingTag::QI: return "QI";
    case RingTag::Z: return "Z";
    case RingTag::ZI: return "ZI";
  }
  return "?";
}

inline std::optional<RingTag> parse_ring_tag(std::string_view s) {
  if (s == "Q") return RingTag::Q;
  if (s == "QI") return RingTag::QI;
  if (s == "Z") return RingTag::Z;
  if (s == "ZI") return RingTag::ZI;
  return std::nullopt;
}

// An element of Q(i). Rationals are the elements with zero imaginary part.
// mpq_class keeps both parts canonical (positive denominator, reduced).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}
  Scalar(const mpz_class& v) : re_(v) {}  // NOLINT(google-explicit-constructor)

  static Scalar ratio(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_integral() const {
    return re_.get_den() == 1 && im_.get_den() == 1;
  }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    mpq_class n = norm();
    return Scalar(mpq_class(re_ / n), mpq_class(-im_ / n));
  }

  Scalar operator-() const { return Scalar(-re_, -im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (o.is_real() && is_real()) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_real()) {
      if (sgn(o.re_) == 0) throw std::domain_error("division by zero scalar");
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Lexicographic on (re, im); only used to give containers a total order.
  friend bool lex_less(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
  }

  // Canonical text: "a", "a/b", or "<re>+<im>*i" / "<re>-<im>*i".
  std::string str() const {
    if (is_real()) return re_.get_str();
    std::string s = re_.get_str();
    if (sgn(im_) < 0) {
      s += "-";
      s += mpq_class(-im_).get_str();
    } else {
      s += "+";
      s += im_.get_str();
    }
    s += "*i";
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline Scalar pow(Scalar base, unsigned e) {
  Scalar r(1);
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

inline mpz_class factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

inline bool parse_rational(std::string_view s, mpq_class& out, std::string& why) {
  s = trim(s);
  auto slash = s.find('/');
  mpz_class num, den(1);
  if (!parse_integer(s.substr(0, slash), num)) {
    why = "malformed integer";
    return false;
  }
  if (slash != std::string_view::npos) {
    std::string_view d = s.substr(slash + 1);
    if (d.empty() || d[0] == '-' || d[0] == '+' || !parse_integer(d, den)) {
      why = "malformed denominator";
      return false;
    }
    if (den == 0) {
      why = "zero denominator";
      return false;
    }
  }
  out = mpq_class(num, den);
  out.canonicalize();
  return true;
}

}  // namespace detail

// Accepts "a", "a/b", "a/b+c/d*i", "a-c*i", "c/d*i", "i", "-i".
// Returns nullopt and fills `why` on failure.
inline std::optional<Scalar> parse_scalar(std::string_view text, std::string* why = nullptr) {
  std::string local;
  std::string& reason = why ? *why : local;
  std::string_view s = detail::trim(text);
  if (s.empty()) {
    reason = "empty scalar";
    return std::nullopt;
  }
  bool has_i = s.back() == 'i';
  if (!has_i) {
    mpq_class q;
    if (!detail::parse_rational(s, q, reason)) return std::nullopt;
    return Scalar(q);
  }
  s.remove_suffix(1);
  if (!s.empty() && s.back() == '*') s.remove_suffix(1);
  // split point: last sign that is not the leading character
  std::size_t split = std::string_view::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if (s[p] == '+' || s[p] == '-') {
      split = p;
      break;
    }
  }
  std::string_view re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);
  mpq_class re(0), im;
  if (!re_part.empty() && !detail::parse_rational(re_part, re, reason)) return std::nullopt;
  std::string_view t = detail::trim(im_part);
  if (t.empty() || t == "+") {
    im = 1;
  } else if (t == "-") {
    im = -1;
  } else if (!detail::parse_rational(t, im, reason)) {
    return std::nullopt;
  }
  return Scalar(re, im);
}

// Element of Z[i]; with zero imaginary part this is also how Z is stored.
class GaussInt {
 public:
  GaussInt() = default;
  GaussInt(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussInt(mpz_class re, mpz_class im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  static std::optional<GaussInt> from_scalar(const Scalar& s) {
    if (!s.is_integral()) return std::nullopt;
    return GaussInt(s.re().get_num(), s.im().get_num());
  }
  Scalar to_scalar() const { return Scalar(mpq_class(re_), mpq_class(im_)); }

  const mpz_class& re() const { return re_; }
  const mpz_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  mpz_class norm() const { return re_ * re_ + im_ * im_; }

  GaussInt operator-() const { return GaussInt(-re_, -im_); }
  GaussInt& operator+=(const GaussInt& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussInt& operator-=(const GaussInt& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussInt& operator*=(const GaussInt& o) {
    mpz_class r = re_ * o.re_ - im_ * o.im_;
    mpz_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
  friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
  friend GaussInt operator*(GaussInt a, const GaussInt& b) { return a *= b; }
  friend bool operator==(const GaussInt& a, const GaussInt& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }

  std::string str() const { return to_scalar().str(); }
  friend std::ostream& operator<<(std::ostream& os, const GaussInt& g) { return os << g.str(); }

 private:
  mpz_class re_{0};
  mpz_class im_{0};
};

// Euclidean structure on Z (when `gaussian` is false) or Z[i]. Elements of Z
// are GaussInts with zero imaginary part; every operation preserves that.
struct EuclideanRing {
  bool gaussian = false;

  static EuclideanRing of(RingTag r) { return EuclideanRing{is_gaussian_ring(r)}; }

  // floor(n / d + 1/2) for d > 0
  static mpz_class round_div(const mpz_class& n, const mpz_class& d) {
    mpz_class q;
    mpz_class num = 2 * n + d;
    mpz_class den = 2 * d;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
  }

  // Quotient with |remainder| strictly smaller than |b| in the Euclidean norm.
  GaussInt quotient(const GaussInt& a, const GaussInt& b) const {
    if (b.is_zero()) throw std::domain_error("euclidean division by zero");
    if (!gaussian) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a.re().get_mpz_t(), b.re().get_mpz_t());
      return GaussInt(q);
    }
    GaussInt num = a * GaussInt(b.re(), -b.im());
    mpz_class n = b.norm();
    return GaussInt(round_div(num.re(), n), round_div(num.im(), n));
  }

  bool divides(const GaussInt& d, const GaussInt& a) const {
    if (d.is_zero()) return a.is_zero();
    GaussInt q = quotient(a, d);
    return q * d == a;
  }

  // Canonical coset representative of a modulo the ideal (p), p != 0.
  GaussInt residue(const GaussInt& a, const GaussInt& p) const {
    if (!gaussian) {
      mpz_class r;
      mpz_class m = abs(p.re());
      mpz_fdiv_r(r.get_mpz_t(), a.re().get_mpz_t(), m.get_mpz_t());
      return GaussInt(r);
    }
    return a - quotient(a, p) * p;
  }

  // Unit u such that u*a is the canonical associate: positive integers,
  // or Gaussian integers with re > 0 and im >= 0.
  GaussInt normalizing_unit(const GaussInt& a) const {
    if (a.is_zero()) return GaussInt(1);
    if (!gaussian) return GaussInt(sgn(a.re()) < 0 ? -1 : 1);
    const GaussInt units[4] = {GaussInt(1), GaussInt(0, 1), GaussInt(-1), GaussInt(0, -1)};
    for (const auto& u : units) {
      GaussInt b = u * a;
      if (sgn(b.re()) > 0 && sgn(b.im()) >= 0) return u;
    }
    return GaussInt(1);
  }

  GaussInt associate(const GaussInt& a) const { return normalizing_unit(a) * a; }

  // Size of the quotient ring O/(a): |a| over Z, N(a) over Z[i].
  mpz_class index_of(const GaussInt& a) const {
    return gaussian ? a.norm() : mpz_class(abs(a.re()));
  }
};

}  // namespace uwaring

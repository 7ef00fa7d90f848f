#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace uwaring {

// Dense univariate polynomial, coefficient i multiplies x^i. The coefficient
// list never ends in a zero; the zero polynomial has no coefficients.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(T c) {  // NOLINT(google-explicit-constructor)
    if (!is_zero_value(c)) c_.push_back(std::move(c));
  }
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(T c, std::size_t degree) {
    std::vector<T> v(degree + 1);
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(T(1), 1); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  // Degree of the zero polynomial is reported as 0; callers that care test is_zero().
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  const std::vector<T>& coefficients() const { return c_; }
  T coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : T{}; }
  T constant_term() const { return coefficient(0); }

  template <class U>
  T operator()(const U& x) const {
    T acc{};
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc *= x;
      acc += c_[i];
    }
    return acc;
  }

  // p(a*x + b)
  Polynomial compose_affine(const T& a, const T& b) const {
    Polynomial lin(std::vector<T>{b, a});
    Polynomial out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      out = out * lin;
      out += Polynomial(c_[i]);
    }
    return out;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }
  // Scalar multiple.
  Polynomial& operator*=(const T& s) {
    if (is_zero_value(s)) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }
  Polynomial& operator/=(const T& s) {
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero_value(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const T& s) { return a /= s; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (is_zero_value(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + to_text(c_[i]) + ")";
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

 private:
  static bool is_zero_value(const T& v) {
    if constexpr (requires { v.is_zero(); }) {
      return v.is_zero();
    } else {
      return v == T{};
    }
  }
  static std::string to_text(const T& v) {
    if constexpr (requires { v.str(); }) {
      return v.str();
    } else {
      return std::to_string(v);
    }
  }
  void trim() {
    while (!c_.empty() && is_zero_value(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

}  // namespace uwaring

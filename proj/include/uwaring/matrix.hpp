#pragma once

// Square matrices over an exact ring, and the unitriangular group /
// strictly-upper-triangular Lie algebra built on them.

#include <cassert>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uwaring/errors.hpp"
#include "uwaring/polynomial.hpp"
#include "uwaring/scalar.hpp"

namespace uwaring {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  // E_ij, zero-based.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j, T value = T(1)) {
    Matrix m(n);
    m(i, j) = std::move(value);
    return m;
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const T> entries() const { return a_; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!v.is_zero()) return false;
    return true;
  }
  bool is_strictly_upper() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (!(*this)(i, j).is_zero()) return false;
    return true;
  }
  bool is_unitriangular() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if ((*this)(i, i) != T(1)) return false;
      for (std::size_t j = 0; j < i; ++j)
        if (!(*this)(i, j).is_zero()) return false;
    }
    return true;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
  }
  Matrix& operator+=(const Matrix& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  template <class S>
  Matrix& scale(const S& s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.n_ == b.n_);
    const std::size_t n = a.n_;
    Matrix r(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        const T& ail = a(i, l);
        if (ail.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const T& blj = b(l, j);
          if (blj.is_zero()) continue;
          r(i, j) += ail * blj;
        }
      }
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < n_; ++j) {
        if (j) s += ", ";
        s += (*this)(i, j).str();
      }
    }
    return s + "]";
  }
  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.str(); }

 private:
  std::size_t n_ = 0;
  std::vector<T> a_;
};

using ScalarMatrix = Matrix<Scalar>;
using PolyMatrix = Matrix<Polynomial<Scalar>>;

// sum_{m < k} n^m / m!; exact because n^k = 0.
template <class T>
Matrix<T> nilpotent_exp(const Matrix<T>& n) {
  const std::size_t k = n.size();
  Matrix<T> result = Matrix<T>::identity(k);
  Matrix<T> term = Matrix<T>::identity(k);
  for (std::size_t m = 1; m < k; ++m) {
    term = term * n;
    if (term.is_zero()) break;
    Matrix<T> t = term;
    t.scale(Scalar(factorial(static_cast<unsigned>(m))).inverse());
    result += t;
  }
  return result;
}

// sum_{m < k} (-1)^{m+1} (u - I)^m / m
template <class T>
Matrix<T> unipotent_log(const Matrix<T>& u) {
  const std::size_t k = u.size();
  Matrix<T> n = u - Matrix<T>::identity(k);
  Matrix<T> result(k);
  Matrix<T> term = Matrix<T>::identity(k);
  for (std::size_t m = 1; m < k; ++m) {
    term = term * n;
    if (term.is_zero()) break;
    Matrix<T> t = term;
    t.scale(Scalar::ratio(m % 2 == 1 ? 1 : -1, static_cast<long>(m)));
    result += t;
  }
  return result;
}

// u^{-1} = sum_{m < k} (I - u)^m
template <class T>
Matrix<T> unitriangular_inverse(const Matrix<T>& u) {
  // back substitution, column by column: v(i,j) = -sum_{i<l<=j} u(i,l) v(l,j)
  const std::size_t k = u.size();
  Matrix<T> v = Matrix<T>::identity(k);
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = j; i-- > 0;) {
      T s = u(i, j);
      for (std::size_t l = i + 1; l < j; ++l)
        if (!u(i, l).is_zero() && !v(l, j).is_zero()) s += u(i, l) * v(l, j);
      v(i, j) = -s;
    }
  return v;
}

// Product of two unitriangular matrices; the unit diagonal is implicit.
template <class T>
Matrix<T> unitriangular_mul(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t k = a.size();
  Matrix<T> c = Matrix<T>::identity(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      T s = a(i, j);
      s += b(i, j);
      for (std::size_t l = i + 1; l < j; ++l)
        if (!a(i, l).is_zero() && !b(l, j).is_zero()) s += a(i, l) * b(l, j);
      c(i, j) = std::move(s);
    }
  return c;
}

// Strictly-upper entries in row-major order: (0,1), (0,2), ..., (k-2,k-1).
// This fixed ordering is the coordinate system of every Lie-algebra vector.
inline std::size_t upper_dim(std::size_t k) { return k * (k - 1) / 2; }

inline std::size_t upper_index(std::size_t k, std::size_t i, std::size_t j) {
  // rows before i contribute (k-1) + (k-2) + ... + (k-i)
  return i * k - i * (i + 1) / 2 + (j - i - 1);
}

template <class T>
std::vector<T> upper_coords(const Matrix<T>& m) {
  const std::size_t k = m.size();
  std::vector<T> v;
  v.reserve(upper_dim(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) v.push_back(m(i, j));
  return v;
}

template <class T>
Matrix<T> from_upper_coords(std::size_t k, std::span<const T> v) {
  Matrix<T> m(k);
  std::size_t p = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) m(i, j) = v[p++];
  return m;
}

class UniMatrix;

// Element of the strictly-upper-triangular Lie algebra n_k.
class NilMatrix {
 public:
  NilMatrix() = default;
  explicit NilMatrix(std::size_t k) : m_(k) {}
  explicit NilMatrix(ScalarMatrix m) : m_(std::move(m)) {
    if (!m_.is_strictly_upper())
      throw InvalidInput("matrix is not strictly upper triangular: " + m_.str());
  }
  static NilMatrix from_coords(std::size_t k, std::span<const Scalar> v) {
    return NilMatrix(from_upper_coords<Scalar>(k, v));
  }
  static NilMatrix unit(std::size_t k, std::size_t i, std::size_t j, Scalar c = 1) {
    return NilMatrix(ScalarMatrix::unit(k, i, j, std::move(c)));
  }

  std::size_t size() const { return m_.size(); }
  const ScalarMatrix& matrix() const { return m_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  std::vector<Scalar> coords() const { return upper_coords(m_); }
  bool is_zero() const { return m_.is_zero(); }

  NilMatrix operator-() const { return NilMatrix(-m_); }
  friend NilMatrix operator+(const NilMatrix& a, const NilMatrix& b) { return NilMatrix(a.m_ + b.m_); }
  friend NilMatrix operator-(const NilMatrix& a, const NilMatrix& b) { return NilMatrix(a.m_ - b.m_); }
  friend NilMatrix operator*(const Scalar& s, const NilMatrix& a) {
    ScalarMatrix m = a.m_;
    m.scale(s);
    return NilMatrix(std::move(m));
  }
  friend bool operator==(const NilMatrix& a, const NilMatrix& b) { return a.m_ == b.m_; }
  friend bool operator!=(const NilMatrix& a, const NilMatrix& b) { return !(a == b); }

  std::string str() const { return m_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const NilMatrix& m) { return os << m.str(); }

 private:
  ScalarMatrix m_;
};

inline NilMatrix bracket(const NilMatrix& a, const NilMatrix& b) {
  return NilMatrix(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

// Element of the unitriangular group U_k.
class UniMatrix {
 public:
  UniMatrix() = default;
  explicit UniMatrix(ScalarMatrix m) : m_(std::move(m)) {
    if (!m_.is_unitriangular()) throw NotUnitriangular("matrix is not unitriangular: " + m_.str());
  }
  static UniMatrix identity(std::size_t k) { return UniMatrix(ScalarMatrix::identity(k), Trusted{}); }

  std::size_t size() const { return m_.size(); }
  const ScalarMatrix& matrix() const { return m_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  bool is_identity() const { return m_ == ScalarMatrix::identity(m_.size()); }
  bool is_integral() const {
    for (const auto& v : m_.entries())
      if (!v.is_integral()) return false;
    return true;
  }

  UniMatrix inverse() const { return UniMatrix(unitriangular_inverse(m_), Trusted{}); }

  friend UniMatrix operator*(const UniMatrix& a, const UniMatrix& b) {
    return UniMatrix(unitriangular_mul(a.m_, b.m_), Trusted{});
  }
  UniMatrix& operator*=(const UniMatrix& o) {
    m_ = unitriangular_mul(m_, o.m_);
    return *this;
  }
  friend bool operator==(const UniMatrix& a, const UniMatrix& b) { return a.m_ == b.m_; }
  friend bool operator!=(const UniMatrix& a, const UniMatrix& b) { return !(a == b); }

  std::string str() const { return m_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const UniMatrix& m) { return os << m.str(); }

 private:
  struct Trusted {};
  UniMatrix(ScalarMatrix m, Trusted) : m_(std::move(m)) {}
  friend UniMatrix exp(const NilMatrix& n);

  ScalarMatrix m_;
};

inline UniMatrix exp(const NilMatrix& n) {
  return UniMatrix(nilpotent_exp(n.matrix()), UniMatrix::Trusted{});
}

inline NilMatrix log(const UniMatrix& u) { return NilMatrix(unipotent_log(u.matrix())); }

// a b a^{-1} b^{-1}
inline UniMatrix group_commutator(const UniMatrix& a, const UniMatrix& b) {
  if (a.size() != b.size()) throw InvalidInput("group_commutator: size mismatch");
  return a * b * a.inverse() * b.inverse();
}

}  // namespace uwaring

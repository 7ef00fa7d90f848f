#pragma once

// Exact Gaussian elimination over a field. Pivots are chosen as the first
// nonzero entry scanning columns left to right, so every result below is a
// deterministic function of its input.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace uwaring {

template <class T>
using Vec = std::vector<T>;

template <class T>
bool is_zero_vec(const Vec<T>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

template <class T>
struct Echelon {
  std::size_t ncols = 0;
  std::vector<Vec<T>> rows;          // reduced rows, one per pivot
  std::vector<std::size_t> pivots;   // strictly increasing
  // transform[r] combines the input rows into rows[r] (only when tracked)
  std::vector<Vec<T>> transform;

  std::size_t rank() const { return rows.size(); }
};

// Reduced row echelon form. Only the first `pivot_cols` columns are eligible
// as pivots (defaults to all). When `track` is set, the returned transform
// satisfies transform * input = rows, and includes rows for the zero rows too
// (after the pivot rows), which span the left kernel.
template <class T>
Echelon<T> rref(std::vector<Vec<T>> input, std::size_t ncols, bool track = false,
                std::size_t pivot_cols = static_cast<std::size_t>(-1)) {
  const std::size_t m = input.size();
  if (pivot_cols > ncols) pivot_cols = ncols;
  std::vector<Vec<T>> tr;
  if (track) {
    tr.assign(m, Vec<T>(m));
    for (std::size_t i = 0; i < m; ++i) tr[i][i] = T(1);
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < pivot_cols && r < m; ++c) {
    std::size_t p = r;
    while (p < m && input[p][c].is_zero()) ++p;
    if (p == m) continue;
    std::swap(input[p], input[r]);
    if (track) std::swap(tr[p], tr[r]);
    T inv = T(1) / input[r][c];
    for (auto& x : input[r]) x *= inv;
    if (track)
      for (auto& x : tr[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || input[i][c].is_zero()) continue;
      T f = input[i][c];
      for (std::size_t j = c; j < ncols; ++j) {
        if (!input[r][j].is_zero()) input[i][j] -= f * input[r][j];
      }
      if (track)
        for (std::size_t j = 0; j < m; ++j)
          if (!tr[r][j].is_zero()) tr[i][j] -= f * tr[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  Echelon<T> e;
  e.ncols = ncols;
  e.pivots = std::move(pivots);
  input.resize(r);
  e.rows = std::move(input);
  if (track) e.transform = std::move(tr);
  return e;
}

template <class T>
std::size_t rank_of(std::vector<Vec<T>> rows, std::size_t ncols) {
  return rref(std::move(rows), ncols).rank();
}

// Reduce v against the pivot rows; the result has zeros in pivot columns.
// When `coeffs` is given it receives the multiples of each row removed.
template <class T>
Vec<T> reduce(const Echelon<T>& e, Vec<T> v, Vec<T>* coeffs = nullptr) {
  if (coeffs) coeffs->assign(e.rank(), T{});
  for (std::size_t r = 0; r < e.rank(); ++r) {
    const std::size_t c = e.pivots[r];
    if (v[c].is_zero()) continue;
    T f = v[c];
    for (std::size_t j = 0; j < e.ncols; ++j)
      if (!e.rows[r][j].is_zero()) v[j] -= f * e.rows[r][j];
    if (coeffs) (*coeffs)[r] = f;
  }
  return v;
}

template <class T>
bool in_span(const Echelon<T>& e, const Vec<T>& v) {
  return is_zero_vec(reduce(e, v));
}

// A nonzero vector b with sum_c rows[r][c] * b[c] = 0 for every row, or
// nullopt when the rows have full column rank. The free variable with the
// lowest column index is set to 1, the others to 0.
template <class T>
std::optional<Vec<T>> kernel_vector(std::vector<Vec<T>> rows, std::size_t ncols) {
  Echelon<T> e = rref(std::move(rows), ncols);
  std::size_t free_col = ncols;
  for (std::size_t c = 0, r = 0; c < ncols; ++c) {
    if (r < e.rank() && e.pivots[r] == c) {
      ++r;
      continue;
    }
    free_col = c;
    break;
  }
  if (free_col == ncols) return std::nullopt;
  Vec<T> b(ncols);
  b[free_col] = T(1);
  for (std::size_t r = 0; r < e.rank(); ++r) b[e.pivots[r]] = -e.rows[r][free_col];
  return b;
}

}  // namespace uwaring

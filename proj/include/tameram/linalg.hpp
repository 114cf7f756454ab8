#pragma once

// Dense exact row reduction and everything built on it: rank, kernels,
// affine feasibility, span tests, complements.

#include <optional>
#include <vector>

#include "matrix.hpp"

namespace tameram {

struct Echelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

namespace detail {

inline void rref_prime(std::vector<std::int64_t>& a, std::size_t rows, std::size_t cols, std::int64_t p,
                       std::vector<std::size_t>& pivots) {
  auto inv = [p](std::int64_t x) {
    std::int64_t t = 0, nt = 1, r = p, nr = x;
    while (nr != 0) {
      auto q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return t < 0 ? t + p : t;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const auto s = inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = (a[r * cols + j] * s) % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const auto f = a[i * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        const auto v = a[r * cols + j];
        if (v != 0) a[i * cols + j] = ((a[i * cols + j] - f * v) % p + p) % p;
      }
    }
    pivots.push_back(c);
    ++r;
  }
}

}  // namespace detail

inline Echelon rref(Matrix m) {
  const Field f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  if (f.kind() == Field::Kind::prime) {
    std::vector<std::int64_t> a(rows * cols);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::get<std::int64_t>(m.data()[k]);
    detail::rref_prime(a, rows, cols, f.characteristic(), pivots);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = a[i * cols + j];
    return {std::move(m), std::move(pivots)};
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && f.is_zero(m(piv, c))) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    const auto s = f.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m.at(r, j) = f.mul(m(r, j), s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!f.is_zero(m(r, j))) m.at(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of {v : m v = 0}, one column per basis vector. Column k has a 1 in
/// the k-th free position and zeros in the other free positions.
inline Matrix kernel(const Matrix& m) {
  const Field& f = m.field();
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix k(f, m.cols(), free.size());
  for (std::size_t t = 0; t < free.size(); ++t) {
    k.at(free[t], t) = f.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k.at(e.pivots[r], t) = f.neg(e.reduced(r, free[t]));
  }
  return k;
}

/// Some v with m v = b, or nullopt when b is outside the column span. The
/// returned v is the row-echelon particular solution (free variables zero).
inline std::optional<Matrix> solve_affine(const Matrix& m, const Matrix& b) {
  if (m.field() != b.field()) throw FieldMismatch("solve_affine: field mismatch");
  if (b.rows() != m.rows() || b.cols() != 1) throw DimensionError("solve_affine: rhs must be a column of length rows(m)");
  const Field& f = m.field();
  auto e = rref(hstack({m, b}));
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    if (e.pivots[r] == m.cols()) return std::nullopt;
  Matrix v(f, m.cols(), 1);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) v.at(e.pivots[r], 0) = e.reduced(r, m.cols());
  return v;
}

/// A row y with y m = 0 and y b = 1, which exists exactly when m v = b has no
/// solution (Fredholm alternative). Serves as a refutation certificate.
inline std::optional<Matrix> infeasibility_certificate(const Matrix& m, const Matrix& b) {
  const Field& f = m.field();
  Matrix left = kernel(m.transpose());
  for (std::size_t k = 0; k < left.cols(); ++k) {
    Matrix y = left.col(k).transpose();
    auto yb = (y * b)(0, 0);
    if (!f.is_zero(yb)) return y.scaled(f.inv(yb));
  }
  return std::nullopt;
}

inline bool is_surjective(const Matrix& m) { return rank(m) == m.rows(); }
inline bool is_injective(const Matrix& m) { return rank(m) == m.cols(); }
inline bool is_bijective(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

/// Linearly independent columns of m spanning its column space.
inline Matrix column_basis(const Matrix& m) {
  auto e = rref(m);
  Matrix out(m.field(), m.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) out.set_col(k, m.col(e.pivots[k]));
  return out;
}

/// Coordinates of v in the (independent) columns of `basis`, if v lies in their span.
inline std::optional<Matrix> coordinates(const Matrix& basis, const Matrix& v) { return solve_affine(basis, v); }

inline bool in_span(const Matrix& basis, const Matrix& v) {
  if (basis.cols() == 0) return v.is_zero();
  return rank(hstack({basis, v})) == rank(basis);
}

/// Column span of a contained in column span of b.
inline bool span_contains(const Matrix& b, const Matrix& a) {
  if (a.cols() == 0) return true;
  if (b.cols() == 0) return a.is_zero();
  return rank(hstack({b, a})) == rank(b);
}

inline bool same_span(const Matrix& a, const Matrix& b) { return span_contains(a, b) && span_contains(b, a); }

/// Standard basis vectors completing the independent columns of `sub` to a
/// basis of the ambient space. Returned as columns.
inline Matrix complement_basis(const Matrix& sub) {
  const Field& f = sub.field();
  const std::size_t n = sub.rows();
  Matrix aug = hstack({sub, Matrix::identity(f, n)});
  auto e = rref(aug);
  std::vector<std::size_t> picks;
  for (auto c : e.pivots)
    if (c >= sub.cols()) picks.push_back(c - sub.cols());
  Matrix out(f, n, picks.size());
  for (std::size_t k = 0; k < picks.size(); ++k) out.at(picks[k], k) = f.one();
  return out;
}

inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of non-square " + m.shape());
  const std::size_t n = m.rows();
  if (n == 0) return m;
  auto e = rref(hstack({m, Matrix::identity(m.field(), n)}));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw PreconditionError("matrix is singular");
  return e.reduced.cols_range(n, n);
}

/// Matrix of a linear map given by its action on unit vectors.
template <class Fn>
Matrix linear_map_matrix(const Field& f, std::size_t in_dim, std::size_t out_dim, Fn&& fn) {
  Matrix out(f, out_dim, in_dim);
  for (std::size_t j = 0; j < in_dim; ++j) {
    Matrix image = fn(Matrix::unit(f, in_dim, j));
    if (image.rows() != out_dim || image.cols() != 1) throw DimensionError("linear_map_matrix: image shape");
    out.set_col(j, image);
  }
  return out;
}

/// Matrix of a linear operator on matrix-shaped unknowns X (rows x cols,
/// flattened row-major). `fn` receives a unit matrix and returns any matrix,
/// which is flattened row-major as well.
template <class Fn>
Matrix linear_operator_on_matrices(const Field& f, std::size_t rows, std::size_t cols, Fn&& fn) {
  std::vector<Matrix> columns;
  columns.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Matrix e(f, rows, cols);
      e.at(i, j) = f.one();
      columns.push_back(flatten(fn(e)));
    }
  if (columns.empty()) throw DimensionError("operator on empty matrix space");
  return hstack(columns);
}

}  // namespace tameram

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "field.hpp"

namespace tameram {

/// Dense matrix over an exact field, row-major. Vectors are n x 1 matrices.
///
/// Basis convention for tensor products: e_i (x) f_j of V (x) W sits at
/// index i * dim(W) + j, so kron(A, B) is the matrix of A (x) B.
class Matrix {
 public:
  /// The empty 0 x 0 matrix over Q.
  Matrix() : Matrix(Field::rationals(), 0, 0) {}
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }
  static Matrix from_ints(const Field& f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    Matrix m(f, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionError("ragged matrix literal");
      std::size_t j = 0;
      for (auto v : row) m.at(i, j++) = f.from_int(v);
      ++i;
    }
    return m;
  }
  static Matrix column(const Field& f, const std::vector<Scalar>& entries) {
    Matrix m(f, entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, 0) = entries[i];
    return m;
  }
  /// Standard basis vector e_i of length n.
  static Matrix unit(const Field& f, std::size_t n, std::size_t i) {
    Matrix m(f, n, 1);
    m.at(i, 0) = f.one();
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return at(i, j); }
  const std::vector<Scalar>& data() const { return data_; }

  Matrix col(std::size_t j) const {
    Matrix c(field_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
  }
  Matrix row(std::size_t i) const {
    Matrix r(field_, 1, cols_);
    for (std::size_t j = 0; j < cols_; ++j) r.at(0, j) = at(i, j);
    return r;
  }
  void set_col(std::size_t j, const Matrix& c) {
    if (c.rows_ != rows_ || c.cols_ != 1) throw DimensionError("set_col: shape");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = c.at(i, 0);
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix out(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out.at(i, j) = at(r0 + i, c0 + j);
    return out;
  }
  Matrix cols_range(std::size_t first, std::size_t count) const {
    Matrix out(field_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) out.at(i, j) = at(i, first + j);
    return out;
  }
  Matrix rows_range(std::size_t first, std::size_t count) const {
    Matrix out(field_, count, cols_);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(first + i, j);
    return out;
  }

  bool is_zero() const {
    for (const auto& s : data_)
      if (!field_.is_zero(s)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    same_field(o);
    if (cols_ != o.rows_) {
      throw DimensionError("product of " + shape() + " and " + o.shape());
    }
    Matrix out(field_, rows_, o.cols_);
    if (field_.kind() == Field::Kind::prime) {
      const auto p = field_.characteristic();
      std::vector<std::int64_t> acc(o.cols_);
      for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
          const auto a = std::get<std::int64_t>(at(i, k));
          if (a == 0) continue;
          for (std::size_t j = 0; j < o.cols_; ++j) {
            const auto b = std::get<std::int64_t>(o.at(k, j));
            if (b != 0) acc[j] = (acc[j] + a * b) % p;
          }
        }
        for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) = acc[j];
      }
      return out;
    }
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& a = at(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const auto& b = o.at(k, j);
          if (!field_.is_zero(b)) out.at(i, j) = field_.add(out.at(i, j), field_.mul(a, b));
        }
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const { return combine(o, +1); }
  Matrix operator-(const Matrix& o) const { return combine(o, -1); }
  Matrix scaled(const Scalar& s) const {
    Matrix out(*this);
    for (auto& v : out.data_) v = field_.mul(s, v);
    return out;
  }

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m.field_.format(m.at(i, j));
      os << "]\n";
    }
    return os;
  }

 private:
  void same_field(const Matrix& o) const {
    if (field_ != o.field_) throw FieldMismatch("matrices over " + field_.describe() + " and " + o.field_.describe());
  }
  Matrix combine(const Matrix& o, int sign) const {
    same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("sum of " + shape() + " and " + o.shape());
    Matrix out(*this);
    for (std::size_t k = 0; k < data_.size(); ++k)
      out.data_[k] = sign > 0 ? field_.add(data_[k], o.data_[k]) : field_.sub(data_[k], o.data_[k]);
    return out;
  }

  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Matrix of A (x) B.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw FieldMismatch("kron over different fields");
  const Field& f = a.field();
  Matrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& x = a(i, j);
      if (f.is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const auto& y = b(k, l);
          if (!f.is_zero(y)) out.at(i * b.rows() + k, j * b.cols() + l) = f.mul(x, y);
        }
    }
  return out;
}

inline Matrix kron(std::initializer_list<Matrix> factors) {
  auto it = factors.begin();
  Matrix out = *it++;
  for (; it != factors.end(); ++it) out = kron(out, *it);
  return out;
}

inline Matrix hstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw DimensionError("hstack of nothing");
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks[0].rows()) throw DimensionError("hstack: row mismatch");
    cols += b.cols();
  }
  Matrix out(blocks[0].field(), blocks[0].rows(), cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, off + j) = b(i, j);
    off += b.cols();
  }
  return out;
}

inline Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw DimensionError("vstack of nothing");
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks[0].cols()) throw DimensionError("vstack: column mismatch");
    rows += b.rows();
  }
  Matrix out(blocks[0].field(), rows, blocks[0].cols());
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(off + i, j) = b(i, j);
    off += b.rows();
  }
  return out;
}

/// Reorders tensor factors: the k-th output factor is input factor perm[k].
/// target[flat] is the position of basis tensor `flat` of V_0 (x) ... (x) V_{n-1}
/// after reordering the factors to V_perm[0] (x) ... (x) V_perm[n-1].
inline std::vector<std::size_t> factor_permutation(const std::vector<std::size_t>& dims,
                                                   const std::vector<std::size_t>& perm) {
  const std::size_t n = dims.size();
  if (perm.size() != n) throw DimensionError("permute_factors: arity");
  const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  std::vector<std::size_t> out_dims(n);
  for (std::size_t k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  std::vector<std::size_t> target(total);
  std::vector<std::size_t> idx(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    auto rest = flat;
    for (std::size_t k = n; k-- > 0;) {
      idx[k] = rest % dims[k];
      rest /= dims[k];
    }
    std::size_t t = 0;
    for (std::size_t k = 0; k < n; ++k) t = t * out_dims[k] + idx[perm[k]];
    target[flat] = t;
  }
  return target;
}

/// Matrix of the factor reordering (see factor_permutation).
inline Matrix permute_factors(const Field& f, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  const auto target = factor_permutation(dims, perm);
  Matrix m(f, target.size(), target.size());
  for (std::size_t flat = 0; flat < target.size(); ++flat) m.at(target[flat], flat) = f.one();
  return m;
}

/// permute_factors(dims, perm) * m, without forming the permutation.
inline Matrix permute_rows(const Matrix& m, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  const auto target = factor_permutation(dims, perm);
  if (target.size() != m.rows()) throw DimensionError("permute_rows: " + m.shape());
  Matrix out(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(target[r], c) = m(r, c);
  return out;
}

/// m * permute_factors(dims, perm), without forming the permutation.
inline Matrix permute_cols(const Matrix& m, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  const auto target = factor_permutation(dims, perm);
  if (target.size() != m.cols()) throw DimensionError("permute_cols: " + m.shape());
  Matrix out(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = m(r, target[c]);
  return out;
}

/// The flip V (x) W -> W (x) V.
inline Matrix swap_factors(const Field& f, std::size_t dim_v, std::size_t dim_w) {
  return permute_factors(f, {dim_v, dim_w}, {1, 0});
}

/// Row-major flattening of a matrix into a column, and back.
inline Matrix flatten(const Matrix& m) {
  Matrix out(m.field(), m.rows() * m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i * m.cols() + j, 0) = m(i, j);
  return out;
}
inline Matrix unflatten(const Matrix& v, std::size_t rows, std::size_t cols) {
  if (v.rows() != rows * cols || v.cols() != 1) throw DimensionError("unflatten: size");
  Matrix out(v.field(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = v(i * cols + j, 0);
  return out;
}

}  // namespace tameram

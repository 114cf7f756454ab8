#pragma once

// Finite-dimensional commutative algebras by structure constants, plus the
// Artinian toolkit used for freeness tests: sub/quotient algebras, the
// nilradical, primitive idempotents and C-basis extraction for modules.

#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace tameram {

/// Unital algebra on k^dim. `mult` maps k^dim (x) k^dim -> k^dim.
struct Algebra {
  Field field;
  std::size_t dim;
  Matrix mult;  // dim x dim^2
  Matrix unit;  // dim x 1

  Matrix product(const Matrix& a, const Matrix& b) const { return mult * kron(a, b); }
  Matrix one() const { return unit; }
  Matrix basis(std::size_t i) const { return Matrix::unit(field, dim, i); }
  /// Matrix of x -> a x, read off the structure constants.
  Matrix left_mult(const Matrix& a) const {
    Matrix out(field, dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const auto& c = a(k, 0);
      if (field.is_zero(c)) continue;
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t j = 0; j < dim; ++j) {
          const auto& m = mult(r, k * dim + j);
          if (!field.is_zero(m)) out.at(r, j) = field.add(out(r, j), field.mul(c, m));
        }
    }
    return out;
  }
  Matrix power(Matrix a, std::uint64_t e) const {
    Matrix r = unit;
    while (e) {
      if (e & 1U) r = product(r, a);
      a = product(a, a);
      e >>= 1U;
    }
    return r;
  }
};

inline Algebra make_algebra(Matrix mult, Matrix unit) {
  const auto n = unit.rows();
  if (unit.cols() != 1 || mult.rows() != n || mult.cols() != n * n) {
    throw DimensionError("algebra structure constants have shape " + mult.shape() + " / " + unit.shape());
  }
  Field f = mult.field();
  return Algebra{f, n, std::move(mult), std::move(unit)};
}

/// Names of the failed algebra axioms: "associativity", "unit", "commutativity".
inline std::vector<std::string> algebra_axiom_failures(const Algebra& a, bool require_commutative = true) {
  std::vector<std::string> out;
  const auto& f = a.field;
  const auto id = Matrix::identity(f, a.dim);
  if (a.mult * kron(a.mult, id) != a.mult * kron(id, a.mult)) out.emplace_back("associativity");
  if (a.mult * kron(a.unit, id) != id || a.mult * kron(id, a.unit) != id) out.emplace_back("unit");
  if (require_commutative && permute_cols(a.mult, {a.dim, a.dim}, {1, 0}) != a.mult) out.emplace_back("commutativity");
  return out;
}

/// Multiplication of A (x) B from those of A and B.
inline Matrix tensor_mult(const Matrix& mult_a, std::size_t dim_a, const Matrix& mult_b, std::size_t dim_b) {
  return permute_cols(kron(mult_a, mult_b), {dim_a, dim_b, dim_a, dim_b}, {0, 2, 1, 3});
}

inline Algebra tensor_algebra(const Algebra& a, const Algebra& b) {
  return Algebra{a.field, a.dim * b.dim, tensor_mult(a.mult, a.dim, b.mult, b.dim), kron(a.unit, b.unit)};
}

/// Whether g: src -> tgt is unital and multiplicative on all basis pairs.
inline bool is_algebra_map(const Matrix& g, const Algebra& src, const Algebra& tgt) {
  if (g.rows() != tgt.dim || g.cols() != src.dim) return false;
  if (g * src.unit != tgt.unit) return false;
  const Matrix lhs = g * src.mult;  // column i * n + j is g(e_i e_j)
  for (std::size_t i = 0; i < src.dim; ++i) {
    const Matrix rhs = tgt.left_mult(g.col(i)) * g;
    for (std::size_t j = 0; j < src.dim; ++j)
      for (std::size_t r = 0; r < tgt.dim; ++r)
        if (lhs(r, i * src.dim + j) != rhs(r, j)) return false;
  }
  return true;
}

/// k[x]/(g) on the basis 1, x, ..., x^(d-1); `monic` lists g_0..g_{d-1} of the monic g.
inline Algebra polynomial_quotient(const Field& f, const std::vector<Scalar>& monic) {
  const std::size_t d = monic.size();
  if (d == 0) throw PreconditionError("polynomial_quotient: degree must be positive");
  // reduce x^k for k < 2d - 1 to the monomial basis
  std::vector<Matrix> powers;
  Matrix cur = Matrix::unit(f, d, 0);
  for (std::size_t k = 0; k + 1 < 2 * d; ++k) {
    powers.push_back(cur);
    Matrix next(f, d, 1);
    for (std::size_t i = 0; i + 1 < d; ++i) next.at(i + 1, 0) = cur(i, 0);
    const Scalar top = cur(d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) next.at(i, 0) = f.sub(next(i, 0), f.mul(top, monic[i]));
    cur = std::move(next);
  }
  Matrix mult(f, d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) mult.set_col(i * d + j, powers[i + j]);
  return Algebra{f, d, std::move(mult), Matrix::unit(f, d, 0)};
}

/// A x B with componentwise operations; basis of A followed by basis of B.
inline Algebra product_algebra(const Algebra& a, const Algebra& b) {
  const Field& f = a.field;
  const std::size_t n = a.dim + b.dim;
  Matrix mult(f, n, n * n);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k) mult.at(k, i * n + j) = a.mult(k, i * a.dim + j);
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (std::size_t k = 0; k < b.dim; ++k) mult.at(a.dim + k, (a.dim + i) * n + a.dim + j) = b.mult(k, i * b.dim + j);
  return Algebra{f, n, std::move(mult), vstack({a.unit, b.unit})};
}

/// Entry-wise image of a matrix under the canonical embedding into `target`.
inline Matrix embed(const Matrix& m, const Field& target) {
  Matrix out(target, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.field().embed_into(target, m(i, j));
  return out;
}

inline Algebra extend_scalars(const Algebra& a, const Field& target) {
  return Algebra{target, a.dim, embed(a.mult, target), embed(a.unit, target)};
}

/// L with L * basis = I, for a matrix with independent columns.
inline Matrix left_inverse(const Matrix& basis) {
  const Field& f = basis.field();
  if (basis.cols() == 0) return Matrix(f, 0, basis.rows());
  auto e = rref(basis.transpose());
  if (e.pivots.size() != basis.cols()) throw PreconditionError("left_inverse: columns are dependent");
  Matrix square(f, basis.cols(), basis.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t c = 0; c < basis.cols(); ++c) square.at(r, c) = basis(e.pivots[r], c);
  Matrix inv = inverse(square);
  Matrix out(f, basis.cols(), basis.rows());
  for (std::size_t i = 0; i < basis.cols(); ++i)
    for (std::size_t r = 0; r < e.pivots.size(); ++r) out.at(i, e.pivots[r]) = inv(i, r);
  return out;
}

/// Algebra structure on a subspace closed under multiplication and containing 1.
struct Subalgebra {
  Algebra algebra;
  Matrix inclusion;  // parent.dim x algebra.dim
};

inline Subalgebra subalgebra_from_basis(const Algebra& parent, const Matrix& basis) {
  const Field& f = parent.field;
  const std::size_t d = basis.cols();
  Matrix coords = left_inverse(basis);
  Matrix mult(f, d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix prod = parent.product(basis.col(i), basis.col(j));
      if (!in_span(basis, prod)) throw InvariantError("subspace is not closed under multiplication");
      mult.set_col(i * d + j, coords * prod);
    }
  if (!in_span(basis, parent.unit)) throw InvariantError("subspace does not contain 1");
  return {Algebra{f, d, std::move(mult), coords * parent.unit}, basis};
}

/// Smallest ideal containing the columns of `gens`, as an independent basis.
inline Matrix ideal_closure(const Algebra& a, const Matrix& gens) {
  if (gens.cols() == 0) return Matrix(a.field, a.dim, 0);
  Matrix span = column_basis(gens);
  for (;;) {
    std::vector<Matrix> blocks{span};
    for (std::size_t i = 0; i < a.dim; ++i) blocks.push_back(a.left_mult(a.basis(i)) * span);
    Matrix next = column_basis(hstack(blocks));
    if (next.cols() == span.cols()) return span;
    span = std::move(next);
  }
}

/// Projection onto a complement of a subspace, and the matching lift.
struct QuotientSpace {
  Matrix projection;  // (n - k) x n, kernel = the subspace
  Matrix lift;        // n x (n - k), projection * lift = I
};

inline QuotientSpace quotient_space(const Matrix& sub_basis) {
  const Field& f = sub_basis.field();
  const std::size_t n = sub_basis.rows();
  Matrix indep = sub_basis.cols() ? column_basis(sub_basis) : Matrix(f, n, 0);
  Matrix comp = complement_basis(indep);
  Matrix full = indep.cols() ? hstack({indep, comp}) : comp;
  Matrix inv = inverse(full);
  return {inv.rows_range(indep.cols(), comp.cols()), comp};
}

struct QuotientAlgebra {
  Algebra algebra;
  Matrix ideal;       // basis of the ideal in the parent
  Matrix projection;  // parent -> quotient
  Matrix lift;
};

inline QuotientAlgebra quotient_algebra(const Algebra& parent, const Matrix& generators) {
  const Field& f = parent.field;
  Matrix ideal = ideal_closure(parent, generators);
  auto q = quotient_space(ideal);
  const std::size_t d = q.lift.cols();
  Matrix mult(f, d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      mult.set_col(i * d + j, q.projection * parent.product(q.lift.col(i), q.lift.col(j)));
  return {Algebra{f, d, std::move(mult), q.projection * parent.unit}, std::move(ideal), std::move(q.projection),
          std::move(q.lift)};
}

/// Image of a under x -> x^|k| (k-linear for a finite field k).
inline Matrix frobenius_matrix(const Algebra& a) {
  const auto q = a.field.order();
  if (!q) throw PreconditionError("Frobenius needs a finite field");
  return linear_map_matrix(a.field, a.dim, a.dim,
                           [&](const Matrix& v) { return a.power(v, static_cast<std::uint64_t>(*q)); });
}

/// Basis of the nilradical. Over a finite field it is the kernel of a high
/// Frobenius power; over Q it is the radical of the trace form.
inline Matrix nilradical(const Algebra& a) {
  const Field& f = a.field;
  if (f.is_finite()) {
    Matrix frob = frobenius_matrix(a);
    Matrix power = Matrix::identity(f, a.dim);
    for (std::size_t i = 0; i < a.dim; ++i) power = frob * power;
    return kernel(power);
  }
  Matrix form(f, a.dim, a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) {
      Matrix l = a.left_mult(a.product(a.basis(i), a.basis(j)));
      Scalar tr = f.zero();
      for (std::size_t k = 0; k < a.dim; ++k) tr = f.add(tr, l(k, k));
      form.at(i, j) = tr;
    }
  return kernel(form);
}

/// Primitive idempotents of a commutative algebra, ordered deterministically.
///
/// Over F_q the elements fixed by Frobenius form a split semisimple algebra
/// k^s whose minimal idempotents are the primitive idempotents; they are
/// separated by joint eigenvalues of its basis elements. Over Q only the
/// local case is decided.
inline std::vector<Matrix> primitive_idempotents(const Algebra& a) {
  const Field& f = a.field;
  if (!f.is_finite()) {
    Matrix rad = nilradical(a);
    if (a.dim - rad.cols() == 1) return {a.unit};
    throw Unsupported("idempotent splitting over Q needs polynomial factorization");
  }
  Matrix fixed = kernel(frobenius_matrix(a) - Matrix::identity(f, a.dim));
  const auto values = f.elements(100000);
  std::vector<Matrix> idem{a.unit};
  for (std::size_t b = 0; b < fixed.cols(); ++b) {
    const Matrix x = fixed.col(b);
    std::vector<Matrix> refined;
    for (const auto& e : idem) {
      // x e = sum of lambda_i e_i over the pieces of e; find the lambdas present.
      const Matrix xe = a.product(x, e);
      std::vector<Scalar> present;
      for (const auto& lam : values) {
        Matrix shifted = xe - e.scaled(lam);
        Matrix op = a.left_mult(shifted) * a.left_mult(e);
        if (rank(op) < rank(a.left_mult(e))) present.push_back(lam);
      }
      if (present.size() <= 1) {
        refined.push_back(e);
        continue;
      }
      for (const auto& lam : present) {
        Matrix piece = e;
        for (const auto& mu : present) {
          if (mu == lam) continue;
          Matrix factor = (x - a.unit.scaled(mu)).scaled(f.inv(f.sub(lam, mu)));
          piece = a.product(piece, factor);
        }
        refined.push_back(piece);
      }
    }
    idem = std::move(refined);
  }
  for (const auto& e : idem)
    if (a.product(e, e) != e) throw InvariantError("idempotent splitting produced a non-idempotent");
  return idem;
}

/// Outcome of trying to exhibit a C-basis of a finite C-module M.
struct FreenessCertificate {
  bool free = false;
  std::size_t rank = 0;                  // common rank when free
  std::vector<std::size_t> local_ranks;  // minimal generator count per local factor of C
  std::vector<std::size_t> local_dims;   // dim_k e_j M
  Matrix basis;                          // columns b_1..b_r in M when free
  std::string reason;
};

/// Tries to show that M (given by `action`: C (x) M -> M) is free of constant
/// positive rank over the Artinian algebra C, by working one local factor at
/// a time (Nakayama: lifts of a residue basis generate; freeness is then a
/// dimension count).
inline FreenessCertificate free_basis(const Algebra& c, const Matrix& action, std::size_t dim_m) {
  const Field& f = c.field;
  FreenessCertificate cert{false, 0, {}, {}, Matrix(f, dim_m, 0), {}};
  auto act = [&](const Matrix& elem) { return action * kron(elem, Matrix::identity(f, dim_m)); };
  const Matrix rad = nilradical(c);
  const auto idem = primitive_idempotents(c);
  std::vector<std::vector<Matrix>> generators(idem.size());
  bool all_free = true;
  for (std::size_t j = 0; j < idem.size(); ++j) {
    const Matrix ej_c = c.left_mult(idem[j]);
    const Matrix local_c = column_basis(ej_c);
    const Matrix local_rad = rad.cols() ? column_basis(ej_c * rad) : Matrix(f, c.dim, 0);
    const std::size_t residue_dim = local_c.cols() - local_rad.cols();
    const Matrix local_m = column_basis(act(idem[j]));
    std::vector<Matrix> rad_m_blocks;
    for (std::size_t r = 0; r < local_rad.cols(); ++r) rad_m_blocks.push_back(act(local_rad.col(r)) * local_m);
    Matrix span = rad_m_blocks.empty() || local_m.cols() == 0 ? Matrix(f, dim_m, 0) : column_basis(hstack(rad_m_blocks));
    const std::size_t top = local_m.cols() - span.cols();
    if (top % residue_dim != 0) throw InvariantError("module top is not a residue-field vector space");
    const std::size_t mu = top / residue_dim;
    cert.local_ranks.push_back(mu);
    cert.local_dims.push_back(local_m.cols());
    if (local_m.cols() != mu * local_c.cols()) all_free = false;
    for (std::size_t v = 0; v < local_m.cols() && span.cols() < local_m.cols(); ++v) {
      const Matrix x = local_m.col(v);
      if (in_span(span, x)) continue;
      generators[j].push_back(x);
      std::vector<Matrix> blocks{span.cols() ? span : x};
      for (std::size_t k = 0; k < local_c.cols(); ++k) blocks.push_back(act(local_c.col(k)) * x);
      span = column_basis(hstack(blocks));
    }
    if (generators[j].size() != mu) throw InvariantError("greedy generator count differs from Nakayama count");
  }
  if (!all_free) {
    cert.reason = "some local factor of the module is not free";
    return cert;
  }
  const std::size_t r = cert.local_ranks.empty() ? 0 : cert.local_ranks[0];
  for (auto mu : cert.local_ranks)
    if (mu != r) {
      cert.reason = "local ranks differ";
      return cert;
    }
  if (r == 0) {
    cert.reason = "rank zero";
    return cert;
  }
  Matrix basis(f, dim_m, r);
  for (std::size_t i = 0; i < r; ++i) {
    Matrix b(f, dim_m, 1);
    for (const auto& gens : generators) b = b + gens[i];
    basis.set_col(i, b);
  }
  // C^r -> M, (c_i) -> sum c_i b_i must be bijective.
  std::vector<Matrix> images;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c.dim; ++k) images.push_back(act(c.basis(k)) * basis.col(i));
  if (!is_bijective(hstack(images))) throw InvariantError("extracted C-basis is not a basis");
  cert.free = true;
  cert.rank = r;
  cert.basis = std::move(basis);
  return cert;
}

}  // namespace tameram

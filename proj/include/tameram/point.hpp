#pragma once

// Points of Spec(B): a maximal ideal together with its residue field k(p)
// and the quotient map B -> k(p), plus automatic splitting of an algebra over
// a finite field into local factors.

#include <string>
#include <vector>

#include "algebra.hpp"

namespace tameram {

struct Point {
  std::string label;
  Matrix ideal;        // basis of p inside B, over k
  Field residue;       // k(p)
  Matrix residue_map;  // 1 x dim B over k(p): images of the basis of B
};

/// pi(b) for b in B (a column over k).
inline Scalar residue_of(const Point& pt, const Matrix& b) {
  const Field& k = b.field();
  const Field& kp = pt.residue;
  Scalar out = kp.zero();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    if (k.is_zero(b(i, 0))) continue;
    out = kp.add(out, kp.mul(k.embed_into(kp, b(i, 0)), pt.residue_map(0, i)));
  }
  return out;
}

/// Rank over k of a list of elements of an extension K of k.
inline std::size_t rank_over(const Field& k, const Field& big, const std::vector<Scalar>& values) {
  if (k == big) {
    for (const auto& v : values)
      if (!big.is_zero(v)) return 1;
    return 0;
  }
  if (!k.embeds_into(big)) throw FieldMismatch(k.describe() + " does not embed into " + big.describe());
  Matrix m(k, static_cast<std::size_t>(big.degree()), values.size());
  for (std::size_t c = 0; c < values.size(); ++c) {
    const auto coeffs = big.coeffs(values[c]);
    for (std::size_t r = 0; r < coeffs.size(); ++r) m.at(r, c) = k.from_int(coeffs[r]);
  }
  return rank(m);
}

inline std::size_t relative_degree(const Field& k, const Field& big) {
  if (k == big) return 1;
  if (!k.embeds_into(big)) throw FieldMismatch(k.describe() + " does not embed into " + big.describe());
  return static_cast<std::size_t>(big.degree());
}

/// Failed point requirements; empty when p is a maximal ideal with B/p = k(p) via pi.
inline std::vector<std::string> point_failures(const Algebra& b, const Point& pt) {
  std::vector<std::string> out;
  const Field& k = b.field;
  if (pt.ideal.rows() != b.dim || pt.residue_map.rows() != 1 || pt.residue_map.cols() != b.dim) {
    throw DimensionError("point '" + pt.label + "' has ideal " + pt.ideal.shape() + " and residue map " +
                         pt.residue_map.shape() + " for an algebra of dimension " + std::to_string(b.dim));
  }
  if (!k.embeds_into(pt.residue)) {
    out.emplace_back("residue field does not contain the base field");
    return out;
  }
  const Matrix ideal = pt.ideal.cols() ? column_basis(pt.ideal) : Matrix(k, b.dim, 0);
  if (ideal.cols() && !same_span(ideal_closure(b, ideal), ideal)) out.emplace_back("not an ideal");
  if (!pt.residue.is_one(residue_of(pt, b.unit))) out.emplace_back("residue map is not unital");
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = i; j < b.dim; ++j) {
      const Scalar lhs = residue_of(pt, b.product(b.basis(i), b.basis(j)));
      const Scalar rhs = pt.residue.mul(pt.residue_map(0, i), pt.residue_map(0, j));
      if (lhs != rhs) {
        out.emplace_back("residue map is not multiplicative");
        i = b.dim;
        break;
      }
    }
  for (std::size_t c = 0; c < ideal.cols(); ++c)
    if (!pt.residue.is_zero(residue_of(pt, ideal.col(c)))) {
      out.emplace_back("residue map does not kill the ideal");
      break;
    }
  std::vector<Scalar> images;
  for (std::size_t i = 0; i < b.dim; ++i) images.push_back(pt.residue_map(0, i));
  const std::size_t d = relative_degree(k, pt.residue);
  if (rank_over(k, pt.residue, images) != d) out.emplace_back("residue map is not surjective");
  if (b.dim - ideal.cols() != d) out.emplace_back("dim B/p differs from [k(p):k]");
  return out;
}

inline void require_point(const Algebra& b, const Point& pt) {
  auto failures = point_failures(b, pt);
  if (!failures.empty()) throw ValidationError("point '" + pt.label + "': " + failures.front());
}

/// A local factor e B of B with its maximal ideal, as a point of B.
struct SplitFactor {
  Matrix idempotent;
  Matrix local_basis;  // basis of e B
  Point point;         // p = (1 - e) B + rad(e B)
};

/// Residue data for B / p when B / p is a field: k itself, or F_p[t]/(f)
/// with t the image of a generator found by search.
inline Point residue_point(const Algebra& b, const Matrix& ideal, std::string label) {
  const Field& k = b.field;
  auto q = quotient_algebra(b, ideal);
  const std::size_t d = q.algebra.dim;
  if (d == 0) throw PreconditionError("ideal is the whole algebra");
  if (d == 1) {
    const Scalar u = (q.projection * b.unit)(0, 0);
    Matrix pi(k, 1, b.dim);
    for (std::size_t i = 0; i < b.dim; ++i) pi.at(0, i) = k.div((q.projection * b.basis(i))(0, 0), u);
    return Point{std::move(label), ideal, k, std::move(pi)};
  }
  if (k.kind() != Field::Kind::prime) throw Unsupported("residue fields over a non-prime base field");
  const Algebra& r = q.algebra;
  // a generator: 1, theta, ..., theta^(d-1) independent
  std::optional<Matrix> theta;
  std::vector<Matrix> candidates;
  for (std::size_t i = 0; i < d; ++i) candidates.push_back(r.basis(i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) candidates.push_back(r.basis(i) + r.basis(j));
  for (const auto& c : candidates) {
    std::vector<Matrix> powers{r.unit};
    for (std::size_t e = 1; e < d; ++e) powers.push_back(r.product(powers.back(), c));
    if (rank(hstack(powers)) == d) {
      theta = c;
      break;
    }
  }
  if (!theta) throw Unsupported("no generator of the residue field found among simple candidates");
  std::vector<Matrix> powers{r.unit};
  for (std::size_t e = 1; e < d; ++e) powers.push_back(r.product(powers.back(), *theta));
  const Matrix basis = hstack(powers);
  const Matrix top = r.product(powers.back(), *theta);
  const auto coeffs = solve_affine(basis, top);
  if (!coeffs) throw InvariantError("theta^d is not in the span of lower powers");
  std::vector<std::int64_t> modulus;
  for (std::size_t e = 0; e < d; ++e) modulus.push_back(std::get<std::int64_t>(k.neg((*coeffs)(e, 0))));
  modulus.push_back(1);
  const Field kp = Field::extension(k.characteristic(), modulus);
  const Matrix to_powers = inverse(basis);
  Matrix pi(kp, 1, b.dim);
  for (std::size_t i = 0; i < b.dim; ++i) {
    const Matrix c = to_powers * (q.projection * b.basis(i));
    std::vector<std::int64_t> cs;
    for (std::size_t e = 0; e < d; ++e) cs.push_back(std::get<std::int64_t>(c(e, 0)));
    pi.at(0, i) = kp.from_coeffs(cs);
  }
  return Point{std::move(label), ideal, kp, std::move(pi)};
}

/// Local factors of B in the order of primitive_idempotents.
inline std::vector<SplitFactor> split_factors(const Algebra& b) {
  const Field& k = b.field;
  const auto idem = primitive_idempotents(b);
  const Matrix rad = nilradical(b);
  std::vector<SplitFactor> out;
  for (std::size_t i = 0; i < idem.size(); ++i) {
    const Matrix& e = idem[i];
    const Matrix local = column_basis(b.left_mult(e));
    const Matrix rest = column_basis(b.left_mult(b.unit - e));
    std::vector<Matrix> blocks;
    if (rest.cols()) blocks.push_back(rest);
    if (rad.cols()) blocks.push_back(b.left_mult(e) * rad);
    const Matrix ideal = blocks.empty() ? Matrix(k, b.dim, 0) : column_basis(hstack(blocks));
    out.push_back(SplitFactor{e, local, residue_point(b, ideal, "p" + std::to_string(i))});
  }
  return out;
}

}  // namespace tameram

#pragma once

// Finite-dimensional Hopf algebras stored by structure constants.
//
// Shapes for dimension n: mult n x n^2, unit n x 1, comult n^2 x n,
// counit 1 x n, antipode n x n.

#include <algorithm>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "algebra.hpp"
#include "group.hpp"

namespace tameram {

/// Raised when a construction would produce a non-commutative algebra.
class NotCommutative : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct HopfAlgebra {
  Field field;
  std::size_t dim;
  Matrix mult;
  Matrix unit;
  Matrix comult;
  Matrix counit;
  Matrix antipode;
  std::vector<std::string> labels;

  Algebra algebra() const { return Algebra{field, dim, mult, unit}; }
  Matrix basis(std::size_t i) const { return Matrix::unit(field, dim, i); }
  Matrix identity() const { return Matrix::identity(field, dim); }
};

struct HopfReport {
  std::vector<std::string> dimension_errors;
  std::vector<std::string> failed_axioms;

  bool ok() const { return dimension_errors.empty() && failed_axioms.empty(); }
  bool mentions(const std::string& axiom) const {
    return std::find(failed_axioms.begin(), failed_axioms.end(), axiom) != failed_axioms.end();
  }
};

/// Checks every Hopf axiom as a matrix identity. Failed axioms are named
/// "associativity", "unit", "commutativity", "coassociativity", "counit",
/// "bialgebra" and "antipode". Shape problems are reported separately and
/// stop the axiom checks.
inline HopfReport validate_hopf(const HopfAlgebra& h, bool require_commutative = true) {
  HopfReport rep;
  const auto n = h.dim;
  auto expect = [&](const Matrix& m, std::size_t r, std::size_t c, const char* what) {
    if (m.rows() != r || m.cols() != c) {
      rep.dimension_errors.push_back(std::string(what) + " has shape " + m.shape() + ", expected " + std::to_string(r) +
                                     "x" + std::to_string(c));
    }
    if (m.field() != h.field) rep.dimension_errors.push_back(std::string(what) + " lives over another field");
  };
  expect(h.mult, n, n * n, "mult");
  expect(h.unit, n, 1, "unit");
  expect(h.comult, n * n, n, "comult");
  expect(h.counit, 1, n, "counit");
  expect(h.antipode, n, n, "antipode");
  if (!h.labels.empty() && h.labels.size() != n) rep.dimension_errors.push_back("label count differs from dimension");
  if (!rep.dimension_errors.empty()) return rep;

  const Field& f = h.field;
  const Matrix id = h.identity();
  const Matrix one = Matrix::identity(f, 1);
  rep.failed_axioms = algebra_axiom_failures(h.algebra(), require_commutative);
  if (kron(h.comult, id) * h.comult != kron(id, h.comult) * h.comult) rep.failed_axioms.emplace_back("coassociativity");
  if (kron(h.counit, id) * h.comult != id || kron(id, h.counit) * h.comult != id) rep.failed_axioms.emplace_back("counit");
  const Matrix mult_aa = tensor_mult(h.mult, n, h.mult, n);
  const bool bialgebra = h.comult * h.mult == mult_aa * kron(h.comult, h.comult) &&
                         h.comult * h.unit == kron(h.unit, h.unit) &&
                         h.counit * h.mult == kron(h.counit, h.counit) && h.counit * h.unit == one;
  if (!bialgebra) rep.failed_axioms.emplace_back("bialgebra");
  const Matrix eta_eps = h.unit * h.counit;
  if (h.mult * kron(h.antipode, id) * h.comult != eta_eps || h.mult * kron(id, h.antipode) * h.comult != eta_eps) {
    rep.failed_axioms.emplace_back("antipode");
  }
  return rep;
}

inline void require_valid(const HopfAlgebra& h, bool require_commutative = true) {
  auto rep = validate_hopf(h, require_commutative);
  if (!rep.dimension_errors.empty()) throw DimensionError("Hopf data: " + rep.dimension_errors.front());
  if (!rep.ok()) {
    std::string s;
    for (const auto& a : rep.failed_axioms) s += (s.empty() ? "" : ", ") + a;
    if (rep.failed_axioms == std::vector<std::string>{"commutativity"}) throw NotCommutative("algebra is not commutative");
    throw ValidationError("Hopf axioms fail: " + s);
  }
}

// --- Sweedler notation -------------------------------------------------------

/// delta(a) = sum_i left_i (x) right_i.
struct SweedlerExpansion {
  std::vector<std::pair<Matrix, Matrix>> terms;
};

/// One term per nonzero coefficient of delta(a) in the basis e_i (x) e_j:
/// (e_i, c e_j).
inline SweedlerExpansion sweedler_expand(const HopfAlgebra& h, const Matrix& a) {
  const Matrix d = h.comult * a;
  SweedlerExpansion out;
  for (std::size_t i = 0; i < h.dim; ++i)
    for (std::size_t j = 0; j < h.dim; ++j) {
      const auto& c = d(i * h.dim + j, 0);
      if (h.field.is_zero(c)) continue;
      out.terms.emplace_back(h.basis(i), h.basis(j).scaled(c));
    }
  return out;
}

inline Matrix reassemble(const HopfAlgebra& h, const SweedlerExpansion& s) {
  Matrix sum(h.field, h.dim * h.dim, 1);
  for (const auto& [l, r] : s.terms) sum = sum + kron(l, r);
  return sum;
}

// --- standard constructors -----------------------------------------------------

/// Map(G, k) with idempotent basis e_g.
inline HopfAlgebra function_algebra(const Field& f, const FiniteGroup& g) {
  const std::size_t n = g.order();
  HopfAlgebra h{f,
                n,
                Matrix(f, n, n * n),
                Matrix(f, n, 1),
                Matrix(f, n * n, n),
                Matrix(f, 1, n),
                Matrix(f, n, n),
                {}};
  for (std::size_t a = 0; a < n; ++a) {
    h.mult.at(a, a * n + a) = f.one();
    h.unit.at(a, 0) = f.one();
    for (std::size_t b = 0; b < n; ++b) h.comult.at(a * n + b, g.mul(a, b)) = f.one();
    h.antipode.at(g.inverse(a), a) = f.one();
    h.labels.push_back("e_" + g.label(a));
  }
  h.counit.at(0, g.identity()) = f.one();
  require_valid(h);
  return h;
}

/// k[G]; rejected with NotCommutative unless G is abelian.
inline HopfAlgebra group_algebra(const Field& f, const FiniteGroup& g, bool allow_noncommutative = false) {
  const std::size_t n = g.order();
  HopfAlgebra h{f,
                n,
                Matrix(f, n, n * n),
                Matrix(f, n, 1),
                Matrix(f, n * n, n),
                Matrix(f, 1, n),
                Matrix(f, n, n),
                {}};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) h.mult.at(g.mul(a, b), a * n + b) = f.one();
    h.comult.at(a * n + a, a) = f.one();
    h.counit.at(0, a) = f.one();
    h.antipode.at(g.inverse(a), a) = f.one();
    h.labels.push_back(g.label(a));
  }
  h.unit.at(g.identity(), 0) = f.one();
  if (!allow_noncommutative && !g.is_abelian()) {
    throw NotCommutative("group algebra of a non-abelian group is not commutative");
  }
  require_valid(h, !allow_noncommutative);
  return h;
}

/// k[x]/(x^n - 1) with x grouplike.
inline HopfAlgebra mu_n(const Field& f, std::size_t n) {
  if (n == 0) throw PreconditionError("mu_0 is not finite");
  HopfAlgebra h{f,
                n,
                Matrix(f, n, n * n),
                Matrix(f, n, 1),
                Matrix(f, n * n, n),
                Matrix(f, 1, n),
                Matrix(f, n, n),
                {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h.mult.at((i + j) % n, i * n + j) = f.one();
    h.comult.at(i * n + i, i) = f.one();
    h.counit.at(0, i) = f.one();
    h.antipode.at((n - i) % n, i) = f.one();
    h.labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  }
  h.unit.at(0, 0) = f.one();
  require_valid(h);
  return h;
}

/// k[x]/(x^p) with x primitive, p the characteristic of k.
inline HopfAlgebra alpha_p(const Field& f) {
  if (!f.is_finite()) throw PreconditionError("alpha_p needs positive characteristic, got " + f.describe());
  const auto p = static_cast<std::size_t>(f.characteristic());
  if (p > 64) throw Unsupported("alpha_p only built for small p");
  HopfAlgebra h{f,
                p,
                Matrix(f, p, p * p),
                Matrix(f, p, 1),
                Matrix(f, p * p, p),
                Matrix(f, 1, p),
                Matrix(f, p, p),
                {}};
  // binomials mod p via Pascal's triangle
  std::vector<std::vector<std::int64_t>> binom(p, std::vector<std::int64_t>(p, 0));
  for (std::size_t i = 0; i < p; ++i) {
    binom[i][0] = 1;
    for (std::size_t j = 1; j <= i; ++j) binom[i][j] = (binom[i - 1][j - 1] + (j < i ? binom[i - 1][j] : 0)) % static_cast<std::int64_t>(p);
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; i + j < p; ++j) h.mult.at(i + j, i * p + j) = f.one();
    for (std::size_t j = 0; j <= i; ++j) h.comult.at(j * p + (i - j), i) = f.from_int(binom[i][j]);
    h.antipode.at(i, i) = f.from_int(i % 2 ? -1 : 1);
    h.labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  }
  h.unit.at(0, 0) = f.one();
  h.counit.at(0, 0) = f.one();
  require_valid(h);
  return h;
}

/// The one-dimensional Hopf algebra k (the trivial group scheme).
inline HopfAlgebra trivial_hopf(const Field& f) { return function_algebra(f, FiniteGroup::trivial()); }

/// Named catalog of constructors.
struct StandardHopf {
  enum class Kind { function_algebra, group_algebra, mu_n, alpha_p };
  Kind kind = Kind::function_algebra;
  std::optional<FiniteGroup> group;
  std::size_t n = 0;
};

inline HopfAlgebra make_standard(const Field& f, const StandardHopf& spec) {
  switch (spec.kind) {
    case StandardHopf::Kind::function_algebra:
      if (!spec.group) throw PreconditionError("function_algebra needs a group");
      return function_algebra(f, *spec.group);
    case StandardHopf::Kind::group_algebra:
      if (!spec.group) throw PreconditionError("group_algebra needs a group");
      return group_algebra(f, *spec.group);
    case StandardHopf::Kind::mu_n:
      return mu_n(f, spec.n);
    case StandardHopf::Kind::alpha_p:
      return alpha_p(f);
  }
  throw PreconditionError("unknown standard Hopf algebra");
}

// --- duality and base change ------------------------------------------------------

struct DualRecord {
  HopfAlgebra hopf;
  HopfReport report;  // every axiom except commutativity
  bool commutative = false;
};

/// Linear dual: structure maps are transposed and swapped in role.
inline DualRecord dual_hopf(const HopfAlgebra& h) {
  HopfAlgebra d{h.field,
                h.dim,
                h.comult.transpose(),
                h.counit.transpose(),
                h.mult.transpose(),
                h.unit.transpose(),
                h.antipode.transpose(),
                {}};
  for (const auto& l : h.labels) d.labels.push_back(l + "*");
  DualRecord rec{d, validate_hopf(d, false), false};
  rec.commutative = algebra_axiom_failures(d.algebra(), true).empty();
  return rec;
}

inline HopfAlgebra extend_scalars(const HopfAlgebra& h, const Field& target) {
  return HopfAlgebra{target,
                     h.dim,
                     embed(h.mult, target),
                     embed(h.unit, target),
                     embed(h.comult, target),
                     embed(h.counit, target),
                     embed(h.antipode, target),
                     h.labels};
}

/// Same Hopf algebra written in the basis given by the columns of p.
inline HopfAlgebra change_basis(const HopfAlgebra& h, const Matrix& p) {
  const Matrix pinv = inverse(p);
  return HopfAlgebra{h.field,
                     h.dim,
                     pinv * h.mult * kron(p, p),
                     pinv * h.unit,
                     kron(pinv, pinv) * h.comult * p,
                     h.counit * p,
                     pinv * h.antipode * p,
                     {}};
}

inline bool same_structure(const HopfAlgebra& a, const HopfAlgebra& b) {
  return a.field == b.field && a.dim == b.dim && a.mult == b.mult && a.unit == b.unit && a.comult == b.comult &&
         a.counit == b.counit && a.antipode == b.antipode;
}

}  // namespace tameram

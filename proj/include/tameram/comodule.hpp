#pragma once

// Right comodules, comodule algebras and (B,A)-modules over a Hopf algebra
// given by structure constants.
//
// A coaction on M (dim m) over A (dim n) is an (m*n) x m matrix: column j is
// rho(e_j) written in the basis e_i (x) a_k at index i * n + k.

#include <string>
#include <vector>

#include "hopf.hpp"

namespace tameram {

struct Comodule {
  HopfAlgebra hopf;
  std::size_t dim;
  Matrix coaction;

  const Field& field() const { return hopf.field; }
};

inline std::vector<std::string> comodule_failures(const Comodule& m) {
  const auto& h = m.hopf;
  if (m.coaction.rows() != m.dim * h.dim || m.coaction.cols() != m.dim || m.coaction.field() != h.field) {
    throw DimensionError("coaction has shape " + m.coaction.shape() + " for a comodule of dimension " +
                         std::to_string(m.dim) + " over a Hopf algebra of dimension " + std::to_string(h.dim));
  }
  std::vector<std::string> out;
  const Matrix id_m = Matrix::identity(h.field, m.dim);
  if (kron(m.coaction, h.identity()) * m.coaction != kron(id_m, h.comult) * m.coaction) {
    out.emplace_back("coassociativity");
  }
  if (kron(id_m, h.counit) * m.coaction != id_m) out.emplace_back("counit");
  return out;
}

inline Comodule make_comodule(const HopfAlgebra& h, Matrix coaction) {
  Comodule m{h, coaction.cols(), std::move(coaction)};
  auto failures = comodule_failures(m);
  if (!failures.empty()) throw ValidationError("comodule axiom fails: " + failures.front());
  return m;
}

/// M with rho(m) = m (x) 1.
inline Comodule trivial_comodule(const HopfAlgebra& h, std::size_t dim) {
  return Comodule{h, dim, kron(Matrix::identity(h.field, dim), h.unit)};
}

/// A coacting on itself by the comultiplication.
inline Comodule regular_comodule(const HopfAlgebra& h) { return Comodule{h, h.dim, h.comult}; }

/// M* with rho(f^i) = sum_j f^j (x) S(a_ij), where rho(m_i) = sum_j m_j (x) a_ji.
inline Comodule dual_comodule(const Comodule& m) {
  const auto& h = m.hopf;
  const Field& f = h.field;
  const std::size_t d = m.dim, n = h.dim;
  Matrix out(f, d * n, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t a = 0; a < n; ++a) {
        const auto& c = m.coaction(i * n + a, j);  // coefficient of m_i (x) e_a in rho(m_j)
        if (f.is_zero(c)) continue;
        for (std::size_t b = 0; b < n; ++b)
          if (!f.is_zero(h.antipode(b, a))) out.at(j * n + b, i) = f.add(out(j * n + b, i), f.mul(h.antipode(b, a), c));
      }
  return Comodule{h, d, std::move(out)};
}

/// M (x) N with the diagonal coaction m (x) n -> m0 (x) n0 (x) m1 n1.
inline Matrix tensor_coaction(const HopfAlgebra& h, const Matrix& rho_m, std::size_t dm, const Matrix& rho_n,
                              std::size_t dn) {
  const Field& f = h.field;
  const std::size_t n = h.dim;
  Matrix out(f, dm * dn * n, dm * dn);
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t k = 0; k < dm; ++k)
      for (std::size_t a = 0; a < n; ++a) {
        const auto& x = rho_m(k * n + a, i);
        if (f.is_zero(x)) continue;
        for (std::size_t j = 0; j < dn; ++j)
          for (std::size_t l = 0; l < dn; ++l)
            for (std::size_t c = 0; c < n; ++c) {
              const auto& y = rho_n(l * n + c, j);
              if (f.is_zero(y)) continue;
              const Scalar xy = f.mul(x, y);
              for (std::size_t d = 0; d < n; ++d) {
                const auto& m = h.mult(d, a * n + c);
                if (f.is_zero(m)) continue;
                auto& slot = out.at((k * dn + l) * n + d, i * dn + j);
                slot = f.add(slot, f.mul(xy, m));
              }
            }
      }
  return out;
}

inline Comodule tensor_comodule(const Comodule& m, const Comodule& n) {
  return Comodule{m.hopf, m.dim * n.dim, tensor_coaction(m.hopf, m.coaction, m.dim, n.coaction, n.dim)};
}

inline Comodule direct_sum(const Comodule& m, const Comodule& n) {
  const Field& f = m.field();
  const std::size_t da = m.hopf.dim, d = m.dim + n.dim;
  Matrix out(f, d * da, d);
  for (std::size_t j = 0; j < m.dim; ++j)
    for (std::size_t r = 0; r < m.dim * da; ++r) out.at(r, j) = m.coaction(r, j);
  for (std::size_t j = 0; j < n.dim; ++j)
    for (std::size_t r = 0; r < n.dim * da; ++r) out.at(m.dim * da + r, m.dim + j) = n.coaction(r, j);
  return Comodule{m.hopf, d, std::move(out)};
}

/// The same comodule in the basis given by the columns of p.
inline Comodule change_basis(const Comodule& m, const Matrix& p) {
  return Comodule{m.hopf, m.dim, kron(inverse(p), m.hopf.identity()) * m.coaction * p};
}

/// Basis of M^A = ker(rho - (id (x) 1)).
inline Matrix invariants(const Comodule& m) {
  return kernel(m.coaction - kron(Matrix::identity(m.field(), m.dim), m.hopf.unit));
}

inline bool is_comodule_map(const Matrix& g, const Comodule& from, const Comodule& to) {
  return to.coaction * g == kron(g, to.hopf.identity()) * from.coaction;
}

/// Basis of Com_A(M, N); each element is a dim(N) x dim(M) matrix.
inline std::vector<Matrix> comodule_homs(const Comodule& m, const Comodule& n) {
  if (!same_structure(m.hopf, n.hopf)) throw PreconditionError("comodules over different Hopf algebras");
  const Field& f = m.field();
  const Matrix id_a = m.hopf.identity();
  Matrix op = linear_operator_on_matrices(
      f, n.dim, m.dim, [&](const Matrix& g) { return n.coaction * g - kron(g, id_a) * m.coaction; });
  Matrix k = kernel(op);
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < k.cols(); ++c) out.push_back(unflatten(k.col(c), n.dim, m.dim));
  return out;
}

/// Terms (m0, m1) of rho(m), one per nonzero coefficient.
inline std::vector<std::pair<Matrix, Matrix>> coaction_expand(const Comodule& m, const Matrix& v) {
  const Matrix r = m.coaction * v;
  const Field& f = m.field();
  std::vector<std::pair<Matrix, Matrix>> out;
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t a = 0; a < m.hopf.dim; ++a) {
      const auto& c = r(i * m.hopf.dim + a, 0);
      if (!f.is_zero(c)) out.emplace_back(Matrix::unit(f, m.dim, i).scaled(c), m.hopf.basis(a));
    }
  return out;
}

// --- comodule algebras ------------------------------------------------------------

struct ComoduleAlgebra {
  Algebra algebra;
  Comodule comodule;
  Subalgebra invariant_algebra;  // C = B^A with its inclusion into B

  const Field& field() const { return algebra.field; }
  const HopfAlgebra& hopf() const { return comodule.hopf; }
  std::size_t dim() const { return algebra.dim; }
  const Matrix& coaction() const { return comodule.coaction; }
  const Algebra& invariants_algebra() const { return invariant_algebra.algebra; }
  const Matrix& invariants_inclusion() const { return invariant_algebra.inclusion; }
};

/// Names of failed comodule-algebra axioms.
inline std::vector<std::string> comodule_algebra_failures(const Algebra& b, const Comodule& m) {
  std::vector<std::string> out = algebra_axiom_failures(b, true);
  if (b.dim != m.dim || b.field != m.field()) throw DimensionError("algebra and comodule disagree on dimension or field");
  for (auto& s : comodule_failures(m)) out.push_back(s);
  const auto& h = m.hopf;
  const Matrix mult_ba = tensor_mult(b.mult, b.dim, h.mult, h.dim);
  if (m.coaction * b.mult != mult_ba * kron(m.coaction, m.coaction)) out.emplace_back("multiplicativity");
  if (m.coaction * b.unit != kron(b.unit, h.unit)) out.emplace_back("unitality");
  return out;
}

inline ComoduleAlgebra make_comodule_algebra(const HopfAlgebra& h, const Algebra& b, const Matrix& coaction) {
  if (h.field != b.field) throw FieldMismatch("Hopf algebra over " + h.field.describe() + ", algebra over " + b.field.describe());
  Comodule m{h, b.dim, coaction};
  auto failures = comodule_algebra_failures(b, m);
  if (!failures.empty()) throw ValidationError("comodule algebra axiom fails: " + failures.front());
  Matrix inv = invariants(m);
  return ComoduleAlgebra{b, std::move(m), subalgebra_from_basis(b, inv)};
}

/// B with rho(b) = b (x) 1.
inline ComoduleAlgebra trivial_action(const HopfAlgebra& h, const Algebra& b) {
  return make_comodule_algebra(h, b, kron(Matrix::identity(h.field, b.dim), h.unit));
}

/// The one-dimensional algebra k.
inline Algebra ground_algebra(const Field& f) {
  return Algebra{f, 1, Matrix::identity(f, 1), Matrix::identity(f, 1)};
}

/// A acting on itself by translation (the regular action).
inline ComoduleAlgebra regular_action(const HopfAlgebra& h) {
  return make_comodule_algebra(h, h.algebra(), h.comult);
}

inline ComoduleAlgebra extend_scalars(const ComoduleAlgebra& b, const Field& target) {
  if (!b.field().embeds_into(target)) {
    throw FieldMismatch("no canonical embedding " + b.field().describe() + " -> " + target.describe());
  }
  return make_comodule_algebra(extend_scalars(b.hopf(), target), extend_scalars(b.algebra, target),
                               embed(b.coaction(), target));
}

// --- (B,A)-modules -------------------------------------------------------------

/// A left B-module N that is also an A-comodule, with rho(b n) = rho(b) rho(n).
/// `action` is dim(N) x (dim(B) * dim(N)).
struct BAModule {
  Comodule comodule;
  Matrix action;

  std::size_t dim() const { return comodule.dim; }
  const Field& field() const { return comodule.field(); }
  Matrix act(const Matrix& b) const { return action * kron(b, Matrix::identity(field(), dim())); }
};

inline std::vector<std::string> ba_module_failures(const ComoduleAlgebra& b, const BAModule& n) {
  const Field& f = b.field();
  const std::size_t db = b.dim(), dn = n.dim(), da = b.hopf().dim;
  if (n.action.rows() != dn || n.action.cols() != db * dn || n.action.field() != f) {
    throw DimensionError("module action has shape " + n.action.shape());
  }
  std::vector<std::string> out = comodule_failures(n.comodule);
  const Matrix id_n = Matrix::identity(f, dn);
  if (n.action * kron(b.algebra.mult, id_n) != n.action * kron(Matrix::identity(f, db), n.action)) {
    out.emplace_back("module associativity");
  }
  if (n.action * kron(b.algebra.unit, id_n) != id_n) out.emplace_back("module unit");
  // rho_B(b) rho_N(n) = sum_{a,c} (B_a b)(N_c n) (x) e_a e_c with B_a, N_c the coaction slices
  const Matrix lhs = n.comodule.coaction * n.action;
  Matrix rhs(f, dn * da, db * dn);
  auto slice = [&](const Matrix& rho, std::size_t dim, std::size_t a) {
    return kron(Matrix::identity(f, dim), b.hopf().basis(a).transpose()) * rho;
  };
  std::vector<Matrix> nc;
  for (std::size_t c = 0; c < da; ++c) nc.push_back(slice(n.comodule.coaction, dn, c));
  for (std::size_t a = 0; a < da; ++a) {
    const Matrix ba = slice(b.coaction(), db, a);
    if (ba.is_zero()) continue;
    for (std::size_t c = 0; c < da; ++c) {
      if (nc[c].is_zero()) continue;
      const Matrix block = n.action * kron(ba, nc[c]);
      for (std::size_t d = 0; d < da; ++d) {
        const auto& m = b.hopf().mult(d, a * da + c);
        if (f.is_zero(m)) continue;
        for (std::size_t l = 0; l < dn; ++l)
          for (std::size_t col = 0; col < db * dn; ++col)
            if (!f.is_zero(block(l, col))) rhs.at(l * da + d, col) = f.add(rhs(l * da + d, col), f.mul(m, block(l, col)));
      }
    }
  }
  if (lhs != rhs) out.emplace_back("compatibility");
  return out;
}

inline BAModule make_ba_module(const ComoduleAlgebra& b, Comodule c, Matrix action) {
  BAModule n{std::move(c), std::move(action)};
  auto failures = ba_module_failures(b, n);
  if (!failures.empty()) throw ValidationError("(B,A)-module axiom fails: " + failures.front());
  return n;
}

inline BAModule regular_module(const ComoduleAlgebra& b) { return BAModule{b.comodule, b.algebra.mult}; }

/// A comodule as a module over the ground field with the trivial coaction.
inline BAModule ground_module(const Comodule& m) { return BAModule{m, Matrix::identity(m.field(), m.dim)}; }

/// B (x) M with B acting on the left factor and the diagonal coaction.
inline BAModule induced_module(const ComoduleAlgebra& b, const Comodule& m) {
  const Field& f = b.field();
  return BAModule{tensor_comodule(b.comodule, m), kron(b.algebra.mult, Matrix::identity(f, m.dim))};
}

/// Structure maps of a (B,A)-module map g: N -> N'.
inline bool is_module_map(const ComoduleAlgebra& b, const Matrix& g, const BAModule& from, const BAModule& to) {
  if (!is_comodule_map(g, from.comodule, to.comodule)) return false;
  return g * from.action == to.action * kron(Matrix::identity(b.field(), b.dim()), g);
}

/// Sub-(B,A)-module on an invariant subspace (independent columns of `basis`).
inline BAModule submodule(const ComoduleAlgebra& b, const BAModule& n, const Matrix& basis) {
  const Field& f = b.field();
  const Matrix coords = left_inverse(basis);
  const Matrix id_a = b.hopf().identity();
  Matrix rho = kron(basis, id_a);
  Matrix image = n.comodule.coaction * basis;
  if (!span_contains(rho, image)) throw PreconditionError("subspace is not a subcomodule");
  Matrix acted = n.action * kron(Matrix::identity(f, b.dim()), basis);
  if (!span_contains(basis, acted)) throw PreconditionError("subspace is not a B-submodule");
  return BAModule{Comodule{b.hopf(), basis.cols(), kron(coords, id_a) * image},
                  coords * acted};
}

/// Quotient N / S with the induced structures, and the projection N -> N/S.
struct QuotientModule {
  BAModule module;
  Matrix projection;
};

inline QuotientModule quotient_module(const ComoduleAlgebra& b, const BAModule& n, const Matrix& sub_basis) {
  const Field& f = b.field();
  auto q = quotient_space(sub_basis);
  const Matrix id_a = b.hopf().identity();
  Comodule c{b.hopf(), q.lift.cols(), kron(q.projection, id_a) * n.comodule.coaction * q.lift};
  Matrix action = q.projection * n.action * kron(Matrix::identity(f, b.dim()), q.lift);
  return {BAModule{std::move(c), std::move(action)}, std::move(q.projection)};
}

/// Invariants of a (B,A)-module with their C-module structure.
struct InvariantModule {
  Matrix basis;     // dim(N) x d
  Matrix c_action;  // d x (dim(C) * d)
};

inline InvariantModule invariants(const ComoduleAlgebra& b, const BAModule& n) {
  const Field& f = b.field();
  Matrix basis = invariants(n.comodule);
  const std::size_t d = basis.cols(), dc = b.invariants_algebra().dim;
  Matrix c_action(f, d, dc * d);
  if (d == 0) return {std::move(basis), std::move(c_action)};
  const Matrix coords = left_inverse(basis);
  for (std::size_t c = 0; c < dc; ++c) {
    const Matrix acted = n.act(b.invariants_inclusion().col(c)) * basis;
    if (!span_contains(basis, acted)) throw InvariantError("C does not preserve the invariants");
    const Matrix block = coords * acted;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) c_action.at(i, c * d + j) = block(i, j);
  }
  return {std::move(basis), std::move(c_action)};
}

// --- Com_A(M, B) versus (B (x) M*)^A ------------------------------------------------

struct CotensorReport {
  std::size_t lhs_dim = 0;  // dim (B (x) M*)^A
  std::size_t rhs_dim = 0;  // dim Com_A(M, B)
  bool lands_in_homs = false;
  bool iso_verified = false;
  Matrix lhs_basis;
  std::vector<Matrix> rhs_basis;
};

/// Builds both sides independently and checks that
/// lambda: sum c_ki e_k (x) f^i -> [m_i -> sum_k c_ki e_k] is a bijection between them.
inline CotensorReport cotensor_compare(const ComoduleAlgebra& b, const Comodule& m) {
  const Field& f = b.field();
  CotensorReport rep;
  const Comodule dual = dual_comodule(m);
  if (!comodule_failures(dual).empty()) throw ValidationError("dual coaction is not a comodule structure");
  const Comodule bm = tensor_comodule(b.comodule, dual);
  rep.lhs_basis = invariants(bm);
  rep.rhs_basis = comodule_homs(m, b.comodule);
  rep.lhs_dim = rep.lhs_basis.cols();
  rep.rhs_dim = rep.rhs_basis.size();
  auto lambda = [&](const Matrix& v) { return unflatten(v, b.dim(), m.dim); };
  rep.lands_in_homs = true;
  std::vector<Matrix> images;
  for (std::size_t c = 0; c < rep.lhs_dim; ++c) {
    Matrix g = lambda(rep.lhs_basis.col(c));
    if (!is_comodule_map(g, m, b.comodule)) rep.lands_in_homs = false;
    images.push_back(flatten(g));
  }
  std::vector<Matrix> rhs_flat;
  for (const auto& g : rep.rhs_basis) rhs_flat.push_back(flatten(g));
  const Matrix empty(f, b.dim() * m.dim, 0);
  const Matrix img = images.empty() ? empty : hstack(images);
  const Matrix rhs = rhs_flat.empty() ? empty : hstack(rhs_flat);
  rep.iso_verified = rep.lands_in_homs && rep.lhs_dim == rep.rhs_dim && rank(img) == rep.lhs_dim && same_span(img, rhs);
  return rep;
}

// --- rebasing to C = B^A ----------------------------------------------------------------

/// B viewed over C with coaction into B (x)_C (C (x) A) = B (x) A, and the two
/// translations between total integrals over k and over C.
struct RebasedAction {
  Algebra c;
  Matrix inclusion;         // C -> B
  Matrix c_hopf_coaction;   // C (x) A -> C (x) A (x) A, id_C (x) delta
  std::optional<Matrix> alpha;  // total integral over k, A -> B
  std::optional<Matrix> beta;   // total integral over C, C (x) A -> B
  std::optional<Matrix> beta_from_alpha;  // mu o (incl (x) alpha)
  std::optional<Matrix> alpha_from_beta;  // beta o i_A
  bool translations_verified = false;

  bool tame_over_k() const { return alpha.has_value(); }
  bool tame_over_c() const { return beta.has_value(); }
};

/// Conditions on beta: C (x) A -> B making it a C-linear unitary comodule map.
inline bool is_total_integral_over_c(const ComoduleAlgebra& b, const Matrix& beta) {
  const Field& f = b.field();
  const auto& h = b.hopf();
  const Algebra& c = b.invariants_algebra();
  const Matrix& incl = b.invariants_inclusion();
  const Matrix id_a = h.identity();
  if (beta.rows() != b.dim() || beta.cols() != c.dim * h.dim) return false;
  if (b.coaction() * beta != kron(beta, id_a) * kron(Matrix::identity(f, c.dim), h.comult)) return false;
  if (beta * kron(c.unit, h.unit) != b.algebra.unit) return false;
  for (std::size_t k = 0; k < c.dim; ++k) {
    const Matrix left_c = kron(c.left_mult(c.basis(k)), id_a);
    if (beta * left_c != b.algebra.left_mult(incl.col(k)) * beta) return false;
  }
  return true;
}

inline std::optional<Matrix> solve_total_integral_over_c(const ComoduleAlgebra& b) {
  const Field& f = b.field();
  const auto& h = b.hopf();
  const Algebra& c = b.invariants_algebra();
  const Matrix& incl = b.invariants_inclusion();
  const Matrix id_a = h.identity();
  const std::size_t rows = b.dim(), cols = c.dim * h.dim;
  const Matrix delta_c = kron(Matrix::identity(f, c.dim), h.comult);
  std::vector<Matrix> c_mults;
  for (std::size_t k = 0; k < c.dim; ++k) c_mults.push_back(kron(c.left_mult(c.basis(k)), id_a));
  const Matrix one_ca = kron(c.unit, h.unit);
  Matrix op = linear_operator_on_matrices(f, rows, cols, [&](const Matrix& beta) {
    std::vector<Matrix> parts{flatten(b.coaction() * beta - kron(beta, id_a) * delta_c), beta * one_ca};
    for (std::size_t k = 0; k < c.dim; ++k)
      parts.push_back(flatten(beta * c_mults[k] - b.algebra.left_mult(incl.col(k)) * beta));
    return vstack(parts);
  });
  Matrix rhs(f, op.rows(), 1);
  const std::size_t offset = rows * cols * h.dim;
  for (std::size_t i = 0; i < rows; ++i) rhs.at(offset + i, 0) = b.algebra.unit(i, 0);
  auto sol = solve_affine(op, rhs);
  if (!sol) return std::nullopt;
  return unflatten(*sol, rows, cols);
}

}  // namespace tameram

#pragma once

// Total integrals, Reynold operators and exactness of the invariants functor.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "comodule.hpp"

namespace tameram {

// --- total integrals ------------------------------------------------------------

/// Affine system for alpha: A -> B (flattened row-major):
/// rho_B alpha = (alpha (x) id) delta and alpha(1) = 1.
struct LinearSystem {
  Matrix op;
  Matrix rhs;
};

inline LinearSystem total_integral_system(const ComoduleAlgebra& b) {
  const Field& f = b.field();
  const auto& h = b.hopf();
  const Matrix id_a = h.identity();
  Matrix op = linear_operator_on_matrices(f, b.dim(), h.dim, [&](const Matrix& alpha) {
    return vstack({flatten(b.coaction() * alpha - kron(alpha, id_a) * h.comult), alpha * h.unit});
  });
  Matrix rhs(f, op.rows(), 1);
  const std::size_t offset = b.dim() * h.dim * h.dim;
  for (std::size_t i = 0; i < b.dim(); ++i) rhs.at(offset + i, 0) = b.algebra.unit(i, 0);
  return {std::move(op), std::move(rhs)};
}

inline bool is_total_integral(const ComoduleAlgebra& b, const Matrix& alpha) {
  const auto& h = b.hopf();
  if (alpha.rows() != b.dim() || alpha.cols() != h.dim || alpha.field() != b.field()) return false;
  return b.coaction() * alpha == kron(alpha, h.identity()) * h.comult && alpha * h.unit == b.algebra.unit;
}

struct TotalIntegralResult {
  std::optional<Matrix> alpha;        // dim(B) x dim(A)
  std::optional<Matrix> certificate;  // row y with y op = 0 and y rhs = 1
  std::size_t unknowns = 0;
  std::size_t equations = 0;

  bool tame() const { return alpha.has_value(); }
};

/// The canonical (row-echelon) total integral, or a Fredholm certificate that none exists.
inline TotalIntegralResult total_integral(const ComoduleAlgebra& b) {
  auto sys = total_integral_system(b);
  TotalIntegralResult res;
  res.unknowns = sys.op.cols();
  res.equations = sys.op.rows();
  if (auto v = solve_affine(sys.op, sys.rhs)) {
    res.alpha = unflatten(*v, b.dim(), b.hopf().dim);
    if (!is_total_integral(b, *res.alpha)) throw InvariantError("solved total integral fails its defining identity");
  } else {
    res.certificate = infeasibility_certificate(sys.op, sys.rhs);
    if (!res.certificate) throw InvariantError("infeasible total-integral system without a certificate");
  }
  return res;
}

/// Whether a row vector refutes the total-integral system of b.
inline bool certifies_not_tame(const ComoduleAlgebra& b, const Matrix& y) {
  auto sys = total_integral_system(b);
  if (y.rows() != 1 || y.cols() != sys.op.rows()) return false;
  return (y * sys.op).is_zero() && b.field().is_one((y * sys.rhs)(0, 0));
}

/// The trivial action of A on the ground field.
inline ComoduleAlgebra trivial_ground_action(const HopfAlgebra& h) { return trivial_action(h, ground_algebra(h.field)); }

inline bool is_linearly_reductive(const HopfAlgebra& h) { return total_integral(trivial_ground_action(h)).tame(); }

// --- Reynold operators --------------------------------------------------------------

struct ReynoldOperator {
  Matrix pr;
};

/// pr(m) = sum alpha(S(m1)) m0, assembled term by term from the coaction.
inline Matrix reynold_matrix(const ComoduleAlgebra& b, const Matrix& alpha, const BAModule& n) {
  const Field& f = b.field();
  const auto& h = b.hopf();
  Matrix pr(f, n.dim(), n.dim());
  for (std::size_t j = 0; j < n.dim(); ++j) {
    Matrix sum(f, n.dim(), 1);
    for (const auto& [m0, m1] : coaction_expand(n.comodule, Matrix::unit(f, n.dim(), j))) {
      sum = sum + n.act(alpha * h.antipode * m1) * m0;
    }
    pr.set_col(j, sum);
  }
  return pr;
}

/// Failed projector properties: "idempotent", "image", "identity on invariants".
inline std::vector<std::string> reynold_failures(const Matrix& pr, const Matrix& invariant_basis) {
  std::vector<std::string> out;
  if (pr * pr != pr) out.emplace_back("idempotent");
  const Matrix image = column_basis(pr);
  if (!same_span(image, invariant_basis)) out.emplace_back("image");
  if (pr * invariant_basis != invariant_basis) out.emplace_back("identity on invariants");
  return out;
}

inline ReynoldOperator reynold(const ComoduleAlgebra& b, const Matrix& alpha, const BAModule& n) {
  if (!is_total_integral(b, alpha)) throw PreconditionError("reynold: alpha is not a total integral");
  Matrix pr = reynold_matrix(b, alpha, n);
  auto failures = reynold_failures(pr, invariants(n.comodule));
  if (!failures.empty()) throw InvariantError("Reynold operator fails: " + failures.front());
  return {std::move(pr)};
}

// --- short exact sequences ------------------------------------------------------------

/// 0 -> left -> middle -> right -> 0 in the category of (B,A)-modules.
struct ShortExactSequence {
  std::string label;
  BAModule left;
  BAModule middle;
  BAModule right;
  Matrix inclusion;   // middle x left
  Matrix projection;  // right x middle
};

/// Throws PreconditionError naming the first failed requirement.
inline void validate_sequence(const ComoduleAlgebra& b, const ShortExactSequence& s) {
  auto modules_ok = [&](const BAModule& m, const char* what) {
    if (!ba_module_failures(b, m).empty()) throw PreconditionError(std::string(what) + " is not a (B,A)-module");
  };
  modules_ok(s.left, "left term");
  modules_ok(s.middle, "middle term");
  modules_ok(s.right, "right term");
  if (s.inclusion.rows() != s.middle.dim() || s.inclusion.cols() != s.left.dim() ||
      s.projection.rows() != s.right.dim() || s.projection.cols() != s.middle.dim()) {
    throw PreconditionError("sequence maps have the wrong shape");
  }
  if (!is_module_map(b, s.inclusion, s.left, s.middle)) throw PreconditionError("inclusion is not a module map");
  if (!is_module_map(b, s.projection, s.middle, s.right)) throw PreconditionError("projection is not a module map");
  if (!is_injective(s.inclusion)) throw PreconditionError("inclusion is not injective");
  if (!is_surjective(s.projection)) throw PreconditionError("projection is not surjective");
  if (!(s.projection * s.inclusion).is_zero() || s.left.dim() + s.right.dim() != s.middle.dim()) {
    throw PreconditionError("sequence is not exact in the middle");
  }
}

/// 0 -> S -> N -> N/S -> 0 for a submodule S given by a basis.
inline ShortExactSequence sequence_from_submodule(const ComoduleAlgebra& b, std::string label, const BAModule& n,
                                                  const Matrix& sub_basis) {
  const Matrix basis = column_basis(sub_basis);
  BAModule sub = submodule(b, n, basis);
  auto q = quotient_module(b, n, basis);
  return {std::move(label), std::move(sub), n, std::move(q.module), basis, std::move(q.projection)};
}

struct ExactnessReport {
  std::string label;
  std::array<std::size_t, 3> dims{};             // dim of the three terms
  std::array<std::size_t, 3> invariant_dims{};   // dim of their invariants
  bool exact = false;                            // invariants sequence exact
  std::optional<Matrix> missed;                  // invariant of the right term with no invariant preimage
  std::optional<Matrix> lifts;                   // pr-chased invariant preimages, when alpha is given
};

inline ExactnessReport exactness_check(const ComoduleAlgebra& b, const ShortExactSequence& s,
                                       const std::optional<Matrix>& alpha = std::nullopt) {
  validate_sequence(b, s);
  const Field& f = b.field();
  ExactnessReport rep;
  rep.label = s.label;
  const Matrix jk = invariants(s.left.comodule), jn = invariants(s.middle.comodule), jq = invariants(s.right.comodule);
  rep.dims = {s.left.dim(), s.middle.dim(), s.right.dim()};
  rep.invariant_dims = {jk.cols(), jn.cols(), jq.cols()};
  const Matrix image = jn.cols() ? s.projection * jn : Matrix(f, s.right.dim(), 0);
  // left exactness is automatic: i is injective and ker(p) on N^A is i(K^A)
  const std::size_t image_rank = image.cols() ? rank(image) : 0;
  if (jn.cols() - image_rank != jk.cols()) throw InvariantError("invariants are not left exact");
  rep.exact = image_rank == jq.cols();
  if (!rep.exact) {
    for (std::size_t c = 0; c < jq.cols(); ++c)
      if (!in_span(image, jq.col(c))) {
        rep.missed = jq.col(c);
        break;
      }
  }
  if (alpha) {
    const Matrix pr = reynold(b, *alpha, s.middle).pr;
    Matrix lifts(f, s.middle.dim(), jq.cols());
    for (std::size_t c = 0; c < jq.cols(); ++c) {
      auto pre = solve_affine(s.projection, jq.col(c));
      if (!pre) throw InvariantError("projection is not surjective");
      Matrix lifted = pr * *pre;
      if (s.projection * lifted != jq.col(c)) throw InvariantError("pr-chased lift misses its target");
      lifts.set_col(c, lifted);
    }
    rep.lifts = std::move(lifts);
  }
  return rep;
}

/// Projectors onto invariants on the three terms of s, natural for both maps,
/// found without any total integral. Each is J X with X J = I, J the invariants basis.
inline std::optional<std::array<Matrix, 3>> natural_projectors(const ComoduleAlgebra& b, const ShortExactSequence& s) {
  const Field& f = b.field();
  const std::array<Matrix, 3> j{invariants(s.left.comodule), invariants(s.middle.comodule),
                                invariants(s.right.comodule)};
  const std::array<std::size_t, 3> n{s.left.dim(), s.middle.dim(), s.right.dim()};
  std::array<std::size_t, 3> offset{};
  std::size_t unknowns = 0;
  for (int t = 0; t < 3; ++t) {
    offset[t] = unknowns;
    unknowns += j[t].cols() * n[t];
  }
  std::array<std::size_t, 3> eq_offset{};
  std::size_t eq = 0;
  for (int t = 0; t < 3; ++t) {
    eq_offset[t] = eq;
    eq += j[t].cols() * j[t].cols();
  }
  const std::size_t nat_i = eq, nat_p = eq + n[1] * n[0];
  eq = nat_p + n[2] * n[1];
  std::array<Matrix, 3> projectors{Matrix(f, n[0], n[0]), Matrix(f, n[1], n[1]), Matrix(f, n[2], n[2])};
  if (unknowns == 0) return projectors;

  Matrix op(f, eq, unknowns);
  Matrix rhs(f, eq, 1);
  for (int t = 0; t < 3; ++t)
    for (std::size_t r = 0; r < j[t].cols(); ++r) rhs.at(eq_offset[t] + r * j[t].cols() + r, 0) = f.one();
  const Matrix ij = s.inclusion * j[0];
  const Matrix pj = s.projection * j[1];
  auto add = [&](std::size_t row, std::size_t col, const Scalar& v) {
    if (!f.is_zero(v)) op.at(row, col) = f.add(op(row, col), v);
  };
  for (int t = 0; t < 3; ++t) {
    const std::size_t d = j[t].cols();
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < n[t]; ++c) {
        const std::size_t col = offset[t] + r * n[t] + c;
        // X J: row r becomes row c of J
        for (std::size_t k = 0; k < d; ++k) add(eq_offset[t] + r * d + k, col, j[t](c, k));
        if (t == 0) {
          // i J_K X_K: column c is i J_K e_r
          for (std::size_t a = 0; a < n[1]; ++a) add(nat_i + a * n[0] + c, col, ij(a, r));
        } else if (t == 1) {
          // - J_N X_N i: outer product of J_N e_r and row c of i
          for (std::size_t a = 0; a < n[1]; ++a)
            for (std::size_t k = 0; k < n[0]; ++k) add(nat_i + a * n[0] + k, col, f.neg(f.mul(j[1](a, r), s.inclusion(c, k))));
          // p J_N X_N: column c is p J_N e_r
          for (std::size_t a = 0; a < n[2]; ++a) add(nat_p + a * n[1] + c, col, pj(a, r));
        } else {
          for (std::size_t a = 0; a < n[2]; ++a)
            for (std::size_t k = 0; k < n[1]; ++k) add(nat_p + a * n[1] + k, col, f.neg(f.mul(j[2](a, r), s.projection(c, k))));
        }
      }
  }
  auto sol = solve_affine(op, rhs);
  if (!sol) return std::nullopt;
  for (int t = 0; t < 3; ++t) {
    const std::size_t d = j[t].cols();
    if (d == 0) continue;
    Matrix x(f, d, n[t]);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < n[t]; ++c) x.at(r, c) = (*sol)(offset[t] + r * n[t] + c, 0);
    projectors[t] = j[t] * x;
  }
  if (s.inclusion * projectors[0] != projectors[1] * s.inclusion ||
      s.projection * projectors[1] != projectors[2] * s.projection) {
    throw InvariantError("natural projector solution is not natural");
  }
  return projectors;
}

// --- the module battery ---------------------------------------------------------------

/// Smallest sub-(B,A)-module of n containing v.
inline Matrix cyclic_submodule(const ComoduleAlgebra& b, const BAModule& n, const Matrix& v) {
  const Field& f = b.field();
  const auto& h = b.hopf();
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < b.dim(); ++i) ops.push_back(n.act(b.algebra.basis(i)));
  for (std::size_t a = 0; a < h.dim; ++a) {
    ops.push_back(kron(Matrix::identity(f, n.dim()), h.basis(a).transpose()) * n.comodule.coaction);
  }
  Matrix span = column_basis(v);
  for (;;) {
    std::vector<Matrix> blocks{span};
    for (const auto& op : ops) blocks.push_back(op * span);
    Matrix next = column_basis(hstack(blocks));
    if (next.cols() == span.cols()) return span;
    span = std::move(next);
  }
}

inline constexpr std::size_t kBatteryCyclicLimit = 4;

inline const char* battery_note() {
  return "exactness and Reynold existence are certified on a finite battery: the unit-evaluation sequence "
         "B (x) A* -> B, the coaction sequence B -> B (x) A, cyclic submodules of dimension <= 4 of B and "
         "B (x) A with their quotients, and user-supplied sequences; not on all of the module category";
}

/// The standard battery followed by `extra`.
inline std::vector<ShortExactSequence> standard_battery(const ComoduleAlgebra& b,
                                                        const std::vector<ShortExactSequence>& extra = {}) {
  const Field& f = b.field();
  const auto& h = b.hopf();
  std::vector<ShortExactSequence> out;
  const BAModule reg = regular_module(b);
  const std::size_t db = b.dim(), da = h.dim;

  // 0 -> K -> B (x) A* -> B -> 0, b (x) g -> g(1) b; its invariants are Com(A, B) -> C.
  {
    const BAModule n = induced_module(b, dual_comodule(regular_comodule(h)));
    const Matrix p = kron(Matrix::identity(f, db), h.unit.transpose());
    const Matrix k = kernel(p);
    out.push_back(ShortExactSequence{"unit-evaluation", submodule(b, n, k), n, reg, k, p});
  }
  // 0 -> B -> B (x) A -> B (x) A/k -> 0, b -> b (x) 1.
  const BAModule ba = induced_module(b, regular_comodule(h));
  out.push_back(sequence_from_submodule(b, "coaction", ba, kron(Matrix::identity(f, db), h.unit)));

  std::vector<Matrix> seen;
  auto add_cyclic = [&](const BAModule& n, const std::string& name) {
    for (std::size_t v = 0; v < n.dim(); ++v) {
      Matrix s = cyclic_submodule(b, n, Matrix::unit(f, n.dim(), v));
      if (s.cols() == 0 || s.cols() == n.dim() || s.cols() > kBatteryCyclicLimit) continue;
      bool dup = false;
      for (const auto& t : seen)
        if (t.rows() == s.rows() && same_span(t, s)) dup = true;
      if (dup) continue;
      seen.push_back(s);
      out.push_back(sequence_from_submodule(b, name + "-cyclic-" + std::to_string(v), n, s));
    }
  };
  add_cyclic(reg, "regular");
  if (db * da <= 64) add_cyclic(ba, "induced");
  for (const auto& s : extra) out.push_back(s);
  for (const auto& s : out) validate_sequence(b, s);
  return out;
}

inline std::optional<ExactnessReport> find_non_exact_witness(const ComoduleAlgebra& b,
                                                             const std::vector<ShortExactSequence>& battery) {
  for (const auto& s : battery) {
    auto rep = exactness_check(b, s);
    if (!rep.exact) return rep;
  }
  return std::nullopt;
}

// --- rebasing to C ---------------------------------------------------------------------

inline RebasedAction rebase_to_invariants(const ComoduleAlgebra& b) {
  const Field& f = b.field();
  const auto& h = b.hopf();
  const Algebra& c = b.invariants_algebra();
  RebasedAction r{c, b.invariants_inclusion(), kron(Matrix::identity(f, c.dim), h.comult), {}, {}, {}, {}, false};
  r.alpha = total_integral(b).alpha;
  r.beta = solve_total_integral_over_c(b);
  bool ok = true;
  if (r.alpha) {
    r.beta_from_alpha = b.algebra.mult * kron(r.inclusion, *r.alpha);
    ok = ok && is_total_integral_over_c(b, *r.beta_from_alpha);
  }
  if (r.beta) {
    if (!is_total_integral_over_c(b, *r.beta)) throw InvariantError("solved C-total integral fails its identities");
    r.alpha_from_beta = *r.beta * kron(c.unit, h.identity());
    ok = ok && is_total_integral(b, *r.alpha_from_beta);
  }
  r.translations_verified = ok && r.alpha.has_value() == r.beta.has_value();
  return r;
}

// --- the equivalence cross-check ----------------------------------------------------

struct EquivalenceReport {
  bool total_integral = false;       // (i)
  bool battery_exact = false;        // (ii)
  bool reynold_on_battery = false;   // (iii)
  bool inertia_reductive = false;    // (iv)
  std::vector<bool> inertia_verdicts;
  bool free_over_c = false;
  FreenessCertificate freeness;
  std::string status;  // "agree", "disagree" or "not applicable"
  std::size_t battery_size = 0;
  std::string battery;
  std::optional<Matrix> alpha;
  std::optional<Matrix> certificate;
  std::optional<ExactnessReport> non_exact;
  std::string reynold_failure;  // label of the first sequence without natural projectors
  std::vector<std::string> sequence_labels;

  bool agree() const {
    return total_integral == battery_exact && battery_exact == reynold_on_battery &&
           reynold_on_battery == inertia_reductive;
  }
};

/// Action of C on B as a C-module, C (x) B -> B.
inline Matrix c_module_action(const ComoduleAlgebra& b) {
  return b.algebra.mult * kron(b.invariants_inclusion(), Matrix::identity(b.field(), b.dim()));
}

inline EquivalenceReport equivalence_report(const ComoduleAlgebra& b, const std::vector<HopfAlgebra>& inertia,
                                            const std::vector<ShortExactSequence>& extra = {}) {
  EquivalenceReport rep;
  auto ti = total_integral(b);
  rep.total_integral = ti.tame();
  rep.alpha = ti.alpha;
  rep.certificate = ti.certificate;

  const auto battery = standard_battery(b, extra);
  rep.battery_size = battery.size();
  rep.battery = battery_note();
  rep.battery_exact = true;
  rep.reynold_on_battery = true;
  for (const auto& s : battery) {
    rep.sequence_labels.push_back(s.label);
    auto ex = exactness_check(b, s);
    if (!ex.exact && rep.battery_exact) {
      rep.battery_exact = false;
      rep.non_exact = ex;
    }
    if (rep.reynold_on_battery && !natural_projectors(b, s)) {
      rep.reynold_on_battery = false;
      rep.reynold_failure = s.label;
    }
  }
  rep.inertia_reductive = true;
  for (const auto& h : inertia) {
    const bool lr = is_linearly_reductive(h);
    rep.inertia_verdicts.push_back(lr);
    rep.inertia_reductive = rep.inertia_reductive && lr;
  }
  rep.freeness = free_basis(b.invariants_algebra(), c_module_action(b), b.dim());
  rep.free_over_c = rep.freeness.free;
  if (!rep.free_over_c) {
    rep.status = "not applicable";
  } else {
    rep.status = rep.agree() ? "agree" : "disagree";
  }
  return rep;
}

}  // namespace tameram

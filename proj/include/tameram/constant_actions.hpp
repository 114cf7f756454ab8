#pragma once

// Constant group schemes: inertia subgroups at the local factors, the order
// criterion for tameness, the trace map, transitivity on primes and the slice
// isomorphism B = Map^{G0}(G, B_p).

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gamma_action.hpp"
#include "geometry.hpp"
#include "tameness.hpp"

namespace tameram {

// --- inertia ----------------------------------------------------------------------

struct InertiaGroup {
  std::size_t factor = 0;
  std::vector<std::size_t> decomposition;  // g with g e = e
  std::vector<std::size_t> elements;       // ... acting trivially on k(p) as well
};

inline InertiaGroup inertia_at(const GammaAction& ga, std::size_t factor) {
  if (factor >= ga.factors.size()) throw PreconditionError("no factor " + std::to_string(factor));
  const auto& fac = ga.factors[factor];
  const Field& kp = fac.point.residue;
  InertiaGroup out{factor, {}, {}};
  for (std::size_t g = 0; g < ga.group.order(); ++g) {
    if (ga.action[g] * fac.idempotent != fac.idempotent) continue;
    out.decomposition.push_back(g);
    // pi(g b) = pi(b) for every basis vector b
    bool trivial = true;
    for (std::size_t j = 0; j < ga.dim() && trivial; ++j) {
      Scalar moved = kp.zero();
      for (std::size_t i = 0; i < ga.dim(); ++i) {
        const auto& c = ga.action[g](i, j);
        if (ga.field().is_zero(c)) continue;
        moved = kp.add(moved, kp.mul(ga.field().embed_into(kp, c), fac.point.residue_map(0, i)));
      }
      trivial = moved == fac.point.residue_map(0, j);
    }
    if (trivial) out.elements.push_back(g);
  }
  if (!ga.group.is_subgroup(out.decomposition) || !ga.group.is_subgroup(out.elements)) {
    throw InvariantError("inertia at factor " + std::to_string(factor) + " is not a subgroup");
  }
  return out;
}

/// Inertia subgroups at primes in one orbit are conjugate: G0(g p) = g G0(p) g^-1.
inline std::vector<std::string> inertia_conjugacy_failures(const GammaAction& ga) {
  std::vector<std::string> out;
  std::vector<std::vector<std::size_t>> inertia;
  for (std::size_t i = 0; i < ga.factors.size(); ++i) inertia.push_back(inertia_at(ga, i).elements);
  const FiniteGroup& g = ga.group;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const auto sigma = ga.factor_permutation(x);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      std::vector<std::size_t> conj;
      for (auto y : inertia[i]) conj.push_back(g.mul(g.mul(x, y), g.inverse(x)));
      std::sort(conj.begin(), conj.end());
      if (conj != inertia[sigma[i]]) {
        out.push_back(g.label(x) + " conjugates G0(" + std::to_string(i) + ") to something other than G0(" +
                      std::to_string(sigma[i]) + ")");
      }
    }
  }
  return out;
}

// --- tameness at a point ----------------------------------------------------------

struct TameAt {
  bool tame = false;
  std::size_t inertia_order = 0;
  std::int64_t characteristic = 0;
  bool linearly_reductive = false;  // of Map(G0, k(p))
};

inline TameAt tame_at(const GammaAction& ga, std::size_t factor) {
  const auto inertia = inertia_at(ga, factor);
  const Field& kp = ga.factors[factor].point.residue;
  TameAt t;
  t.inertia_order = inertia.elements.size();
  t.characteristic = kp.characteristic();
  t.tame = t.characteristic == 0 || t.inertia_order % static_cast<std::size_t>(t.characteristic) != 0;
  t.linearly_reductive = is_linearly_reductive(function_algebra(kp, ga.group.subgroup(inertia.elements).group));
  if (t.tame != t.linearly_reductive) {
    throw InvariantError("order criterion and linear reductivity disagree at factor " + std::to_string(factor));
  }
  return t;
}

// --- trace --------------------------------------------------------------------------

struct TraceResult {
  Matrix trace;                       // sum_g M(g)
  std::optional<Matrix> witness;      // b with tr(b) = 1
  std::optional<Matrix> certificate;  // row y with y tr = 0 and y 1 = 1
};

inline TraceResult trace_tame(const GammaAction& ga) {
  TraceResult r{Matrix(ga.field(), ga.dim(), ga.dim()), std::nullopt, std::nullopt};
  for (const auto& m : ga.action) r.trace = r.trace + m;
  r.witness = solve_affine(r.trace, ga.algebra.unit);
  if (r.witness) {
    if (r.trace * *r.witness != ga.algebra.unit) throw InvariantError("trace witness fails tr(b) = 1");
  } else {
    r.certificate = infeasibility_certificate(r.trace, ga.algebra.unit);
    if (!r.certificate) throw InvariantError("trace system infeasible without a certificate");
  }
  return r;
}

// --- transitivity -------------------------------------------------------------------

struct TransitivityReport {
  bool transitive = false;
  std::vector<std::vector<std::size_t>> orbits;  // of factor indices
  std::size_t invariant_idempotents = 0;         // primitive idempotents of C
  bool c_local = false;
};

inline TransitivityReport transitivity_check(const GammaAction& ga) {
  TransitivityReport r;
  const std::size_t n = ga.factors.size();
  std::vector<std::size_t> orbit_of(n, n);
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t g = 0; g < ga.group.order(); ++g) perms.push_back(ga.factor_permutation(g));
  for (std::size_t i = 0; i < n; ++i) {
    if (orbit_of[i] != n) continue;
    std::vector<std::size_t> orbit;
    for (const auto& s : perms)
      if (orbit_of[s[i]] == n) {
        orbit_of[s[i]] = r.orbits.size();
        orbit.push_back(s[i]);
      }
    std::sort(orbit.begin(), orbit.end());
    r.orbits.push_back(std::move(orbit));
  }
  r.transitive = r.orbits.size() == 1;
  const auto b = coaction_from_group_action(ga);
  r.invariant_idempotents = primitive_idempotents(b.invariants_algebra()).size();
  r.c_local = r.invariant_idempotents == 1;
  if (r.c_local != r.transitive) throw InvariantError("orbit count disagrees with the idempotents of C");
  return r;
}

// --- slices -------------------------------------------------------------------------

struct SliceData {
  std::string prime;
  bool base_changed = false;  // residue action nontrivial, so computed over k(p)
  Field field;                // where the slice lives
  std::size_t factor = 0;     // in the (possibly base-changed) action
  std::vector<std::size_t> inertia;
  Matrix local_basis;   // B_p = e B inside B
  Algebra local;        // B_p with unit e
  Matrix slice_basis;   // Map^{G0}(G, B_p) inside Map(G, B_p), index g * dim B_p + l
  Matrix phi;           // B -> Map(G, B_p), b -> (g -> (g^-1 b)_p)
  Matrix c_map;         // C -> B_p^{G0}, c -> phi(c)(1)
  std::size_t dim_b = 0;
  std::size_t index = 0;  // [G : G0]
  bool bijective = false;
  bool algebra_map = false;
  bool equivariant = false;
  bool invariants_iso = false;
  bool dimension_identity = false;

  bool ok() const { return bijective && algebra_map && equivariant && invariants_iso && dimension_identity; }
};

namespace detail {

/// Pointwise product in Map(G, L) on coordinates g * dim L + l.
inline Matrix pointwise(const Algebra& l, std::size_t order, const Matrix& u, const Matrix& v) {
  const std::size_t d = l.dim;
  Matrix out(l.field, order * d, 1);
  for (std::size_t g = 0; g < order; ++g) {
    const Matrix p = l.product(u.block(g * d, 0, d, 1), v.block(g * d, 0, d, 1));
    for (std::size_t i = 0; i < d; ++i) out.at(g * d + i, 0) = p(i, 0);
  }
  return out;
}

inline SliceData slice_at(const GammaAction& ga, std::size_t factor, std::string prime, bool base_changed) {
  const FiniteGroup& g = ga.group;
  const Field& f = ga.field();
  const Algebra& b = ga.algebra;
  const auto inertia = inertia_at(ga, factor);
  if (inertia.decomposition != inertia.elements) {
    throw Unsupported("residue action is nontrivial after base change to k(p)");
  }
  const Matrix& e = ga.factors[factor].idempotent;
  const Matrix local_basis = column_basis(b.left_mult(e));
  const std::size_t dl = local_basis.cols();
  const Matrix proj = left_inverse(local_basis) * b.left_mult(e);
  Matrix lmult(f, dl, dl * dl);
  for (std::size_t i = 0; i < dl; ++i)
    for (std::size_t j = 0; j < dl; ++j) lmult.set_col(i * dl + j, proj * b.product(local_basis.col(i), local_basis.col(j)));
  const Algebra local = make_algebra(lmult, proj * e);
  auto local_action = [&](std::size_t x) { return proj * ga.action[x] * local_basis; };

  const std::size_t n = g.order();
  const std::size_t big = n * dl;
  // u(g i) = i^-1 u(g) for g in G, i in G0
  std::vector<Matrix> constraints;
  for (std::size_t x = 0; x < n; ++x)
    for (auto i : inertia.elements) {
      if (i == g.identity()) continue;
      Matrix row(f, dl, big);
      const std::size_t xi = g.mul(x, i);
      const Matrix li = local_action(g.inverse(i));
      for (std::size_t r = 0; r < dl; ++r) {
        row.at(r, xi * dl + r) = f.add(row(r, xi * dl + r), f.one());
        for (std::size_t c = 0; c < dl; ++c) row.at(r, x * dl + c) = f.sub(row(r, x * dl + c), li(r, c));
      }
      constraints.push_back(std::move(row));
    }
  const Matrix slice = constraints.empty() ? Matrix::identity(f, big) : kernel(vstack(constraints));

  Matrix phi(f, big, b.dim);
  for (std::size_t x = 0; x < n; ++x) {
    const Matrix block = proj * ga.action[g.inverse(x)];
    for (std::size_t r = 0; r < dl; ++r)
      for (std::size_t c = 0; c < b.dim; ++c) phi.at(x * dl + r, c) = block(r, c);
  }

  SliceData s{std::move(prime), base_changed, f, factor, inertia.elements, local_basis, local, slice, phi,
              Matrix(), b.dim, n / inertia.elements.size()};
  s.bijective = is_injective(phi) && phi.cols() == slice.cols() && same_span(phi, slice);

  Matrix const_one(f, big, 1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t r = 0; r < dl; ++r) const_one.at(x * dl + r, 0) = local.unit(r, 0);
  s.algebra_map = phi * b.unit == const_one;
  for (std::size_t i = 0; i < b.dim && s.algebra_map; ++i)
    for (std::size_t j = i; j < b.dim && s.algebra_map; ++j) {
      s.algebra_map = phi * b.product(b.basis(i), b.basis(j)) == pointwise(local, n, phi.col(i), phi.col(j));
    }

  // (l u)(g) = u(l^-1 g)
  s.equivariant = true;
  for (std::size_t l = 0; l < n && s.equivariant; ++l) {
    const Matrix lhs = phi * ga.action[l];
    Matrix rhs(f, big, b.dim);
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t src = g.mul(g.inverse(l), x);
      for (std::size_t r = 0; r < dl; ++r)
        for (std::size_t c = 0; c < b.dim; ++c) rhs.at(x * dl + r, c) = phi(src * dl + r, c);
    }
    s.equivariant = lhs == rhs;
  }

  const auto cb = coaction_from_group_action(ga);
  s.c_map = proj * cb.invariants_inclusion();
  std::vector<Matrix> fix_rows;
  for (auto i : inertia.elements) fix_rows.push_back(local_action(i) - Matrix::identity(f, dl));
  const Matrix local_fixed = kernel(vstack(fix_rows));
  s.invariants_iso = is_injective(s.c_map) && same_span(s.c_map, local_fixed) &&
                     is_algebra_map(s.c_map, cb.invariants_algebra(), local);
  s.dimension_identity = b.dim == s.index * dl && slice.cols() == b.dim;
  return s;
}

}  // namespace detail

/// Slice at the given factor. When the decomposition group acts nontrivially on
/// k(p), the action is first extended to k(p), where the slice is taken at the
/// factor lying over p.
inline SliceData slice_decompose(const GammaAction& ga, std::size_t factor) {
  if (factor >= ga.factors.size()) throw PreconditionError("no factor " + std::to_string(factor));
  if (!transitivity_check(ga).transitive) throw PreconditionError("group does not act transitively on the primes");
  const auto inertia = inertia_at(ga, factor);
  const auto& pt = ga.factors[factor].point;
  if (inertia.decomposition == inertia.elements) return detail::slice_at(ga, factor, pt.label, false);
  const GammaAction ext = extend_scalars(ga, pt.residue);
  const Field& kp = pt.residue;
  for (std::size_t j = 0; j < ext.factors.size(); ++j) {
    const auto& q = ext.factors[j].point;
    if (q.residue != kp) continue;
    bool over = true;
    for (std::size_t i = 0; i < ga.dim() && over; ++i) over = q.residue_map(0, i) == pt.residue_map(0, i);
    if (over) return detail::slice_at(ext, j, pt.label, true);
  }
  throw InvariantError("no factor over k(p) lies over '" + pt.label + "'");
}

// --- local freeness -----------------------------------------------------------------

struct LocalFreenessReport {
  std::string status;  // "confirmed", "not applicable" or "violated"
  std::optional<std::size_t> trivial_factor;
  std::size_t galois_rank = 0;
  std::size_t target_dim = 0;
};

/// Trivial inertia at one prime of a transitive action forces a free action.
inline LocalFreenessReport local_freeness_check(const GammaAction& ga) {
  LocalFreenessReport r;
  const auto fr = freeness(galois_map(coaction_from_group_action(ga)));
  r.galois_rank = fr.rank;
  r.target_dim = fr.target_dim;
  if (!transitivity_check(ga).transitive) {
    r.status = "not applicable";
    return r;
  }
  for (std::size_t i = 0; i < ga.factors.size(); ++i)
    if (inertia_at(ga, i).elements.size() == 1) {
      r.trivial_factor = i;
      break;
    }
  if (!r.trivial_factor) {
    r.status = "not applicable";
  } else {
    r.status = fr.free ? "confirmed" : "violated";
  }
  return r;
}

// --- agreement with the scheme-theoretic inertia -------------------------------------

/// I_G(p) against Map(G0(p), k(p)): the quotient basis is the image of the
/// e_g with g in G0, and the structure constants must match exactly.
inline bool inertia_agrees(const GammaAction& ga, std::size_t factor, const InertiaHopf& ih) {
  const auto inertia = inertia_at(ga, factor);
  const Field& kp = ga.factors[factor].point.residue;
  const auto sub = ga.group.subgroup(inertia.elements);
  if (ih.hopf.field != kp || ih.hopf.dim != sub.embedding.size()) return false;
  Matrix p(kp, ih.hopf.dim, ih.hopf.dim);
  for (std::size_t c = 0; c < sub.embedding.size(); ++c) p.set_col(c, ih.projection.col(sub.embedding[c]));
  if (!is_bijective(p)) return false;
  return same_structure(change_basis(ih.hopf, p), function_algebra(kp, sub.group));
}

}  // namespace tameram

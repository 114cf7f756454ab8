#pragma once

// Galois maps, free and torsor actions, and inertia group schemes at points,
// all as linear algebra on coordinate rings.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gamma_action.hpp"
#include "point.hpp"
#include "tameness.hpp"

namespace tameram {

struct GaloisMapData {
  Algebra source_abs;          // B (x)_k B
  QuotientAlgebra source_rel;  // B (x)_C B as a quotient of B (x)_k B
  Algebra target;              // B (x)_k A
  Matrix absolute;             // b (x) b' -> (b (x) 1) rho(b')
  Matrix relative;             // the induced map on B (x)_C B
  bool absolute_is_algebra_map = false;
  bool relative_is_algebra_map = false;
  bool factors = false;        // absolute kills the C-bilinearity ideal
};

inline GaloisMapData galois_map(const ComoduleAlgebra& b) {
  const Field& f = b.field();
  const auto& h = b.hopf();
  const Algebra bb = tensor_algebra(b.algebra, b.algebra);
  const Algebra ba = tensor_algebra(b.algebra, h.algebra());
  const Matrix absolute = ba.mult * kron(kron(Matrix::identity(f, b.dim()), h.unit), b.coaction());
  std::vector<Matrix> relations;
  const Matrix& incl = b.invariants_inclusion();
  for (std::size_t c = 0; c < incl.cols(); ++c) {
    relations.push_back(kron(incl.col(c), b.algebra.unit) - kron(b.algebra.unit, incl.col(c)));
  }
  auto rel = quotient_algebra(bb, hstack(relations));
  GaloisMapData g{bb, rel, ba, absolute, absolute * rel.lift, false, false, false};
  g.absolute_is_algebra_map = is_algebra_map(g.absolute, bb, ba);
  g.relative_is_algebra_map = is_algebra_map(g.relative, rel.algebra, ba);
  g.factors = rel.ideal.cols() == 0 || (absolute * rel.ideal).is_zero();
  if (!g.absolute_is_algebra_map || !g.relative_is_algebra_map || !g.factors) {
    throw InvariantError("Galois map fails its algebra-morphism checks");
  }
  return g;
}

struct FreenessReport {
  bool free = false;
  std::size_t rank = 0;                 // rank of the absolute Galois map
  std::size_t target_dim = 0;           // dim B (x) A
  std::optional<Matrix> cokernel_row;   // y with y G = 0, y != 0, when not free
};

/// Free means the Galois morphism is a closed immersion: B (x) B -> B (x) A onto.
inline FreenessReport freeness(const GaloisMapData& g) {
  FreenessReport r;
  r.rank = rank(g.absolute);
  r.target_dim = g.absolute.rows();
  r.free = r.rank == r.target_dim;
  if (!r.free) {
    const Matrix k = kernel(g.absolute.transpose());
    r.cokernel_row = k.col(0).transpose();
  }
  return r;
}

inline bool is_free(const ComoduleAlgebra& b) { return freeness(galois_map(b)).free; }

inline constexpr const char* kTorsorSurrogate =
    "fppf over C is tested as: B free of positive rank over the Artinian ring C";

struct TorsorCertificate {
  bool torsor = false;
  bool free_over_c = false;
  std::size_t c_rank = 0;
  std::size_t source_dim = 0;  // dim B (x)_C B
  std::size_t target_dim = 0;  // dim B (x)_k A
  std::size_t galois_rank = 0;
  std::optional<Matrix> kernel_vector;  // in B (x)_C B coordinates, when not injective
  std::optional<Matrix> cokernel_row;   // when not surjective
  std::string freeness_reason;
  std::string surrogate = kTorsorSurrogate;
};

inline TorsorCertificate is_torsor(const ComoduleAlgebra& b, const GaloisMapData& g) {
  TorsorCertificate t;
  const auto cert = free_basis(b.invariants_algebra(), c_module_action(b), b.dim());
  t.free_over_c = cert.free;
  t.c_rank = cert.rank;
  t.freeness_reason = cert.reason;
  t.source_dim = g.relative.cols();
  t.target_dim = g.relative.rows();
  t.galois_rank = rank(g.relative);
  if (t.galois_rank < t.source_dim) t.kernel_vector = kernel(g.relative).col(0);
  if (t.galois_rank < t.target_dim) t.cokernel_row = kernel(g.relative.transpose()).col(0).transpose();
  t.torsor = t.free_over_c && t.galois_rank == t.source_dim && t.galois_rank == t.target_dim;
  return t;
}

inline TorsorCertificate is_torsor(const ComoduleAlgebra& b) { return is_torsor(b, galois_map(b)); }

// --- inertia ----------------------------------------------------------------------

struct InertiaHopf {
  Point point;
  HopfAlgebra hopf;  // over k(p)
  Matrix ideal;      // Hopf ideal in k(p) (x) A
  Matrix projection;
  Matrix lift;
  HopfReport report;
};

/// Coordinate ring of the fiber product I_G(p): k(p) (x) A modulo the ideal
/// generated by (pi (x) id) rho(b) - pi(b) 1 for b in B, with the quotient
/// Hopf structure.
inline InertiaHopf inertia_hopf(const ComoduleAlgebra& b, const Point& pt) {
  require_point(b.algebra, pt);
  const Field& kp = pt.residue;
  const auto& h0 = b.hopf();
  const HopfAlgebra h = extend_scalars(h0, kp);
  const std::size_t n = h.dim;
  Matrix gens(kp, n, b.dim());
  for (std::size_t j = 0; j < b.dim(); ++j) {
    const Matrix rho = b.coaction().col(j);
    Matrix v = h.unit.scaled(kp.neg(pt.residue_map(0, j)));
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t a = 0; a < n; ++a) {
        const auto& c = rho(i * n + a, 0);
        if (b.field().is_zero(c)) continue;
        v.at(a, 0) = kp.add(v(a, 0), kp.mul(b.field().embed_into(kp, c), pt.residue_map(0, i)));
      }
    gens.set_col(j, v);
  }
  auto q = quotient_algebra(h.algebra(), gens);
  if (q.ideal.cols()) {
    if (!(kron(q.projection, q.projection) * h.comult * q.ideal).is_zero() || !(h.counit * q.ideal).is_zero() ||
        !(q.projection * h.antipode * q.ideal).is_zero()) {
      throw InvariantError("inertia ideal at '" + pt.label + "' is not a Hopf ideal");
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < q.algebra.dim; ++i) labels.push_back("i" + std::to_string(i));
  HopfAlgebra ih{kp,
                 q.algebra.dim,
                 q.algebra.mult,
                 q.algebra.unit,
                 kron(q.projection, q.projection) * h.comult * q.lift,
                 h.counit * q.lift,
                 q.projection * h.antipode * q.lift,
                 std::move(labels)};
  auto report = validate_hopf(ih);
  if (!report.ok()) throw InvariantError("inertia Hopf algebra at '" + pt.label + "' fails validation");
  return InertiaHopf{pt, std::move(ih), std::move(q.ideal), std::move(q.projection), std::move(q.lift),
                     std::move(report)};
}

// --- quotients by subgroups -------------------------------------------------------

struct QuotientTorsorReport {
  std::vector<std::size_t> subgroup;
  std::size_t quotient_order = 0;
  Matrix fixed_basis;  // B^H inside B
  std::vector<Matrix> quotient_action;
  TorsorCertificate torsor;
  bool original_free = false;
  // set when H is the inertia subgroup at every factor; then a torsor is expected
  std::optional<bool> expected;
};

/// B^H with the induced action of G/H, tested for being a torsor over C.
inline QuotientTorsorReport quotient_torsor_check(const GammaAction& ga, const std::vector<std::size_t>& h,
                                                  const std::vector<std::vector<std::size_t>>& inertia) {
  const FiniteGroup& g = ga.group;
  if (!g.is_subgroup(h)) throw ValidationError("H is not a subgroup");
  if (!g.is_normal(h)) throw PreconditionError("H is not normal, so G/H is not a group");
  const Field& f = ga.field();
  const std::size_t d = ga.dim();
  const Matrix id = Matrix::identity(f, d);
  std::vector<Matrix> rows;
  for (auto x : h) rows.push_back(ga.action[x] - id);
  const Matrix fixed = kernel(vstack(rows));
  const Subalgebra sub = subalgebra_from_basis(ga.algebra, fixed);
  const auto q = g.quotient(h);
  const Matrix back = left_inverse(sub.inclusion);
  std::vector<Matrix> mats(q.group.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    Matrix m = back * ga.action[x] * sub.inclusion;
    auto& slot = mats[q.projection[x]];
    if (slot.rows() == 0 && slot.cols() == 0) {
      slot = std::move(m);
    } else if (slot != m) {
      throw InvariantError("action on B^H does not factor through G/H");
    }
  }
  const auto bh = comodule_algebra_from_automorphisms(q.group, sub.algebra, mats);
  QuotientTorsorReport r;
  r.subgroup = h;
  std::sort(r.subgroup.begin(), r.subgroup.end());
  r.quotient_order = q.group.order();
  r.fixed_basis = sub.inclusion;
  r.quotient_action = mats;
  r.torsor = is_torsor(bh);
  r.original_free = is_free(coaction_from_group_action(ga));
  bool all_equal = !inertia.empty();
  for (auto i : inertia) {
    std::sort(i.begin(), i.end());
    all_equal = all_equal && i == r.subgroup;
  }
  if (all_equal) r.expected = true;
  return r;
}

}  // namespace tameram

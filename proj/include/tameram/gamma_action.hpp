#pragma once

// Actions of an abstract finite group on a finite product of local algebras,
// and the comodule algebra over Map(G, k) they define.

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "comodule.hpp"
#include "point.hpp"

namespace tameram {

struct LocalFactor {
  Matrix idempotent;
  Point point;  // p = (1 - e) B + m_e, with residue map zero on (1 - e) B
};

struct GammaAction {
  FiniteGroup group;
  Algebra algebra;
  std::vector<Matrix> action;  // one automorphism per group element, g -> M(g)
  std::vector<LocalFactor> factors;

  const Field& field() const { return algebra.field; }
  std::size_t dim() const { return algebra.dim; }
  /// sigma with M(g) e_i = e_sigma(i).
  std::vector<std::size_t> factor_permutation(std::size_t g) const {
    std::vector<std::size_t> out;
    for (const auto& fac : factors) {
      const Matrix moved = action[g] * fac.idempotent;
      std::size_t hit = factors.size();
      for (std::size_t j = 0; j < factors.size(); ++j)
        if (factors[j].idempotent == moved) hit = j;
      if (hit == factors.size()) throw InvariantError("group element does not permute the factor idempotents");
      out.push_back(hit);
    }
    return out;
  }
};

/// Unital algebra automorphism check for a single matrix.
inline std::vector<std::string> automorphism_failures(const Algebra& b, const Matrix& m) {
  std::vector<std::string> out;
  if (m.rows() != b.dim || m.cols() != b.dim) throw DimensionError("automorphism has shape " + m.shape());
  if (!is_bijective(m)) out.emplace_back("not invertible");
  if (m * b.unit != b.unit) out.emplace_back("not unital");
  if (!is_algebra_map(m, b, b)) out.emplace_back("not multiplicative");
  return out;
}

/// Extends generator matrices to all of G along the Cayley graph and checks
/// that the result is a homomorphism into Aut(B).
inline std::vector<Matrix> extend_to_group(const FiniteGroup& g, const Algebra& b,
                                           const std::vector<std::pair<std::size_t, Matrix>>& generators) {
  const Field& f = b.field;
  std::vector<std::optional<Matrix>> m(g.order());
  m[g.identity()] = Matrix::identity(f, b.dim);
  for (const auto& [elem, mat] : generators) {
    if (elem >= g.order()) throw ValidationError("generator index out of range");
    auto failures = automorphism_failures(b, mat);
    if (!failures.empty()) {
      throw ValidationError("generator " + g.label(elem) + " is " + failures.front());
    }
  }
  std::deque<std::size_t> queue{g.identity()};
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& [s, ms] : generators) {
      const std::size_t xs = g.mul(x, s);
      Matrix next = *m[x] * ms;
      if (!m[xs]) {
        m[xs] = std::move(next);
        queue.push_back(xs);
      } else if (*m[xs] != next) {
        throw ValidationError("generator matrices do not define a homomorphism (conflict at " + g.label(xs) + ")");
      }
    }
  }
  std::vector<Matrix> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (!m[x]) throw ValidationError("generators do not generate the group (missing " + g.label(x) + ")");
    out.push_back(*m[x]);
  }
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y)
      if (out[g.mul(x, y)] != out[x] * out[y]) throw ValidationError("action is not a homomorphism");
  return out;
}

/// Failed requirements of the local factorization.
inline std::vector<std::string> factorization_failures(const GammaAction& ga) {
  std::vector<std::string> out;
  const Algebra& b = ga.algebra;
  const Field& f = b.field;
  if (ga.factors.empty()) {
    out.emplace_back("no factors");
    return out;
  }
  Matrix sum(f, b.dim, 1);
  for (std::size_t i = 0; i < ga.factors.size(); ++i) {
    const auto& fi = ga.factors[i];
    sum = sum + fi.idempotent;
    if (b.product(fi.idempotent, fi.idempotent) != fi.idempotent) out.push_back("factor " + std::to_string(i) + " is not idempotent");
    for (std::size_t j = i + 1; j < ga.factors.size(); ++j)
      if (!b.product(fi.idempotent, ga.factors[j].idempotent).is_zero()) {
        out.push_back("factors " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
      }
    for (const auto& s : point_failures(b, fi.point)) out.push_back("factor " + std::to_string(i) + ": " + s);
    // the point lies on this factor: 1 - e in p, and the local maximal ideal is nilpotent
    const Matrix complement = b.unit - fi.idempotent;
    if (!in_span(fi.point.ideal, complement)) out.push_back("factor " + std::to_string(i) + ": 1 - e is not in p");
    const Matrix local_max = column_basis(b.left_mult(fi.idempotent) * fi.point.ideal);
    if (local_max.cols()) {
      Matrix power = local_max;
      for (std::size_t k = 0; k < b.dim && power.cols(); ++k) {
        std::vector<Matrix> blocks;
        for (std::size_t c = 0; c < power.cols(); ++c) blocks.push_back(b.left_mult(power.col(c)) * local_max);
        power = column_basis(hstack(blocks));
      }
      if (power.cols()) out.push_back("factor " + std::to_string(i) + ": maximal ideal is not nilpotent");
    }
  }
  if (sum != b.unit) out.emplace_back("idempotents do not sum to 1");
  if (out.empty()) {
    for (std::size_t g = 0; g < ga.group.order(); ++g) {
      try {
        (void)ga.factor_permutation(g);
      } catch (const InvariantError&) {
        out.emplace_back("group does not permute the factor idempotents");
        break;
      }
    }
  }
  return out;
}

/// Factors from the automatic splitting over a finite field.
inline std::vector<LocalFactor> automatic_factors(const Algebra& b) {
  std::vector<LocalFactor> out;
  for (auto& s : split_factors(b)) out.push_back(LocalFactor{std::move(s.idempotent), std::move(s.point)});
  return out;
}

inline GammaAction make_gamma_action(const FiniteGroup& g, const Algebra& b,
                                     const std::vector<std::pair<std::size_t, Matrix>>& generators,
                                     std::optional<std::vector<LocalFactor>> factors = std::nullopt) {
  auto failures = algebra_axiom_failures(b, true);
  if (!failures.empty()) throw ValidationError("algebra axiom fails: " + failures.front());
  GammaAction ga{g, b, extend_to_group(g, b, generators), factors ? std::move(*factors) : automatic_factors(b)};
  auto ff = factorization_failures(ga);
  if (!ff.empty()) throw ValidationError("local factorization: " + ff.front());
  return ga;
}

/// rho(b) = sum_g M(g) b (x) e_g over Map(G, k), for automorphisms M(g) indexed like G.
inline Matrix group_coaction(const HopfAlgebra& h, const std::vector<Matrix>& mats) {
  if (mats.size() != h.dim) throw DimensionError("need one matrix per group element");
  const std::size_t d = mats.front().rows(), n = h.dim;
  Matrix rho(h.field, d * n, d);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) rho.at(i * n + g, j) = mats[g](i, j);
  return rho;
}

/// Matrices M(g) read back from a coaction over Map(G, k).
inline std::vector<Matrix> automorphisms_from_coaction(const ComoduleAlgebra& b) {
  std::vector<Matrix> out;
  const Matrix id = Matrix::identity(b.field(), b.dim());
  for (std::size_t g = 0; g < b.hopf().dim; ++g) out.push_back(kron(id, b.hopf().basis(g).transpose()) * b.coaction());
  return out;
}

inline ComoduleAlgebra comodule_algebra_from_automorphisms(const FiniteGroup& g, const Algebra& b,
                                                           const std::vector<Matrix>& mats) {
  const HopfAlgebra h = function_algebra(b.field, g);
  auto out = make_comodule_algebra(h, b, group_coaction(h, mats));
  if (automorphisms_from_coaction(out) != mats) throw InvariantError("coaction does not recover the automorphisms");
  return out;
}

inline ComoduleAlgebra coaction_from_group_action(const GammaAction& ga) {
  return comodule_algebra_from_automorphisms(ga.group, ga.algebra, ga.action);
}

/// The same action over an extension field, with factors split again there.
inline GammaAction extend_scalars(const GammaAction& ga, const Field& target) {
  std::vector<std::pair<std::size_t, Matrix>> gens;
  for (std::size_t g = 0; g < ga.group.order(); ++g) gens.emplace_back(g, embed(ga.action[g], target));
  return make_gamma_action(ga.group, extend_scalars(ga.algebra, target), gens);
}

}  // namespace tameram

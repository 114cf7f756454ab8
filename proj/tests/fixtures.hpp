#pragma once

// Small actions built by hand, independently of the catalog constructors.

#include <algorithm>
#include <random>

#include "support.hpp"
#include "tameram/gamma_action.hpp"

namespace fixtures {

using namespace tameram;

// rho(b) = sum_g M(g) b (x) e_g, written out entry by entry.
inline Matrix automorphism_coaction(const HopfAlgebra& h, const std::vector<Matrix>& mats) {
  const std::size_t d = mats[0].rows(), n = h.dim;
  Matrix rho(h.field, d * n, d);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) rho.at(i * n + g, j) = mats[g](i, j);
  return rho;
}

// C2 acting on F_p[x]/(x^2 + 1) by x -> -x.
inline ComoduleAlgebra gauss(std::int64_t p) {
  const Field f = Field::prime(p);
  const auto h = function_algebra(f, FiniteGroup::cyclic(2));
  const Algebra b = polynomial_quotient(f, {f.one(), f.zero()});
  Matrix sigma = Matrix::identity(f, 2);
  sigma.at(1, 1) = f.neg(f.one());
  return make_comodule_algebra(h, b, automorphism_coaction(h, {Matrix::identity(f, 2), sigma}));
}

inline ComoduleAlgebra regular_c2(const Field& f) { return regular_action(function_algebra(f, FiniteGroup::cyclic(2))); }

// Map(C2, F5) x F5 with the regular action on the first factor.
inline ComoduleAlgebra regular_plus_trivial() {
  const Field f = Field::prime(5);
  const auto h = function_algebra(f, FiniteGroup::cyclic(2));
  const Algebra b = product_algebra(h.algebra(), ground_algebra(f));
  const Comodule rho = direct_sum(regular_comodule(h), trivial_comodule(h, 1));
  return make_comodule_algebra(h, b, rho.coaction);
}

// G acting on the disjoint union of coset spaces G/H_i, as permutations of
// the idempotent basis of Map(X, k): M(g) e_x = e_{g x}.
inline std::vector<Matrix> coset_permutations(const Field& f, const FiniteGroup& g,
                                              const std::vector<std::vector<std::size_t>>& subgroups) {
  // each point is (orbit, coset as a sorted element list)
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> points;
  for (std::size_t o = 0; o < subgroups.size(); ++o)
    for (auto& c : g.left_cosets(subgroups[o])) {
      std::sort(c.begin(), c.end());
      points.emplace_back(o, c);
    }
  const std::size_t n = points.size();
  std::vector<Matrix> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      std::pair<std::size_t, std::vector<std::size_t>> moved{points[i].first, {}};
      for (auto y : points[i].second) moved.second.push_back(g.mul(x, y));
      std::sort(moved.second.begin(), moved.second.end());
      for (std::size_t j = 0; j < n; ++j)
        if (points[j] == moved) m.at(j, i) = f.one();
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<std::pair<std::size_t, Matrix>> all_elements(const std::vector<Matrix>& mats) {
  std::vector<std::pair<std::size_t, Matrix>> out;
  for (std::size_t i = 0; i < mats.size(); ++i) out.emplace_back(i, mats[i]);
  return out;
}

inline GammaAction coset_action(const Field& f, const FiniteGroup& g,
                                const std::vector<std::vector<std::size_t>>& subgroups) {
  const auto mats = coset_permutations(f, g, subgroups);
  return make_gamma_action(g, function_algebra(f, FiniteGroup::cyclic(mats[0].rows())).algebra(), all_elements(mats));
}

inline GammaAction gauss_action(std::int64_t p) {
  const Field f = Field::prime(p);
  const Algebra b = polynomial_quotient(f, {f.one(), f.zero()});
  Matrix sigma = Matrix::identity(f, 2);
  sigma.at(1, 1) = f.neg(f.one());
  return make_gamma_action(FiniteGroup::cyclic(2), b, {{1, sigma}});
}

inline std::vector<std::size_t> whole(const FiniteGroup& g) {
  std::vector<std::size_t> out(g.order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

// A few validated comodules of dimension <= 4 in random bases.
inline std::vector<Comodule> random_comodules(const HopfAlgebra& h, std::mt19937_64& rng, int count) {
  std::vector<Comodule> pieces{trivial_comodule(h, 1)};
  if (h.dim <= 3) {
    pieces.push_back(regular_comodule(h));
    pieces.push_back(dual_comodule(regular_comodule(h)));
  }
  std::vector<Comodule> out;
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  while (static_cast<int>(out.size()) < count) {
    Comodule m = pieces[pick(rng)];
    for (;;) {
      const Comodule& next = pieces[pick(rng)];
      if (m.dim + next.dim > 4) break;
      m = direct_sum(m, next);
      if (rng() % 2) break;
    }
    m = change_basis(m, testing_support::random_invertible(h.field, m.dim, rng));
    if (comodule_failures(m).empty()) out.push_back(m);
  }
  return out;
}

}  // namespace fixtures

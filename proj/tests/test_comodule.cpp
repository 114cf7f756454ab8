#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "support.hpp"
#include "tameram/tameness.hpp"

using namespace tameram;
using namespace fixtures;

TEST(Invariants, SpecExamples) {
  const auto h = function_algebra(Field::prime(5), FiniteGroup::cyclic(2));
  EXPECT_EQ(invariants(trivial_comodule(h, 3)).cols(), 3U);
  const auto reg = regular_c2(Field::prime(5));
  const Matrix inv = invariants(reg.comodule);
  ASSERT_EQ(inv.cols(), 1U);
  EXPECT_TRUE(same_span(inv, reg.algebra.unit));
  EXPECT_EQ(gauss(2).invariant_algebra.algebra.dim, 2U);
}

TEST(Invariants, BasisVectorsAreFixed) {
  for (const auto& b : {gauss(2), gauss(3), gauss(5), regular_c2(Field::prime(5)), regular_plus_trivial()}) {
    const Matrix inv = invariants(b.comodule);
    for (std::size_t c = 0; c < inv.cols(); ++c) {
      EXPECT_EQ(b.coaction() * inv.col(c), kron(inv.col(c), b.hopf().unit));
    }
  }
  EXPECT_EQ(regular_plus_trivial().invariants_algebra().dim, 2U);
}

TEST(Invariants, CModuleStructure) {
  const auto b = regular_plus_trivial();
  const auto inv = invariants(b, regular_module(b));
  EXPECT_EQ(inv.basis.cols(), 2U);
  EXPECT_EQ(inv.c_action.cols(), 2U * 2U);
}

TEST(ComoduleHoms, SpecExamples) {
  const auto h = function_algebra(Field::prime(5), FiniteGroup::cyclic(2));
  EXPECT_EQ(comodule_homs(trivial_comodule(h, 2), trivial_comodule(h, 2)).size(), 4U);
  const auto reg = regular_c2(Field::prime(5));
  EXPECT_EQ(comodule_homs(trivial_comodule(h, 1), reg.comodule).size(), invariants(reg.comodule).cols());
  for (const auto& g : comodule_homs(trivial_comodule(h, 1), reg.comodule)) {
    EXPECT_TRUE(in_span(invariants(reg.comodule), g));
  }
  EXPECT_EQ(comodule_homs(reg.comodule, reg.comodule).size(), 2U);
  EXPECT_THROW(comodule_homs(reg.comodule, trivial_comodule(mu_n(Field::prime(5), 2), 1)), PreconditionError);
}

TEST(ComoduleAlgebra, RejectsBrokenCoactions) {
  const Field f = Field::prime(5);
  const auto h = function_algebra(f, FiniteGroup::cyclic(2));
  const Algebra b = polynomial_quotient(f, {f.one(), f.zero()});
  // x -> 2x is not an algebra automorphism of F5[x]/(x^2+1)
  Matrix bad = Matrix::identity(f, 2);
  bad.at(1, 1) = f.from_int(2);
  EXPECT_THROW(make_comodule_algebra(h, b, automorphism_coaction(h, {Matrix::identity(f, 2), bad})), ValidationError);
  EXPECT_THROW(make_comodule_algebra(h, b, Matrix(f, 3, 2)), DimensionError);
}

TEST(Cotensor, SpecExamples) {
  const auto reg = regular_c2(Field::prime(5));
  {
    auto rep = cotensor_compare(reg, trivial_comodule(reg.hopf(), 1));
    EXPECT_EQ(rep.lhs_dim, 1U);
    EXPECT_EQ(rep.rhs_dim, 1U);
    EXPECT_TRUE(rep.iso_verified);
  }
  {
    auto rep = cotensor_compare(reg, reg.comodule);
    EXPECT_EQ(rep.lhs_dim, 2U);
    EXPECT_EQ(rep.rhs_dim, 2U);
    EXPECT_TRUE(rep.iso_verified);
  }
  {
    const auto b = trivial_ground_action(alpha_p(Field::prime(2)));
    auto rep = cotensor_compare(b, b.comodule);
    EXPECT_EQ(rep.lhs_dim, rep.rhs_dim);
    EXPECT_TRUE(rep.iso_verified);
  }
}

TEST(ExtendScalars, SpecExamples) {
  const auto reg = regular_c2(Field::prime(5));
  const auto same = extend_scalars(reg, Field::prime(5));
  EXPECT_EQ(same.coaction(), reg.coaction());
  EXPECT_EQ(same.algebra.mult, reg.algebra.mult);

  const Field f4 = Field::extension(2, {1, 1, 1});
  EXPECT_FALSE(total_integral(extend_scalars(gauss(2), f4)).tame());

  const Field f25 = Field::extension(5, {2, 0, 1});
  const auto ti = total_integral(reg);
  ASSERT_TRUE(ti.tame());
  const auto big = extend_scalars(reg, f25);
  EXPECT_TRUE(is_total_integral(big, embed(*ti.alpha, f25)));
  EXPECT_TRUE(total_integral(big).tame());
  EXPECT_THROW(extend_scalars(reg, f4), FieldMismatch);
}

TEST(Rebase, SpecExamples) {
  {
    const auto r = rebase_to_invariants(regular_c2(Field::prime(5)));
    EXPECT_EQ(r.c.dim, 1U);
    EXPECT_TRUE(r.tame_over_k());
    EXPECT_TRUE(r.tame_over_c());
    EXPECT_TRUE(r.translations_verified);
  }
  {
    const auto r = rebase_to_invariants(regular_plus_trivial());
    EXPECT_EQ(r.c.dim, 2U);
    EXPECT_TRUE(r.tame_over_k());
    EXPECT_TRUE(r.tame_over_c());
    EXPECT_TRUE(r.translations_verified);
  }
  {
    const auto r = rebase_to_invariants(gauss(2));
    EXPECT_FALSE(r.tame_over_k());
    EXPECT_FALSE(r.tame_over_c());
    EXPECT_TRUE(r.translations_verified);
  }
}

TEST(BAModule, StandardConstructionsAreValid) {
  for (const auto& b : {gauss(3), regular_plus_trivial()}) {
    EXPECT_TRUE(ba_module_failures(b, regular_module(b)).empty());
    EXPECT_TRUE(ba_module_failures(b, induced_module(b, regular_comodule(b.hopf()))).empty());
    EXPECT_TRUE(ba_module_failures(b, induced_module(b, dual_comodule(regular_comodule(b.hopf())))).empty());
  }
}

// --- properties -------------------------------------------------------------

TEST(ComoduleProperty, DualAndTensorAreComodules) {
  std::mt19937_64 rng(11);
  for (const auto& h : {function_algebra(Field::prime(3), FiniteGroup::cyclic(3)), mu_n(Field::prime(5), 2),
                        alpha_p(Field::prime(2))}) {
    for (const auto& m : random_comodules(h, rng, 4)) {
      EXPECT_TRUE(comodule_failures(dual_comodule(m)).empty());
      EXPECT_TRUE(comodule_failures(tensor_comodule(m, dual_comodule(m))).empty());
    }
  }
}

TEST(ComoduleProperty, InvariantsAreFunctorial) {
  std::mt19937_64 rng(12);
  const auto h = function_algebra(Field::prime(5), FiniteGroup::cyclic(2));
  auto ms = random_comodules(h, rng, 6);
  for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
    const auto& m = ms[i];
    const auto& n = ms[i + 1];
    const Matrix inv_n = invariants(n);
    const Matrix inv_m = invariants(m);
    for (const auto& g : comodule_homs(m, n)) {
      ASSERT_TRUE(is_comodule_map(g, m, n));
      if (inv_m.cols() == 0) continue;
      EXPECT_TRUE(span_contains(inv_n, g * inv_m));
    }
  }
}

TEST(ComoduleProperty, CotensorIsomorphismOnRandomComodules) {
  std::mt19937_64 rng(13);
  for (const auto& b : {regular_c2(Field::prime(5)), gauss(3), trivial_ground_action(alpha_p(Field::prime(2))),
                        regular_plus_trivial()}) {
    for (const auto& m : random_comodules(b.hopf(), rng, 3)) {
      auto rep = cotensor_compare(b, m);
      EXPECT_EQ(rep.lhs_dim, rep.rhs_dim);
      EXPECT_TRUE(rep.iso_verified);
    }
  }
}

TEST(ComoduleProperty, ExtendScalarsKeepsInvariantDimension) {
  const Field f4 = Field::extension(2, {1, 1, 1});
  const Field f25 = Field::extension(5, {2, 0, 1});
  EXPECT_EQ(extend_scalars(gauss(2), f4).invariants_algebra().dim, 2U);
  EXPECT_EQ(extend_scalars(gauss(5), f25).invariants_algebra().dim, 1U);
  EXPECT_EQ(extend_scalars(regular_plus_trivial(), f25).invariants_algebra().dim, 2U);
}

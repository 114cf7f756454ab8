#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "support.hpp"
#include "tameram/constant_actions.hpp"

using namespace tameram;
using namespace fixtures;

namespace {

std::size_t some_involution(const FiniteGroup& g) {
  for (std::size_t x = 0; x < g.order(); ++x)
    if (x != g.identity() && g.mul(x, x) == g.identity()) return x;
  throw std::logic_error("no involution");
}

std::vector<std::vector<std::size_t>> all_subgroups(const FiniteGroup& g) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << g.order()); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < g.order(); ++i)
      if (mask >> i & 1) s.push_back(i);
    if (g.is_subgroup(s)) out.push_back(s);
  }
  return out;
}

GammaAction trivial_gamma(const Field& f, const FiniteGroup& g) {
  return coset_action(f, g, {whole(g)});
}

GammaAction regular_gamma(const Field& f, const FiniteGroup& g) {
  return coset_action(f, g, {{g.identity()}});
}

// The action on Map(X, k) (x) k[eps]/(eps^2), written in the basis P.
GammaAction thickened(const GammaAction& ga, const Matrix& p) {
  const Field& f = ga.field();
  const Algebra dual = polynomial_quotient(f, {f.zero(), f.zero()});
  const Algebra t = tensor_algebra(ga.algebra, dual);
  const Matrix pinv = inverse(p);
  const Algebra moved = make_algebra(pinv * t.mult * kron(p, p), pinv * t.unit);
  std::vector<std::pair<std::size_t, Matrix>> gens;
  for (std::size_t g = 0; g < ga.group.order(); ++g) {
    gens.emplace_back(g, pinv * kron(ga.action[g], Matrix::identity(f, 2)) * p);
  }
  return make_gamma_action(ga.group, moved, gens);
}

}  // namespace

TEST(GammaAction, CoactionExamples) {
  const Field f5 = Field::prime(5);
  {
    const auto ga = trivial_gamma(f5, FiniteGroup::cyclic(3));
    const auto b = coaction_from_group_action(ga);
    EXPECT_EQ(b.invariants_inclusion().cols(), b.dim());
    EXPECT_EQ(b.coaction(), kron(Matrix::identity(f5, 1), b.hopf().unit));
  }
  EXPECT_EQ(coaction_from_group_action(regular_gamma(f5, FiniteGroup::cyclic(2))).invariants_inclusion().cols(), 1U);
  const auto g5 = coaction_from_group_action(gauss_action(5));
  EXPECT_EQ(g5.invariants_inclusion().cols(), 1U);
  EXPECT_TRUE(in_span(g5.invariants_inclusion(), g5.algebra.unit));
  EXPECT_EQ(automorphisms_from_coaction(g5), gauss_action(5).action);
}

TEST(GammaAction, CoactionMatchesTheHandWrittenOracle) {
  const Field f7 = Field::prime(7);
  const auto g = FiniteGroup::symmetric(3);
  const auto ga = coset_action(f7, g, {{g.identity(), some_involution(g)}});
  const auto b = coaction_from_group_action(ga);
  EXPECT_EQ(b.coaction(), automorphism_coaction(b.hopf(), ga.action));
}

TEST(GammaAction, RejectsBadGenerators) {
  const Field f3 = Field::prime(3);
  const auto c3 = FiniteGroup::cyclic(3);
  const Algebra map3 = function_algebra(f3, c3).algebra();
  Matrix swap(f3, 3, 3);
  swap.at(1, 0) = swap.at(0, 1) = swap.at(2, 2) = f3.one();
  EXPECT_THROW(make_gamma_action(c3, map3, {{1, swap}}), ValidationError);
  EXPECT_THROW(make_gamma_action(c3, map3, {}), ValidationError);
  Matrix scale = Matrix::identity(f3, 3).scaled(f3.from_int(2));
  EXPECT_THROW(make_gamma_action(c3, map3, {{1, scale}}), ValidationError);
}

TEST(GammaAction, RejectsBadFactorizations) {
  const Field f5 = Field::prime(5);
  const auto c2 = FiniteGroup::cyclic(2);
  const auto ga = regular_gamma(f5, c2);
  auto factors = ga.factors;
  factors.pop_back();
  EXPECT_THROW(make_gamma_action(c2, ga.algebra, all_elements(ga.action), factors), ValidationError);
  auto doubled = ga.factors;
  doubled[1] = doubled[0];
  EXPECT_THROW(make_gamma_action(c2, ga.algebra, all_elements(ga.action), doubled), ValidationError);
}

TEST(Inertia, ConstantExamples) {
  const auto c2 = FiniteGroup::cyclic(2);
  const auto triv = trivial_gamma(Field::prime(5), FiniteGroup::cyclic(3));
  EXPECT_EQ(inertia_at(triv, 0).elements.size(), 3U);
  const auto g2 = gauss_action(2);
  ASSERT_EQ(g2.factors.size(), 1U);
  EXPECT_EQ(inertia_at(g2, 0).elements, whole(c2));
  const auto g3 = gauss_action(3);
  ASSERT_EQ(g3.factors.size(), 1U);
  EXPECT_EQ(inertia_at(g3, 0).elements, std::vector<std::size_t>{c2.identity()});
  EXPECT_EQ(inertia_at(g3, 0).decomposition, whole(c2));
  const auto g5 = gauss_action(5);
  ASSERT_EQ(g5.factors.size(), 2U);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(inertia_at(g5, i).elements.size(), 1U);
    EXPECT_EQ(inertia_at(g5, i).decomposition.size(), 1U);
  }
}

TEST(TameAt, Examples) {
  EXPECT_FALSE(tame_at(gauss_action(2), 0).tame);
  EXPECT_TRUE(tame_at(gauss_action(3), 0).tame);
  EXPECT_TRUE(tame_at(gauss_action(5), 0).tame);
  EXPECT_TRUE(tame_at(gauss_action(5), 1).tame);
  const auto q = trivial_gamma(Field::rationals(), FiniteGroup::cyclic(3));
  const auto t = tame_at(q, 0);
  EXPECT_TRUE(t.tame);
  EXPECT_EQ(t.characteristic, 0);
  EXPECT_EQ(t.inertia_order, 3U);
}

TEST(Trace, Examples) {
  const Field f5 = Field::prime(5);
  {
    const auto r = trace_tame(trivial_gamma(f5, FiniteGroup::trivial()));
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(*r.witness, Matrix::identity(f5, 1));
  }
  {
    const auto ga = gauss_action(5);
    const auto r = trace_tame(ga);
    ASSERT_TRUE(r.witness.has_value());
    // tr(b) = 2 b on the constants, so b = 3 is the solution there
    EXPECT_EQ(r.trace * ga.algebra.unit.scaled(f5.from_int(3)), ga.algebra.unit);
  }
  {
    const auto ga = gauss_action(2);
    const auto r = trace_tame(ga);
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_TRUE(r.trace.is_zero());
    ASSERT_TRUE(r.certificate.has_value());
    EXPECT_TRUE(Field::prime(2).is_one((*r.certificate * ga.algebra.unit)(0, 0)));
  }
}

TEST(Transitivity, Examples) {
  const Field f5 = Field::prime(5);
  const auto c2 = FiniteGroup::cyclic(2);
  EXPECT_TRUE(transitivity_check(regular_gamma(f5, c2)).transitive);
  const auto g5 = transitivity_check(gauss_action(5));
  EXPECT_TRUE(g5.transitive);
  EXPECT_TRUE(g5.c_local);
  const auto two = transitivity_check(coset_action(f5, c2, {{0}, {0}}));
  EXPECT_FALSE(two.transitive);
  EXPECT_EQ(two.orbits.size(), 2U);
  EXPECT_FALSE(two.c_local);
  EXPECT_EQ(two.invariant_idempotents, 2U);
}

TEST(Slice, Examples) {
  {
    const Field f2 = Field::prime(2);
    const auto ga = regular_gamma(f2, FiniteGroup::symmetric(3));
    const auto s = slice_decompose(ga, 0);
    EXPECT_TRUE(s.ok());
    EXPECT_EQ(s.inertia.size(), 1U);
    EXPECT_EQ(s.local.dim, 1U);
    EXPECT_EQ(s.index, 6U);
  }
  {
    const Field f7 = Field::prime(7);
    const auto g = FiniteGroup::symmetric(3);
    const auto tau = some_involution(g);
    const auto ga = coset_action(f7, g, {{g.identity(), tau}});
    // the factor at the coset <tau> itself
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < ga.factors.size(); ++i) {
      const auto in = inertia_at(ga, i).elements;
      if (std::find(in.begin(), in.end(), tau) != in.end()) at = i;
    }
    ASSERT_TRUE(at.has_value());
    const auto s = slice_decompose(ga, *at);
    EXPECT_TRUE(s.ok());
    EXPECT_EQ(s.inertia, (std::vector<std::size_t>{std::min(g.identity(), tau), std::max(g.identity(), tau)}));
    EXPECT_EQ(s.index, 3U);
    EXPECT_EQ(s.dim_b, 3U);
    EXPECT_EQ(s.c_map.cols(), 1U);
  }
  {
    const auto s = slice_decompose(gauss_action(2), 0);
    EXPECT_TRUE(s.ok());
    EXPECT_EQ(s.index, 1U);
    EXPECT_EQ(s.local.dim, 2U);
    EXPECT_EQ(s.c_map.cols(), 2U);
    EXPECT_FALSE(s.base_changed);
  }
  {
    const auto s = slice_decompose(gauss_action(3), 0);
    EXPECT_TRUE(s.ok());
    EXPECT_TRUE(s.base_changed);
    EXPECT_EQ(s.field.degree(), 2);
    EXPECT_EQ(s.index, 2U);
  }
}

TEST(Slice, RequiresTransitivity) {
  const auto ga = coset_action(Field::prime(5), FiniteGroup::cyclic(2), {{0}, {0}});
  EXPECT_THROW(slice_decompose(ga, 0), PreconditionError);
}

TEST(LocalFreeness, Examples) {
  EXPECT_EQ(local_freeness_check(gauss_action(3)).status, "confirmed");
  EXPECT_EQ(local_freeness_check(gauss_action(5)).status, "confirmed");
  EXPECT_EQ(local_freeness_check(gauss_action(2)).status, "not applicable");
}

TEST(QuotientTorsor, Examples) {
  const Field f3 = Field::prime(3);
  {
    const auto c3 = FiniteGroup::cyclic(3);
    const auto ga = regular_gamma(f3, c3);
    const auto r = quotient_torsor_check(ga, whole(c3), {});
    EXPECT_EQ(r.quotient_order, 1U);
    EXPECT_EQ(r.fixed_basis.cols(), 1U);
    EXPECT_TRUE(r.torsor.torsor);
  }
  {
    const auto c4 = FiniteGroup::cyclic(4);
    const std::vector<std::size_t> c2{0, 2};
    const auto ga = coset_action(f3, c4, {c2});
    const auto r = quotient_torsor_check(ga, c2, {inertia_at(ga, 0).elements, inertia_at(ga, 1).elements});
    EXPECT_EQ(r.quotient_order, 2U);
    EXPECT_EQ(r.fixed_basis.cols(), 2U);
    EXPECT_TRUE(r.torsor.torsor);
    EXPECT_FALSE(r.original_free);
    ASSERT_TRUE(r.expected.has_value());
    EXPECT_TRUE(*r.expected);
  }
  {
    const auto ga = gauss_action(2);
    const auto r = quotient_torsor_check(ga, whole(ga.group), {inertia_at(ga, 0).elements});
    EXPECT_TRUE(r.torsor.torsor);
    EXPECT_FALSE(r.original_free);
  }
  EXPECT_THROW(quotient_torsor_check(gauss_action(2), {1}, {}), ValidationError);
}

TEST(InertiaAgreement, Examples) {
  for (const auto& ga : {gauss_action(2), gauss_action(3), gauss_action(5),
                         trivial_gamma(Field::prime(2), FiniteGroup::cyclic(2)),
                         regular_gamma(Field::prime(3), FiniteGroup::cyclic(3))}) {
    const auto b = coaction_from_group_action(ga);
    for (std::size_t i = 0; i < ga.factors.size(); ++i) {
      EXPECT_TRUE(inertia_agrees(ga, i, inertia_hopf(b, ga.factors[i].point)));
    }
  }
}

TEST(Property, RandomCosetActions) {
  std::mt19937_64 rng(20261016);
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                        FiniteGroup::symmetric(3)};
  const std::vector<std::int64_t> primes{2, 3, 5, 7};
  for (int round = 0; round < 24; ++round) {
    const auto& g = groups[rng() % groups.size()];
    const Field f = Field::prime(primes[rng() % primes.size()]);
    const auto subs = all_subgroups(g);
    std::vector<std::vector<std::size_t>> chosen{subs[rng() % subs.size()]};
    if (g.order() <= 4 && rng() % 3 == 0) chosen.push_back(subs[rng() % subs.size()]);
    GammaAction ga = coset_action(f, g, chosen);
    if (ga.dim() <= 3 && rng() % 2 == 0) {
      ga = thickened(ga, testing_support::random_invertible(f, 2 * ga.dim(), rng));
    }
    SCOPED_TRACE("round " + std::to_string(round) + " over " + f.describe() + ", dim " + std::to_string(ga.dim()));
    EXPECT_TRUE(inertia_conjugacy_failures(ga).empty());

    const auto b = coaction_from_group_action(ga);
    EXPECT_EQ(trace_tame(ga).witness.has_value(), total_integral(b).tame());

    bool all_trivial = true;
    for (std::size_t i = 0; i < ga.factors.size(); ++i) {
      (void)tame_at(ga, i);  // throws when the order criterion and linear reductivity disagree
      all_trivial = all_trivial && inertia_at(ga, i).elements.size() == 1;
      const auto ih = inertia_hopf(b, ga.factors[i].point);
      EXPECT_TRUE(inertia_agrees(ga, i, ih));
      EXPECT_EQ(g.order() % ih.hopf.dim, 0U);
    }
    EXPECT_EQ(is_free(b), all_trivial);

    if (transitivity_check(ga).transitive) {
      const auto s = slice_decompose(ga, rng() % ga.factors.size());
      EXPECT_TRUE(s.bijective);
      EXPECT_TRUE(s.algebra_map);
      EXPECT_TRUE(s.equivariant);
      EXPECT_TRUE(s.invariants_iso);
      EXPECT_TRUE(s.dimension_identity);
      EXPECT_NE(local_freeness_check(ga).status, "violated");
    }
  }
}

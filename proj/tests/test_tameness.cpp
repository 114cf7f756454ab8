#include <gtest/gtest.h>

#include <chrono>

#include "fixtures.hpp"
#include "support.hpp"
#include "tameram/tameness.hpp"

using namespace tameram;
using namespace fixtures;

namespace {

std::vector<FiniteGroup> maschke_groups() {
  return {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)};
}

std::vector<Field> maschke_fields() {
  return {Field::prime(2), Field::prime(3), Field::prime(5), Field::rationals()};
}

}  // namespace

TEST(TotalIntegral, SpecExamples) {
  const Field f5 = Field::prime(5);
  {
    const auto b = trivial_ground_action(trivial_hopf(f5));
    auto ti = total_integral(b);
    ASSERT_TRUE(ti.tame());
    EXPECT_EQ(*ti.alpha, b.algebra.unit);
  }
  {
    const auto reg = regular_c2(f5);
    EXPECT_TRUE(is_total_integral(reg, Matrix::identity(f5, 2)));
    EXPECT_TRUE(total_integral(reg).tame());
  }
  for (const auto& b : {trivial_ground_action(alpha_p(Field::prime(2))), gauss(2)}) {
    auto ti = total_integral(b);
    EXPECT_FALSE(ti.tame());
    ASSERT_TRUE(ti.certificate.has_value());
    EXPECT_TRUE(certifies_not_tame(b, *ti.certificate));
  }
}

TEST(TotalIntegral, TrivialC2OverF2IsInfeasible) {
  // two unknowns alpha(e_1), alpha(e_g); the unit row asks for their sum, the
  // comodule rows force them equal, so 2c = 1 in F_2
  const auto b = trivial_ground_action(function_algebra(Field::prime(2), FiniteGroup::cyclic(2)));
  auto sys = total_integral_system(b);
  EXPECT_EQ(sys.op.cols(), 2U);
  EXPECT_FALSE(solve_affine(sys.op, sys.rhs).has_value());
}

TEST(Reynold, SpecExamples) {
  const Field f5 = Field::prime(5);
  const auto reg = regular_c2(f5);
  const Matrix alpha = Matrix::identity(f5, 2);
  {
    const auto g = trivial_ground_action(reg.hopf());
    const BAModule t = induced_module(g, trivial_comodule(g.hopf(), 3));
    EXPECT_EQ(reynold(g, *total_integral(g).alpha, t).pr, Matrix::identity(f5, 3));
  }
  const BAModule b = regular_module(reg);
  const Matrix pr = reynold(reg, alpha, b).pr;
  EXPECT_EQ(pr * reg.algebra.unit, reg.algebra.unit);
  EXPECT_EQ(pr * pr, pr);
  EXPECT_TRUE(in_span(reg.algebra.unit, pr * reg.algebra.basis(0)));
  // rho(e_1) = e_1 (x) e_1 + e_g (x) e_g, so pr(e_1) = e_1 e_1 + e_g e_g = 1
  EXPECT_EQ(pr * reg.algebra.basis(0), reg.algebra.unit);
}

TEST(Reynold, RejectsNonIntegral) {
  const Field f5 = Field::prime(5);
  const auto reg = regular_c2(f5);
  EXPECT_THROW(reynold(reg, Matrix(f5, 2, 2), regular_module(reg)), PreconditionError);
}

TEST(Exactness, SpecExamples) {
  const Field f5 = Field::prime(5);
  const auto reg = regular_c2(f5);
  const BAModule n = regular_module(reg);
  {
    auto s = sequence_from_submodule(reg, "identity", n, Matrix::identity(f5, 2));
    auto rep = exactness_check(reg, s);
    EXPECT_TRUE(rep.exact);
    EXPECT_EQ(rep.dims[2], 0U);
  }
  {
    // B as an A-comodule, i.e. a module over k with the trivial coaction
    const auto k = trivial_ground_action(reg.hopf());
    auto s = sequence_from_submodule(k, "constants", ground_module(reg.comodule), reg.algebra.unit);
    auto rep = exactness_check(k, s, total_integral(k).alpha);
    EXPECT_TRUE(rep.exact);
    EXPECT_EQ(rep.invariant_dims, (std::array<std::size_t, 3>{1, 1, 0}));
    ASSERT_TRUE(rep.lifts.has_value());
  }
  {
    const auto b = trivial_ground_action(alpha_p(Field::prime(2)));
    auto witness = find_non_exact_witness(b, standard_battery(b));
    ASSERT_TRUE(witness.has_value());
    EXPECT_FALSE(witness->exact);
    ASSERT_TRUE(witness->missed.has_value());
    EXPECT_FALSE(witness->missed->is_zero());
  }
}

TEST(Exactness, RejectsNonSequences) {
  const Field f5 = Field::prime(5);
  const auto reg = regular_c2(f5);
  const auto k = trivial_ground_action(reg.hopf());
  auto s = sequence_from_submodule(k, "constants", ground_module(reg.comodule), reg.algebra.unit);
  s.projection = Matrix(f5, s.right.dim(), 2);
  EXPECT_THROW(exactness_check(k, s), PreconditionError);
  EXPECT_THROW(sequence_from_submodule(reg, "constants", regular_module(reg), reg.algebra.unit), PreconditionError);
}

TEST(LinearReductivity, SpecExamples) {
  EXPECT_TRUE(is_linearly_reductive(function_algebra(Field::prime(5), FiniteGroup::cyclic(2))));
  EXPECT_FALSE(is_linearly_reductive(function_algebra(Field::prime(2), FiniteGroup::cyclic(2))));
  EXPECT_TRUE(is_linearly_reductive(mu_n(Field::prime(3), 3)));
  EXPECT_FALSE(is_linearly_reductive(alpha_p(Field::prime(2))));
  // mu_2 over F_2 is diagonalizable: alpha(x^i) = [i = 0] is a total integral
  EXPECT_TRUE(is_linearly_reductive(mu_n(Field::prime(2), 2)));
  EXPECT_TRUE(is_total_integral(trivial_ground_action(mu_n(Field::prime(2), 2)),
                                Matrix::from_ints(Field::prime(2), {{1, 0}})));
}

TEST(LinearReductivity, MaschkeGrid) {
  int cases = 0;
  for (const auto& g : maschke_groups())
    for (const auto& f : maschke_fields()) {
      const bool predicate = f.characteristic() == 0 || g.order() % static_cast<std::size_t>(f.characteristic()) != 0;
      EXPECT_EQ(is_linearly_reductive(function_algebra(f, g)), predicate) << f.describe() << " |G| = " << g.order();
      ++cases;
    }
  EXPECT_EQ(cases, 16);
}

TEST(Equivalence, SpecExamples) {
  {
    auto rep = equivalence_report(gauss(5), {trivial_hopf(Field::prime(5))});
    EXPECT_TRUE(rep.total_integral && rep.battery_exact && rep.reynold_on_battery && rep.inertia_reductive);
    EXPECT_EQ(rep.status, "agree");
  }
  {
    const Field f2 = Field::prime(2);
    auto rep = equivalence_report(gauss(2), {function_algebra(f2, FiniteGroup::cyclic(2))});
    EXPECT_FALSE(rep.total_integral || rep.battery_exact || rep.reynold_on_battery || rep.inertia_reductive);
    EXPECT_TRUE(rep.free_over_c);
    EXPECT_EQ(rep.status, "agree");
    ASSERT_TRUE(rep.non_exact.has_value());
    EXPECT_EQ(rep.non_exact->label, "unit-evaluation");
  }
  {
    const Field f2 = Field::prime(2);
    const auto start = std::chrono::steady_clock::now();
    auto rep = equivalence_report(regular_action(function_algebra(f2, FiniteGroup::symmetric(3))), {trivial_hopf(f2)});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_TRUE(rep.total_integral && rep.battery_exact && rep.reynold_on_battery && rep.inertia_reductive);
    EXPECT_EQ(rep.status, "agree");
    EXPECT_LT(seconds, 20.0);
  }
}

TEST(Equivalence, NotFreeIsNotApplicable) {
  // C = F5 x F5 and B has dimension 2 over the first factor, 1 over the second
  auto rep = equivalence_report(regular_plus_trivial(), {trivial_hopf(Field::prime(5))});
  EXPECT_FALSE(rep.free_over_c);
  EXPECT_EQ(rep.status, "not applicable");
  EXPECT_TRUE(rep.total_integral);
}

TEST(Battery, ContainsTheDecisiveSequences) {
  const auto battery = standard_battery(gauss(3));
  ASSERT_GE(battery.size(), 2U);
  EXPECT_EQ(battery[0].label, "unit-evaluation");
  EXPECT_EQ(battery[1].label, "coaction");
  for (std::size_t i = 2; i < battery.size(); ++i) EXPECT_LE(battery[i].left.dim(), kBatteryCyclicLimit);
}

// --- properties -------------------------------------------------------------

TEST(TamenessProperty, TameImpliesReynoldAndExactnessOnBattery) {
  for (const auto& b : {gauss(3), gauss(5), regular_c2(Field::prime(5)), regular_plus_trivial(),
                        trivial_ground_action(mu_n(Field::prime(3), 3))}) {
    auto ti = total_integral(b);
    ASSERT_TRUE(ti.tame());
    for (const auto& s : standard_battery(b)) {
      for (const BAModule* n : {&s.left, &s.middle, &s.right}) {
        const Matrix pr = reynold(b, *ti.alpha, *n).pr;
        EXPECT_TRUE(reynold_failures(pr, invariants(n->comodule)).empty()) << s.label;
      }
      auto rep = exactness_check(b, s, ti.alpha);
      EXPECT_TRUE(rep.exact) << s.label;
      EXPECT_TRUE(natural_projectors(b, s).has_value()) << s.label;
    }
  }
}

TEST(TamenessProperty, CertificatesRefuteAndIntegralsSolve) {
  for (const auto& g : maschke_groups())
    for (const auto& f : maschke_fields()) {
      const auto b = trivial_ground_action(function_algebra(f, g));
      auto ti = total_integral(b);
      if (ti.tame()) {
        EXPECT_TRUE(is_total_integral(b, *ti.alpha));
      } else {
        EXPECT_TRUE(certifies_not_tame(b, *ti.certificate));
        EXPECT_FALSE(certifies_not_tame(b, Matrix(f, 1, ti.equations)));
      }
    }
}

TEST(TamenessProperty, ReynoldIsIndependentOfBasis) {
  std::mt19937_64 rng(22);
  const auto reg = regular_c2(Field::prime(5));
  const auto alpha = *total_integral(reg).alpha;
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix p = testing_support::random_invertible(reg.field(), 3, rng);
    const Comodule moved = change_basis(direct_sum(reg.comodule, trivial_comodule(reg.hopf(), 1)), p);
    const BAModule n = induced_module(reg, moved);
    const Matrix pr = reynold(reg, alpha, n).pr;
    EXPECT_EQ(pr * pr, pr);
    EXPECT_TRUE(same_span(column_basis(pr), invariants(n.comodule)));
  }
}

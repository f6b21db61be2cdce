#include <gtest/gtest.h>

#include "crn/balance.hpp"
#include "crn/graph.hpp"
#include "crn/parser.hpp"
#include "support/generators.hpp"

using namespace crn;

namespace {
const char* kPoissonPair = "0 -> A + B ; 1\nA + B -> A ; 1\nA -> 0 ; 1\n";
const char* kReversiblePair = "A + B <-> 2C ; 1, 1\nA <-> B ; 1, 1\n";
const char* kCubicDeath = "0 -> A ; 1\n3A -> 2A ; 1\n";
}  // namespace

TEST(ComplexBalancedState, Fixtures) {
  auto pp = parse_network(kPoissonPair);
  EXPECT_TRUE(is_complex_balanced_state(pp.network, pp.kinetics, {1, 1}).balanced);
  auto rp = parse_network(kReversiblePair);
  EXPECT_TRUE(is_complex_balanced_state(rp.network, rp.kinetics, {1, 1, 1}).balanced);
  auto skew = pp.kinetics;
  skew.kappa = {2, 1, 1};
  const auto r = is_complex_balanced_state(pp.network, skew, {1, 1});
  EXPECT_FALSE(r.balanced);
  EXPECT_DOUBLE_EQ(r.per_complex[0].lhs, 2.0);   // out of 0
  EXPECT_DOUBLE_EQ(r.per_complex[0].rhs, 1.0);   // into 0
}

TEST(FindComplexBalancedState, Fixtures) {
  auto pp = parse_network(kPoissonPair);
  auto r = find_complex_balanced_state(pp.network, pp.kinetics);
  ASSERT_EQ(r.status, CbStatus::Found);
  EXPECT_NEAR(r.c[0], 1.0, 1e-12);
  EXPECT_NEAR(r.c[1], 1.0, 1e-12);

  // c_A = k1/k3 = 2 and c_B = k1/(k2 c_A) = 1.
  auto skew = pp.kinetics;
  skew.kappa = {2, 1, 1};
  r = find_complex_balanced_state(pp.network, skew);
  ASSERT_EQ(r.status, CbStatus::Found);
  EXPECT_NEAR(r.c[0], 2.0, 1e-10);
  EXPECT_NEAR(r.c[1], 1.0, 1e-10);
  EXPECT_TRUE(is_complex_balanced_state(pp.network, skew, r.c).balanced);

  auto cd = parse_network(kCubicDeath);
  EXPECT_EQ(find_complex_balanced_state(cd.network, cd.kinetics).status, CbStatus::NotWeaklyReversible);
}

TEST(FindComplexBalancedState, RandomDeficiencyZero) {
  gen::Rng rng(2024);
  for (int i = 0; i < 50; ++i) {
    const auto net = gen::random_wr_deficiency_zero(rng, 3);
    const auto spec = KineticsSpec::mass_action(gen::random_kappa(rng, net.num_reactions()), net.num_species());
    const auto r = find_complex_balanced_state(net, spec);
    ASSERT_EQ(r.status, CbStatus::Found) << serialize_network(net, spec);
    EXPECT_TRUE(is_complex_balanced_state(net, spec, r.c).balanced);
    for (double v : r.c) EXPECT_GT(v, 0);
  }
}

TEST(FindComplexBalancedState, NoSpuriousSmallFluxSolution) {
  // Newton from log c = 0 used to stall near c_B ~ 1e-13, where every flux
  // was below the absolute tolerance.
  auto m = parse_network(
      "B -> A + 2B ; 0.90419072138663603\nB -> 2A ; 1.2887507434375358\n"
      "A + 2B -> 2A ; 0.97586020396251372\n2A -> B ; 0.69916284269381745\n"
      "2A -> A + 2B ; 0.95187226110");
  const auto r = find_complex_balanced_state(m.network, m.kinetics);
  ASSERT_EQ(r.status, CbStatus::Found);
  EXPECT_TRUE(is_complex_balanced_state(m.network, m.kinetics, r.c, Tolerance{0, 1e-10}).balanced);
  for (double v : r.c) EXPECT_GT(v, 1e-3);
}

TEST(StationaryMeasure, PoissonOnPoissonPair) {
  auto pp = parse_network(kPoissonPair);
  const SpecRates rates(pp.network, pp.kinetics);
  const auto nu = product_form_measure({1, 1});
  const auto box = box_states(2, 0, 10);
  const auto st = is_stationary_measure(pp.network, rates, nu, box);
  EXPECT_TRUE(st.ok);
  EXPECT_LT(st.max_relative, 1e-12);
  EXPECT_EQ(st.checked, box.size());
  const auto cb = is_complex_balanced_measure(pp.network, rates, nu, box);
  EXPECT_TRUE(cb.ok);
  EXPECT_EQ(cb.checked, box.size() * 3);
}

TEST(StationaryMeasure, CubicDeathRejectsProductForm) {
  auto cd = parse_network(kCubicDeath);
  const SpecRates rates(cd.network, cd.kinetics);
  for (double c : {0.5, 1.0, 2.0, 5.0}) {
    const auto chk = is_stationary_measure(cd.network, rates, product_form_measure({c}), box_states(1, 0, 20));
    EXPECT_FALSE(chk.ok) << c;
    EXPECT_TRUE(chk.first_violation_state.has_value());
  }
}

TEST(StationaryMeasure, NoReactionsIsTrivial) {
  // A network always has reactions; an empty rate table plays that role.
  auto cd = parse_network(kCubicDeath);
  const RateTable none(cd.network, {});
  const auto nu = product_form_measure({1.0});
  EXPECT_TRUE(is_stationary_measure(cd.network, none, nu, box_states(1, 0, 10)).ok);
  EXPECT_TRUE(is_complex_balanced_measure(cd.network, none, nu, box_states(1, 0, 10)).ok);
}

TEST(ComplexBalanceResidual, VacuousBelowSources) {
  auto cd = parse_network(kCubicDeath);
  const SpecRates rates(cd.network, cd.kinetics);
  const auto nu = product_form_measure({3.0});
  // complex 3A at x=1: no outgoing flux, and the inbound reaction into 3A does not exist.
  const auto r = complex_balance_residual(cd.network, rates, nu, {1}, 2);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->lhs, 0.0);
  EXPECT_EQ(r->rhs, 0.0);
}

TEST(MeasureCheck, MissingValues) {
  auto pp = parse_network(kPoissonPair);
  const SpecRates rates(pp.network, pp.kinetics);
  const auto nu = LatticeMeasure::tabulated({{{0, 0}, 1.0}});
  const auto chk = is_stationary_measure(pp.network, rates, nu, {{0, 0}});
  EXPECT_EQ(chk.skipped, 1u);
  EXPECT_THROW(is_stationary_measure(pp.network, rates, nu, {{0, 0}}, {}, OnMissing::Throw), MeasureError);
}

TEST(KappaBalance, IdentityOfProductForm) {
  auto pp = parse_network(kPoissonPair);
  const auto ok = kappa_balance_residuals(pp.network, pp.kinetics, {1, 1});
  for (const auto& r : ok) EXPECT_NEAR(r.lhs, r.rhs, 1e-14);
  const auto bad = kappa_balance_residuals(pp.network, pp.kinetics, {2, 2});
  EXPECT_GT(bad[0].absolute(), 0.5);
}

TEST(FitPoisson, RecoversRate) {
  const auto states = box_states(2, 0, 5);
  auto c = fit_poisson_product_form(product_form_measure({0.7, 3.0}), states);
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR((*c)[0], 0.7, 1e-12);
  EXPECT_NEAR((*c)[1], 3.0, 1e-12);
  EXPECT_FALSE(fit_poisson_product_form(product_form_measure({1, 1}, {Theta::capped(2), Theta::linear()}), states));
}

TEST(Tolerance, MixedAbsoluteRelative) {
  Tolerance t;
  EXPECT_TRUE(t.accepts(0, 5e-11));
  EXPECT_FALSE(t.accepts(0, 1e-9));
  EXPECT_TRUE(t.accepts(1e6, 1e6 + 1e-4));
  EXPECT_FALSE(t.accepts(1, 1.0001));
}

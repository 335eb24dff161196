#include <gtest/gtest.h>

#include <cmath>

#include "oul/oul.hpp"

using namespace oul;

namespace {

/// Every verified closed-form unit family at small dimension, as induced cones.
std::vector<OusPtr> verified_unit_cones() {
  std::vector<OusPtr> out;
  for (std::size_t n = 2; n <= 4; ++n) {
    for (const auto& s : detail::sign_vectors(n)) out.push_back(from_norming_unit(SpaceDesc::linf(n), s));
    for (const auto& e : detail::signed_basis(n)) out.push_back(from_norming_unit(SpaceDesc::l1(n), e));
  }
  return out;
}

std::vector<OusPtr> all_rule_kinds() {
  return {from_norming_unit(SpaceDesc::l1(3), VectorN{1, 0, 0}),
          from_norming_unit(SpaceDesc::linf(3), VectorN{1, -1, 1}),
          linf_natural(3, {1, -1, 1}),
          l1_ice(4, 2, -1),
          adjoin_order_unit(linf_natural(2), SpaceDesc::l2(2)).composite,
          lorentz(3)};
}

VectorN random_point(const OrderUnitSpace& ous, Rng& rng) {
  if (rng.uniform() < 0.5) return sample_cone_point(ous, rng);
  return random_unit_vector(ous.space(), rng) * rng.uniform(0.0, 2.0);
}

}  // namespace

TEST(ConeMembership, NormingUnitConeInL1) {
  // Direct evaluation: ||x|| = 1, 2x - e = (0.4, 0.4, -0.2), norm 1.0, so the
  // induced-cone margin is 1 - 1 = 0. The ice-cream margin is 0.7 - 0.3 = 0.4.
  const VectorN x{0.7, 0.2, -0.1};
  const auto induced = cone_membership(*from_norming_unit(SpaceDesc::l1(3), VectorN{1, 0, 0}), x);
  const auto ice = cone_membership(*l1_ice(3), x);
  EXPECT_TRUE(induced.inside);
  EXPECT_NEAR(induced.margin, 0.0, 1e-15);
  EXPECT_TRUE(ice.inside);
  EXPECT_NEAR(ice.margin, 0.4, 1e-15);
}

TEST(ConeMembership, UnitAndNegatedUnit) {
  const auto ous = from_norming_unit(SpaceDesc::l1(3), VectorN{1, 0, 0});
  const auto at_e = cone_membership(*ous, ous->unit());
  EXPECT_TRUE(at_e.inside);
  EXPECT_NEAR(at_e.margin, 0.0, 1e-15);
  const auto at_minus_e = cone_membership(*ous, -ous->unit());
  EXPECT_FALSE(at_minus_e.inside);
  EXPECT_NEAR(at_minus_e.margin, 1.0 - 3.0, 1e-15);
}

TEST(ConeMembership, MarginsOfClosedFormRules) {
  EXPECT_NEAR(cone_membership(*linf_natural(2, {1, -1}), VectorN{0.3, -0.1}).margin, 0.1, 1e-15);
  EXPECT_NEAR(cone_membership(*lorentz(2), VectorN{1.0, 0.6, 0.8}).margin, 0.0, 1e-15);
  EXPECT_NEAR(cone_membership(*lorentz(2), VectorN{2.0, 0.6, 0.8}).margin, 1.0, 1e-15);
  const auto a = adjoin_order_unit(linf_natural(2), SpaceDesc::l1(1));
  EXPECT_NEAR(cone_membership(*a.composite, VectorN{0.5, 0.9, 0.4}).margin, 0.1, 1e-15);
  EXPECT_THROW(cone_membership(*lorentz(2), VectorN{1.0}), dimension_error);
}

TEST(OrderUnitSpace, ConstructionChecksUnit) {
  EXPECT_THROW(from_norming_unit(SpaceDesc::l1(2), VectorN{0.5, 0.0}), std::invalid_argument);
  EXPECT_THROW(make_order_unit_space(SpaceDesc::linf(2), VectorN{1.0, 1.0}, NaturalLinfSign{{1, -1}}, "bad"),
               std::invalid_argument);
  EXPECT_THROW(linf_natural(2, {1, 0}), std::invalid_argument);
  EXPECT_THROW(l1_ice(3, 3), dimension_error);
}

TEST(OrderLeq, Examples) {
  const auto v = linf_natural(2);
  EXPECT_TRUE(order_leq(*v, VectorN(2), v->unit()).inside);
  EXPECT_FALSE(order_leq(*v, v->unit(), VectorN(2)).inside);
  const auto m = order_leq(*v, VectorN{0.1, 0.2}, VectorN{0.3, 0.2});
  EXPECT_TRUE(m.inside);
  EXPECT_NEAR(m.margin, 0.0, 1e-15);
}

TEST(PositivityEquivalence, Examples) {
  const auto v = linf_natural(3);
  const std::vector<double> grid{1.0, 1.5, 3.0};
  auto r = positivity_equivalence(*v, VectorN{0.2, 0.0, 1.0}, grid);
  EXPECT_TRUE(r.member && r.every_lambda && r.some_lambda && r.norm_identity);
  r = positivity_equivalence(*v, v->unit(), grid);
  EXPECT_TRUE(r.member && r.every_lambda && r.some_lambda && r.norm_identity);
  EXPECT_NEAR(r.identity_gap, 0.0, 1e-15);

  const auto v2 = linf_natural(2);
  const std::vector<double> g2{1.0, 2.0};
  r = positivity_equivalence(*v2, VectorN{1.0, -0.5}, g2);
  EXPECT_FALSE(r.member || r.every_lambda || r.some_lambda || r.norm_identity);
  EXPECT_NEAR(r.identity_gap, 2.0 - 1.0, 1e-15);
  EXPECT_TRUE(r.consistent());
}

TEST(PositivityEquivalence, RejectsBadGrid) {
  const auto v = linf_natural(2);
  EXPECT_THROW(positivity_equivalence(*v, v->unit(), std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(positivity_equivalence(*v, v->unit(), std::vector<double>{0.5}), std::invalid_argument);
}

TEST(OrderUnitNorm, Examples) {
  const auto linf = linf_natural(4);
  EXPECT_NEAR(order_unit_norm(*linf, VectorN{0.3, -0.9, 0.1, 0.0}, 1e-12), 0.9, 1e-12);
  const auto ice = l1_ice(4);
  EXPECT_NEAR(order_unit_norm(*ice, VectorN{0.3, -0.2, 0.1, 0.0}, 1e-12), 0.6, 1e-12);
  EXPECT_EQ(order_unit_norm(*ice, VectorN(4), 1e-12), 0.0);
  EXPECT_THROW(order_unit_norm(*ice, VectorN(4), 0.0), std::invalid_argument);
}

TEST(OrderUnitNorm, NonOrderUnitIsReported) {
  // (1, 0) lies on the boundary of the natural cone of l_inf^2, so no
  // lambda e - (0, 1) is positive and the bound expansion gives up.
  const auto v = make_order_unit_space(SpaceDesc::linf(2), VectorN{1.0, 0.0}, NaturalLinfSign{{1, 1}}, "boundary");
  EXPECT_THROW(order_unit_norm(*v, VectorN{0.0, 1.0}, 1e-9), std::runtime_error);
}

TEST(Properness, IceAndLorentz) {
  const auto a = properness_probe(*l1_ice(4), 5, 1000);
  EXPECT_TRUE(a.passed());
  EXPECT_GT(a.trials, 1000u);
  const auto b = properness_probe(*lorentz(3), 6, 1000);
  EXPECT_TRUE(b.passed());
  EXPECT_EQ(b.evidence, Evidence::Sampled);
}

TEST(Archimedean, Examples) {
  const auto v = linf_natural(2);
  const auto lambdas = dyadic_sequence(21);
  EXPECT_EQ(archimedean_probe(*v, VectorN{0.0, 0.5}, lambdas).status, ArchimedeanStatus::Confirmed);
  EXPECT_EQ(archimedean_probe(*v, VectorN{-0.1, 0.5}, lambdas).status, ArchimedeanStatus::HypothesisBroken);
  EXPECT_EQ(archimedean_probe(*v, -1e-12 * v->unit(), lambdas).status, ArchimedeanStatus::Confirmed);
  EXPECT_THROW(archimedean_probe(*v, VectorN(2), std::vector<double>{0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(archimedean_probe(*v, VectorN(2), std::vector<double>{0.5, -0.1}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Properties

TEST(ConeProperty, AxiomsForEveryRule) {
  Rng rng(201);
  const double scales[] = {0.0, 0.5, 1.0, 2.0, 10.0};
  for (const auto& ous : all_rule_kinds()) {
    for (int i = 0; i < 1000; ++i) {
      const VectorN x = sample_cone_point(*ous, rng), y = sample_cone_point(*ous, rng);
      ASSERT_GE(cone_membership(*ous, x).margin, -kEps) << ous->provenance();
      EXPECT_GE(cone_membership(*ous, x + y).margin, -kEps) << ous->provenance();
      for (double a : scales) EXPECT_GE(cone_membership(*ous, a * x).margin, -kEps) << ous->provenance();
    }
  }
}

TEST(ConeProperty, InducedConesMatchClosedForms) {
  Rng rng(202);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      for (int sign : {1, -1}) {
        const auto induced = from_norming_unit(SpaceDesc::l1(n), VectorN::basis(n, k, sign));
        const auto ice = l1_ice(n, k, sign);
        for (int i = 0; i < 5000 / static_cast<int>(n); ++i) {
          const VectorN z = i % 2 ? random_point(*ice, rng) : random_point(*induced, rng);
          EXPECT_EQ(cone_membership(*induced, z).inside, cone_membership(*ice, z).inside);
        }
      }
    }
    for (const auto& s : detail::sign_vectors(n)) {
      std::vector<int> signs;
      for (double v : s) signs.push_back(v > 0 ? 1 : -1);
      const auto induced = from_norming_unit(SpaceDesc::linf(n), s);
      const auto natural = linf_natural(n, signs);
      for (int i = 0; i < 10000 / static_cast<int>(std::size_t{1} << n); ++i) {
        const VectorN z = i % 2 ? random_point(*natural, rng) : random_point(*induced, rng);
        EXPECT_EQ(cone_membership(*induced, z).inside, cone_membership(*natural, z).inside);
      }
    }
  }
}

TEST(ConeProperty, OrderUnitNormRecoversNorm) {
  Rng rng(203);
  const double tol = 1e-9;
  for (const auto& ous : verified_unit_cones()) {
    for (int i = 0; i < 100; ++i) {
      const VectorN x = random_unit_vector(ous->space(), rng) * rng.uniform(0.0, 5.0);
      EXPECT_NEAR(order_unit_norm(*ous, x, tol), norm(ous->space(), x), 10 * tol) << ous->provenance();
    }
  }
}

TEST(ConeProperty, PositivityConditionsAgree) {
  Rng rng(204);
  for (const auto& ous : {from_norming_unit(SpaceDesc::linf(4), VectorN{1, 1, -1, 1}), linf_natural(4),
                          from_norming_unit(SpaceDesc::l1(4), VectorN{0, 1, 0, 0}), l1_ice(4)}) {
    for (int i = 0; i < 1000; ++i) {
      const VectorN u = random_point(*ous, rng);
      const double nu = norm(ous->space(), u);
      const std::vector<double> grid{nu, nu + 0.25, 2.0 * nu + 1.0};
      EXPECT_TRUE(positivity_equivalence(*ous, u, grid).consistent()) << ous->provenance();
    }
  }
}

TEST(ConeProperty, ProperAndArchimedean) {
  for (const auto& ous : all_rule_kinds()) {
    EXPECT_TRUE(properness_probe(*ous, 205, 1000).passed()) << ous->provenance();
    EXPECT_TRUE(archimedean_sampled(*ous, 206, 1000).passed()) << ous->provenance();
  }
}

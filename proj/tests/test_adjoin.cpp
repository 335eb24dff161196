#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "oul/oul.hpp"

using namespace oul;

namespace {

std::vector<AdjoinedOUS> composites() {
  std::vector<AdjoinedOUS> out;
  for (const OusPtr& v : {linf_natural(2), l1_ice(3)})
    for (const SpaceDesc& x : {SpaceDesc::l1(2), SpaceDesc::l2(3), SpaceDesc::linf(2)})
      out.push_back(adjoin_order_unit(v, x));
  return out;
}

VectorN random_point(const OrderUnitSpace& ous, Rng& rng) {
  VectorN z = rng.uniform() < 0.5 ? sample_cone_point(ous, rng) : random_unit_vector(ous.space(), rng);
  return z + random_unit_vector(ous.space(), rng) * rng.uniform(0.0, 0.05);
}

}  // namespace

TEST(AdjoinOrderUnit, RealLineWithReal) {
  const auto a = adjoin_order_unit(real_line(), SpaceDesc::l1(1));
  EXPECT_EQ(a.composite->dim(), 2u);
  EXPECT_EQ(a.composite->unit(), (VectorN{1.0, 0.0}));
  EXPECT_TRUE(cone_membership(*a.composite, VectorN{0.5, -0.5}).inside);
  EXPECT_TRUE(cone_membership(*a.composite, VectorN{0.5, 0.2}).inside);
  EXPECT_FALSE(cone_membership(*a.composite, VectorN{0.5, 0.6}).inside);
}

TEST(AdjoinOrderUnit, SpinFactorIsLorentz) {
  const auto a = spin_factor(3);
  EXPECT_TRUE(cone_membership(*a.composite, VectorN{1.0, 0.6, 0.0, 0.8}).inside);
  EXPECT_FALSE(cone_membership(*a.composite, VectorN{1.0, 0.6, 0.1, 0.8}).inside);
}

TEST(AdjoinOrderUnit, ZeroDimensionalSummand) {
  const auto v = linf_natural(2);
  const auto a = adjoin_order_unit(v, SpaceDesc::l1(0));
  EXPECT_EQ(a.composite, v);
}

TEST(AdjoinOrderUnit, MembershipIsOrderInequality) {
  const auto a = adjoin_order_unit(linf_natural(2), SpaceDesc::l2(2));
  Rng rng(401);
  for (int i = 0; i < 1000; ++i) {
    const VectorN z = random_point(*a.composite, rng);
    const double nx = norm(*a.x, a.tail(z));
    EXPECT_EQ(cone_membership(*a.composite, z).inside, order_leq(*a.v, nx * a.v->unit(), a.head(z)).inside);
  }
  EXPECT_NEAR(norm(a.composite->space(), a.composite->unit()), 1.0, 1e-15);
}

TEST(AdjoinBase, HalfLineWithReal) {
  const auto b = adjoin_base(SpaceDesc::l1(1), SpaceDesc::l1(1));
  EXPECT_TRUE(b.cone_membership(VectorN{1.0, -1.0}).inside);
  EXPECT_FALSE(b.cone_membership(VectorN{1.0, 1.5}).inside);
  EXPECT_TRUE(b.in_base(VectorN{1.0, 0.3}));
  EXPECT_FALSE(b.in_base(VectorN{1.0, 1.3}));
  EXPECT_FALSE(b.in_base(VectorN{0.5, 0.3}));
  const VectorN s{1.0, 0.5}, t{2.0, -1.0};
  EXPECT_NEAR(b.norm_of(s + t), b.norm_of(s) + b.norm_of(t), 1e-15);
}

TEST(AdjoinBase, UnsupportedModel) {
  EXPECT_THROW(adjoin_base(SpaceDesc::l2(2), SpaceDesc::l1(1)), std::invalid_argument);
}

TEST(OrderInequality, Examples) {
  const auto v = linf_natural(2);
  auto r = order_inequality_equivalence(*v, VectorN{1.0, 0.3}, 0.3);
  EXPECT_TRUE(r.a);
  EXPECT_TRUE(r.b);
  EXPECT_NEAR(r.margin_b, 0.0, 1e-15);
  r = order_inequality_equivalence(*v, VectorN{0.4, 0.2}, 0.0);
  EXPECT_TRUE(r.a && r.b);
  r = order_inequality_equivalence(*v, VectorN{0.4, 0.2}, 1.4);
  EXPECT_FALSE(r.a || r.b);
  EXPECT_THROW(order_inequality_equivalence(*v, VectorN{0.4, 0.2}, -1.0), std::invalid_argument);
}

TEST(OrderNormEqualsL1, Examples) {
  const auto a = iterate_adjoin_l1(1);
  EXPECT_NEAR(order_unit_norm(*a.composite, VectorN{0.3, -0.4}, 1e-12), 0.7, 1e-12);
  EXPECT_NEAR(order_unit_norm(*a.composite, a.composite->unit(), 1e-12), 1.0, 1e-12);
  EXPECT_EQ(order_unit_norm(*a.composite, VectorN(2), 1e-12), 0.0);
}

TEST(SemiPeripheral, Examples) {
  const auto v = linf_natural(2);
  EXPECT_TRUE(semi_peripheral_check(*v, 0.5 * v->unit()));
  EXPECT_FALSE(semi_peripheral_check(*v, v->unit()));
  EXPECT_TRUE(semi_peripheral_check(*v, VectorN{0.7, 0.3}));
  EXPECT_FALSE(semi_peripheral_check(*v, VectorN{0.7, 0.4}));
}

TEST(SemiPeripheral, Generate) {
  const auto v = linf_natural(2);
  const VectorN w{0.0, 1.0};
  EXPECT_LT(max_abs_diff(semi_peripheral_generate(*v, w, 0.5), VectorN{0.5, 0.5}), 1e-15);
  EXPECT_LT(max_abs_diff(semi_peripheral_generate(*v, w, 0.7), VectorN{0.7, 0.3}), 1e-15);
  EXPECT_EQ(semi_peripheral_generate(*v, w, 0.0), w);
  EXPECT_THROW(semi_peripheral_generate(*v, VectorN{0.5, 0.5}, 0.3), std::invalid_argument);
  EXPECT_THROW(semi_peripheral_generate(*v, w, 1.5), std::invalid_argument);
}

TEST(CanopyPeriphery, Examples) {
  const auto a = adjoin_order_unit(linf_natural(2), SpaceDesc::l1(1));
  auto r = canopy_periphery_membership(a, VectorN{0.7, 0.3}, VectorN{-0.3});
  EXPECT_TRUE(r.in_periphery);
  EXPECT_TRUE(r.in_periphery_char);
  EXPECT_TRUE(r.in_canopy);
  r = canopy_periphery_membership(a, a.v->unit(), VectorN{0.0});
  EXPECT_TRUE(r.in_canopy);
  EXPECT_FALSE(r.in_periphery);
  EXPECT_FALSE(r.in_periphery_char);
  r = canopy_periphery_membership(a, VectorN{0.3, 0.2}, VectorN{0.2});
  EXPECT_FALSE(r.in_canopy || r.in_periphery || r.in_periphery_char);
}

TEST(IterateAdjoin, Examples) {
  const auto one = iterate_adjoin_l1(1);
  EXPECT_TRUE(cone_membership(*one.composite, VectorN{1.0, -1.0}).inside);
  EXPECT_FALSE(cone_membership(*one.composite, VectorN{1.0, -1.01}).inside);
  const auto two = iterate_adjoin_l1(2);
  const auto m = cone_membership(*two.composite, VectorN{1.0, 0.4, -0.5});
  EXPECT_TRUE(m.inside);
  EXPECT_NEAR(m.margin, 0.1, 1e-15);
  EXPECT_THROW(iterate_adjoin_l1(0), std::invalid_argument);
}

TEST(LinfDecomposer, RoundTrip) {
  const auto v = linf_natural(4);
  const auto d = oracle::linf_semi_peripheral_decompose(VectorN{0.2, 0.8, 0.5, 0.3});
  ASSERT_TRUE(d);
  EXPECT_TRUE(in_periphery(*v, d->first));
  EXPECT_LT(max_abs_diff(semi_peripheral_generate(*v, d->first, d->second), VectorN{0.2, 0.8, 0.5, 0.3}), 1e-15);
  EXPECT_FALSE(oracle::linf_semi_peripheral_decompose(VectorN{0.2, 0.7, 0.5, 0.3}));
}

// ---------------------------------------------------------------------------
// Properties

TEST(AdjoinProperty, CompositesAreOrderUnitSpaces) {
  Rng rng(402);
  const double scales[] = {0.0, 0.5, 1.0, 2.0, 10.0};
  for (const auto& a : composites()) {
    const OrderUnitSpace& c = *a.composite;
    for (int i = 0; i < 1000; ++i) {
      const VectorN x = sample_cone_point(c, rng), y = sample_cone_point(c, rng);
      EXPECT_GE(cone_membership(c, x + y).margin, -kEps) << c.provenance();
      for (double s : scales) EXPECT_GE(cone_membership(c, s * x).margin, -kEps) << c.provenance();
    }
    EXPECT_TRUE(archimedean_sampled(c, 403, 1000).passed()) << c.provenance();
    EXPECT_TRUE(properness_probe(c, 404, 1000).passed()) << c.provenance();
  }
}

TEST(AdjoinProperty, OrderNormIsL1Sum) {
  for (const auto& a : composites()) {
    const auto r = order_norm_equals_l1_check(a, 405, 1000, 1e-6);
    EXPECT_TRUE(r.passed()) << a.composite->provenance() << " max error " << r.max_error;
  }
}

TEST(AdjoinProperty, IteratedMatchesSingleShot) {
  Rng rng(406);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto it = iterate_adjoin_l1(n);
    const auto single = adjoin_order_unit(real_line(), SpaceDesc::l1(n));
    const auto ice = l1_ice(n + 1);
    for (int i = 0; i < 10000; ++i) {
      const VectorN z = random_point(*single.composite, rng);
      const bool m = cone_membership(*it.composite, z).inside;
      EXPECT_EQ(m, cone_membership(*single.composite, z).inside);
      EXPECT_EQ(m, cone_membership(*ice, z).inside);
    }
  }
}

TEST(AdjoinProperty, SpinFactorMatchesLorentz) {
  Rng rng(407);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto a = spin_factor(n);
    const auto l = lorentz(n);
    for (int i = 0; i < 10000; ++i) {
      const VectorN z = random_point(*a.composite, rng);
      EXPECT_EQ(cone_membership(*a.composite, z).inside, cone_membership(*l, z).inside);
    }
  }
}

TEST(AdjoinProperty, BaseNormAdditive) {
  for (const SpaceDesc& x : {SpaceDesc::l1(1), SpaceDesc::l2(3), SpaceDesc::linf(2)}) {
    const auto b = adjoin_base(SpaceDesc::l1(3), x);
    const auto r = base_norm_additivity_check(b, 408, 1000);
    EXPECT_TRUE(r.passed()) << x.describe() << " max error " << r.max_error;
    EXPECT_EQ(r.trials, 1000u);
  }
}

TEST(AdjoinProperty, OrderInequalityEquivalence) {
  Rng rng(409);
  for (const OusPtr& v : {linf_natural(3), l1_ice(3), lorentz(2)}) {
    for (int i = 0; i < 1000; ++i) {
      const VectorN u = random_point(*v, rng);
      const double nu = norm(v->space(), u);
      const double bound = nu - norm(v->space(), nu * v->unit() - u);
      // k near the threshold half the time.
      const double k = i % 2 ? std::max(0.0, bound + rng.uniform(-0.01, 0.01)) : rng.uniform(0.0, 2.0);
      const auto r = order_inequality_equivalence(*v, u, k);
      if (std::abs(r.margin_a) < 1e-8 || std::abs(r.margin_b) < 1e-8) continue;  // tolerance band
      EXPECT_TRUE(r.agree()) << v->provenance();
    }
  }
}

TEST(AdjoinProperty, PeripheryDefinitionsAgree) {
  Rng rng(410);
  const auto a = adjoin_order_unit(linf_natural(2), SpaceDesc::l1(1));
  const std::vector<VectorN> periphery_v{VectorN{1.0, 0.0}, VectorN{0.0, 1.0}};
  std::size_t peripheral = 0;
  for (int i = 0; i < 1000; ++i) {
    // Boundary-biased: a generated semi-peripheral u and x at the complementary norm.
    const VectorN u = semi_peripheral_generate(*a.v, periphery_v[rng.index(2)], rng.uniform());
    const double nu = norm(a.v->space(), u);
    const VectorN x{(rng.uniform() < 0.5 ? -1.0 : 1.0) * (1.0 - nu)};
    const auto r = canopy_periphery_membership(a, u, x);
    EXPECT_TRUE(r.agree());
    EXPECT_TRUE(!r.in_periphery || r.in_canopy);
    peripheral += r.in_periphery;
  }
  EXPECT_GT(peripheral, 900u);
  for (int i = 0; i < 1000; ++i) {
    const VectorN u{rng.uniform(-0.2, 1.2), rng.uniform(-0.2, 1.2)};
    const VectorN x{rng.uniform(-1.0, 1.0)};
    const auto r = canopy_periphery_membership(a, u, x);
    EXPECT_TRUE(r.agree());
    EXPECT_TRUE(!r.in_periphery || r.in_canopy);
  }
}

TEST(AdjoinProperty, SemiPeripheralCoverageInLinf) {
  // Every semi-peripheral element of l_inf^n is reached by the generator.
  Rng rng(411);
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto v = linf_natural(n);
    for (int i = 0; i < 200; ++i) {
      // Random semi-peripheral u: min = 1 - max.
      const double m = rng.uniform(0.5, 1.0);
      std::vector<double> u(n);
      for (double& c : u) c = rng.uniform(1.0 - m, m);
      u[rng.index(n)] = m;
      std::size_t j = rng.index(n);
      while (u[j] == m && n > 1) j = (j + 1) % n;
      u[j] = 1.0 - m;
      const VectorN uv(u);
      ASSERT_TRUE(semi_peripheral_check(*v, uv));
      const auto d = oracle::linf_semi_peripheral_decompose(uv);
      ASSERT_TRUE(d);
      EXPECT_LT(max_abs_diff(semi_peripheral_generate(*v, d->first, d->second), uv), 1e-12);
    }
  }
}

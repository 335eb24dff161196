#ifndef OUL_ADJOIN_HPP
#define OUL_ADJOIN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "oul/constants.hpp"
#include "oul/norms.hpp"
#include "oul/order_core.hpp"
#include "oul/random.hpp"
#include "oul/report.hpp"

namespace oul {

/// V (+)_1 X with cone {(u, x) : ||x|| e <= u} and unit (e, 0).
struct AdjoinedOUS {
  OusPtr v;
  SpacePtr x;
  OusPtr composite;

  std::size_t v_dim() const { return v->dim(); }
  std::size_t x_dim() const { return x->dim(); }

  VectorN head(const VectorN& z) const { return z.slice(0, v_dim()); }
  VectorN tail(const VectorN& z) const { return z.slice(v_dim(), x_dim()); }
  VectorN join(const VectorN& u, const VectorN& xv) const { return concat(u, xv); }
};

/// Adjoins the normed space X to the order unit space V. A zero-dimensional X
/// leaves V unchanged.
inline AdjoinedOUS adjoin_order_unit(OusPtr v, SpaceDesc x) {
  if (!v) throw std::invalid_argument("adjoin_order_unit: null order unit space");
  auto xp = std::make_shared<const SpaceDesc>(std::move(x));
  if (xp->dim() == 0) return AdjoinedOUS{v, xp, v};
  std::string label = "(" + v->provenance() + ") (+)_1 " + xp->describe();
  VectorN unit = concat(v->unit(), VectorN(xp->dim()));
  auto composite =
      make_order_unit_space(SpaceDesc::adjoin_l1(v, xp), std::move(unit), Adjoined{v, xp}, std::move(label));
  return AdjoinedOUS{std::move(v), std::move(xp), std::move(composite)};
}

/// Adjoins R to (R, 1) n times, giving l_1^{n+1} with the ice-cream cone at e_1.
inline AdjoinedOUS iterate_adjoin_l1(std::size_t n) {
  if (n == 0) throw std::invalid_argument("iterate_adjoin_l1: n must be positive");
  AdjoinedOUS a = adjoin_order_unit(real_line(), SpaceDesc::l1(1));
  for (std::size_t i = 1; i < n; ++i) a = adjoin_order_unit(a.composite, SpaceDesc::l1(1));
  return a;
}

/// Spin factor: (R, 1) with a Euclidean space adjoined.
inline AdjoinedOUS spin_factor(std::size_t n) { return adjoin_order_unit(real_line(), SpaceDesc::l2(n)); }

// ---------------------------------------------------------------------------
// Base-normed adjoining, V (+)_inf X

/// V = l_1^n with its simplex base, adjoined with X under the max norm.
/// Cone {(u, x) : u >= 0, sum u >= ||x||}; base = simplex x unit ball of X.
struct BaseNormedSpace {
  std::size_t v_dim = 0;
  SpacePtr x;
  SpaceDesc composite;

  VectorN head(const VectorN& z) const { return z.slice(0, v_dim); }
  VectorN tail(const VectorN& z) const { return z.slice(v_dim, x->dim()); }

  double norm_of(const VectorN& z) const { return norm(composite, z); }

  MembershipVerdict cone_membership(const VectorN& z) const {
    if (z.dim() != composite.dim()) throw dimension_error("BaseNormedSpace: dimension mismatch");
    double min_u = std::numeric_limits<double>::infinity(), sum_u = 0.0;
    for (std::size_t i = 0; i < v_dim; ++i) {
      min_u = std::min(min_u, z[i]);
      sum_u += z[i];
    }
    const double xn = norm(*x, tail(z));
    return verdict_from_margin(std::min(min_u, sum_u - xn));
  }

  /// Membership in the base B x X_1.
  bool in_base(const VectorN& z) const {
    double min_u = std::numeric_limits<double>::infinity(), sum_u = 0.0;
    for (std::size_t i = 0; i < v_dim; ++i) {
      min_u = std::min(min_u, z[i]);
      sum_u += z[i];
    }
    return min_u >= -kEps && std::abs(sum_u - 1.0) <= kEps && norm(*x, tail(z)) <= 1.0 + kEps;
  }
};

/// Only the l_1^n / simplex model of a base normed space is supported.
inline BaseNormedSpace adjoin_base(const SpaceDesc& vb, SpaceDesc x) {
  if (!vb.is_lp() || !vb.exponent().is_one() || vb.dim() == 0)
    throw std::invalid_argument("adjoin_base: base normed input must be l_1^n with the simplex base");
  auto vp = std::make_shared<const SpaceDesc>(vb);
  auto xp = std::make_shared<const SpaceDesc>(std::move(x));
  return BaseNormedSpace{vb.dim(), xp, SpaceDesc::adjoin_linf(vp, xp)};
}

/// Additivity of the max norm on the cone, on sampled cone pairs.
inline CheckReport base_norm_additivity_check(const BaseNormedSpace& b, std::uint64_t seed, std::size_t count) {
  CheckReport rep;
  rep.check = "base-norm-additivity";
  rep.anchor = "the max norm is additive on the adjoined cone";
  Rng rng(seed);
  auto draw = [&] {
    std::vector<double> u(b.v_dim);
    double s = 0.0;
    for (double& v : u) {
      v = rng.uniform() < 0.2 ? 0.0 : -std::log(1.0 - rng.uniform());
      s += v;
    }
    if (s == 0.0) {
      u[0] = 1.0;
      s = 1.0;
    }
    const double scale = rng.uniform(0.1, 3.0) / s;
    for (double& v : u) v *= scale;
    // ||x|| between 0 and sum u, sometimes exactly on the boundary.
    const double r = rng.uniform() < 0.25 ? 1.0 : rng.uniform();
    const VectorN xv = random_unit_vector(*b.x, rng) * (r * scale * s);
    return concat(VectorN(std::move(u)), xv);
  };
  for (std::size_t i = 0; i < count; ++i) {
    const VectorN s = draw(), t = draw();
    if (!b.cone_membership(s).inside || !b.cone_membership(t).inside) {
      rep.record(false, 0.0);
      rep.notes.push_back("sampler produced a non-cone point");
      continue;
    }
    const double err = std::abs(b.norm_of(s + t) - b.norm_of(s) - b.norm_of(t));
    rep.record(err <= kEps, err);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Order inequality reformulation

/// For u in V and k >= 0:
///   (a) u positive and k <= ||u|| - || ||u|| e - u ||
///   (b) k e <= u
struct OrderInequalityReport {
  bool a = false;
  bool b = false;
  double margin_a = 0.0;
  double margin_b = 0.0;

  bool agree() const { return a == b; }

  Json to_json() const {
    return Json{{"a", a}, {"b", b}, {"margin_a", format_real(margin_a)}, {"margin_b", format_real(margin_b)},
                {"agree", agree()},
                {"definitions", "canopy and periphery taken as {z >= 0, ||z|| = 1} and "
                                "{z, e - z >= 0, ||z|| = ||e - z|| = 1}; inferred, not given"}};
  }
};

inline OrderInequalityReport order_inequality_equivalence(const OrderUnitSpace& v, const VectorN& u, double k) {
  if (k < 0.0) throw std::invalid_argument("order_inequality_equivalence: k must be nonnegative");
  const VectorN& e = v.unit();
  const double nu = norm(v.space(), u);
  const auto pos = cone_membership(v, u);
  const double bound = nu - norm(v.space(), nu * e - u);
  OrderInequalityReport r;
  r.margin_a = std::min(pos.margin, bound - k);
  r.a = pos.inside && bound - k >= -kEps;
  const auto leq = order_leq(v, k * e, u);
  r.margin_b = leq.margin;
  r.b = leq.inside;
  return r;
}

// ---------------------------------------------------------------------------
// Order-unit norm of an adjoined space

/// Samples (v, x) and compares the order-unit norm with ||v|| + ||x||.
inline CheckReport order_norm_equals_l1_check(const AdjoinedOUS& a, std::uint64_t seed, std::size_t count,
                                              double tol) {
  CheckReport rep;
  rep.check = "order-norm-equals-l1-sum";
  rep.anchor = "the order-unit norm of V (+)_1 X is ||v|| + ||x||";
  Rng rng(seed);
  const OrderUnitSpace& c = *a.composite;
  auto compare = [&](const VectorN& z) {
    const double ambient = norm(c.space(), z);
    const double order = order_unit_norm(c, z, tol * 0.1);
    const double err = std::abs(order - ambient);
    rep.record(err <= tol, err);
  };
  compare(c.unit());
  compare(VectorN(c.dim()));
  for (std::size_t i = 0; i < count; ++i) compare(random_unit_vector(c.space(), rng) * rng.uniform(0.0, 3.0));
  return rep;
}

// ---------------------------------------------------------------------------
// Semi-peripheral elements, canopy and periphery

/// 0 <= w <= e and ||w|| = ||e - w|| = 1.
inline bool in_periphery(const OrderUnitSpace& v, const VectorN& w) {
  const VectorN& e = v.unit();
  return cone_membership(v, w).inside && order_leq(v, w, e).inside &&
         std::abs(norm(v.space(), w) - 1.0) <= kEps && std::abs(norm(v.space(), e - w) - 1.0) <= kEps;
}

/// 0 <= u <= e and ||u|| = ||e - u||.
inline bool semi_peripheral_check(const OrderUnitSpace& v, const VectorN& u) {
  const VectorN& e = v.unit();
  return cone_membership(v, u).inside && order_leq(v, u, e).inside &&
         std::abs(norm(v.space(), u) - norm(v.space(), e - u)) <= kEps;
}

/// u = alpha (e - w) + (1 - alpha) w for w in the periphery of V.
inline VectorN semi_peripheral_generate(const OrderUnitSpace& v, const VectorN& w, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("semi_peripheral_generate: alpha must lie in [0, 1]");
  if (!in_periphery(v, w)) throw std::invalid_argument("semi_peripheral_generate: w is not a peripheral element");
  return alpha * (v.unit() - w) + (1.0 - alpha) * w;
}

struct PeripheryVerdict {
  bool in_canopy = false;
  bool in_periphery = false;        // direct: (u, x) and (e - u, -x) positive, both of norm one
  bool in_periphery_char = false;   // characterization: u semi-peripheral and ||u|| + ||x|| = 1
  bool semi_peripheral_u = false;
  double norm_u = 0.0;
  double norm_x = 0.0;
  double norm_e_minus_u = 0.0;

  bool agree() const { return in_periphery == in_periphery_char; }

  Json to_json() const {
    return Json{{"in_canopy", in_canopy},
                {"in_periphery", in_periphery},
                {"in_periphery_characterization", in_periphery_char},
                {"semi_peripheral_u", semi_peripheral_u},
                {"norm_u", format_real(norm_u)},
                {"norm_x", format_real(norm_x)},
                {"norm_e_minus_u", format_real(norm_e_minus_u)},
                {"agree", agree()},
                {"definitions", "canopy and periphery taken as {z >= 0, ||z|| = 1} and "
                                "{z, e - z >= 0, ||z|| = ||e - z|| = 1}; inferred, not given"}};
  }
};

/// Canopy {positive, norm one} and periphery {z and e - z positive, both norm
/// one} of V (+)_1 X, the periphery computed both directly and through the
/// semi-peripheral characterization.
inline PeripheryVerdict canopy_periphery_membership(const AdjoinedOUS& a, const VectorN& u, const VectorN& x) {
  if (u.dim() != a.v_dim() || x.dim() != a.x_dim()) throw dimension_error("canopy_periphery_membership: dimension mismatch");
  const OrderUnitSpace& c = *a.composite;
  const VectorN z = a.join(u, x);
  const VectorN ez = c.unit() - z;

  PeripheryVerdict r;
  r.norm_u = norm(a.v->space(), u);
  r.norm_x = norm(*a.x, x);
  r.norm_e_minus_u = norm(a.v->space(), a.v->unit() - u);
  const bool z_pos = cone_membership(c, z).inside;
  const bool unit_norm = std::abs(r.norm_u + r.norm_x - 1.0) <= kEps;
  r.in_canopy = z_pos && unit_norm;
  r.in_periphery = z_pos && cone_membership(c, ez).inside && unit_norm &&
                   std::abs(norm(c.space(), ez) - 1.0) <= kEps;
  r.semi_peripheral_u = semi_peripheral_check(*a.v, u);
  r.in_periphery_char = r.semi_peripheral_u && unit_norm;
  return r;
}

}  // namespace oul

#endif  // OUL_ADJOIN_HPP

#ifndef OUL_ORDER_CORE_HPP
#define OUL_ORDER_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oul/constants.hpp"
#include "oul/norms.hpp"
#include "oul/random.hpp"
#include "oul/report.hpp"
#include "oul/space.hpp"
#include "oul/vector.hpp"

namespace oul {

struct MembershipVerdict {
  bool inside;
  double margin;  // signed slack of the defining inequality; positive = strictly inside
};

inline MembershipVerdict verdict_from_margin(double margin) { return {margin >= -kEps, margin}; }

/// Membership in the positive cone of `ous`.
inline MembershipVerdict cone_membership(const OrderUnitSpace& ous, const VectorN& x) {
  if (x.dim() != ous.dim()) throw dimension_error("cone_membership: dimension mismatch");
  struct Visitor {
    const OrderUnitSpace& ous;
    const VectorN& x;
    double operator()(const FromNormingUnit&) const {
      const double nx = norm(ous.space(), x);
      return nx - norm(ous.space(), 2.0 * x - nx * ous.unit());
    }
    double operator()(const NaturalLinfSign& r) const {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < x.dim(); ++i) m = std::min(m, r.signs[i] * x[i]);
      return x.dim() == 0 ? 0.0 : m;
    }
    double operator()(const L1Ice& r) const {
      double rest = 0.0;
      for (std::size_t i = 0; i < x.dim(); ++i)
        if (i != r.k) rest += std::abs(x[i]);
      return r.sign * x[r.k] - rest;
    }
    double operator()(const Adjoined& r) const {
      const std::size_t dv = r.v->dim();
      const VectorN u = x.slice(0, dv);
      const double nx = norm(*r.x, x.slice(dv, r.x->dim()));
      return cone_membership(*r.v, u - nx * r.v->unit()).margin;
    }
    double operator()(const Lorentz&) const {
      double s = 0.0;
      for (std::size_t i = 1; i < x.dim(); ++i) s += x[i] * x[i];
      return x[0] - std::sqrt(s);
    }
  };
  return verdict_from_margin(std::visit(Visitor{ous, x}, ous.cone()));
}

/// a <= b in the cone order, i.e. b - a is positive.
inline MembershipVerdict order_leq(const OrderUnitSpace& ous, const VectorN& a, const VectorN& b) {
  a.require_same_dim(b);
  return cone_membership(ous, b - a);
}

/// Order-unit norm inf{lambda >= 0 : lambda e +- x in cone}, by bisection.
/// The feasible set of lambda is upward closed, so bisection is valid.
inline double order_unit_norm(const OrderUnitSpace& ous, const VectorN& x, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("order_unit_norm: tol must be positive");
  if (x.dim() != ous.dim()) throw dimension_error("order_unit_norm: dimension mismatch");
  const VectorN& e = ous.unit();
  const double nx = norm(ous.space(), x);
  // Membership here is tested at round-off level rather than at kEps, so the
  // result is accurate to tol and not merely to the feasibility tolerance.
  auto feasible = [&](double lambda) {
    const VectorN le = lambda * e;
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, lambda + nx);
    return cone_membership(ous, le + x).margin >= -slack && cone_membership(ous, le - x).margin >= -slack;
  };

  double hi = 2.0 * nx + 1.0;
  int expansions = 0;
  while (!feasible(hi)) {
    if (++expansions > 4)
      throw std::runtime_error("order_unit_norm: unit is not an order unit for this cone (" + ous.provenance() + ")");
    hi *= 2.0;
  }
  if (feasible(0.0)) return 0.0;
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // tol below one ulp
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------
// Factories

/// Checks the unit invariants (unit norm one, unit in the cone) and wraps.
inline OusPtr make_order_unit_space(SpaceDesc space, VectorN unit, ConeRule cone, std::string provenance) {
  auto ous = std::make_shared<const OrderUnitSpace>(std::move(space), std::move(unit), std::move(cone),
                                                    std::move(provenance));
  const double n = norm(ous->space(), ous->unit());
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument("order unit must have norm one (got " + format_real(n) + ")");
  if (!cone_membership(*ous, ous->unit()).inside) throw std::invalid_argument("order unit is not in its cone");
  return ous;
}

/// l_inf^n with the cone {s_i x_i >= 0}; unit is the sign vector s.
inline OusPtr linf_natural(std::size_t n, std::vector<int> signs = {}) {
  if (n == 0) throw dimension_error("linf_natural: dimension must be positive");
  if (signs.empty()) signs.assign(n, 1);
  if (signs.size() != n) throw dimension_error("linf_natural: sign pattern length mismatch");
  std::vector<double> unit(n);
  std::string label = "linf^" + std::to_string(n) + " natural";
  bool all_plus = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("linf_natural: signs must be +-1");
    unit[i] = signs[i];
    all_plus = all_plus && signs[i] == 1;
  }
  if (!all_plus) {
    label += " sign:";
    for (int s : signs) label += s > 0 ? '+' : '-';
  }
  return make_order_unit_space(SpaceDesc::linf(n), VectorN(std::move(unit)), NaturalLinfSign{std::move(signs)},
                               std::move(label));
}

/// The scalars with their usual order, (R, 1).
inline OusPtr real_line() {
  return make_order_unit_space(SpaceDesc::linf(1), VectorN{1.0}, NaturalLinfSign{{1}}, "R");
}

/// l_1^n with the ice-cream cone at sign * e_k.
inline OusPtr l1_ice(std::size_t n, std::size_t k = 0, int sign = 1) {
  if (n == 0) throw dimension_error("l1_ice: dimension must be positive");
  if (k >= n) throw dimension_error("l1_ice: index out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("l1_ice: sign must be +-1");
  return make_order_unit_space(SpaceDesc::l1(n), VectorN::basis(n, k, sign), L1Ice{k, sign},
                               "l1^" + std::to_string(n) + " ice at " + (sign < 0 ? "-" : "") + "e" +
                                   std::to_string(k + 1));
}

/// Cone {x : ||2x - ||x|| e|| <= ||x||} induced by a candidate unit e.
inline OusPtr from_norming_unit(SpaceDesc space, VectorN e, std::string provenance = {}) {
  if (provenance.empty()) provenance = "norming-unit cone on " + space.describe();
  return make_order_unit_space(std::move(space), std::move(e), FromNormingUnit{}, std::move(provenance));
}

/// Spin factor R (+)_1 l_2^n with the Lorentz cone {t >= ||x||_2}.
inline OusPtr lorentz(std::size_t n) {
  auto space = SpaceDesc::adjoin_l1(real_line(), std::make_shared<const SpaceDesc>(SpaceDesc::l2(n)));
  return make_order_unit_space(std::move(space), VectorN::basis(n + 1, 0), Lorentz{},
                               "lorentz^" + std::to_string(n + 1));
}

// ---------------------------------------------------------------------------
// Sampling and extreme rays

/// A random point of the cone. Half the draws are rejection samples from the
/// unit sphere; the other half are shifts (s + ||s|| e) / 2, which lie in the
/// cone of any order unit space whose norm is the order-unit norm and reach
/// its boundary. The scale is randomized in [0.25, 2].
inline VectorN sample_cone_point(const OrderUnitSpace& ous, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const VectorN s = random_unit_vector(ous.space(), rng);
    const double scale = rng.uniform(0.25, 2.0);
    if (rng.uniform() < 0.5) {
      if (cone_membership(ous, s).inside) return scale * s;
      continue;
    }
    const VectorN shifted = 0.5 * (s + norm(ous.space(), s) * ous.unit());
    if (cone_membership(ous, shifted).inside) return scale * shifted;
  }
  throw std::runtime_error("sample_cone_point: could not find a cone point (" + ous.provenance() + ")");
}

/// Generators of the cone when it is polyhedral with a closed-form
/// description; empty optional otherwise.
inline std::optional<std::vector<VectorN>> cone_generators(const OrderUnitSpace& ous) {
  const std::size_t n = ous.dim();
  if (const auto* r = std::get_if<NaturalLinfSign>(&ous.cone())) {
    std::vector<VectorN> g;
    for (std::size_t i = 0; i < n; ++i) g.push_back(VectorN::basis(n, i, r->signs[i]));
    return g;
  }
  if (const auto* r = std::get_if<L1Ice>(&ous.cone())) {
    const VectorN apex = VectorN::basis(n, r->k, r->sign);
    if (n == 1) return std::vector<VectorN>{apex};
    std::vector<VectorN> g;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r->k) continue;
      g.push_back(apex + VectorN::basis(n, i, 1.0));
      g.push_back(apex + VectorN::basis(n, i, -1.0));
    }
    return g;
  }
  if (const auto* r = std::get_if<Adjoined>(&ous.cone())) {
    // (u, x) = (u - ||x|| e, 0) + ||x|| (e, x / ||x||): generated by (g, 0)
    // for generators g of V and (e, y) for extreme points y of the unit ball.
    auto gv = cone_generators(*r->v);
    auto ball = unit_ball_vertices(*r->x);
    if (!gv || !ball) return std::nullopt;
    std::vector<VectorN> g;
    const VectorN zero_x(r->x->dim());
    for (const auto& v : *gv) g.push_back(concat(v, zero_x));
    for (const auto& y : *ball) g.push_back(concat(r->v->unit(), y));
    return g;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Property probes

/// The four equivalent descriptions of positivity in an order unit space.
struct PositivityReport {
  bool member = false;           // (1) u in the cone
  bool every_lambda = false;     // (2) ||2u - lambda e|| <= lambda for every grid lambda
  bool some_lambda = false;      // (3) ... for some grid lambda
  bool norm_identity = false;    // (4) ||2u - ||u|| e|| = ||u||
  double member_margin = 0.0;
  double identity_gap = 0.0;     // ||2u - ||u|| e|| - ||u||

  bool consistent() const {
    return member == every_lambda && every_lambda == some_lambda && member == norm_identity;
  }

  Json to_json() const {
    return Json{{"member", member},
                {"every_lambda", every_lambda},
                {"some_lambda", some_lambda},
                {"norm_identity", norm_identity},
                {"member_margin", format_real(member_margin)},
                {"identity_gap", format_real(identity_gap)},
                {"consistent", consistent()}};
  }
};

inline PositivityReport positivity_equivalence(const OrderUnitSpace& ous, const VectorN& u,
                                               std::span<const double> lambda_grid) {
  if (lambda_grid.empty()) throw std::invalid_argument("positivity_equivalence: empty lambda grid");
  const SpaceDesc& space = ous.space();
  const VectorN& e = ous.unit();
  const double nu = norm(space, u);

  PositivityReport r;
  const auto mv = cone_membership(ous, u);
  r.member = mv.inside;
  r.member_margin = mv.margin;
  r.every_lambda = true;
  for (double lambda : lambda_grid) {
    if (lambda < nu - kEps) throw std::invalid_argument("positivity_equivalence: grid value below ||u||");
    const bool ok = norm(space, 2.0 * u - lambda * e) - lambda <= kEps;
    r.every_lambda = r.every_lambda && ok;
    r.some_lambda = r.some_lambda || ok;
  }
  r.identity_gap = norm(space, 2.0 * u - nu * e) - nu;
  r.norm_identity = std::abs(r.identity_gap) <= kEps;
  return r;
}

/// Properness: no nonzero x with x and -x both in the cone.
inline CheckReport properness_probe(const OrderUnitSpace& ous, std::uint64_t seed, std::size_t count) {
  CheckReport rep;
  rep.check = "properness";
  rep.anchor = "the cone contains no line: x and -x positive forces x = 0";
  rep.evidence = Evidence::Sampled;

  auto probe = [&](const VectorN& x) {
    if (norm(ous.space(), x) < kDelta) return;  // only 0 is two-sided
    if (!cone_membership(ous, x).inside) return;
    const double m = cone_membership(ous, -x).margin;
    rep.record(m < -kEps, std::max(0.0, m + kEps));
    if (m < -kEps && m >= -kDelta) ++rep.flagged;
  };

  const std::size_t n = ous.dim();
  probe(ous.unit());
  probe(-ous.unit());
  for (std::size_t i = 0; i < n; ++i) {
    probe(VectorN::basis(n, i, 1.0));
    probe(VectorN::basis(n, i, -1.0));
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) probe(sample_cone_point(ous, rng));
  return rep;
}

enum class ArchimedeanStatus {
  Confirmed,         // x + lambda e positive for every lambda, and x positive
  HypothesisBroken,  // some x + lambda e left the cone; nothing to conclude
  Violated,          // hypothesis held but x is not positive
};

inline const char* to_string(ArchimedeanStatus s) {
  switch (s) {
    case ArchimedeanStatus::Confirmed: return "confirmed";
    case ArchimedeanStatus::HypothesisBroken: return "hypothesis broken";
    case ArchimedeanStatus::Violated: return "violated";
  }
  return "unknown";
}

struct ArchimedeanReport {
  ArchimedeanStatus status = ArchimedeanStatus::HypothesisBroken;
  std::size_t steps_checked = 0;
  double last_margin = 0.0;   // margin of x + lambda e at the smallest lambda checked
  double limit_margin = 0.0;  // margin of x itself

  bool passed() const { return status != ArchimedeanStatus::Violated; }

  Json to_json() const {
    return Json{{"status", to_string(status)},
                {"steps_checked", steps_checked},
                {"last_margin", format_real(last_margin)},
                {"limit_margin", format_real(limit_margin)}};
  }
};

/// Archimedean property along a decreasing sequence lambda_k -> 0.
inline ArchimedeanReport archimedean_probe(const OrderUnitSpace& ous, const VectorN& x,
                                           std::span<const double> lambdas) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw std::invalid_argument("archimedean_probe: lambdas must be positive");
    if (i > 0 && !(lambdas[i] < lambdas[i - 1]))
      throw std::invalid_argument("archimedean_probe: lambdas must be strictly decreasing");
  }
  ArchimedeanReport rep;
  rep.limit_margin = cone_membership(ous, x).margin;
  for (double lambda : lambdas) {
    const auto v = cone_membership(ous, x + lambda * ous.unit());
    ++rep.steps_checked;
    rep.last_margin = v.margin;
    if (!v.inside) {
      rep.status = ArchimedeanStatus::HypothesisBroken;
      return rep;
    }
  }
  rep.status = rep.limit_margin >= -kEps ? ArchimedeanStatus::Confirmed : ArchimedeanStatus::Violated;
  return rep;
}

/// lambda_k = 2^-k for k = 0..steps-1.
inline std::vector<double> dyadic_sequence(std::size_t steps) {
  std::vector<double> out;
  for (std::size_t k = 0; k < steps; ++k) out.push_back(std::ldexp(1.0, -static_cast<int>(k)));
  return out;
}

/// Sampled Archimedean check: boundary-biased points x (cone points pushed
/// slightly in or out along -e) run through archimedean_probe.
inline CheckReport archimedean_sampled(const OrderUnitSpace& ous, std::uint64_t seed, std::size_t count,
                                       std::size_t steps = 21) {
  CheckReport rep;
  rep.check = "archimedean";
  rep.anchor = "x + lambda e positive for all lambda > 0 implies x positive";
  rep.evidence = Evidence::Sampled;
  const auto lambdas = dyadic_sequence(steps);
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    VectorN x = sample_cone_point(ous, rng);
    if (i % 2 == 1) x = x - rng.uniform(0.0, 0.2) * ous.unit();
    const auto r = archimedean_probe(ous, x, lambdas);
    rep.record(r.passed(), r.passed() ? 0.0 : -r.limit_margin);
    if (r.status == ArchimedeanStatus::HypothesisBroken) ++rep.flagged;
  }
  return rep;
}

}  // namespace oul

#endif  // OUL_ORDER_CORE_HPP

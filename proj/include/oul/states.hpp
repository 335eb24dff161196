#ifndef OUL_STATES_HPP
#define OUL_STATES_HPP

// States of an order unit space: functionals phi with phi(e) = 1 and phi >= 0
// on the cone, acting by the standard pairing. Everything is finite
// dimensional, so compactness arguments become finite extreme-point sets.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "oul/adjoin.hpp"
#include "oul/constants.hpp"
#include "oul/norms.hpp"
#include "oul/order_core.hpp"
#include "oul/random.hpp"
#include "oul/report.hpp"

namespace oul {

/// Coefficient vector of a linear functional; f(x) = dot(f, x).
using Functional = VectorN;

class StateSpace;
using StateSpacePtr = std::shared_ptr<const StateSpace>;

/// States of l_inf^n with cone {s_i x_i >= 0}: phi = sum_i t_i s_i delta_i, t in the simplex.
struct SimplexStates {
  std::vector<int> signs;
};
/// States of l_1^n with the ice-cream cone at sign * e_k: phi_k = sign, |phi_i| <= 1.
struct IceStates {
  std::size_t n = 0;
  std::size_t k = 0;
  int sign = 1;
};
/// S(V) x X_1'.
struct ProductStates {
  StateSpacePtr v;
  SpacePtr x;
};

class StateSpace {
 public:
  using Kind = std::variant<SimplexStates, IceStates, ProductStates>;

  explicit StateSpace(Kind kind) : kind_(std::move(kind)) {}

  const Kind& kind() const noexcept { return kind_; }

  std::size_t dim() const {
    struct V {
      std::size_t operator()(const SimplexStates& s) const { return s.signs.size(); }
      std::size_t operator()(const IceStates& s) const { return s.n; }
      std::size_t operator()(const ProductStates& s) const { return s.v->dim() + s.x->dim(); }
    };
    return std::visit(V{}, kind_);
  }

 private:
  Kind kind_;
};

/// Closed-form state space of a cone rule; throws when there is none.
inline StateSpacePtr state_space_of(const OrderUnitSpace& ous) {
  if (const auto* r = std::get_if<NaturalLinfSign>(&ous.cone()))
    return std::make_shared<const StateSpace>(SimplexStates{r->signs});
  if (const auto* r = std::get_if<L1Ice>(&ous.cone()))
    return std::make_shared<const StateSpace>(IceStates{ous.dim(), r->k, r->sign});
  if (const auto* r = std::get_if<Adjoined>(&ous.cone())) {
    if (!r->x->is_lp()) throw std::invalid_argument("state_space_of: adjoined space must be l_p");
    return std::make_shared<const StateSpace>(ProductStates{state_space_of(*r->v), r->x});
  }
  if (std::holds_alternative<Lorentz>(ous.cone())) {
    return std::make_shared<const StateSpace>(ProductStates{
        std::make_shared<const StateSpace>(SimplexStates{{1}}),
        std::make_shared<const SpaceDesc>(SpaceDesc::l2(ous.dim() - 1))});
  }
  throw std::invalid_argument("state_space_of: no closed-form state space for " + ous.provenance());
}

/// Extreme points (pure states) when the state space is a polytope.
inline std::optional<std::vector<Functional>> state_vertices(const StateSpace& ss) {
  if (const auto* s = std::get_if<SimplexStates>(&ss.kind())) {
    std::vector<Functional> out;
    for (std::size_t i = 0; i < s->signs.size(); ++i) out.push_back(VectorN::basis(s->signs.size(), i, s->signs[i]));
    return out;
  }
  if (const auto* s = std::get_if<IceStates>(&ss.kind())) {
    std::vector<Functional> out;
    for (const auto& signs : detail::sign_vectors(s->n - 1)) {
      std::vector<double> phi;
      for (std::size_t i = 0, j = 0; i < s->n; ++i) phi.push_back(i == s->k ? s->sign : signs[j++]);
      out.emplace_back(std::move(phi));
    }
    return out;
  }
  const auto& p = std::get<ProductStates>(ss.kind());
  auto pv = state_vertices(*p.v);
  auto ex = dual_ball_vertices(*p.x);
  if (!pv || !ex) return std::nullopt;
  std::vector<Functional> out;
  for (const auto& a : *pv)
    for (const auto& b : *ex) out.push_back(concat(a, b));
  return out;
}

/// inf over the state space of phi(u), in closed form.
inline double min_state_value(const StateSpace& ss, const VectorN& u) {
  if (u.dim() != ss.dim()) throw dimension_error("min_state_value: dimension mismatch");
  if (const auto* s = std::get_if<SimplexStates>(&ss.kind())) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.dim(); ++i) m = std::min(m, s->signs[i] * u[i]);
    return m;
  }
  if (const auto* s = std::get_if<IceStates>(&ss.kind())) {
    double m = s->sign * u[s->k];
    for (std::size_t i = 0; i < u.dim(); ++i)
      if (i != s->k) m -= std::abs(u[i]);
    return m;
  }
  const auto& p = std::get<ProductStates>(ss.kind());
  const std::size_t dv = p.v->dim();
  return min_state_value(*p.v, u.slice(0, dv)) - norm(*p.x, u.slice(dv, p.x->dim()));
}

inline bool state_space_contains(const StateSpace& ss, const Functional& phi) {
  if (phi.dim() != ss.dim()) throw dimension_error("state_space_contains: dimension mismatch");
  if (const auto* s = std::get_if<SimplexStates>(&ss.kind())) {
    double total = 0.0;
    for (std::size_t i = 0; i < phi.dim(); ++i) {
      if (s->signs[i] * phi[i] < -kEps) return false;
      total += s->signs[i] * phi[i];
    }
    return std::abs(total - 1.0) <= kEps;
  }
  if (const auto* s = std::get_if<IceStates>(&ss.kind())) {
    if (std::abs(phi[s->k] - s->sign) > kEps) return false;
    for (std::size_t i = 0; i < phi.dim(); ++i)
      if (i != s->k && std::abs(phi[i]) > 1.0 + kEps) return false;
    return true;
  }
  const auto& p = std::get<ProductStates>(ss.kind());
  const std::size_t dv = p.v->dim();
  return state_space_contains(*p.v, phi.slice(0, dv)) && dual_norm(*p.x, phi.slice(dv, p.x->dim())) <= 1.0 + kEps;
}

/// Random element of the dual unit ball of an l_p space.
inline Functional sample_dual_ball(const SpaceDesc& x, Rng& rng) {
  const SpaceDesc dual = SpaceDesc::lp(x.dim(), x.exponent().conjugate());
  const double r = rng.uniform() < 0.3 ? 1.0 : std::pow(rng.uniform(), 1.0 / static_cast<double>(x.dim()));
  return random_unit_vector(dual, rng) * r;
}

inline Functional sample_state(const StateSpace& ss, Rng& rng) {
  if (const auto* s = std::get_if<SimplexStates>(&ss.kind())) {
    const std::size_t n = s->signs.size();
    std::vector<double> t(n);
    double total = 0.0;
    for (double& v : t) {
      v = -std::log(1.0 - rng.uniform());
      total += v;
    }
    for (std::size_t i = 0; i < n; ++i) t[i] = s->signs[i] * t[i] / total;
    return VectorN(std::move(t));
  }
  if (const auto* s = std::get_if<IceStates>(&ss.kind())) {
    std::vector<double> phi(s->n);
    for (std::size_t i = 0; i < s->n; ++i) phi[i] = i == s->k ? s->sign : rng.uniform(-1.0, 1.0);
    return VectorN(std::move(phi));
  }
  const auto& p = std::get<ProductStates>(ss.kind());
  return concat(sample_state(*p.v, rng), sample_dual_ball(*p.x, rng));
}

namespace detail {

/// Cone elements on which a candidate state is most likely to go negative:
/// closed-form generators when available, plus for adjoined cones with an
/// l_p summand the rays (g, 0) and (e, -y) with y norming the X-part of phi.
inline std::vector<VectorN> targeted_cone_points(const OrderUnitSpace& ous, const Functional& phi) {
  if (auto g = cone_generators(ous)) return *g;
  std::vector<VectorN> out;
  if (const auto* r = std::get_if<Adjoined>(&ous.cone()); r && r->x->is_lp()) {
    const std::size_t dv = r->v->dim();
    const VectorN fx = phi.slice(dv, r->x->dim());
    const VectorN zero_x(r->x->dim());
    for (const auto& inner : targeted_cone_points(*r->v, phi.slice(0, dv))) out.push_back(concat(inner, zero_x));
    if (norm(SpaceDesc::lp(fx.dim(), r->x->exponent().conjugate()), fx) > 0.0) {
      const SpaceDesc dual = SpaceDesc::lp(fx.dim(), r->x->exponent().conjugate());
      out.push_back(concat(r->v->unit(), -norming_functional(dual, fx)));
    }
  } else if (std::holds_alternative<Lorentz>(ous.cone())) {
    const VectorN fx = phi.slice(1, ous.dim() - 1);
    const SpaceDesc l2 = SpaceDesc::l2(fx.dim());
    if (norm(l2, fx) > 0.0) out.push_back(concat(VectorN{1.0}, -norming_functional(l2, fx)));
  }
  return out;
}

}  // namespace detail

/// phi(e) = 1 and phi >= 0 on `count` sampled cone points plus the targeted
/// extreme rays available for the closed-form cones.
inline bool is_state(const OrderUnitSpace& ous, const Functional& phi, std::uint64_t seed, std::size_t count) {
  if (phi.dim() != ous.dim()) throw dimension_error("is_state: dimension mismatch");
  if (std::abs(dot(phi, ous.unit()) - 1.0) > kEps) return false;
  for (const auto& r : detail::targeted_cone_points(ous, phi)) {
    const double scale = std::max(1.0, norm(ous.space(), r));
    if (dot(phi, r) / scale < -kEps) return false;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i)
    if (dot(phi, sample_cone_point(ous, rng)) < -kEps) return false;
  return true;
}

/// An infimum computed by its formula and by a direct route.
struct InfimumReport {
  double formula = 0.0;
  double direct = 0.0;                 // exact minimization route
  std::optional<double> vertex_min;    // brute force over extreme points, when polyhedral
  std::optional<double> sampled_min;   // minimum over random feasible elements
  bool consistent = false;

  double value() const { return formula; }

  Json to_json() const {
    Json j{{"formula", format_real(formula)}, {"direct", format_real(direct)}};
    if (vertex_min) j["vertex_min"] = format_real(*vertex_min);
    if (sampled_min) j["sampled_min"] = format_real(*sampled_min);
    j["consistent"] = consistent;
    return j;
  }
};

/// inf{f(x) : f in X_1'} = -||x||.
inline InfimumReport inf_ball_functionals(const SpaceDesc& space, const VectorN& x, std::uint64_t seed = 1,
                                          std::size_t samples = 64) {
  if (!space.is_lp()) throw std::invalid_argument("inf_ball_functionals: only l_p spaces are supported");
  InfimumReport r;
  r.formula = -norm(space, x);
  r.direct = r.formula == 0.0 ? 0.0 : -dot(norming_functional(space, x), x);
  r.consistent = std::abs(r.formula - r.direct) <= kEps;
  if (auto verts = dual_ball_vertices(space)) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& f : *verts) m = std::min(m, dot(f, x));
    r.vertex_min = m;
    r.consistent = r.consistent && std::abs(m - r.formula) <= kEps;
  }
  if (samples > 0) {
    Rng rng(seed);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples; ++i) m = std::min(m, dot(sample_dual_ball(space, rng), x));
    r.sampled_min = m;
    r.consistent = r.consistent && m >= r.formula - kEps;
  }
  return r;
}

/// inf{phi(u) : phi in S(V)} = ||u|| - || ||u|| e - u || for positive u.
inline InfimumReport inf_states(const OrderUnitSpace& ous, const VectorN& u, std::uint64_t seed = 1,
                                std::size_t samples = 64) {
  if (!cone_membership(ous, u).inside) throw std::invalid_argument("inf_states: u is not positive");
  InfimumReport r;
  const double nu = norm(ous.space(), u);
  r.formula = nu - norm(ous.space(), nu * ous.unit() - u);

  StateSpacePtr ss;
  try {
    ss = state_space_of(ous);
  } catch (const std::invalid_argument&) {
  }
  if (ss) {
    r.direct = min_state_value(*ss, u);
    r.consistent = std::abs(r.direct - r.formula) <= kEps;
    if (auto verts = state_vertices(*ss)) {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& phi : *verts) m = std::min(m, dot(phi, u));
      r.vertex_min = m;
      r.consistent = r.consistent && std::abs(m - r.formula) <= kEps;
    }
    if (samples > 0) {
      Rng rng(seed);
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < samples; ++i) m = std::min(m, dot(sample_state(*ss, rng), u));
      r.sampled_min = m;
      r.consistent = r.consistent && m >= r.formula - kEps;
    }
    return r;
  }
  // No closed form: the formula must lower-bound sampled cone-checked states.
  throw std::invalid_argument("inf_states: no closed-form state space for " + ous.provenance());
}

/// Cone membership of (u, x) in V (+)_1 X against the dual description
/// min over (phi, f) in S(V) x X_1' of phi(u) + f(x) >= 0, the latter also in
/// its closed form ||u|| - || ||u|| e - u || >= ||x|| for positive u.
inline CheckReport dual_cone_check(const AdjoinedOUS& a, std::uint64_t seed, std::size_t count) {
  if (!a.x->is_lp()) throw std::invalid_argument("dual_cone_check: X must be l_p");
  const StateSpacePtr sv = state_space_of(*a.v);  // throws for unsupported V
  CheckReport rep;
  rep.check = "dual-cone";
  rep.anchor = "(u, x) positive iff phi(u) + f(x) >= 0 for all states phi of V and f in the dual unit ball";
  const OrderUnitSpace& c = *a.composite;
  const auto sv_vertices = state_vertices(*sv);
  const auto fx_vertices = dual_ball_vertices(*a.x);
  Rng rng(seed);

  for (std::size_t i = 0; i < count; ++i) {
    VectorN z = random_unit_vector(c.space(), rng) * rng.uniform(0.1, 2.0);
    if (i % 2 == 0) z = sample_cone_point(c, rng) + random_unit_vector(c.space(), rng) * rng.uniform(0.0, 0.3);
    const VectorN u = a.head(z), xv = a.tail(z);
    const bool member = cone_membership(c, z).inside;

    double phi_min = sv_vertices ? std::numeric_limits<double>::infinity() : min_state_value(*sv, u);
    if (sv_vertices)
      for (const auto& phi : *sv_vertices) phi_min = std::min(phi_min, dot(phi, u));
    double f_min = 0.0;
    if (norm(*a.x, xv) > 0.0) f_min = dot(-norming_functional(*a.x, xv), xv);
    if (fx_vertices)
      for (const auto& f : *fx_vertices) f_min = std::min(f_min, dot(f, xv));
    for (int s = 0; s < 8; ++s) f_min = std::min(f_min, dot(sample_dual_ball(*a.x, rng), xv));
    const bool dual_member = phi_min + f_min >= -kEps;

    bool closed_form = false;
    if (cone_membership(*a.v, u).inside) {
      const double nu = norm(a.v->space(), u);
      closed_form = nu - norm(a.v->space(), nu * a.v->unit() - u) - norm(*a.x, xv) >= -kEps;
    }
    rep.record(member == dual_member && member == closed_form);
  }
  return rep;
}

/// S(V (+)_1 X) = S(V) x X_1', sampled in both directions: product elements
/// are states of the composite, and random functionals that are states of the
/// composite lie in the product.
inline CheckReport state_space_product_check(const AdjoinedOUS& a, std::uint64_t seed, std::size_t count) {
  const StateSpacePtr sv = state_space_of(*a.v);
  CheckReport rep;
  rep.check = "state-space-product";
  rep.anchor = "the states of V (+)_1 X are exactly the pairs (phi, f) with phi a state of V and f in X_1'";
  const OrderUnitSpace& c = *a.composite;
  Rng rng(seed);
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Functional prod = concat(sample_state(*sv, rng), sample_dual_ball(*a.x, rng));
    rep.record(is_state(c, prod, rng.next(), 16));
  }
  // Reverse direction: random box draws rescaled to phi(e) = 1, kept when they
  // are states of the composite, until `count` states were examined.
  for (std::size_t attempts = 0; accepted < count && attempts < 100 * count; ++attempts) {
    std::vector<double> raw(c.dim());
    for (double& v : raw) v = rng.uniform(-1.5, 1.5);
    VectorN psi(std::move(raw));
    const double pe = dot(psi, c.unit());
    if (std::abs(pe) < 0.1) continue;
    psi *= 1.0 / pe;
    if (!is_state(c, psi, rng.next(), 16)) continue;
    ++accepted;
    const bool in_product = state_space_contains(*sv, a.head(psi)) && dual_norm(*a.x, a.tail(psi)) <= 1.0 + kEps;
    rep.record(in_product);
  }
  if (accepted < count) ++rep.flagged;
  rep.notes.push_back("composite states found in the reverse direction: " + std::to_string(accepted));
  return rep;
}

namespace detail {

/// Solves the square system m z = rhs by Gaussian elimination with partial
/// pivoting; empty optional when (numerically) singular.
inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-12) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> z(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * z[k];
    z[i] = s / m[i][i];
  }
  return z;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline void insert_unique(std::vector<VectorN>& set, VectorN v) {
  for (const auto& w : set)
    if (max_abs_diff(w, v) <= 1e-9) return;
  set.push_back(std::move(v));
}

inline bool same_set(const std::vector<VectorN>& a, const std::vector<VectorN>& b) {
  auto contains = [](const std::vector<VectorN>& s, const VectorN& v) {
    return std::any_of(s.begin(), s.end(), [&](const VectorN& w) { return max_abs_diff(w, v) <= 1e-9; });
  };
  return a.size() == b.size() && std::all_of(a.begin(), a.end(), [&](const VectorN& v) { return contains(b, v); }) &&
         std::all_of(b.begin(), b.end(), [&](const VectorN& v) { return contains(a, v); });
}

}  // namespace detail

/// Vertices of {phi : phi(e) = 1, phi(g) >= 0 for every cone generator g},
/// by exhaustive active-set search: every choice of dim - 1 generators whose
/// equations together with phi(e) = 1 have a unique feasible solution.
inline std::vector<Functional> enumerate_state_vertices(const OrderUnitSpace& ous) {
  const auto gens = cone_generators(ous);
  if (!gens) throw std::invalid_argument("enumerate_state_vertices: cone is not a closed-form polyhedral cone");
  const std::size_t d = ous.dim();
  std::vector<Functional> out;
  if (d == 1) {
    detail::insert_unique(out, VectorN{1.0 / ous.unit()[0]});
    return out;
  }
  detail::for_each_subset(gens->size(), d - 1, [&](const std::vector<std::size_t>& active) {
    std::vector<std::vector<double>> m;
    std::vector<double> rhs;
    m.emplace_back(ous.unit().begin(), ous.unit().end());
    rhs.push_back(1.0);
    for (std::size_t j : active) {
      m.emplace_back((*gens)[j].begin(), (*gens)[j].end());
      rhs.push_back(0.0);
    }
    auto z = detail::solve_square(std::move(m), std::move(rhs));
    if (!z) return;
    VectorN phi(std::move(*z));
    for (const auto& g : *gens)
      if (dot(phi, g) < -1e-9) return;
    detail::insert_unique(out, std::move(phi));
  });
  return out;
}

struct PureStatesReport {
  std::size_t pure_v = 0;  // |P(V)|
  std::size_t ext_x = 0;   // |ext(X_1')|
  std::vector<Functional> product;     // P(V) x ext(X_1')
  std::vector<Functional> enumerated;  // vertices of S(V (+)_1 X), brute force
  bool product_are_states = false;
  bool sets_equal = false;

  bool passed() const { return product_are_states && sets_equal; }

  Json to_json() const {
    Json j{{"pure_states_v", pure_v},
           {"extreme_points_dual_ball", ext_x},
           {"product_size", product.size()},
           {"enumerated_size", enumerated.size()},
           {"product_are_states", product_are_states},
           {"sets_equal", sets_equal},
           {"method", "finite extreme-point sets of polytopes stand in for weak*-compactness"}};
    Json arr = Json::array();
    for (const auto& f : enumerated) arr.push_back(oul::to_json(f));
    j["pure_states"] = std::move(arr);
    return j;
  }
};

/// Pure states of V (+)_1 X against P(V) x ext(X_1'), for polyhedral V and X.
inline PureStatesReport pure_states_product_check(const AdjoinedOUS& a) {
  const StateSpacePtr sv = state_space_of(*a.v);
  const auto pv = state_vertices(*sv);
  const auto ex = dual_ball_vertices(*a.x);
  if (!pv || !ex) throw std::invalid_argument("pure_states_product_check: V and X must be polyhedral");
  PureStatesReport r;
  r.pure_v = pv->size();
  r.ext_x = ex->size();
  for (const auto& phi : *pv)
    for (const auto& f : *ex) detail::insert_unique(r.product, concat(phi, f));
  r.product_are_states = std::all_of(r.product.begin(), r.product.end(),
                                     [&](const Functional& f) { return is_state(*a.composite, f, 1, 32); });
  r.enumerated = enumerate_state_vertices(*a.composite);
  r.sets_equal = detail::same_set(r.product, r.enumerated);
  return r;
}

}  // namespace oul

#endif  // OUL_STATES_HPP

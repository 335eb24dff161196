#ifndef OUL_NORMS_HPP
#define OUL_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oul/constants.hpp"
#include "oul/random.hpp"
#include "oul/space.hpp"
#include "oul/vector.hpp"

namespace oul {

// Defined in order_core.hpp; included at the bottom of this header.
double order_unit_norm(const OrderUnitSpace& ous, const VectorN& x, double tol);

namespace detail {

inline double lp_norm(std::span<const double> x, const LpExponent& p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (p.is_one()) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  const double q = p.value();
  double s = 0.0;
  if (p.is_two()) {
    for (double v : x) s += (v / m) * (v / m);
    return m * std::sqrt(s);
  }
  for (double v : x) s += std::pow(std::abs(v) / m, q);
  return m * std::pow(s, 1.0 / q);
}

inline double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace detail

/// Norm of x in the given space.
inline double norm(const SpaceDesc& space, const VectorN& x) {
  if (x.dim() != space.dim()) throw dimension_error("norm: vector dimension does not match space");
  struct Visitor {
    const VectorN& x;
    double operator()(const LpNorm& n) const { return detail::lp_norm(x.entries(), n.p); }
    double operator()(const OrderUnitNormOf& n) const { return order_unit_norm(*n.ous, x, kOrderNormTol); }
    double operator()(const AdjoinL1& n) const {
      const std::size_t dv = n.v->dim();
      return norm(n.v->space(), x.slice(0, dv)) + norm(*n.x, x.slice(dv, n.x->dim()));
    }
    double operator()(const AdjoinLinf& n) const {
      const std::size_t dv = n.v->dim();
      return std::max(norm(*n.v, x.slice(0, dv)), norm(*n.x, x.slice(dv, n.x->dim())));
    }
  };
  return std::visit(Visitor{x}, space.kind());
}

/// Dual norm of a functional acting by the standard pairing. l_p spaces only.
inline double dual_norm(const SpaceDesc& space, const VectorN& f) {
  if (!space.is_lp()) throw std::invalid_argument("dual_norm: only l_p spaces are supported");
  if (f.dim() != space.dim()) throw dimension_error("dual_norm: dimension mismatch");
  return detail::lp_norm(f.entries(), space.exponent().conjugate());
}

/// Unit-dual-norm functional f with f(x) = ||x||. Ties go to the lowest index
/// and sign(0) is taken as +1.
inline VectorN norming_functional(const SpaceDesc& space, const VectorN& x) {
  if (!space.is_lp()) throw std::invalid_argument("norming_functional: only l_p spaces are supported");
  if (x.dim() != space.dim()) throw dimension_error("norming_functional: dimension mismatch");
  const double nx = norm(space, x);
  if (nx == 0.0) throw std::invalid_argument("norming_functional: x = 0 has no unique norming functional");

  const LpExponent& p = space.exponent();
  std::vector<double> f(x.dim(), 0.0);
  if (p.is_infinite()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.dim(); ++i)
      if (std::abs(x[i]) > std::abs(x[best])) best = i;
    f[best] = detail::sign_of(x[best]);
  } else if (p.is_one()) {
    for (std::size_t i = 0; i < x.dim(); ++i) f[i] = detail::sign_of(x[i]);
  } else {
    const double e = p.value() - 1.0;
    for (std::size_t i = 0; i < x.dim(); ++i) f[i] = detail::sign_of(x[i]) * std::pow(std::abs(x[i]) / nx, e);
  }
  return VectorN(std::move(f));
}

/// Gaussian direction normalized to unit norm in an arbitrary space.
inline VectorN random_unit_vector(const SpaceDesc& space, Rng& rng) {
  const std::size_t d = space.dim();
  if (d == 0) throw dimension_error("random_unit_vector: zero-dimensional space");
  for (;;) {
    std::vector<double> g(d);
    for (double& v : g) v = rng.gaussian();
    VectorN x(std::move(g));
    const double n = norm(space, x);
    if (n > 1e-300) return x * (1.0 / n);
  }
}

namespace detail {

inline std::vector<VectorN> sign_vectors(std::size_t d) {
  std::vector<VectorN> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1U ? -1.0 : 1.0;
    out.emplace_back(std::move(v));
  }
  return out;
}

inline std::vector<VectorN> signed_basis(std::size_t d) {
  std::vector<VectorN> out;
  for (std::size_t i = 0; i < d; ++i) {
    out.push_back(VectorN::basis(d, i, 1.0));
    out.push_back(VectorN::basis(d, i, -1.0));
  }
  return out;
}

}  // namespace detail

/// Extreme points of the closed unit ball, when it is a polytope
/// (l_1, l_inf, or dimension one). Empty optional otherwise.
inline std::optional<std::vector<VectorN>> unit_ball_vertices(const SpaceDesc& space) {
  if (!space.is_lp()) return std::nullopt;
  const LpExponent& p = space.exponent();
  if (space.dim() == 1 || p.is_one()) return detail::signed_basis(space.dim());
  if (p.is_infinite()) return detail::sign_vectors(space.dim());
  return std::nullopt;
}

/// Extreme points of the dual unit ball X_1', when it is a polytope.
inline std::optional<std::vector<VectorN>> dual_ball_vertices(const SpaceDesc& space) {
  if (!space.is_lp()) return std::nullopt;
  const LpExponent& p = space.exponent();
  if (space.dim() == 1 || p.is_infinite()) return detail::signed_basis(space.dim());
  if (p.is_one()) return detail::sign_vectors(space.dim());
  return std::nullopt;
}

/// `count` deterministic unit vectors of an l_p space.
inline std::vector<VectorN> sample_unit_sphere(const SpaceDesc& space, std::uint64_t seed, std::size_t count) {
  if (!space.is_lp()) throw std::invalid_argument("sample_unit_sphere: only l_p spaces are supported");
  Rng rng(seed);
  std::vector<VectorN> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_unit_vector(space, rng));
  return out;
}

}  // namespace oul

#include "oul/order_core.hpp"

#endif  // OUL_NORMS_HPP

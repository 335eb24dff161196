#ifndef OUL_TESTS_ORACLES_HPP
#define OUL_TESTS_ORACLES_HPP

// Independent reference computations shared by the unit tests and the
// acceptance binary. None of these call into the routine they check.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "oul/oul.hpp"

namespace oracle {

using oul::VectorN;

/// Decomposition u = alpha (e - w) + (1 - alpha) w of a semi-peripheral
/// element of l_inf^n with the natural cone (e = all ones), with w a 0/1-range
/// vector of norm one whose complement also has norm one.
inline std::optional<std::pair<VectorN, double>> linf_semi_peripheral_decompose(const VectorN& u) {
  const std::size_t n = u.dim();
  if (n < 2) return std::nullopt;
  double lo = u[0], hi = u[0];
  for (double v : u) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo < -1e-12 || hi > 1.0 + 1e-12 || std::abs(hi - (1.0 - lo)) > 1e-9) return std::nullopt;
  const double alpha = lo;
  std::vector<double> w(n);
  if (std::abs(1.0 - 2.0 * alpha) < 1e-12) {
    w[0] = 1.0;  // u = e / 2: any peripheral w will do
  } else {
    for (std::size_t i = 0; i < n; ++i) w[i] = std::clamp((u[i] - alpha) / (1.0 - 2.0 * alpha), 0.0, 1.0);
  }
  return std::make_pair(VectorN(std::move(w)), alpha);
}

/// min over the 2^n sign vectors f of f(x): the dual l_inf ball of l_1.
inline double min_over_sign_vectors(const VectorN& x) {
  double best = INFINITY;
  const std::size_t n = x.dim();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += ((mask >> i) & 1U ? -1.0 : 1.0) * x[i];
    best = std::min(best, s);
  }
  return best;
}

/// min over +-e_i of f(x): the dual l_1 ball of l_inf.
inline double min_over_signed_basis(const VectorN& x) {
  double best = INFINITY;
  for (double v : x) best = std::min(best, -std::abs(v));
  return best;
}

/// min over the vertices of the l_1 ice-cream state space (phi_k = 1,
/// phi_i = +-1) of phi(u), enumerated explicitly.
inline double ice_state_vertex_min(const VectorN& u, std::size_t k) {
  const std::size_t n = u.dim();
  double best = INFINITY;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
    double s = u[k];
    for (std::size_t i = 0, j = 0; i < n; ++i) {
      if (i == k) continue;
      s += ((mask >> j) & 1U ? -1.0 : 1.0) * u[i];
      ++j;
    }
    best = std::min(best, s);
  }
  return best;
}

/// Dense grid scan of t -> f(t) on [lo, hi] with `points` samples.
template <class F>
double grid_min(F&& f, double lo, double hi, int points) {
  double best = INFINITY;
  for (int i = 0; i < points; ++i) best = std::min(best, f(lo + (hi - lo) * i / (points - 1)));
  return best;
}

}  // namespace oracle

#endif  // OUL_TESTS_ORACLES_HPP

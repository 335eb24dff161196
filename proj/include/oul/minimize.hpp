#ifndef OUL_MINIMIZE_HPP
#define OUL_MINIMIZE_HPP

#include <cmath>
#include <stdexcept>

namespace oul {

struct ScalarMinimum {
  double argmin;
  double value;
};

/// Golden-section search for the minimum of a convex g on [lo, hi].
///
/// Ties between the two interior probes keep the left bracket, so on a flat
/// stretch the search settles at its left end. After the bracket shrinks
/// below tol the two endpoints are compared against the bracket midpoint,
/// which returns the exact endpoint when g is monotone on the interval.
template <class F>
ScalarMinimum minimize_convex_1d(F&& g, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("minimize_convex_1d: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("minimize_convex_1d: need tol > 0");

  auto eval = [&](double t) {
    const double v = g(t);
    if (!std::isfinite(v)) throw std::domain_error("minimize_convex_1d: non-finite objective");
    return v;
  };

  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = eval(c), gd = eval(d);
  while (b - a > tol) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = eval(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = eval(d);
    }
  }

  ScalarMinimum best{0.5 * (a + b), eval(0.5 * (a + b))};
  const double glo = eval(lo);
  const double ghi = eval(hi);
  if (glo <= best.value) best = {lo, glo};
  if (ghi < best.value) best = {hi, ghi};
  return best;
}

}  // namespace oul

#endif  // OUL_MINIMIZE_HPP

#ifndef OUL_SPACE_HPP
#define OUL_SPACE_HPP

#include <cmath>
#include <cstdio>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "oul/vector.hpp"

namespace oul {

/// Exponent of an l_p norm. Infinity is its own state, never a float sentinel.
class LpExponent {
 public:
  static LpExponent finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("l_p exponent must satisfy 1 <= p < inf");
    return LpExponent(p);
  }
  static LpExponent infinity() { return LpExponent(std::nullopt); }

  bool is_infinite() const noexcept { return !p_.has_value(); }
  bool is_one() const noexcept { return p_.has_value() && *p_ == 1.0; }
  bool is_two() const noexcept { return p_.has_value() && *p_ == 2.0; }

  /// Finite value of p; throws for infinity.
  double value() const {
    if (!p_) throw std::logic_error("LpExponent::value on infinity");
    return *p_;
  }

  /// Conjugate exponent q with 1/p + 1/q = 1.
  LpExponent conjugate() const {
    if (is_infinite()) return finite(1.0);
    if (is_one()) return infinity();
    return finite(*p_ / (*p_ - 1.0));
  }

  std::string to_string() const;

  friend bool operator==(const LpExponent&, const LpExponent&) = default;

 private:
  explicit LpExponent(std::optional<double> p) : p_(p) {}
  std::optional<double> p_;
};

inline std::string LpExponent::to_string() const {
  if (is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", *p_);
  return buf;
}

class SpaceDesc;
class OrderUnitSpace;
using SpacePtr = std::shared_ptr<const SpaceDesc>;
using OusPtr = std::shared_ptr<const OrderUnitSpace>;

struct LpNorm {
  LpExponent p;
};
/// Norm given by the order-unit norm of another space.
struct OrderUnitNormOf {
  OusPtr ous;
};
/// V (+)_1 X: norm ||v|| + ||x||.
struct AdjoinL1 {
  OusPtr v;
  SpacePtr x;
};
/// V (+)_inf X: norm max(||v||, ||x||).
struct AdjoinLinf {
  SpacePtr v;
  SpacePtr x;
};

/// A norm on R^dim.
class SpaceDesc {
 public:
  using Kind = std::variant<LpNorm, OrderUnitNormOf, AdjoinL1, AdjoinLinf>;

  static SpaceDesc lp(std::size_t dim, LpExponent p) { return SpaceDesc(dim, LpNorm{p}); }
  static SpaceDesc l1(std::size_t dim) { return lp(dim, LpExponent::finite(1.0)); }
  static SpaceDesc l2(std::size_t dim) { return lp(dim, LpExponent::finite(2.0)); }
  static SpaceDesc linf(std::size_t dim) { return lp(dim, LpExponent::infinity()); }

  static SpaceDesc order_unit_norm_of(OusPtr ous);
  static SpaceDesc adjoin_l1(OusPtr v, SpacePtr x);
  static SpaceDesc adjoin_linf(SpacePtr v, SpacePtr x) {
    if (!v || !x) throw std::invalid_argument("adjoin_linf: null component");
    std::size_t d = v->dim() + x->dim();
    return SpaceDesc(d, AdjoinLinf{std::move(v), std::move(x)});
  }

  std::size_t dim() const noexcept { return dim_; }
  const Kind& kind() const noexcept { return kind_; }

  bool is_lp() const noexcept { return std::holds_alternative<LpNorm>(kind_); }
  const LpExponent& exponent() const {
    if (!is_lp()) throw std::invalid_argument("space is not an l_p space");
    return std::get<LpNorm>(kind_).p;
  }

  std::string describe() const;

 private:
  SpaceDesc(std::size_t dim, Kind kind) : dim_(dim), kind_(std::move(kind)) {}

  std::size_t dim_;
  Kind kind_;
};

// Cone rules. Each one is a closed-form membership test.

/// {x : ||2x - ||x|| e|| <= ||x||}
struct FromNormingUnit {};
/// {x : s_i x_i >= 0 for all i}
struct NaturalLinfSign {
  std::vector<int> signs;
};
/// {x : sign * x_k >= sum_{i != k} |x_i|}
struct L1Ice {
  std::size_t k = 0;
  int sign = 1;
};
/// {(u, x) : ||x||_X e_V <= u in V}
struct Adjoined {
  OusPtr v;
  SpacePtr x;
};
/// {(t, x) : t >= ||x||_2}
struct Lorentz {};

using ConeRule = std::variant<FromNormingUnit, NaturalLinfSign, L1Ice, Adjoined, Lorentz>;

/// A normed space together with a distinguished unit and a positive cone.
/// Construct through the factories in order_core.hpp / adjoin.hpp, which
/// check the unit invariants.
class OrderUnitSpace {
 public:
  OrderUnitSpace(SpaceDesc space, VectorN unit, ConeRule cone, std::string provenance)
      : space_(std::move(space)), unit_(std::move(unit)), cone_(std::move(cone)), provenance_(std::move(provenance)) {
    if (unit_.dim() != space_.dim()) throw dimension_error("unit dimension does not match space");
  }

  const SpaceDesc& space() const noexcept { return space_; }
  const VectorN& unit() const noexcept { return unit_; }
  const ConeRule& cone() const noexcept { return cone_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t dim() const noexcept { return space_.dim(); }

 private:
  SpaceDesc space_;
  VectorN unit_;
  ConeRule cone_;
  std::string provenance_;
};

inline SpaceDesc SpaceDesc::order_unit_norm_of(OusPtr ous) {
  if (!ous) throw std::invalid_argument("order_unit_norm_of: null space");
  std::size_t d = ous->dim();
  return SpaceDesc(d, OrderUnitNormOf{std::move(ous)});
}

inline SpaceDesc SpaceDesc::adjoin_l1(OusPtr v, SpacePtr x) {
  if (!v || !x) throw std::invalid_argument("adjoin_l1: null component");
  std::size_t d = v->dim() + x->dim();
  return SpaceDesc(d, AdjoinL1{std::move(v), std::move(x)});
}

inline std::string SpaceDesc::describe() const {
  struct Visitor {
    std::size_t dim;
    std::string operator()(const LpNorm& n) const { return "l" + n.p.to_string() + "^" + std::to_string(dim); }
    std::string operator()(const OrderUnitNormOf& n) const { return "order-unit-norm(" + n.ous->provenance() + ")"; }
    std::string operator()(const AdjoinL1& n) const {
      return "(" + n.v->provenance() + ") (+)_1 " + n.x->describe();
    }
    std::string operator()(const AdjoinLinf& n) const {
      return "(" + n.v->describe() + ") (+)_inf " + n.x->describe();
    }
  };
  return std::visit(Visitor{dim_}, kind_);
}

}  // namespace oul

#endif  // OUL_SPACE_HPP

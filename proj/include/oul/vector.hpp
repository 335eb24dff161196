#ifndef OUL_VECTOR_HPP
#define OUL_VECTOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oul {

class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense real vector of fixed dimension. Entries are always finite.
class VectorN {
 public:
  VectorN() = default;
  explicit VectorN(std::size_t dim, double fill = 0.0) : entries_(dim, fill) { check_finite(); }
  VectorN(std::initializer_list<double> init) : entries_(init) { check_finite(); }
  explicit VectorN(std::vector<double> entries) : entries_(std::move(entries)) { check_finite(); }

  static VectorN basis(std::size_t dim, std::size_t k, double scale = 1.0) {
    if (k >= dim) throw dimension_error("basis index out of range");
    VectorN v(dim);
    v.entries_[k] = scale;
    return v;
  }

  std::size_t dim() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  double operator[](std::size_t i) const { return entries_[i]; }
  double at(std::size_t i) const { return entries_.at(i); }

  void set(std::size_t i, double value) {
    if (!std::isfinite(value)) throw std::domain_error("VectorN: non-finite entry");
    entries_.at(i) = value;
  }

  std::span<const double> entries() const noexcept { return entries_; }
  const std::vector<double>& data() const noexcept { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// Sub-vector [offset, offset + count).
  VectorN slice(std::size_t offset, std::size_t count) const {
    if (offset + count > dim()) throw dimension_error("slice out of range");
    return VectorN(std::vector<double>(entries_.begin() + static_cast<std::ptrdiff_t>(offset),
                                       entries_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
  }

  VectorN& operator+=(const VectorN& rhs) {
    require_same_dim(rhs);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += rhs.entries_[i];
    check_finite();
    return *this;
  }
  VectorN& operator-=(const VectorN& rhs) {
    require_same_dim(rhs);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= rhs.entries_[i];
    check_finite();
    return *this;
  }
  VectorN& operator*=(double s) {
    for (double& v : entries_) v *= s;
    check_finite();
    return *this;
  }

  friend VectorN operator+(VectorN a, const VectorN& b) { return a += b; }
  friend VectorN operator-(VectorN a, const VectorN& b) { return a -= b; }
  friend VectorN operator*(VectorN a, double s) { return a *= s; }
  friend VectorN operator*(double s, VectorN a) { return a *= s; }
  friend VectorN operator-(VectorN a) { return a *= -1.0; }

  friend bool operator==(const VectorN&, const VectorN&) = default;

  void require_same_dim(const VectorN& rhs) const {
    if (rhs.dim() != dim())
      throw dimension_error("dimension mismatch: " + std::to_string(dim()) + " vs " +
                            std::to_string(rhs.dim()));
  }

 private:
  void check_finite() const {
    for (double v : entries_)
      if (!std::isfinite(v)) throw std::domain_error("VectorN: non-finite entry");
  }

  std::vector<double> entries_;
};

inline double dot(const VectorN& a, const VectorN& b) {
  a.require_same_dim(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline VectorN concat(const VectorN& head, const VectorN& tail) {
  std::vector<double> out(head.begin(), head.end());
  out.insert(out.end(), tail.begin(), tail.end());
  return VectorN(std::move(out));
}

/// Coordinatewise product with a sign pattern.
inline VectorN apply_signs(const VectorN& x, std::span<const int> signs) {
  if (signs.size() != x.dim()) throw dimension_error("sign pattern length mismatch");
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= signs[i];
  return VectorN(std::move(out));
}

inline double max_abs_diff(const VectorN& a, const VectorN& b) {
  a.require_same_dim(b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oul

#endif  // OUL_VECTOR_HPP

#ifndef OUL_CONSTANTS_HPP
#define OUL_CONSTANTS_HPP

namespace oul {

/// Feasibility tolerance: a defining inequality counts as satisfied when its
/// signed slack is at least -kEps.
inline constexpr double kEps = 1e-9;

/// Strictness margin: a violation is only reported as genuine when it
/// exceeds kDelta.
inline constexpr double kDelta = 1e-6;

/// Tolerance used when a norm is evaluated through the order-unit bisection.
inline constexpr double kOrderNormTol = 1e-12;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.3.0";

}  // namespace oul

#endif  // OUL_CONSTANTS_HPP

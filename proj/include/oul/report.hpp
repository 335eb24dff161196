#ifndef OUL_REPORT_HPP
#define OUL_REPORT_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "oul/vector.hpp"

namespace oul {

using Json = nlohmann::ordered_json;

/// Decimal string with 17 significant digits; round-trips every double.
inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline Json to_json(const VectorN& v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(format_real(x));
  return arr;
}

/// How much a check actually establishes.
enum class Evidence {
  Exact,               // closed-form characterization
  Computed,            // direct evaluation of a formula at the given inputs
  Sampled,             // finitely many samples; evidence, not proof
  ConjectureEvidence,  // sampled support for an unproved statement
};

inline const char* to_string(Evidence e) {
  switch (e) {
    case Evidence::Exact: return "exact";
    case Evidence::Computed: return "computed";
    case Evidence::Sampled: return "sampled check";
    case Evidence::ConjectureEvidence: return "conjecture evidence";
  }
  return "unknown";
}

/// Outcome of a sampled or enumerated property check.
struct CheckReport {
  std::string check;
  std::string anchor;  // the property being checked, in words
  Evidence evidence = Evidence::Sampled;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t flagged = 0;  // near-boundary cases that are neither clean passes nor failures
  double max_error = 0.0;
  std::vector<std::string> notes;

  bool passed() const { return failures == 0; }

  void record(bool ok, double error = 0.0) {
    ++trials;
    if (!ok) ++failures;
    if (error > max_error) max_error = error;
  }

  Json to_json() const {
    Json j;
    j["check"] = check;
    j["anchor"] = anchor;
    j["evidence"] = to_string(evidence);
    j["passed"] = passed();
    j["trials"] = trials;
    j["failures"] = failures;
    j["flagged"] = flagged;
    j["max_error"] = format_real(max_error);
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }
};

}  // namespace oul

#endif  // OUL_REPORT_HPP

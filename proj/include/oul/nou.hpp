#ifndef OUL_NOU_HPP
#define OUL_NOU_HPP

// Deciding whether a unit vector e is a norming order unit of an l_p^n space:
//
//   whenever ||2x - lambda e|| <= lambda for some lambda >= ||x||,
//   also     ||2x - ||x|| e|| <= ||x||.
//
// The first line is the antecedent, the second the consequent. A witness is an
// x for which the antecedent holds and the consequent fails by more than kDelta.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oul/constants.hpp"
#include "oul/minimize.hpp"
#include "oul/norms.hpp"
#include "oul/order_core.hpp"
#include "oul/parallel.hpp"
#include "oul/random.hpp"
#include "oul/report.hpp"

namespace oul {

struct AntecedentResult {
  bool holds = false;
  double lambda_star = 0.0;  // minimizer of ||2x - lambda e|| - lambda
  double min_value = 0.0;
};

struct ConsequentResult {
  bool holds = false;
  double value = 0.0;  // ||2x - ||x|| e|| - ||x||
};

namespace detail {

inline void require_unit(const SpaceDesc& space, const VectorN& e) {
  if (e.dim() != space.dim()) throw dimension_error("candidate unit dimension does not match space");
  const double n = norm(space, e);
  if (std::abs(n - 1.0) > 1e-12) throw std::invalid_argument("candidate unit must have norm one, got " + format_real(n));
}

/// ||2x - lambda e|| - lambda. The l_p case reuses a per-thread buffer; this
/// sits in the innermost loop of the search.
inline double antecedent_gap(const SpaceDesc& space, const VectorN& e, const VectorN& x, double lambda) {
  if (!space.is_lp()) return norm(space, 2.0 * x - lambda * e) - lambda;
  thread_local std::vector<double> buf;
  buf.resize(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) buf[i] = 2.0 * x[i] - lambda * e[i];
  return lp_norm(buf, space.exponent()) - lambda;
}

}  // namespace detail

/// Minimizes lambda -> ||2x - lambda e|| - lambda over [0, L] by golden
/// section, L = max(10, 10 ||x||), doubling L up to three times while the
/// minimizer sits at the right end (the infimum may only be approached as
/// lambda -> inf). The constraint lambda >= ||x|| needs no separate handling:
/// ||2x - lambda e|| <= lambda already forces it.
inline AntecedentResult antecedent_holds(const SpaceDesc& space, const VectorN& e, const VectorN& x) {
  const double nx = norm(space, x);
  auto g = [&](double lambda) { return detail::antecedent_gap(space, e, x, lambda); };
  double upper = std::max(10.0, 10.0 * nx);
  const double tol = 1e-11 * std::max(1.0, nx);
  ScalarMinimum m = minimize_convex_1d(g, 0.0, upper, tol);
  for (int doubling = 0; doubling < 3 && m.argmin >= upper * (1.0 - 1e-9); ++doubling) {
    upper *= 2.0;
    m = minimize_convex_1d(g, 0.0, upper, tol);
  }
  AntecedentResult r;
  r.lambda_star = std::max(m.argmin, nx);
  r.min_value = m.argmin >= nx ? m.value : g(r.lambda_star);
  r.holds = m.value <= kEps;
  return r;
}

inline ConsequentResult consequent_holds(const SpaceDesc& space, const VectorN& e, const VectorN& x) {
  const double nx = norm(space, x);
  ConsequentResult r;
  r.value = norm(space, 2.0 * x - nx * e) - nx;
  r.holds = r.value <= kEps;
  return r;
}

enum class WitnessSource { ClosedForm, RandomSearch, Refined };

inline const char* to_string(WitnessSource s) {
  switch (s) {
    case WitnessSource::ClosedForm: return "closed-form construction";
    case WitnessSource::RandomSearch: return "random search";
    case WitnessSource::Refined: return "refined";
  }
  return "unknown";
}

/// A falsification record: the antecedent holds at lambda_star while the
/// consequent fails by more than kDelta.
struct Witness {
  VectorN x;
  double lambda_star = 0.0;
  double antecedent_value = 0.0;  // ||2x - lambda* e|| - lambda*, <= kEps
  double consequent_value = 0.0;  // ||2x - ||x|| e|| - ||x||, > kDelta
  WitnessSource source = WitnessSource::RandomSearch;

  Json to_json() const {
    return Json{{"x", oul::to_json(x)},
                {"lambda_star", format_real(lambda_star)},
                {"antecedent_value", format_real(antecedent_value)},
                {"consequent_value", format_real(consequent_value)},
                {"source", to_string(source)}};
  }
};

/// Evaluates both sides from scratch; returns a Witness only if it is valid.
inline std::optional<Witness> make_witness(const SpaceDesc& space, const VectorN& e, const VectorN& x, double lambda,
                                           WitnessSource source) {
  Witness w{x, lambda, detail::antecedent_gap(space, e, x, lambda), consequent_holds(space, e, x).value, source};
  if (w.antecedent_value <= kEps && w.consequent_value > kDelta && lambda >= norm(space, x) - kEps) return w;
  return std::nullopt;
}

inline bool witness_is_valid(const SpaceDesc& space, const VectorN& e, const Witness& w) {
  return make_witness(space, e, w.x, w.lambda_star, w.source).has_value();
}

namespace detail {

/// Signs s with s * e >= 0 coordinatewise; sign(0) = +1.
inline std::vector<int> sign_pattern(const VectorN& e) {
  std::vector<int> s(e.dim());
  for (std::size_t i = 0; i < e.dim(); ++i) s[i] = e[i] < 0.0 ? -1 : 1;
  return s;
}

inline std::optional<std::size_t> coordinate_axis(const VectorN& e) {
  std::optional<std::size_t> axis;
  for (std::size_t i = 0; i < e.dim(); ++i) {
    if (std::abs(std::abs(e[i]) - 1.0) <= 1e-12) {
      if (axis) return std::nullopt;
      axis = i;
    } else if (std::abs(e[i]) > 1e-12) {
      return std::nullopt;
    }
  }
  return axis;
}

// The constructions below assume a nonnegative unit e.

inline std::optional<Witness> linf_construction(const SpaceDesc& space, const VectorN& e) {
  // x = e_i at the smallest coordinate alpha < 1, lambda = 2 / (1 + alpha):
  // the antecedent is tight and the consequent exceeds by 1 - alpha.
  std::optional<std::size_t> pick;
  for (std::size_t i = 0; i < e.dim(); ++i)
    if (e[i] < 1.0 - kDelta && (!pick || e[i] < e[*pick])) pick = i;
  if (!pick) return std::nullopt;
  const double alpha = e[*pick];
  return make_witness(space, e, VectorN::basis(e.dim(), *pick), 2.0 / (1.0 + alpha), WitnessSource::ClosedForm);
}

inline std::optional<Witness> coordinate_construction(const SpaceDesc& space, const VectorN& e) {
  // x = e_i at the largest coordinate 0 < alpha < 1, lambda = 2 / alpha:
  // ||2 e_i - (2/alpha) e|| = (2/alpha) ||alpha e_i - e|| < 2/alpha.
  std::optional<std::size_t> pick;
  for (std::size_t i = 0; i < e.dim(); ++i)
    if (e[i] > 0.0 && e[i] < 1.0 - kDelta && (!pick || e[i] > e[*pick])) pick = i;
  if (!pick) return std::nullopt;
  const VectorN x = VectorN::basis(e.dim(), *pick);
  if (auto w = make_witness(space, e, x, 2.0 / e[*pick], WitnessSource::ClosedForm)) return w;
  const auto a = antecedent_holds(space, e, x);
  return make_witness(space, e, x, a.lambda_star, WitnessSource::ClosedForm);
}

inline std::optional<Witness> axis_construction(const SpaceDesc& space, const VectorN& e, std::size_t k) {
  // e = e_k in l_p, 1 < p < inf: u with u_k = 0.6 and unit norm, one other
  // coordinate nonzero. In l_2, ||2u - lambda e||^2 = lambda^2 - 4 u_k lambda + 4,
  // so lambda = 1 / u_k is tight, while ||2u - e||^2 = 5 - 4 u_k > 1.
  const std::size_t n = e.dim();
  if (n < 2) return std::nullopt;
  const double p = space.exponent().value();
  constexpr double head = 0.6;
  const double tail = std::pow(1.0 - std::pow(head, p), 1.0 / p);
  std::vector<double> u(n, 0.0);
  u[k] = head;
  u[(k + 1) % n] = tail;
  const VectorN x(std::move(u));
  if (space.exponent().is_two()) {
    if (auto w = make_witness(space, e, x, 1.0 / head, WitnessSource::ClosedForm)) return w;
  }
  const auto a = antecedent_holds(space, e, x);
  return make_witness(space, e, x, a.lambda_star, WitnessSource::ClosedForm);
}

inline Witness unflip(Witness w, std::span<const int> signs) {
  w.x = apply_signs(w.x, signs);
  return w;
}

}  // namespace detail

/// The explicit constructions for l_inf, l_1 and l_p (1 < p < inf).
/// Candidates are first reflected to be nonnegative by a coordinate sign flip
/// (an isometry); the returned witness refers to the original e.
inline std::optional<Witness> constructive_witness(const SpaceDesc& space, const VectorN& e) {
  if (!space.is_lp()) throw std::invalid_argument("constructive_witness: only l_p spaces are supported");
  detail::require_unit(space, e);
  const auto signs = detail::sign_pattern(e);
  const VectorN pos = apply_signs(e, signs);
  const LpExponent& p = space.exponent();

  std::optional<Witness> w;
  if (p.is_infinite()) {
    w = detail::linf_construction(space, pos);
  } else if (p.is_one()) {
    w = detail::coordinate_construction(space, pos);
  } else if (auto axis = detail::coordinate_axis(pos)) {
    w = detail::axis_construction(space, pos, *axis);
  } else {
    w = detail::coordinate_construction(space, pos);
  }
  if (!w) return std::nullopt;
  Witness out = detail::unflip(std::move(*w), signs);
  if (!witness_is_valid(space, e, out)) return std::nullopt;
  return out;
}

namespace detail {

/// Coordinate hill climbing on the consequent value over the unit sphere,
/// keeping the antecedent feasible at every accepted step. Steps start at 0.1
/// and halve down to 1e-7.
inline std::optional<Witness> refine_near_miss(const SpaceDesc& space, const VectorN& e, VectorN x) {
  double best = consequent_holds(space, e, x).value;
  const std::size_t n = x.dim();
  int evaluations = 0;
  for (double step = 0.1; step >= 1e-7 && evaluations < 4000; step *= 0.5) {
    bool improved = true;
    while (improved && evaluations < 4000) {
      improved = false;
      for (std::size_t i = 0; i < n && !improved; ++i) {
        for (double dir : {1.0, -1.0}) {
          VectorN y = x + VectorN::basis(n, i, dir * step);
          const double ny = norm(space, y);
          if (ny == 0.0) continue;
          y *= 1.0 / ny;
          ++evaluations;
          const double v = consequent_holds(space, e, y).value;
          if (v <= best || !antecedent_holds(space, e, y).holds) continue;
          x = std::move(y);
          best = v;
          improved = true;
          break;
        }
      }
    }
  }
  if (best <= kDelta) return std::nullopt;
  return make_witness(space, e, x, antecedent_holds(space, e, x).lambda_star, WitnessSource::Refined);
}

inline std::optional<Witness> search_trial(const SpaceDesc& space, const VectorN& e, std::uint64_t seed,
                                           std::size_t index) {
  Rng rng = Rng::for_trial(seed, index);
  const VectorN x = random_unit_vector(space, rng);
  const auto c = consequent_holds(space, e, x);
  if (c.holds) return std::nullopt;
  const auto a = antecedent_holds(space, e, x);
  if (!a.holds) return std::nullopt;
  if (c.value > kDelta) return make_witness(space, e, x, a.lambda_star, WitnessSource::RandomSearch);
  return refine_near_miss(space, e, x);
}

}  // namespace detail

/// Search for a witness against e: the constructions first, then `budget`
/// random unit vectors (trial i drawn from its own seeded stream). Near misses
/// are refined. Deterministic in the seed: the lowest successful trial wins.
inline std::optional<Witness> falsify(const SpaceDesc& space, const VectorN& e, std::uint64_t seed,
                                      std::size_t budget, std::size_t workers = worker_count()) {
  if (auto w = constructive_witness(space, e)) return w;
  auto hit = find_first<Witness>(
      budget, [&](std::size_t i) { return detail::search_trial(space, e, seed, i); }, workers);
  if (!hit) return std::nullopt;
  return std::move(hit->second);
}

enum class NouStatus { VerifiedExact, VerifiedStatistical, Falsified };

inline const char* to_string(NouStatus s) {
  switch (s) {
    case NouStatus::VerifiedExact: return "verified-exact";
    case NouStatus::VerifiedStatistical: return "verified-statistical";
    case NouStatus::Falsified: return "falsified";
  }
  return "unknown";
}

struct NouVerdict {
  NouStatus status = NouStatus::VerifiedStatistical;
  VectorN candidate;
  std::size_t samples = 0;  // budget survived, for VerifiedStatistical
  std::optional<Witness> witness;

  Json to_json() const {
    Json j{{"status", to_string(status)}, {"candidate", oul::to_json(candidate)}};
    if (status == NouStatus::VerifiedStatistical) {
      j["samples"] = samples;
      j["evidence"] = to_string(Evidence::Sampled);
    } else if (status == NouStatus::VerifiedExact) {
      j["evidence"] = to_string(Evidence::Exact);
    }
    if (witness) j["witness"] = witness->to_json();
    return j;
  }
};

/// Closed-form classification: in l_inf^n the norming order units are exactly
/// the sign vectors, in l_1^n exactly the signed coordinate vectors. Returns
/// a verdict only for those; anything else (including other p) falls through.
inline std::optional<NouVerdict> verify_exact(const SpaceDesc& space, const VectorN& e) {
  if (!space.is_lp()) return std::nullopt;
  detail::require_unit(space, e);
  const LpExponent& p = space.exponent();
  bool exact = false;
  if (p.is_infinite()) {
    exact = std::all_of(e.begin(), e.end(), [](double v) { return std::abs(std::abs(v) - 1.0) <= 1e-12; });
  } else if (p.is_one()) {
    exact = detail::coordinate_axis(e).has_value();
  }
  if (!exact) return std::nullopt;
  return NouVerdict{NouStatus::VerifiedExact, e, 0, std::nullopt};
}

/// Full decision procedure: exact classification, then falsification, then
/// statistical survival.
inline NouVerdict check_norming_unit(const SpaceDesc& space, const VectorN& e, std::uint64_t seed,
                                     std::size_t budget, std::size_t workers = worker_count()) {
  if (auto v = verify_exact(space, e)) return *v;
  if (auto w = falsify(space, e, seed, budget, workers)) return NouVerdict{NouStatus::Falsified, e, 0, std::move(w)};
  return NouVerdict{NouStatus::VerifiedStatistical, e, budget, std::nullopt};
}

struct SweepCandidate {
  VectorN candidate;
  std::string kind;  // "coordinate" or "random"
  std::optional<Witness> witness;
};

struct SweepRow {
  LpExponent p = LpExponent::finite(2.0);
  std::vector<SweepCandidate> candidates;

  std::size_t falsified() const {
    return static_cast<std::size_t>(
        std::count_if(candidates.begin(), candidates.end(), [](const auto& c) { return c.witness.has_value(); }));
  }
  std::size_t survivors() const { return candidates.size() - falsified(); }
};

struct SweepReport {
  std::size_t dim = 0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;

  std::size_t total_survivors() const {
    std::size_t s = 0;
    for (const auto& r : rows) s += r.survivors();
    return s;
  }

  Json to_json() const {
    Json j;
    j["evidence"] = to_string(Evidence::ConjectureEvidence);
    j["statement"] = "for 1 < p < inf, l_p^n has no norming order unit";
    j["dim"] = dim;
    j["budget"] = budget;
    j["seed"] = seed;
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["p"] = r.p.to_string();
      row["candidates"] = r.candidates.size();
      row["falsified"] = r.falsified();
      row["survivors"] = r.survivors();
      row["verdict"] = r.survivors() == 0 ? "no candidate survived" : "survivors need inspection";
      Json cands = Json::array();
      for (const auto& c : r.candidates) {
        Json cj{{"kind", c.kind}, {"candidate", oul::to_json(c.candidate)}};
        if (c.witness)
          cj["witness"] = c.witness->to_json();
        else
          cj["result"] = "survived budget";
        cands.push_back(std::move(cj));
      }
      row["results"] = std::move(cands);
      arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    return j;
  }
};

/// For each p: every coordinate vector plus `candidates_per_p` random unit
/// vectors are run through falsify. Candidates are processed in parallel; each
/// uses its own derived seed, so the report is independent of scheduling.
inline SweepReport p_sweep(std::span<const double> p_grid, std::size_t dim, std::size_t candidates_per_p,
                           std::size_t budget, std::uint64_t seed, std::size_t workers = worker_count()) {
  for (double p : p_grid)
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("p_sweep: every p must lie in (1, inf)");
  if (dim == 0) throw dimension_error("p_sweep: dimension must be positive");

  SweepReport rep{dim, budget, seed, {}};
  for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
    SweepRow row{LpExponent::finite(p_grid[pi]), {}};
    const SpaceDesc space = SpaceDesc::lp(dim, row.p);
    for (std::size_t k = 0; k < dim; ++k) row.candidates.push_back({VectorN::basis(dim, k), "coordinate", {}});
    Rng rng = Rng::for_trial(seed, 1000003ULL * (pi + 1));
    for (std::size_t j = 0; j < candidates_per_p; ++j)
      row.candidates.push_back({random_unit_vector(space, rng), "random", {}});

    parallel_for(
        row.candidates.size(),
        [&](std::size_t c) {
          const std::uint64_t cseed = Rng::for_trial(seed, 7919ULL * (pi + 1) + c).next();
          row.candidates[c].witness = falsify(space, row.candidates[c].candidate, cseed, budget, 1);
        },
        workers);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace oul

#endif  // OUL_NOU_HPP

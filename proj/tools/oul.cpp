// oul: norming order unit checks, p-sweeps, adjoining demos and order-unit
// norm evaluation. Exit codes: 0 success/verified, 1 falsified or failed
// check, 2 bad input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_parse.hpp"
#include "oul/oul.hpp"

namespace {

using namespace oul;
using cli::csv_row;
using cli::csv_vector;

struct Common {
  std::uint64_t seed = 1;
  std::size_t budget = 10000;
  std::string out;
  std::string format = "json";
};

struct Output {
  Json json;
  std::string csv;
  int code = 0;
};

Json envelope(const std::string& command, const Common& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = c.seed;
  j["budget"] = c.budget;
  j["eps"] = format_real(kEps);
  j["delta"] = format_real(kDelta);
  return j;
}

VectorN normalized_unit(const SpaceDesc& space, VectorN e) {
  const double n = norm(space, e);
  if (n == 0.0) throw std::invalid_argument("--unit must be nonzero");
  if (std::abs(n - 1.0) > 1e-12) {
    std::cerr << "warning: --unit has norm " << format_real(n) << "; normalized to norm one\n";
    e *= 1.0 / n;
  }
  return e;
}

// ---------------------------------------------------------------------------

struct CheckNouArgs {
  std::string p = "2";
  std::size_t dim = 2;
  std::string unit;
};

Output check_nou(const CheckNouArgs& a, const Common& c) {
  if (a.dim == 0) throw std::invalid_argument("--dim must be positive");
  const SpaceDesc space = SpaceDesc::lp(a.dim, cli::parse_exponent(a.p));
  const VectorN e = normalized_unit(space, cli::parse_vector(a.unit, a.dim));
  const NouVerdict v = check_norming_unit(space, e, c.seed, c.budget, worker_count());

  Output o;
  o.json = envelope("check-nou", c);
  o.json["space"] = space.describe();
  o.json["anchor"] = "e is a norming order unit when ||2x - lambda e|| <= lambda for some lambda forces "
                     "||2x - ||x|| e|| <= ||x||";
  o.json["result"] = v.to_json();
  o.csv = csv_row({"space", "status", "candidate", "x", "lambda_star", "antecedent_value", "consequent_value",
                   "source", "samples"});
  std::vector<std::string> row{space.describe(), to_string(v.status), csv_vector(e)};
  if (v.witness) {
    const Witness& w = *v.witness;
    for (std::string s : {csv_vector(w.x), format_real(w.lambda_star), format_real(w.antecedent_value),
                          format_real(w.consequent_value), std::string(to_string(w.source))})
      row.push_back(s);
  } else {
    row.insert(row.end(), 5, "");
  }
  row.push_back(v.status == NouStatus::VerifiedStatistical ? std::to_string(v.samples) : "");
  o.csv += csv_row(row);
  o.code = v.status == NouStatus::Falsified ? 1 : 0;
  return o;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string p;
  std::size_t dim = 4;
  std::size_t candidates = 20;
};

Output sweep(const SweepArgs& a, const Common& c) {
  const std::vector<double> grid = cli::parse_grid(a.p);
  if (a.dim == 0) throw std::invalid_argument("--dim must be positive");
  const SweepReport r = p_sweep(grid, a.dim, a.candidates, c.budget, c.seed, worker_count());
  Output o;
  o.json = envelope("sweep", c);
  o.json["report"] = r.to_json();
  o.csv = csv_row({"p", "dim", "candidates", "falsified", "survivors", "evidence"});
  for (const auto& row : r.rows)
    o.csv += csv_row({row.p.to_string(), std::to_string(a.dim), std::to_string(row.candidates.size()),
                      std::to_string(row.falsified()), std::to_string(row.survivors()),
                      to_string(Evidence::ConjectureEvidence)});
  return o;
}

// ---------------------------------------------------------------------------

struct AdjoinArgs {
  std::string v = "r1";
  std::string x = "l2:3";
  bool iterate = false;
  bool pure_states = false;
  std::size_t count = 1000;
};

CheckReport membership_agreement(const std::string& name, const std::string& anchor, const OrderUnitSpace& lhs,
                                 const OrderUnitSpace& rhs, std::uint64_t seed, std::size_t count) {
  CheckReport rep;
  rep.check = name;
  rep.anchor = anchor;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    VectorN z = i % 2 == 0 ? sample_cone_point(lhs, rng) : random_unit_vector(lhs.space(), rng);
    z += random_unit_vector(lhs.space(), rng) * rng.uniform(0.0, 0.05);
    const auto a = cone_membership(lhs, z), b = cone_membership(rhs, z);
    rep.record(a.inside == b.inside, std::abs(a.margin - b.margin));
  }
  return rep;
}

/// Periphery by both definitions at the central element, at generated
/// semi-peripheral points and at uniform points.
CheckReport periphery_spot_checks(const AdjoinedOUS& a, std::uint64_t seed, std::size_t count, Json& samples) {
  CheckReport rep;
  rep.check = "periphery-definitions";
  rep.anchor = "(u, x) is peripheral iff u is semi-peripheral and ||u|| + ||x|| = 1";
  Rng rng(seed);
  const VectorN e = a.v->unit();
  std::vector<VectorN> peripheral_v;
  if (std::holds_alternative<NaturalLinfSign>(a.v->cone())) {
    // 0/1 vectors other than 0 and e.
    const std::size_t n = a.v_dim();
    for (std::size_t mask = 1; n < 20 && mask + 1 < (std::size_t{1} << n); ++mask) {
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = (mask >> i & 1) ? e[i] : 0.0;
      peripheral_v.emplace_back(std::move(w));
    }
  }
  auto probe = [&](const VectorN& u, const VectorN& x) {
    const PeripheryVerdict pv = canopy_periphery_membership(a, u, x);
    rep.record(pv.agree());
    if (samples.size() < 8) samples.push_back(Json{{"u", to_json(u)}, {"x", to_json(x)}, {"verdict", pv.to_json()}});
  };
  for (std::size_t i = 0; i < count; ++i) {
    const VectorN dir = random_unit_vector(*a.x, rng);
    if (i % 2 == 0) {
      VectorN u = 0.5 * e;
      if (!peripheral_v.empty() && i % 4 == 0)
        u = semi_peripheral_generate(*a.v, peripheral_v[rng.index(peripheral_v.size())], rng.uniform());
      probe(u, dir * (1.0 - norm(a.v->space(), u)));
    } else {
      probe(random_unit_vector(a.v->space(), rng) * rng.uniform(0.0, 1.0), dir * rng.uniform(0.0, 1.0));
    }
  }
  return rep;
}

Output adjoin(const AdjoinArgs& args, const Common& c) {
  const OusPtr v = cli::parse_v_family(args.v);
  const SpaceDesc x = cli::parse_x_family(args.x);
  if (args.iterate && !(v->dim() == 1 && std::holds_alternative<NaturalLinfSign>(v->cone()) && x.is_lp() &&
                        x.exponent().is_one()))
    throw std::invalid_argument("--iterate needs --v r1 and --x l1:m");

  const AdjoinedOUS a = adjoin_order_unit(v, x);
  const OrderUnitSpace& comp = *a.composite;
  std::vector<CheckReport> checks;
  Output o;
  o.json = envelope("adjoin", c);
  o.json["v"] = v->provenance();
  o.json["x"] = x.describe();
  o.json["composite"] = comp.provenance();
  o.json["count"] = args.count;

  checks.push_back(order_norm_equals_l1_check(a, c.seed, args.count, 1e-6));
  checks.push_back(archimedean_sampled(comp, c.seed + 1, args.count));
  checks.push_back(properness_probe(comp, c.seed + 2, args.count));
  Json periphery_samples = Json::array();
  checks.push_back(periphery_spot_checks(a, c.seed + 3, args.count, periphery_samples));

  if (v->dim() == 1 && x.is_lp() && x.exponent().is_two())
    checks.push_back(membership_agreement("spin-factor", "the adjoined cone is the Lorentz cone t >= ||x||_2", comp,
                                          *lorentz(x.dim()), c.seed + 4, 10 * args.count));
  if (args.iterate) {
    const AdjoinedOUS it = iterate_adjoin_l1(x.dim());
    const auto ice = l1_ice(x.dim() + 1);
    checks.push_back(membership_agreement("iterate-vs-single", "adjoining R one step at a time gives the same cone",
                                          *it.composite, comp, c.seed + 5, 10 * args.count));
    checks.push_back(membership_agreement("iterate-vs-ice", "iterated adjoining of R gives the l_1 ice-cream cone",
                                          *it.composite, *ice, c.seed + 6, 10 * args.count));
  }

  bool states_supported = x.is_lp();
  if (states_supported) {
    try {
      state_space_of(*v);
    } catch (const std::invalid_argument&) {
      states_supported = false;
    }
  }
  if (states_supported) {
    checks.push_back(dual_cone_check(a, c.seed + 7, args.count));
    checks.push_back(state_space_product_check(a, c.seed + 8, args.count));
  }
  if (args.pure_states) {
    const PureStatesReport ps = pure_states_product_check(a);  // throws for non-polyhedral families
    o.json["pure_states"] = ps.to_json();
    if (!ps.passed()) o.code = 1;
  }

  Json arr = Json::array();
  o.csv = csv_row({"check", "passed", "trials", "failures", "flagged", "max_error", "evidence"});
  for (const auto& r : checks) {
    arr.push_back(r.to_json());
    o.csv += csv_row({r.check, r.passed() ? "true" : "false", std::to_string(r.trials), std::to_string(r.failures),
                      std::to_string(r.flagged), format_real(r.max_error), to_string(r.evidence)});
    if (!r.passed()) o.code = 1;
  }
  if (o.json.contains("pure_states")) {
    const Json& ps = o.json["pure_states"];
    o.csv += csv_row({"pure-states", ps["sets_equal"].get<bool>() && ps["product_are_states"].get<bool>() ? "true" : "false",
                      std::to_string(ps["enumerated_size"].get<std::size_t>()), "", "", "", to_string(Evidence::Exact)});
  }
  o.json["checks"] = std::move(arr);
  o.json["periphery_samples"] = std::move(periphery_samples);
  o.json["passed"] = o.code == 0;
  return o;
}

// ---------------------------------------------------------------------------

struct OrderNormArgs {
  std::string p = "1";
  std::size_t dim = 4;
  std::string unit = "e1";
  std::vector<std::string> x;
  std::string x_file;
  double tol = 1e-6;
};

Output order_norm(const OrderNormArgs& a, const Common& c) {
  if (a.dim == 0) throw std::invalid_argument("--dim must be positive");
  if (!(a.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  const SpaceDesc space = SpaceDesc::lp(a.dim, cli::parse_exponent(a.p));
  const VectorN e = normalized_unit(space, cli::parse_vector(a.unit, a.dim));
  const NouVerdict v = check_norming_unit(space, e, c.seed, c.budget, worker_count());
  if (v.status == NouStatus::Falsified)
    throw std::invalid_argument("--unit is not a norming order unit of " + space.describe());

  std::vector<VectorN> queries;
  for (const auto& s : a.x) queries.push_back(cli::parse_vector(s, a.dim));
  if (!a.x_file.empty()) {
    std::ifstream in(a.x_file);
    if (!in) throw std::invalid_argument("cannot read --x-file '" + a.x_file + "'");
    std::string line;
    while (std::getline(in, line))
      if (!cli::trim(line).empty() && cli::trim(line)[0] != '#') queries.push_back(cli::parse_vector(line, a.dim));
  }

  const OusPtr ous = from_norming_unit(space, e);
  Output o;
  o.json = envelope("order-norm", c);
  o.json["space"] = space.describe();
  o.json["unit"] = to_json(e);
  o.json["unit_status"] = to_string(v.status);
  o.json["tol"] = format_real(a.tol);
  o.json["anchor"] = "a norming order unit recovers the norm as the order-unit norm of its cone";
  Json rows = Json::array();
  o.csv = csv_row({"x", "order_unit_norm", "ambient_norm", "difference", "within_tol"});
  for (const auto& q : queries) {
    const double on = order_unit_norm(*ous, q, std::min(kOrderNormTol, a.tol * 0.01));
    const double an = norm(space, q);
    const double d = std::abs(on - an);
    const bool ok = d <= a.tol;
    if (!ok) o.code = 1;
    rows.push_back(Json{{"x", to_json(q)},
                        {"order_unit_norm", format_real(on)},
                        {"ambient_norm", format_real(an)},
                        {"difference", format_real(d)},
                        {"within_tol", ok}});
    o.csv += csv_row({csv_vector(q), format_real(on), format_real(an), format_real(d), ok ? "true" : "false"});
  }
  o.json["results"] = std::move(rows);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norming order units in finite-dimensional normed spaces"};
  app.set_version_flag("--version", std::string(oul::kVersion));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
    sub->add_option("--budget", common.budget, "random search budget")->capture_default_str();
    sub->add_option("--out", common.out, "output file (default stdout)");
    sub->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };

  CheckNouArgs nou;
  auto* c_nou = app.add_subcommand("check-nou", "classify a candidate norming order unit of l_p^n");
  c_nou->add_option("--p", nou.p, "exponent (number >= 1 or inf)")->required();
  c_nou->add_option("--dim", nou.dim, "dimension")->required();
  c_nou->add_option("--unit", nou.unit, "candidate: comma list, e<k> or sign:+-...")->required();
  add_common(c_nou);

  SweepArgs sw;
  auto* c_sweep = app.add_subcommand("sweep", "search for norming order units over a grid of exponents");
  c_sweep->add_option("--p", sw.p, "comma list of exponents in (1, inf)")->required();
  c_sweep->add_option("--dim", sw.dim, "dimension")->capture_default_str();
  c_sweep->add_option("--candidates", sw.candidates, "random candidates per exponent")->capture_default_str();
  add_common(c_sweep);

  AdjoinArgs adj;
  auto* c_adj = app.add_subcommand("adjoin", "adjoin a normed space to an order unit space and check it");
  c_adj->add_option("--v", adj.v, "r1, linf:n or l1ice:n[:k]")->capture_default_str();
  c_adj->add_option("--x", adj.x, "r, l1:m, l2:m, linf:m or lp:p:m")->capture_default_str();
  c_adj->add_flag("--iterate", adj.iterate, "compare with adjoining R one step at a time");
  c_adj->add_flag("--pure-states", adj.pure_states, "enumerate the pure states (polyhedral families)");
  c_adj->add_option("--count", adj.count, "samples per check")->capture_default_str();
  add_common(c_adj);

  OrderNormArgs on;
  auto* c_on = app.add_subcommand("order-norm", "order-unit norm of query vectors against the ambient norm");
  c_on->add_option("--p", on.p, "exponent (number >= 1 or inf)")->capture_default_str();
  c_on->add_option("--dim", on.dim, "dimension")->capture_default_str();
  c_on->add_option("--unit", on.unit, "norming order unit")->capture_default_str();
  c_on->add_option("--x", on.x, "query vector (repeatable)");
  c_on->add_option("--x-file", on.x_file, "file with one query vector per line");
  c_on->add_option("--tol", on.tol, "allowed |order-unit norm - norm|")->capture_default_str();
  add_common(c_on);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Output out;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*c_nou) out = check_nou(nou, common);
    if (*c_sweep) out = sweep(sw, common);
    if (*c_adj) out = adjoin(adj, common);
    if (*c_on) out = order_norm(on, common);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.json["exit_code"] = out.code;
  // Wall-clock lives in its own key; everything else is deterministic.
  out.json["timing"] = Json{{"wall_seconds", seconds}, {"threads", worker_count()}};

  const std::string text = common.format == "csv" ? out.csv : out.json.dump(2) + "\n";
  if (common.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(common.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << common.out << "'\n";
      return 2;
    }
    f << text;
  }
  return out.code;
}

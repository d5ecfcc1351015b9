#ifndef ORLICZ_PIPELINES_HPP
#define ORLICZ_PIPELINES_HPP

// Command pipelines behind the CLI: resolve a flat config into catalog
// objects, run one verification workflow, and return a Report. Config
// mistakes throw ConfigError (exit 2); verification outcomes are checks
// in the report (exit 1 when one fails), never crashes.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "orlicz/catalog.hpp"
#include "orlicz/circle.hpp"
#include "orlicz/config.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/harmonic.hpp"
#include "orlicz/leveltree.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/report.hpp"

namespace orlicz {

namespace detail {

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

// driver-level keys accepted by every command
inline void add_common_keys(std::set<std::string>& keys) {
  keys.insert({"config", "out", "format", "expect-fail"});
}

inline void validate_keys(const Config& cfg, std::set<std::string> known) {
  add_common_keys(known);
  for (const auto& [key, value] : cfg.entries())
    if (!known.count(key)) throw ConfigError(key, "unknown key for this command");
}

inline double seeded_uniform(std::mt19937_64& eng) {
  return std::ldexp(static_cast<double>(eng() >> 11), -53);
}

}  // namespace detail

inline const std::vector<std::string>& family_catalog() {
  static const std::vector<std::string> names{"const-exp",       "var-exp-smooth",
                                              "var-exp-step",    "var-exp-floored",
                                              "log-type",        "exp-family",
                                              "theta-composition"};
  return names;
}

inline const std::vector<std::string>& boundary_catalog() {
  static const std::vector<std::string> names{"constant", "step", "random-step", "trig-poly"};
  return names;
}

inline const std::vector<std::string>& evaluator_catalog() {
  static const std::vector<std::string> names{"pole-power", "blaschke", "singular-inner",
                                              "inverse-singular-inner", "outer"};
  return names;
}

inline std::set<std::string> family_keys() {
  return {"family", "p", "p-lo", "p-hi", "s", "q", "env-cells"};
}

inline ModularFamily family_from(const Config& cfg) {
  std::string name = cfg.get_string("family", "const-exp");
  const auto& names = family_catalog();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ConfigError("family",
                      "unknown family '" + name + "'; available: " + detail::join_names(names));
  FamilyParams par;
  par.p = cfg.positive("p", par.p);
  par.p_lo = cfg.positive("p-lo", par.p_lo);
  par.p_hi = cfg.positive("p-hi", par.p_hi);
  par.s = cfg.positive("s", par.s);
  par.q = cfg.positive("q", par.q);
  par.env_cells = cfg.get_int("env-cells", par.env_cells);
  if (par.env_cells < 2) throw ConfigError("env-cells", "must be at least 2");
  if (name == "theta-composition" && !(par.q < par.p_lo))
    throw ConfigError("q", "theta-composition needs q < p-lo");
  return make_family(name, par);
}

/// Piecewise-constant function with `blocks` seeded breakpoints and
/// seeded block values in [0, scale).
inline BoundaryFunction random_step_values(const CircleGrid& g, unsigned long long seed,
                                           int blocks, double scale) {
  std::mt19937_64 eng(seed);
  int n = g.n_cells();
  std::vector<int> cuts;
  for (int b = 0; b < blocks; ++b)
    cuts.push_back(static_cast<int>(detail::seeded_uniform(eng) * n) % n);
  cuts.push_back(0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> levels(cuts.size());
  for (auto& l : levels) l = detail::seeded_uniform(eng) * scale;
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto it = std::upper_bound(cuts.begin(), cuts.end(), j);
    vals[static_cast<std::size_t>(j)] = levels[static_cast<std::size_t>(it - cuts.begin() - 1)];
  }
  return BoundaryFunction(g, vals);
}

inline std::set<std::string> boundary_function_keys() {
  return {"function", "value",  "step-start", "step-length", "step-height",
          "step-base", "seed",  "blocks",     "scale",       "degree",
          "offset"};
}

inline BoundaryFunction boundary_function_from(const Config& cfg, const CircleGrid& g) {
  std::string name = cfg.get_string("function", "random-step");
  double offset = cfg.get_double("offset", 0.0);
  std::vector<double> vals(static_cast<std::size_t>(g.n_cells()));
  if (name == "constant") {
    double v = cfg.get_double("value", 1.0);
    std::fill(vals.begin(), vals.end(), v);
  } else if (name == "step") {
    double start = cfg.get_double("step-start", 0.0);
    double length = cfg.positive("step-length", two_pi / 2.0);
    if (length > two_pi) throw ConfigError("step-length", "must be at most 2 pi");
    double height = cfg.get_double("step-height", 1.0);
    double base = cfg.get_double("step-base", 0.0);
    Arc arc(start, length);
    for (int j = 0; j < g.n_cells(); ++j)
      vals[static_cast<std::size_t>(j)] = base + (arc.contains(g.midpoint(j)) ? height : 0.0);
  } else if (name == "random-step") {
    int blocks = cfg.get_int("blocks", 16);
    if (blocks < 1) throw ConfigError("blocks", "must be at least 1");
    BoundaryFunction f = random_step_values(
        g, static_cast<unsigned long long>(cfg.get_int("seed", 1)), blocks,
        cfg.positive("scale", 1.0));
    vals = f.values();
  } else if (name == "trig-poly") {
    int degree = cfg.get_int("degree", 8);
    if (degree < 1) throw ConfigError("degree", "must be at least 1");
    double scale = cfg.positive("scale", 1.0);
    std::mt19937_64 eng(static_cast<unsigned long long>(cfg.get_int("seed", 1)));
    std::vector<double> a(static_cast<std::size_t>(degree)), b(static_cast<std::size_t>(degree));
    for (int k = 0; k < degree; ++k) {
      a[static_cast<std::size_t>(k)] = 2.0 * detail::seeded_uniform(eng) - 1.0;
      b[static_cast<std::size_t>(k)] = 2.0 * detail::seeded_uniform(eng) - 1.0;
    }
    for (int j = 0; j < g.n_cells(); ++j) {
      double t = g.midpoint(j), acc = 0.0;
      for (int k = 1; k <= degree; ++k)
        acc += a[static_cast<std::size_t>(k - 1)] * std::cos(k * t) +
               b[static_cast<std::size_t>(k - 1)] * std::sin(k * t);
      vals[static_cast<std::size_t>(j)] = scale * acc;
    }
  } else {
    throw ConfigError("function", "unknown boundary function '" + name +
                                      "'; available: " + detail::join_names(boundary_catalog()));
  }
  if (offset != 0.0)
    for (auto& v : vals) v += offset;
  return BoundaryFunction(g, vals);
}

inline std::set<std::string> evaluator_keys() {
  return {"function", "pole-radius", "pole-angle", "power", "zeros",
          "atoms",    "seed",        "blocks",     "scale"};
}

inline DiskEvaluator evaluator_from(const Config& cfg, const CircleGrid& g) {
  std::string name = cfg.get_string("function", "pole-power");
  if (name == "pole-power") {
    double radius = cfg.get_double("pole-radius", 0.9);
    if (!(radius >= 0.0) || !(radius <= 1.0))
      throw ConfigError("pole-radius", "must lie in [0, 1]");
    double angle = cfg.get_double("pole-angle", 0.0);
    return pole_power(std::polar(radius, angle), cfg.positive("power", 0.25));
  }
  if (name == "blaschke") {
    auto pairs = cfg.get_pairs("zeros", {{0.5, 0.0}});
    std::vector<Cx> zeros;
    for (auto [re, im] : pairs) zeros.push_back({re, im});
    for (const Cx& z : zeros)
      if (!(std::abs(z) < 1.0)) throw ConfigError("zeros", "zeros must satisfy |a| < 1");
    return blaschke(zeros);
  }
  if (name == "singular-inner" || name == "inverse-singular-inner") {
    auto pairs = cfg.get_pairs("atoms", {{0.0, 1.0}});
    std::vector<Atom> atoms;
    for (auto [angle, mass] : pairs) {
      if (!(mass >= 0.0)) throw ConfigError("atoms", "masses must be nonnegative");
      atoms.push_back({angle, mass});
    }
    return name == "singular-inner" ? singular_inner(atoms) : inverse_singular_inner(atoms);
  }
  if (name == "outer") {
    int blocks = cfg.get_int("blocks", 16);
    if (blocks < 1) throw ConfigError("blocks", "must be at least 1");
    double scale = cfg.positive("scale", 1.0);
    BoundaryFunction l = random_step_values(
        g, static_cast<unsigned long long>(cfg.get_int("seed", 1)), blocks, 2.0 * scale);
    std::vector<double> centered(l.values());
    for (auto& v : centered) v -= scale;  // signed log-modulus in [-scale, scale)
    return outer(BoundaryFunction(g, centered));
  }
  throw ConfigError("function", "unknown analytic function '" + name +
                                    "'; available: " + detail::join_names(evaluator_catalog()));
}

// --- pipelines ----------------------------------------------------------

inline void echo_entries(const Config& cfg, Report& rep) {
  rep.config = cfg.entries();
}

inline Report run_verify_family(const Config& cfg) {
  std::set<std::string> known = family_keys();
  known.insert("mass-bound");
  detail::validate_keys(cfg, known);

  ModularFamily fam = family_from(cfg);
  double B = cfg.positive("mass-bound", 1.0);
  DoublingReport d = doubling_constant(fam);
  SciReport s = sci_constant(fam, B);

  Report rep;
  rep.command = "verify-family";
  echo_entries(cfg, rep);
  rep.config["family"] = cfg.get_string("family", "const-exp");
  rep.columns = {"series", "index", "value"};
  for (std::size_t i = 0; i < d.profile.size(); ++i)
    rep.rows.push_back({"doubling-profile", format_double(static_cast<double>(i)),
                        format_double(d.profile[i])});
  for (std::size_t i = 0; i < s.per_scale.size(); ++i)
    rep.rows.push_back({"sci-scale-max", format_double(static_cast<double>(i)),
                        format_double(s.per_scale[i])});
  for (std::size_t i = 0; i < s.cumulative.size(); ++i)
    rep.rows.push_back({"sci-cumulative", format_double(static_cast<double>(i)),
                        format_double(s.cumulative[i])});

  rep.add_constant("doubling", d.value);
  rep.add_constant("doubling-growth-last", d.growth_last);
  rep.add_constant("doubling-divergent", d.divergent ? 1.0 : 0.0);
  rep.add_constant("sci", s.value);
  rep.add_constant("sci-growth-last", s.growth_last);
  rep.add_constant("sci-stable", s.stable ? 1.0 : 0.0);
  rep.add_constant("sci-divergent", s.divergent ? 1.0 : 0.0);
  rep.add_constant("mass-bound", B);
  rep.add_check("doubling-finite", !d.divergent);
  rep.add_check("sci-bounded", !s.divergent);
  return rep;
}

inline Report run_tree(const Config& cfg) {
  std::set<std::string> known = family_keys();
  for (const auto& k : boundary_function_keys()) known.insert(k);
  known.insert({"grid", "h", "m0", "max-level", "auto-extend"});
  detail::validate_keys(cfg, known);

  CircleGrid g(cfg.power_of_two("grid", 256));
  BoundaryFunction f = boundary_function_from(cfg, g);
  for (int j = 0; j < g.n_cells(); ++j)
    if (f.value(j) < 0.0)
      throw ConfigError("function", "tree needs a nonnegative function; use offset to lift it");
  ModularFamily fam = family_from(cfg);
  double h = cfg.positive("h", 4.0);
  if (!(h > 1.0)) throw ConfigError("h", "must exceed 1");
  int m0 = cfg.get_int("m0", 0);
  BuildOptions opt;
  opt.auto_extend = cfg.get_bool("auto-extend", true);
  opt.max_level = cfg.get_int("max-level", opt.max_level);

  LevelTree tree = build_tree(f, fam, h, m0, opt);
  TreeReport tr = lemma_sums(tree, fam, f);

  Report rep;
  rep.command = "tree";
  echo_entries(cfg, rep);
  rep.config["grid"] = format_double(g.n_cells());
  rep.config["h"] = format_double(h);
  rep.columns = {"node", "level", "first", "arc-start", "arc-length", "lambda", "rc-measure"};
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& nd = tree.nodes[i];
    for (int n = nd.first; n <= nd.lv; ++n) {
      double lam = n > tree.m0 ? tree.lambda(static_cast<int>(i), n)
                               : std::numeric_limits<double>::quiet_NaN();
      rep.rows.push_back({format_double(static_cast<double>(i)),
                          format_double(static_cast<double>(n)),
                          format_double(static_cast<double>(nd.first)),
                          format_double(nd.arc.start), format_double(nd.arc.length),
                          format_double(lam), format_double(nd.rc_measure)});
    }
  }

  rep.add_constant("integral", tr.integral);
  rep.add_constant("sum-rc", tr.sum_rc);
  rep.add_constant("sum-full", tr.sum_full);
  rep.add_constant("ratio-small", tr.r_small);
  rep.add_constant("ratio-big", tr.r_big);
  rep.add_constant("lower-small", tr.lower_small);
  rep.add_constant("lower-big", tr.lower_big);
  rep.add_constant("c-hat", tr.c_hat);
  rep.add_constant("tail-rc", tr.tail_rc);
  rep.add_constant("tail-full-bound", tr.tail_full_bound);
  rep.add_constant("m0-effective", static_cast<double>(tree.m0));
  rep.add_constant("node-count", static_cast<double>(tree.nodes.size()));
  rep.add_constant("violation-count", static_cast<double>(tr.violations.size()));
  rep.add_constant("degenerate", tr.degenerate ? 1.0 : 0.0);
  rep.add_check("sandwich-small", tr.small_ok);
  rep.add_check("sandwich-big", tr.big_ok);
  rep.add_check("pointwise-clean", tr.violations.empty());
  rep.add_check("c-hat-bounded", !tr.c_hat_unbounded);
  return rep;
}

namespace detail {

inline BoundaryFunction maximal_pick(const std::string& which, const std::string& key,
                                     const DiskEvaluator& f, const CircleGrid& g,
                                     const ConeSpec& cone) {
  auto at = [&f](double r, double t) { return f.eval(std::polar(r, t)); };
  if (which == "u-star")
    return cone_max(g, cone, [at](double r, double t) { return std::abs(at(r, t).real()); });
  if (which == "v-star")
    return cone_max(g, cone, [at](double r, double t) { return std::abs(at(r, t).imag()); });
  if (which == "area")
    return area_integral_sampled(g, cone, [&f](double r, double t) {
      return std::norm(f.derivative(std::polar(r, t)));
    });
  throw ConfigError(key, "unknown maximal functional '" + which +
                             "'; available: u-star, v-star, area");
}

}  // namespace detail

inline Report run_goodlambda(const Config& cfg) {
  std::set<std::string> known = family_keys();
  for (const auto& k : evaluator_keys()) known.insert(k);
  known.insert({"grid", "r-max", "aperture", "pair-f", "pair-g", "beta-list", "gamma-list", "h",
                "delta"});
  detail::validate_keys(cfg, known);

  CircleGrid g(cfg.power_of_two("grid", 512));
  DiskEvaluator ev = evaluator_from(cfg, g);
  ConeSpec cone;
  cone.aperture = cfg.positive("aperture", cone.aperture);
  cone.r_max = cfg.get_double("r-max", cone.r_max);
  if (!(cone.r_max > 0.0) || !(cone.r_max < 1.0)) throw ConfigError("r-max", "must lie in (0, 1)");

  std::string pf = cfg.get_string("pair-f", "u-star");
  std::string pg = cfg.get_string("pair-g", "area");
  BoundaryFunction fpair = detail::maximal_pick(pf, "pair-f", ev, g, cone);
  BoundaryFunction gpair = detail::maximal_pick(pg, "pair-g", ev, g, cone);

  ModularFamily fam = family_from(cfg);
  std::vector<double> betas = cfg.get_list("beta-list", {2.0});
  std::vector<double> gammas = cfg.get_list("gamma-list", {1.0, 0.5, 0.25, 0.125});
  for (double b : betas)
    if (!(b > 0.0)) throw ConfigError("beta-list", "entries must be positive");
  for (double gm : gammas)
    if (!(gm > 0.0)) throw ConfigError("gamma-list", "entries must be positive");
  GoodLambdaParams par;
  par.h = cfg.positive("h", par.h);
  if (!(par.h > 1.0)) throw ConfigError("h", "must exceed 1");
  par.delta = cfg.positive("delta", par.delta);

  Report rep;
  rep.command = "goodlambda";
  echo_entries(cfg, rep);
  rep.config["pair-f"] = pf;
  rep.config["pair-g"] = pg;
  rep.columns = {"beta",     "gamma",    "delta-hat", "c-hat",    "c-prime",
                 "feasibility-lhs", "feasible", "k",         "lhs-norm", "rhs-norm",
                 "k-min-empirical", "pass"};

  bool monotone = true, any_feasible = false, feasible_pass = true;
  for (double beta : betas) {
    std::vector<double> order(gammas);
    std::sort(order.begin(), order.end(), std::greater<double>());
    double prev_delta = std::numeric_limits<double>::infinity();
    for (double gamma : order) {
      par.beta = beta;
      par.gamma = gamma;
      TheoremReport t = theorem_norm_comparison(fpair, gpair, fam, par);
      if (t.gl.delta_hat > prev_delta + 1e-12) monotone = false;
      prev_delta = t.gl.delta_hat;
      if (t.feasible) {
        any_feasible = true;
        feasible_pass = feasible_pass && t.pass;
      }
      rep.rows.push_back({format_double(beta), format_double(gamma),
                          format_double(t.gl.delta_hat), format_double(t.c_hat),
                          format_double(t.c_prime), format_double(t.feasibility_lhs),
                          format_double(t.feasible ? 1.0 : 0.0), format_double(t.K),
                          format_double(t.lhs_norm), format_double(t.rhs_norm),
                          format_double(t.k_min_empirical), format_double(t.pass ? 1.0 : 0.0)});
    }
  }
  rep.add_check("delta-monotone-in-gamma", monotone);
  rep.add_check("feasible-region-reached", any_feasible);
  rep.add_check("feasible-rows-pass", feasible_pass);
  return rep;
}

inline Report run_hardy_report(const Config& cfg) {
  std::set<std::string> known = family_keys();
  for (const auto& k : evaluator_keys()) known.insert(k);
  known.insert({"grid", "r-max", "aperture", "ceiling", "bound", "smirnov-tol"});
  detail::validate_keys(cfg, known);

  CircleGrid g(cfg.power_of_two("grid", 512));
  DiskEvaluator ev = evaluator_from(cfg, g);
  ModularFamily fam = family_from(cfg);
  EquivalenceOptions opt;
  opt.cone.aperture = cfg.positive("aperture", opt.cone.aperture);
  opt.cone.r_max = cfg.get_double("r-max", opt.cone.r_max);
  if (!(opt.cone.r_max > 0.0) || !(opt.cone.r_max < 1.0))
    throw ConfigError("r-max", "must lie in (0, 1)");
  opt.ceiling = cfg.positive("ceiling", opt.ceiling);
  opt.bound = cfg.get_double("bound", opt.bound);

  EquivalenceReport eq = equivalence_report(ev, g, fam, opt);
  PolarSampler mod = [&ev](double r, double t) { return std::abs(ev.eval(std::polar(r, t))); };
  SmirnovReport sm = smirnov_test(mod, g, {}, cfg.positive("smirnov-tol", 0.05));

  Report rep;
  rep.command = "hardy-report";
  echo_entries(cfg, rep);
  rep.config["function"] = cfg.get_string("function", "pole-power");
  rep.columns = {"r", "modular"};
  std::vector<double> slice(static_cast<std::size_t>(g.n_cells()));
  for (double r : geometric_radii(opt.cone.r_max)) {
    for (int j = 0; j < g.n_cells(); ++j)
      slice[static_cast<std::size_t>(j)] = mod(r, g.midpoint(j));
    rep.rows.push_back(
        {format_double(r), format_double(modular(fam, BoundaryFunction(g, slice)))});
  }

  rep.add_constant("rho-hardy", eq.hardy.value);
  rep.add_constant("rho-hardy-argmax-r", eq.hardy.argmax_r);
  rep.add_constant("rho-hardy-last-delta", eq.hardy.last_delta);
  rep.add_constant("rho-f-star", eq.rho_f_star);
  rep.add_constant("rho-u-star", eq.rho_u_star);
  rep.add_constant("rho-v-star", eq.rho_v_star);
  rep.add_constant("rho-area", eq.rho_area);
  rep.add_constant("rho-boundary", eq.rho_boundary);
  rep.add_constant("boundary-sensitivity", eq.boundary_sensitivity);
  rep.add_constant("v-star-finite", eq.v_star_finite ? 1.0 : 0.0);
  rep.add_constant("smirnov-radial", sm.radial_value);
  rep.add_constant("smirnov-boundary", sm.boundary_value);
  rep.add_constant("smirnov-gap", sm.gap);
  rep.add_constant("smirnov-last-delta", sm.last_delta);
  rep.add_check("hardy-finite", eq.hardy.finite);
  rep.add_check("f-star-finite", eq.f_star_finite);
  rep.add_check("u-star-finite", eq.u_star_finite);
  rep.add_check("area-finite", eq.area_finite);
  rep.add_check("boundary-finite", eq.boundary_finite);
  rep.add_check("all-finite", eq.all_finite);
  rep.add_check("input-within-bound", eq.input_within_bound);
  rep.add_check("smirnov-conclusive", sm.conclusive);
  rep.add_check("smirnov", sm.smirnov);
  return rep;
}

inline Report run_command(const std::string& command, const Config& cfg) {
  if (command == "verify-family") return run_verify_family(cfg);
  if (command == "tree") return run_tree(cfg);
  if (command == "goodlambda") return run_goodlambda(cfg);
  if (command == "hardy-report") return run_hardy_report(cfg);
  throw ConfigError("command", "unknown command '" + command +
                                   "'; available: verify-family, tree, goodlambda, hardy-report");
}

}  // namespace orlicz

#endif  // ORLICZ_PIPELINES_HPP

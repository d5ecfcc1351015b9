#ifndef ORLICZ_LEVELTREE_HPP
#define ORLICZ_LEVELTREE_HPP

// Recursive level-set tree over a boundary function: children of a node
// (I, n) are the maximal arcs of {x in I : Phi_{I,+}(f(x)) > h^n}. A node
// re-producing its own arc is recorded as a level range [first, lv] rather
// than a chain of copies. The module verifies the two integral sandwich
// bounds, measures the empirical good-lambda density, and evaluates the
// norm-vs-modified-norm comparison with fully measured constants.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "orlicz/circle.hpp"
#include "orlicz/modular.hpp"

namespace orlicz {

struct TreeNode {
  Arc arc;
  int first = 0;       // first level whose interval family contains this arc
  int lv = 0;          // last (maximal) such level
  int parent = -1;
  std::vector<int> children;
  std::vector<int> cells;     // grid cells of the arc, circular scan order
  std::vector<int> rc_cells;  // cells kept by this node at level lv
  std::vector<double> lambdas;  // lambda at memberships max(first, m0+1)..lv
  double arc_measure = 0.0;
  double rc_measure = 0.0;
};

struct LevelTree {
  CircleGrid grid;
  std::vector<TreeNode> nodes;  // nodes[0] is the root (full circle)
  double h = 0.0;
  int m0_requested = 0;
  int m0 = 0;        // after automatic downward extension
  int max_lv = 0;
  bool degenerate = false;  // modular values identically zero

  /// lambda at membership level n of the given node.
  double lambda(int node, int n) const {
    const TreeNode& nd = nodes[static_cast<std::size_t>(node)];
    int lam_first = std::max(nd.first, m0 + 1);
    if (n < lam_first || n > nd.lv)
      throw std::out_of_range("LevelTree::lambda: level outside membership range");
    return nd.lambdas[static_cast<std::size_t>(n - lam_first)];
  }
};

struct BuildOptions {
  bool auto_extend = true;  // lower m0 until the threshold undercuts min Phi
  int max_level = 200;
};

namespace detail {

struct MaskRun {
  Arc arc;
  std::vector<int> cells;
};

/// Maximal runs of masked cells, with arc geometry from boundary
/// differences so measures stay exact. `cells` must be in circular scan
/// order; a wrapping run is merged only when the cells cover a full circle.
inline std::vector<MaskRun> runs_from_mask(const CircleGrid& g, const std::vector<int>& cells,
                                           const std::vector<char>& mask, bool full_circle) {
  int n = g.n_cells();
  std::vector<std::pair<int, int>> idx_runs;  // [begin, end) positions in `cells`
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (!mask[k]) continue;
    if (!idx_runs.empty() && idx_runs.back().second == static_cast<int>(k) &&
        (cells[k - 1] + 1) % n == cells[k])
      idx_runs.back().second++;
    else
      idx_runs.emplace_back(static_cast<int>(k), static_cast<int>(k) + 1);
  }
  if (idx_runs.empty()) return {};
  bool merge_wrap = false;
  if (full_circle && idx_runs.size() >= 2) {
    int last_cell = cells[static_cast<std::size_t>(idx_runs.back().second) - 1];
    int first_cell = cells[static_cast<std::size_t>(idx_runs.front().first)];
    if ((last_cell + 1) % n == first_cell) merge_wrap = true;
  }
  std::vector<MaskRun> out;
  std::size_t count = idx_runs.size() - (merge_wrap ? 1 : 0);
  for (std::size_t r = 0; r < count; ++r) {
    auto [b, e] = idx_runs[r];
    MaskRun run;
    for (int k = b; k < e; ++k) run.cells.push_back(cells[static_cast<std::size_t>(k)]);
    if (merge_wrap && r == 0) {
      auto [b2, e2] = idx_runs.back();
      std::vector<int> pre;
      for (int k = b2; k < e2; ++k) pre.push_back(cells[static_cast<std::size_t>(k)]);
      pre.insert(pre.end(), run.cells.begin(), run.cells.end());
      run.cells = std::move(pre);
    }
    int a = run.cells.front(), z = run.cells.back();
    double s = g.boundary(a);
    double len = (a <= z) ? g.boundary(z + 1) - s : (two_pi - s) + g.boundary(z + 1);
    run.arc = Arc(s, len);
    out.push_back(std::move(run));
  }
  return out;
}

}  // namespace detail

/// Builds the level tree of f under the family's upper envelopes. With
/// auto_extend the starting level drops until h^m0 lies strictly below the
/// smallest positive modular value, which is what makes the lower sandwich
/// bound meaningful down to the root.
inline LevelTree build_tree(const BoundaryFunction& f, const ModularFamily& fam, double h,
                            int m0 = 0, const BuildOptions& opt = {}) {
  if (!(h > 1)) throw std::invalid_argument("build_tree: h must exceed 1");
  const CircleGrid& g = f.grid();
  int n = g.n_cells();
  for (int j = 0; j < n; ++j)
    if (f.value(j) < 0) throw std::invalid_argument("build_tree: f must be nonnegative");

  LevelTree tree{g, {}, h, m0, m0, m0, false};
  std::vector<int> all_cells(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) all_cells[static_cast<std::size_t>(j)] = j;

  ScalarFn env_top = fam.envelope_fn(Arc(), Env::upper);
  double minpos = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double v = env_top(f.value(j));
    if (!std::isfinite(v))
      throw std::invalid_argument("build_tree: modular envelope not finite on f");
    if (v > 0.0) minpos = std::min(minpos, v);
  }

  TreeNode root;
  root.arc = Arc();
  root.cells = all_cells;
  root.arc_measure = two_pi;
  if (std::isinf(minpos)) {
    tree.degenerate = true;
    root.first = root.lv = m0;
    root.rc_cells = all_cells;
    root.rc_measure = two_pi;
    tree.nodes.push_back(std::move(root));
    return tree;
  }
  int m0_eff = m0;
  if (opt.auto_extend) {
    int floor_lvl =
        static_cast<int>(std::floor(std::log(minpos) / std::log(h) - 1e-9)) - 1;
    m0_eff = std::min(m0, floor_lvl);
  }
  tree.m0 = m0_eff;
  tree.max_lv = m0_eff;
  root.first = m0_eff;
  tree.nodes.push_back(std::move(root));

  std::vector<int> work{0};
  while (!work.empty()) {
    int idx = work.back();
    work.pop_back();
    std::vector<int> cells = tree.nodes[static_cast<std::size_t>(idx)].cells;
    Arc arc = tree.nodes[static_cast<std::size_t>(idx)].arc;
    ScalarFn env = fam.envelope_fn(arc, Env::upper);
    std::vector<double> vals(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) vals[k] = env(f.value(cells[k]));

    int lvl = tree.nodes[static_cast<std::size_t>(idx)].first;
    std::vector<char> mask(cells.size());
    while (true) {
      if (lvl - m0_eff > opt.max_level)
        throw std::runtime_error("build_tree: max_level reached with a nonempty frontier");
      double threshold = std::pow(h, lvl);
      std::size_t qualified = 0;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        mask[k] = vals[k] > threshold ? 1 : 0;
        qualified += mask[k];
      }
      if (qualified == cells.size()) {
        ++lvl;  // the whole arc repeats one level down
        continue;
      }
      tree.nodes[static_cast<std::size_t>(idx)].lv = lvl;
      tree.max_lv = std::max(tree.max_lv, lvl);
      auto runs = detail::runs_from_mask(g, cells, mask, arc.full());
      auto& rc = tree.nodes[static_cast<std::size_t>(idx)].rc_cells;
      double rc_m = 0.0;
      for (std::size_t k = 0; k < cells.size(); ++k)
        if (!mask[k]) {
          rc.push_back(cells[k]);
          rc_m += g.cell_measure(cells[k]);
        }
      tree.nodes[static_cast<std::size_t>(idx)].rc_measure = rc_m;
      for (auto& run : runs) {
        TreeNode child;
        child.arc = run.arc;
        child.cells = std::move(run.cells);
        child.first = lvl + 1;
        child.parent = idx;
        child.arc_measure = measure(child.arc);
        int child_idx = static_cast<int>(tree.nodes.size());
        tree.nodes[static_cast<std::size_t>(idx)].children.push_back(child_idx);
        tree.nodes.push_back(std::move(child));
        work.push_back(child_idx);
      }
      break;
    }
  }

  // thresholds lambda = inverse of the predecessor's upper envelope; the
  // predecessor of (I, n) is pr(I) for the first membership and I itself
  // for the repeats
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    TreeNode& nd = tree.nodes[i];
    int lam_first = std::max(nd.first, m0_eff + 1);
    for (int lvl = lam_first; lvl <= nd.lv; ++lvl) {
      const Arc& pr_arc =
          (lvl == nd.first && nd.parent >= 0) ? tree.nodes[static_cast<std::size_t>(nd.parent)].arc
                                              : nd.arc;
      ScalarFn env = fam.envelope_fn(pr_arc, Env::upper);
      double y = std::pow(h, lvl - 1);
      double t_max = 1.0;
      for (int c : nd.cells) t_max = std::max(t_max, 2.0 * f.value(c));
      while (env(t_max) < y && t_max < 1e30) t_max *= 2.0;
      nd.lambdas.push_back(generalized_inverse(env, y, t_max));
    }
  }
  return tree;
}

// --- sandwich verification ----------------------------------------------

struct LevelTally {
  int level = 0;
  int members = 0;         // intervals whose membership range covers the level
  double arc_measure = 0.0;
  double rc_measure = 0.0;  // only intervals ending at this level contribute
};

struct PointwiseViolation {
  int cell = -1;
  int level = 0;
  double value = 0.0, lower = 0.0, upper = 0.0;
};

struct TreeReport {
  double integral = 0.0;
  double sum_rc = 0.0;    // sum over levels n > m0 of h^n m(rc(I))
  double sum_full = 0.0;  // sum over levels n > m0 of h^n m(I)
  double r_small = std::numeric_limits<double>::quiet_NaN();  // integral / sum_rc
  double r_big = std::numeric_limits<double>::quiet_NaN();    // integral / sum_full
  double lower_small = 0.0;  // 1 / (C h)
  double lower_big = 0.0;    // (h-1) / (C h^2)
  bool small_ok = false;
  bool big_ok = false;
  double c_hat = 1.0;  // realized stability constant over tree memberships
  bool c_hat_unbounded = false;
  double tail_rc = 0.0;          // root-level rc contribution at m0 itself
  double tail_full_bound = 0.0;  // bound on the discarded n <= m0 part
  std::vector<LevelTally> levels;
  std::vector<PointwiseViolation> violations;
  bool degenerate = false;
};

/// Evaluates both sandwich sums against the modular integral. The
/// stability constant c_hat is measured on the tree itself: the largest
/// h^{n-1} / Phi_{pr,-}(lambda) over memberships, exactly the factor the
/// lemma's pointwise lower bound consumes. Comparisons carry a 1e-9
/// relative slack for rounding in the envelope/power chain.
inline TreeReport lemma_sums(const LevelTree& tree, const ModularFamily& fam,
                             const BoundaryFunction& f) {
  const CircleGrid& g = tree.grid;
  double h = tree.h;
  int m0 = tree.m0;
  TreeReport rep;
  rep.degenerate = tree.degenerate;
  rep.integral = modular(fam, f);
  rep.tail_full_bound = std::pow(h, m0 + 1) * two_pi / (h - 1.0);

  int min_lv = m0, max_lv = tree.max_lv;
  rep.levels.resize(static_cast<std::size_t>(max_lv - min_lv + 1));
  for (int l = min_lv; l <= max_lv; ++l)
    rep.levels[static_cast<std::size_t>(l - min_lv)].level = l;

  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& nd = tree.nodes[i];
    if (nd.lv > m0)
      rep.sum_rc += std::pow(h, nd.lv) * nd.rc_measure;
    else
      rep.tail_rc += std::pow(h, nd.lv) * nd.rc_measure;
    for (int lvl = std::max(nd.first, m0 + 1); lvl <= nd.lv; ++lvl)
      rep.sum_full += std::pow(h, lvl) * nd.arc_measure;
    for (int lvl = nd.first; lvl <= nd.lv; ++lvl) {
      auto& tally = rep.levels[static_cast<std::size_t>(lvl - min_lv)];
      tally.members += 1;
      tally.arc_measure += nd.arc_measure;
      if (lvl == nd.lv) tally.rc_measure += nd.rc_measure;
    }
  }

  // realized stability constant over memberships
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& nd = tree.nodes[i];
    int lam_first = std::max(nd.first, m0 + 1);
    for (int lvl = lam_first; lvl <= nd.lv; ++lvl) {
      const Arc& pr_arc =
          (lvl == nd.first && nd.parent >= 0) ? tree.nodes[static_cast<std::size_t>(nd.parent)].arc
                                              : nd.arc;
      double lam = tree.lambda(static_cast<int>(i), lvl);
      double denom = fam.envelope(pr_arc, lam, Env::lower);
      double y = std::pow(h, lvl - 1);
      if (denom <= 0.0) {
        rep.c_hat_unbounded = true;
        continue;
      }
      rep.c_hat = std::max(rep.c_hat, y / denom);
    }
  }

  rep.lower_small = rep.c_hat_unbounded ? 0.0 : 1.0 / (rep.c_hat * h);
  rep.lower_big = rep.c_hat_unbounded ? 0.0 : (h - 1.0) / (rep.c_hat * h * h);

  // pointwise bounds at cell midpoints, cell by cell through the rc sets
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& nd = tree.nodes[i];
    for (int c : nd.rc_cells) {
      double value = fam(g.midpoint(c), f.value(c));
      double upper = std::pow(h, nd.lv);
      if (value > upper * (1.0 + 1e-9)) {
        rep.violations.push_back({c, nd.lv, value, 0.0, upper});
        continue;
      }
      if (nd.lv > m0 && !rep.c_hat_unbounded) {
        double lower = std::pow(h, nd.lv - 1) / rep.c_hat;
        if (value < lower * (1.0 - 1e-9))
          rep.violations.push_back({c, nd.lv, value, lower, upper});
      }
    }
  }

  if (!rep.degenerate && rep.sum_rc > 0.0) {
    rep.r_small = rep.integral / rep.sum_rc;
    rep.r_big = rep.integral / rep.sum_full;
    rep.small_ok = rep.r_small >= rep.lower_small * (1.0 - 1e-9) &&
                   rep.r_small <= 1.0 + 1e-9;
    rep.big_ok = rep.r_big >= rep.lower_big * (1.0 - 1e-9) && rep.r_big <= 1.0 + 1e-9;
  } else {
    rep.small_ok = rep.big_ok = rep.degenerate;
  }
  return rep;
}

// --- good-lambda density ------------------------------------------------

struct GoodLambdaParams {
  double beta = 2.0;
  double gamma = 1.0;
  double delta = 0.25;  // target density for the pass flag
  double h = 4.0;
};

struct GoodLambdaReport {
  double delta_hat = 0.0;  // max over memberships of the bad-set density
  int argmax_node = -1;
  int argmax_level = 0;
  double argmax_lambda = 0.0;
  int memberships = 0;
  bool pass = false;  // delta_hat <= params.delta
};

/// Density of {f > beta lambda, g < gamma lambda} within each tree
/// interval, maximized over memberships above m0.
inline GoodLambdaReport goodlambda_check(const BoundaryFunction& f, const BoundaryFunction& g,
                                         const LevelTree& tree, const GoodLambdaParams& par) {
  if (!(par.beta > 0) || !(par.gamma > 0))
    throw std::invalid_argument("goodlambda_check: beta and gamma must be positive");
  if (par.h != tree.h)
    throw std::invalid_argument("goodlambda_check: params.h differs from the tree's h");
  if (!(f.grid() == tree.grid) || !(g.grid() == tree.grid))
    throw std::invalid_argument("goodlambda_check: functions must live on the tree's grid");
  const CircleGrid& gr = tree.grid;
  GoodLambdaReport rep;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& nd = tree.nodes[i];
    int lam_first = std::max(nd.first, tree.m0 + 1);
    for (int lvl = lam_first; lvl <= nd.lv; ++lvl) {
      double lam = tree.lambda(static_cast<int>(i), lvl);
      double bad = 0.0;
      for (int c : nd.cells)
        if (f.value(c) > par.beta * lam && g.value(c) < par.gamma * lam)
          bad += gr.cell_measure(c);
      double density = bad / nd.arc_measure;
      rep.memberships += 1;
      if (density > rep.delta_hat) {
        rep.delta_hat = density;
        rep.argmax_node = static_cast<int>(i);
        rep.argmax_level = lvl;
        rep.argmax_lambda = lam;
      }
    }
  }
  rep.pass = rep.delta_hat <= par.delta;
  return rep;
}

// --- norm comparison ----------------------------------------------------

struct TheoremReport {
  bool feasible = false;
  double delta_hat = 0.0;
  double c_hat = 1.0;
  double c_prime = 1.0;
  bool c_prime_divergent = false;
  double c_prime_inv_gamma = 1.0;  // doubling bound at factor 1/gamma
  double feasibility_lhs = 0.0;    // 2 delta C (2 beta)^(2 log2 C')
  double K = std::numeric_limits<double>::quiet_NaN();
  double lhs_norm = 0.0;  // |f| at bound 1
  double rhs_norm = 0.0;  // |g| at bound 1/K
  double k_min_empirical = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
  GoodLambdaReport gl;
};

/// Full chain: tree on f, empirical good-lambda density against g,
/// measured doubling and stability constants, the proof's K, and the final
/// norm comparison |f| <= |g|_{(1/K)}. Also reports the smallest K that
/// would make the comparison hold, found by bisection.
inline TheoremReport theorem_norm_comparison(const BoundaryFunction& f,
                                             const BoundaryFunction& g,
                                             const ModularFamily& fam,
                                             const GoodLambdaParams& par) {
  TheoremReport rep;
  LevelTree tree = build_tree(f, fam, par.h);
  TreeReport lemmas = lemma_sums(tree, fam, f);
  rep.c_hat = lemmas.c_hat;
  rep.gl = goodlambda_check(f, g, tree, par);
  rep.delta_hat = rep.gl.delta_hat;

  DoublingReport dr = doubling_constant(fam);
  rep.c_prime = dr.value;
  rep.c_prime_divergent = dr.divergent;
  rep.c_prime_inv_gamma = doubling_beta_bound(rep.c_prime, 1.0 / par.gamma);

  rep.feasibility_lhs =
      2.0 * rep.delta_hat * rep.c_hat *
      std::pow(2.0 * par.beta, 2.0 * std::log2(rep.c_prime));
  rep.feasible = !rep.c_prime_divergent && !lemmas.c_hat_unbounded &&
                 rep.feasibility_lhs < 1.0;

  rep.lhs_norm = luxemburg_norm(fam, f, 1.0);
  if (!rep.feasible) return rep;

  rep.K = rep.c_hat * rep.c_prime_inv_gamma * par.h * par.h / (1.0 - rep.feasibility_lhs);
  rep.rhs_norm = luxemburg_norm(fam, g, 1.0 / rep.K);
  rep.pass = rep.lhs_norm <= rep.rhs_norm * (1.0 + 1e-9);

  if (rep.lhs_norm == 0.0) {
    rep.k_min_empirical = 0.0;
  } else {
    auto holds = [&](double k) {
      return luxemburg_norm(fam, g, 1.0 / k) >= rep.lhs_norm * (1.0 - 1e-12);
    };
    double hi_k = 1e12;
    if (!holds(hi_k)) {
      rep.k_min_empirical = std::numeric_limits<double>::infinity();
    } else {
      double lo_k = 1e-9;
      if (holds(lo_k)) {
        rep.k_min_empirical = lo_k;
      } else {
        for (int it = 0; it < 90 && hi_k / lo_k - 1.0 > 1e-6; ++it) {
          double mid = std::sqrt(lo_k * hi_k);
          (holds(mid) ? hi_k : lo_k) = mid;
        }
        rep.k_min_empirical = hi_k;
      }
    }
  }
  return rep;
}

}  // namespace orlicz

#endif  // ORLICZ_LEVELTREE_HPP

#ifndef ORLICZ_MODULAR_HPP
#define ORLICZ_MODULAR_HPP

// Families of modular functions Phi_x(t) indexed by the circle point x,
// with arc envelopes Phi_{I,+/-}, modular integrals, Luxemburg-type norms,
// and estimators for the doubling constant and for the envelope-stability
// constant that controls how far the two envelopes of an arc can drift
// apart below the arc's mass threshold.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/circle.hpp"

namespace orlicz {

using ScalarFn = std::function<double(double)>;

inline double log_plus(double t) { return t > 1.0 ? std::log(t) : 0.0; }

/// sup{t in [0, t_max] : fn(t) <= y} for nondecreasing fn, by bisection to
/// relative tolerance 1e-12. Empty set gives 0. Throws if even fn(t_max)
/// stays below y, since the sup would then sit outside the bracket.
inline double generalized_inverse(const ScalarFn& fn, double y, double t_max) {
  if (!(t_max > 0)) throw std::invalid_argument("generalized_inverse: t_max must be positive");
  double f_hi = fn(t_max);
  if (f_hi < y) throw std::domain_error("generalized_inverse: target above range on [0, t_max]");
  if (f_hi <= y) return t_max;
  if (fn(0.0) > y) return 0.0;
  double lo = 0.0, hi = t_max;
  while (hi - lo > 1e-12 * hi + 1e-300) {
    double mid = 0.5 * (lo + hi);
    if (fn(mid) <= y)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

/// Pointwise kernel K(p, t). Required shape: nondecreasing in t for fixed
/// p, and monotone in p for fixed t (direction may depend on t, as with
/// t^p around t = 1). The p-monotonicity is what lets arc envelopes
/// collapse to the two extreme exponents of the arc.
struct Kernel {
  std::function<double(double p, double t)> eval;
  std::string name;
};

enum class Env { lower, upper };

/// Modular family Phi_x(t) = K(p(x), t). Arc envelopes are sampled
/// sup/inf over the closure of the arc: the sample set holds the envelope
/// grid's cell midpoints and boundaries falling in the closure plus the
/// arc endpoints, so nested arcs get nested sample sets.
class ModularFamily {
 public:
  ModularFamily(ScalarFn p, Kernel k, int env_cells = 2048)
      : p_(std::move(p)), kernel_(std::move(k)), env_grid_(env_cells) {
    int n = env_grid_.n_cells();
    p_mid_.resize(static_cast<std::size_t>(n));
    p_bnd_.resize(static_cast<std::size_t>(n) + 1);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int j = 0; j < n; ++j) {
      p_mid_[static_cast<std::size_t>(j)] = p_(env_grid_.midpoint(j));
      p_bnd_[static_cast<std::size_t>(j)] = p_(env_grid_.boundary(j));
    }
    p_bnd_[static_cast<std::size_t>(n)] = p_bnd_[0];
    for (double v : p_mid_) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (double v : p_bnd_) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!(lo >= 0.0) || !std::isfinite(hi))
      throw std::invalid_argument("ModularFamily: exponent must be finite and nonnegative");
    p_lo_global_ = lo;
    p_hi_global_ = hi;
  }

  double exponent(double x) const { return p_(x); }
  double operator()(double x, double t) const { return kernel_.eval(p_(x), t); }

  const Kernel& kernel() const { return kernel_; }
  const ScalarFn& exponent_fn() const { return p_; }
  int env_cells() const { return env_grid_.n_cells(); }
  std::pair<double, double> exponent_range_global() const { return {p_lo_global_, p_hi_global_}; }

  /// Exponent range over the arc's sample set.
  std::pair<double, double> exponent_range(const Arc& arc) const {
    if (arc.full()) return {p_lo_global_, p_hi_global_};
    int n = env_grid_.n_cells();
    double w = two_pi / n;
    double slack = 1e-9 * w;
    auto in_closure = [&](double x) {
      double d = std::fmod(x - arc.start, two_pi);
      if (d < 0) d += two_pi;
      return d <= arc.length + slack || d >= two_pi - slack;
    };
    double lo = std::min(p_(arc.start), p_(std::fmod(arc.end(), two_pi)));
    double hi = std::max(p_(arc.start), p_(std::fmod(arc.end(), two_pi)));
    int j_lo = static_cast<int>(std::floor(arc.start / w)) - 1;
    int j_hi = static_cast<int>(std::ceil(arc.end() / w)) + 1;
    for (int j = j_lo; j <= j_hi; ++j) {
      int jm = ((j % n) + n) % n;
      if (in_closure(env_grid_.midpoint(jm))) {
        double v = p_mid_[static_cast<std::size_t>(jm)];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (in_closure(env_grid_.boundary(jm))) {
        double v = p_bnd_[static_cast<std::size_t>(jm)];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    return {lo, hi};
  }

  double envelope(const Arc& arc, double t, Env side) const {
    auto [lo, hi] = exponent_range(arc);
    double a = kernel_.eval(lo, t), b = kernel_.eval(hi, t);
    return side == Env::upper ? std::max(a, b) : std::min(a, b);
  }

  /// Envelope as a reusable callable; the arc's exponent range is scanned
  /// once at capture time.
  ScalarFn envelope_fn(const Arc& arc, Env side) const {
    auto [lo, hi] = exponent_range(arc);
    auto k = kernel_.eval;
    if (side == Env::upper)
      return [k, lo, hi](double t) { return std::max(k(lo, t), k(hi, t)); };
    return [k, lo, hi](double t) { return std::min(k(lo, t), k(hi, t)); };
  }

 private:
  ScalarFn p_;
  Kernel kernel_;
  CircleGrid env_grid_;
  std::vector<double> p_mid_, p_bnd_;
  double p_lo_global_ = 0.0, p_hi_global_ = 0.0;
};

// family combinators; each preserves the kernel shape requirements as long
// as the supplied scalar maps are nondecreasing

inline ModularFamily compose_outer(const ModularFamily& fam, ScalarFn outer, std::string name) {
  Kernel k;
  auto base = fam.kernel().eval;
  k.eval = [base, outer](double p, double t) { return outer(base(p, t)); };
  k.name = std::move(name);
  return ModularFamily(fam.exponent_fn(), std::move(k), fam.env_cells());
}

inline ModularFamily power_family(const ModularFamily& fam, double e) {
  if (!(e > 1)) throw std::invalid_argument("power_family: exponent must exceed 1");
  Kernel k;
  auto base = fam.kernel().eval;
  k.eval = [base, e](double p, double t) { return std::pow(base(p, t), e); };
  k.name = fam.kernel().name + "^" + std::to_string(e);
  return ModularFamily(fam.exponent_fn(), std::move(k), fam.env_cells());
}

inline ModularFamily precompose_log_plus(const ModularFamily& fam) {
  Kernel k;
  auto base = fam.kernel().eval;
  k.eval = [base](double p, double t) { return base(p, log_plus(t)); };
  k.name = fam.kernel().name + "(log+)";
  return ModularFamily(fam.exponent_fn(), std::move(k), fam.env_cells());
}

inline ModularFamily precompose_exp(const ModularFamily& fam) {
  Kernel k;
  auto base = fam.kernel().eval;
  k.eval = [base](double p, double t) { return base(p, std::exp(t)); };
  k.name = fam.kernel().name + "(exp)";
  return ModularFamily(fam.exponent_fn(), std::move(k), fam.env_cells());
}

inline ModularFamily scale_family(const ModularFamily& fam, double a) {
  if (!(a > 0)) throw std::invalid_argument("scale_family: factor must be positive");
  Kernel k;
  auto base = fam.kernel().eval;
  k.eval = [base, a](double p, double t) { return a * base(p, t); };
  k.name = std::to_string(a) + "*" + fam.kernel().name;
  return ModularFamily(fam.exponent_fn(), std::move(k), fam.env_cells());
}

/// Modular integral of |f| scaled by inv_lambda: sum over cells of
/// Phi_{x_j}(|f_j| * inv_lambda) m_j, evaluated at cell midpoints.
inline double modular_scaled(const ModularFamily& fam, const BoundaryFunction& f,
                             double inv_lambda) {
  const CircleGrid& g = f.grid();
  double s = 0.0;
  for (int j = 0; j < g.n_cells(); ++j) {
    double v = fam(g.midpoint(j), std::fabs(f.value(j)) * inv_lambda);
    s += v * g.cell_measure(j);
    if (std::isinf(s)) return s;
  }
  return s;
}

inline double modular(const ModularFamily& fam, const BoundaryFunction& f) {
  return modular_scaled(fam, f, 1.0);
}

/// Integral of Psi_x(Phi_x(|f|)); composition is evaluated pointwise, so
/// both families may vary in x.
inline double modular_composed(const ModularFamily& outer, const ModularFamily& inner,
                               const BoundaryFunction& f) {
  const CircleGrid& g = f.grid();
  double s = 0.0;
  for (int j = 0; j < g.n_cells(); ++j) {
    double x = g.midpoint(j);
    s += outer(x, inner(x, std::fabs(f.value(j)))) * g.cell_measure(j);
    if (std::isinf(s)) return s;
  }
  return s;
}

/// Luxemburg-type norm at modular bound a: inf{lambda > 0 : modular of
/// f/lambda < a}, log-bisected over lambda in [1e-30, 1e+30] to relative
/// tolerance 1e-10. Returns 0 when even the bracket floor satisfies the
/// bound and +infinity when not even the ceiling does.
inline double luxemburg_norm(const ModularFamily& fam, const BoundaryFunction& f,
                             double a = 1.0) {
  if (!(a > 0)) throw std::invalid_argument("luxemburg_norm: modular bound must be positive");
  const double lam_lo = 1e-30, lam_hi = 1e+30;
  if (!(modular_scaled(fam, f, 1.0 / lam_hi) < a))
    return std::numeric_limits<double>::infinity();
  if (modular_scaled(fam, f, 1.0 / lam_lo) < a) return 0.0;
  double lo = lam_lo, hi = lam_hi;
  while (hi - lo > 1e-10 * hi) {
    double mid = std::sqrt(lo * hi);
    if (modular_scaled(fam, f, 1.0 / mid) < a)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// --- doubling constant -------------------------------------------------

struct DoublingOptions {
  double t_lo = 1e-4;
  double t_hi = 1e2;        // grows by t_hi_factor per refinement
  double t_hi_factor = 4.0;
  int t_samples = 96;
  int x_samples = 256;
  int refinements = 4;
  double growth_flag = 1.5;  // profile growth above this marks divergence
};

struct DoublingReport {
  double value = 1.0;        // sup of finite ratios seen; +inf when divergent
  std::vector<double> profile;  // running estimate after each refinement
  double growth_last = 1.0;
  bool divergent = false;
};

/// Estimates sup over x and t of Phi_x(2t)/Phi_x(t), refining the t range
/// upward until the profile stabilizes or diverges. Arc envelopes at a few
/// dyadic scales are included alongside the pointwise functions, since the
/// constant is meant to hold uniformly for both.
inline DoublingReport doubling_constant(const ModularFamily& fam,
                                        const DoublingOptions& opt = {}) {
  DoublingReport rep;
  std::vector<ScalarFn> fns;
  for (int j = 0; j < opt.x_samples; ++j) {
    double x = two_pi * (j + 0.5) / opt.x_samples;
    auto k = fam.kernel().eval;
    double p = fam.exponent(x);
    fns.push_back([k, p](double t) { return k(p, t); });
  }
  for (int scale : {4, 16}) {
    for (int j = 0; j < scale; ++j) {
      Arc arc(two_pi * j / scale, two_pi / scale);
      fns.push_back(fam.envelope_fn(arc, Env::upper));
      fns.push_back(fam.envelope_fn(arc, Env::lower));
    }
  }

  double sup = 1.0;
  double t_hi = opt.t_hi;
  for (int r = 0; r < opt.refinements; ++r) {
    double log_lo = std::log(opt.t_lo), log_hi = std::log(t_hi);
    for (int i = 0; i < opt.t_samples; ++i) {
      double t = std::exp(log_lo + (log_hi - log_lo) * i / (opt.t_samples - 1));
      for (const auto& fn : fns) {
        double a = fn(t), b = fn(2.0 * t);
        double ratio;
        if (a == 0.0 && b == 0.0)
          ratio = 1.0;
        else if (a == 0.0 || (std::isinf(b) && std::isfinite(a)))
          ratio = std::numeric_limits<double>::infinity();
        else if (std::isinf(a))
          continue;  // both overflow, no information at this t
        else
          ratio = b / a;
        if (std::isinf(ratio)) {
          rep.divergent = true;
          rep.value = ratio;
        }
        sup = std::max(sup, ratio);
      }
    }
    rep.profile.push_back(sup);
    if (rep.divergent) break;
    t_hi *= opt.t_hi_factor;
  }
  if (rep.profile.size() >= 2) {
    double prev = rep.profile[rep.profile.size() - 2];
    rep.growth_last = rep.profile.back() / prev;
    if (rep.growth_last > opt.growth_flag) rep.divergent = true;
  }
  if (!std::isinf(rep.value)) rep.value = sup;
  return rep;
}

/// Bound for the beta-step doubling constant: Phi(beta t) <= C'_beta Phi(t)
/// with C'_beta <= (2 beta)^(log2 C') by iterating the doubling step.
inline double doubling_beta_bound(double c_prime, double beta) {
  if (!(c_prime >= 1.0) || !(beta > 0)) return std::numeric_limits<double>::quiet_NaN();
  return std::pow(2.0 * beta, std::log2(c_prime));
}

// --- envelope stability across scales ----------------------------------

struct SciOptions {
  int max_scale = 10;        // dyadic scales 0..max_scale, 2^k arcs at scale k
  int w_samples = 48;
  double w_window = 1e-2;    // test w in [w_window * w_max, w_max]
  double stable_flag = 0.10;  // |growth-1| below this marks a stable family
  double growth_flag = 0.50;  // growth-1 above this marks divergence
};

struct SciReport {
  double value = 1.0;             // max ratio over every tested (arc, w)
  std::vector<double> per_scale;  // max ratio among arcs of each scale
  std::vector<double> cumulative; // running max
  double growth_last = 1.0;       // per_scale[K] / per_scale[K-1]
  bool stable = false;
  bool divergent = false;
  double threshold = 1.0;         // the mass bound B used
};

/// Estimates the smallest C with Phi_{I,+}(w) <= C Phi_{I,-}(w) for all
/// tested arcs I and all w up to the arc's threshold, the generalized
/// inverse of Phi_{I,-} at B/m(I). Arcs are the dyadic subdivisions of the
/// circle. The w grid is a log-spaced window just below each arc's own
/// threshold, which is where the sandwich and good-lambda arguments apply
/// the inequality; the per-scale profile then tracks the threshold's growth
/// as arcs shrink, and its growth across the last two scales classifies
/// the family as stable or divergent.
inline SciReport sci_constant(const ModularFamily& fam, double B, const SciOptions& opt = {}) {
  if (!(B > 0)) throw std::invalid_argument("sci_constant: threshold must be positive");
  SciReport rep;
  rep.threshold = B;
  double running = 1.0;
  for (int k = 0; k <= opt.max_scale; ++k) {
    int n_arcs = 1 << k;
    double scale_max = 1.0;
    for (int j = 0; j < n_arcs; ++j) {
      Arc arc(two_pi * j / n_arcs, two_pi / n_arcs);
      ScalarFn lo = fam.envelope_fn(arc, Env::lower);
      ScalarFn hi = fam.envelope_fn(arc, Env::upper);
      double y = B / measure(arc);
      if (lo(0.0) > y) continue;  // no admissible w for this arc
      double t_max = 1.0;
      while (lo(t_max) <= y && t_max < 1e30) t_max *= 2.0;
      double w_max = (lo(t_max) <= y) ? t_max : generalized_inverse(lo, y, t_max);
      if (!(w_max > 0)) continue;
      double w_lo = w_max * opt.w_window;
      for (int i = 0; i < opt.w_samples; ++i) {
        double w = (i == opt.w_samples - 1)
                       ? w_max
                       : std::exp(std::log(w_lo) +
                                  (std::log(w_max) - std::log(w_lo)) * i / (opt.w_samples - 1));
        double a = lo(w), b = hi(w);
        double ratio;
        if (b == 0.0)
          ratio = 1.0;  // both vanish
        else if (a == 0.0 || (std::isinf(b) && std::isfinite(a)))
          ratio = std::numeric_limits<double>::infinity();
        else if (std::isinf(b))
          continue;
        else
          ratio = b / a;
        if (std::isinf(ratio)) rep.divergent = true;
        scale_max = std::max(scale_max, ratio);
      }
    }
    rep.per_scale.push_back(scale_max);
    running = std::max(running, scale_max);
    rep.cumulative.push_back(running);
    if (rep.divergent) break;
  }
  rep.value = running;
  if (rep.per_scale.size() >= 2) {
    double prev = rep.per_scale[rep.per_scale.size() - 2];
    rep.growth_last = rep.per_scale.back() / prev;
    if (rep.growth_last - 1.0 > opt.growth_flag) rep.divergent = true;
    if (std::fabs(rep.growth_last - 1.0) < opt.stable_flag && !rep.divergent) rep.stable = true;
  }
  return rep;
}

struct FamilyConstants {
  double doubling = 1.0;
  bool doubling_divergent = false;
  double sci = 1.0;
  bool sci_stable = false;
  bool sci_divergent = false;
  double threshold = 1.0;
};

inline FamilyConstants family_constants(const ModularFamily& fam, double B,
                                        const DoublingOptions& dopt = {},
                                        const SciOptions& sopt = {}) {
  FamilyConstants fc;
  DoublingReport d = doubling_constant(fam, dopt);
  SciReport s = sci_constant(fam, B, sopt);
  fc.doubling = d.value;
  fc.doubling_divergent = d.divergent;
  fc.sci = s.value;
  fc.sci_stable = s.stable;
  fc.sci_divergent = s.divergent;
  fc.threshold = B;
  return fc;
}

}  // namespace orlicz

#endif  // ORLICZ_MODULAR_HPP

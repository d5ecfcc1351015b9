#ifndef ORLICZ_HARDY_HPP
#define ORLICZ_HARDY_HPP

// Analytic functions on the disc through closed-form evaluators:
// Blaschke products, singular inner functions, outer functions from
// boundary log-modulus, and their products. On top of them: radial
// modular scans with a divergence ceiling, the induced norm, a Smirnov
// mean-convergence test, and the equivalence report comparing the five
// modular functionals attached to one analytic function.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/circle.hpp"
#include "orlicz/harmonic.hpp"
#include "orlicz/modular.hpp"

namespace orlicz {

using Cx = std::complex<double>;

/// Closed-form analytic function: eval is f itself, dlog its logarithmic
/// derivative, so f' = eval * dlog without any series truncation.
struct DiskEvaluator {
  std::function<Cx(Cx)> eval;
  std::function<Cx(Cx)> dlog;

  Cx derivative(Cx z) const { return eval(z) * dlog(z); }
};

struct Atom {
  double angle = 0.0;
  double mass = 0.0;
};

// --- factors ------------------------------------------------------------

/// Product of normalized Blaschke factors (|a|/a)(a - z)/(1 - conj(a) z);
/// zeros at the origin contribute plain factors z.
inline DiskEvaluator blaschke(std::vector<Cx> zeros) {
  for (const Cx& a : zeros)
    if (!(std::abs(a) < 1.0)) throw std::invalid_argument("blaschke: zeros must satisfy |a| < 1");
  DiskEvaluator b;
  b.eval = [zeros](Cx z) {
    Cx acc = 1.0;
    for (const Cx& a : zeros) {
      if (a == Cx{0.0, 0.0}) {
        acc *= z;
      } else {
        acc *= (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
      }
    }
    return acc;
  };
  b.dlog = [zeros](Cx z) {
    Cx acc = 0.0;
    for (const Cx& a : zeros) {
      if (a == Cx{0.0, 0.0}) {
        acc += 1.0 / z;
      } else {
        acc += -1.0 / (a - z) + std::conj(a) / (1.0 - std::conj(a) * z);
      }
    }
    return acc;
  };
  return b;
}

namespace detail {

inline void check_atoms(const std::vector<Atom>& atoms) {
  for (const Atom& a : atoms)
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass))
      throw std::invalid_argument("singular_inner: masses must be nonnegative");
}

// sum of mass-weighted Herglotz kernels (e + z)/(e - z) and its z-derivative
inline Cx herglotz_sum(const std::vector<Atom>& atoms, Cx z) {
  Cx acc = 0.0;
  for (const Atom& a : atoms) {
    Cx e = std::polar(1.0, a.angle);
    acc += a.mass * (e + z) / (e - z);
  }
  return acc;
}

inline Cx herglotz_sum_deriv(const std::vector<Atom>& atoms, Cx z) {
  Cx acc = 0.0;
  for (const Atom& a : atoms) {
    Cx e = std::polar(1.0, a.angle);
    acc += a.mass * 2.0 * e / ((e - z) * (e - z));
  }
  return acc;
}

}  // namespace detail

/// exp(-sum of m_j (e_j + z)/(e_j - z)): modulus <= 1 inside, boundary
/// modulus 1 away from the atoms.
inline DiskEvaluator singular_inner(std::vector<Atom> atoms) {
  detail::check_atoms(atoms);
  DiskEvaluator s;
  s.eval = [atoms](Cx z) { return std::exp(-detail::herglotz_sum(atoms, z)); };
  s.dlog = [atoms](Cx z) { return -detail::herglotz_sum_deriv(atoms, z); };
  return s;
}

/// Reciprocal of the singular inner function with the same atoms; the
/// standard function with boundary modulus 1 that is not a radial limit
/// of its own means.
inline DiskEvaluator inverse_singular_inner(std::vector<Atom> atoms) {
  detail::check_atoms(atoms);
  DiskEvaluator s;
  s.eval = [atoms](Cx z) { return std::exp(detail::herglotz_sum(atoms, z)); };
  s.dlog = [atoms](Cx z) { return detail::herglotz_sum_deriv(atoms, z); };
  return s;
}

enum class OuterPart {
  full,      // boundary log-modulus as given
  positive,  // only the positive part of the log-modulus; modulus >= 1 factor
  negative,  // only the negative part; modulus <= 1 factor
};

namespace detail {

/// Exact integral of the Herglotz kernel over a boundary arc [t1, t2]:
/// -(t2 - t1) - 2i Log((e^{i t2} - z)/(e^{i t1} - z)). The principal
/// branch tracks the continuous one while the arc subtends less than pi
/// at z; that holds strictly inside the disc for arcs shorter than pi
/// (cells are split below). With z on the circle inside the arc itself
/// the swept angle passes pi and the principal value wraps negative, so
/// the continuous branch is restored by one extra turn. That keeps the
/// principal-value modulus on the boundary equal to the radial limit.
inline Cx herglotz_cell(double t1, double t2, Cx z) {
  Cx w1 = std::polar(1.0, t1), w2 = std::polar(1.0, t2);
  Cx lg = std::log((w2 - z) / (w1 - z));
  if (lg.imag() < 0.0 && std::abs(z) >= 1.0 - 1e-9) {
    double th = std::atan2(z.imag(), z.real());
    if (th < 0.0) th += two_pi;
    if (th > t1 && th < t2) lg += Cx{0.0, two_pi};
  }
  return Cx{-(t2 - t1), 0.0} - Cx{0.0, 2.0} * lg;
}

inline Cx herglotz_cell_deriv(double t1, double t2, Cx z) {
  Cx w1 = std::polar(1.0, t1), w2 = std::polar(1.0, t2);
  return Cx{0.0, 2.0} * (1.0 / (w2 - z) - 1.0 / (w1 - z));
}

inline double clip_log(double v, OuterPart part) {
  if (part == OuterPart::positive) return std::max(v, 0.0);
  if (part == OuterPart::negative) return std::min(v, 0.0);
  return v;
}

}  // namespace detail

/// Outer function with the given boundary log-modulus: the cell-exact
/// Herglotz integral of a piecewise-constant density. On the boundary
/// circle itself the modulus is exact; the phase of the cell containing
/// z is ambiguous there.
inline DiskEvaluator outer(const BoundaryFunction& log_modulus, OuterPart part = OuterPart::full) {
  const CircleGrid& g = log_modulus.grid();
  std::vector<double> t1s, t2s, ls;
  for (int j = 0; j < g.n_cells(); ++j) {
    double l = detail::clip_log(log_modulus.value(j), part);
    if (!std::isfinite(l)) throw std::invalid_argument("outer: log-modulus must be finite");
    double a = g.boundary(j), b = g.boundary(j + 1);
    int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / 1.5)));
    for (int q = 0; q < pieces; ++q) {
      t1s.push_back(a + (b - a) * q / pieces);
      t2s.push_back(a + (b - a) * (q + 1) / pieces);
      ls.push_back(l);
    }
  }
  DiskEvaluator f;
  f.eval = [t1s, t2s, ls](Cx z) {
    Cx acc = 0.0;
    for (std::size_t i = 0; i < ls.size(); ++i)
      acc += ls[i] * detail::herglotz_cell(t1s[i], t2s[i], z);
    return std::exp(acc / two_pi);
  };
  f.dlog = [t1s, t2s, ls](Cx z) {
    Cx acc = 0.0;
    for (std::size_t i = 0; i < ls.size(); ++i)
      acc += ls[i] * detail::herglotz_cell_deriv(t1s[i], t2s[i], z);
    return acc / two_pi;
  };
  return f;
}

inline DiskEvaluator product_evaluator(std::vector<DiskEvaluator> factors) {
  DiskEvaluator p;
  p.eval = [factors](Cx z) {
    Cx acc = 1.0;
    for (const DiskEvaluator& f : factors) acc *= f.eval(z);
    return acc;
  };
  p.dlog = [factors](Cx z) {
    Cx acc = 0.0;
    for (const DiskEvaluator& f : factors) acc += f.dlog(z);
    return acc;
  };
  return p;
}

/// Zeros, boundary point masses, and a boundary log-modulus; the three
/// classical factors of an analytic function of bounded characteristic.
struct FactorizationData {
  std::vector<Cx> zeros;
  std::vector<Atom> atoms;
  BoundaryFunction log_modulus;
};

inline DiskEvaluator factorized(const FactorizationData& data) {
  std::vector<DiskEvaluator> parts;
  if (!data.zeros.empty()) parts.push_back(blaschke(data.zeros));
  if (!data.atoms.empty()) parts.push_back(singular_inner(data.atoms));
  parts.push_back(outer(data.log_modulus));
  return product_evaluator(parts);
}

/// (1 - c z)^{-a}: bounded for |c| < 1, a boundary singularity for |c| = 1.
/// 1 - c z stays in the closed right half plane, so the principal branch
/// is the analytic one.
inline DiskEvaluator pole_power(Cx c, double a) {
  if (!(std::abs(c) <= 1.0)) throw std::invalid_argument("pole_power: need |c| <= 1");
  DiskEvaluator f;
  f.eval = [c, a](Cx z) { return std::exp(-a * std::log(1.0 - c * z)); };
  f.dlog = [c, a](Cx z) { return a * c / (1.0 - c * z); };
  return f;
}

// --- radial scans -------------------------------------------------------

inline std::vector<double> geometric_radii(double r_max = 1.0 - 1.0 / 4096.0,
                                           double delta0 = 1.0) {
  ConeSpec c;
  c.delta0 = delta0;
  c.r_max = r_max;
  return cone_radii(c);
}

/// Ladder truncated so the Poisson bump at 1 - r still spans a few grid
/// cells; mean convergence tests are meaningless past that resolution.
inline std::vector<double> resolution_radii(const CircleGrid& g, int cells_per_width = 4) {
  double width = two_pi / g.n_cells();
  std::vector<double> out;
  for (double r : geometric_radii()) {
    if (1.0 - r < cells_per_width * width && !out.empty()) break;
    out.push_back(r);
  }
  return out;
}

struct RadialReport {
  double value = 0.0;
  double argmax_r = 0.0;
  double last_delta = 0.0;
  bool diverged = false;  // hit the ceiling or left the finite range
  bool finite = true;
};

/// Supremum over the radial ladder of the modular of |f| on the circle of
/// radius r. Stops at the ceiling: past it the scan only overflows.
inline RadialReport rho_hardy(const PolarSampler& modulus, const CircleGrid& g,
                              const ModularFamily& fam, std::vector<double> radii = {},
                              double ceiling = 1e6) {
  if (radii.empty()) radii = geometric_radii();
  RadialReport rep;
  double prev = 0.0;
  bool have_prev = false;
  std::vector<double> slice(static_cast<std::size_t>(g.n_cells()));
  for (double r : radii) {
    for (int j = 0; j < g.n_cells(); ++j)
      slice[static_cast<std::size_t>(j)] = modulus(r, g.midpoint(j));
    double s = modular(fam, BoundaryFunction(g, slice));
    if (have_prev) rep.last_delta = s - prev;
    prev = s;
    have_prev = true;
    if (s >= rep.value || !std::isfinite(s)) {
      rep.value = s;
      rep.argmax_r = r;
    }
    if (!std::isfinite(s) || s >= ceiling) {
      rep.diverged = true;
      rep.finite = false;
      return rep;
    }
  }
  rep.finite = std::isfinite(rep.value);
  return rep;
}

struct HardyNormReport {
  double value = 0.0;
  bool infinite = false;
  RadialReport at_unit;  // the radial scan of the unscaled function
};

/// Norm induced by the radial modular supremum: the infimum of lambda
/// with sup_r modular(f / lambda) below the threshold a.
inline HardyNormReport norm_hardy(const PolarSampler& modulus, const CircleGrid& g,
                                  const ModularFamily& fam, std::vector<double> radii = {},
                                  double a = 1.0, double ceiling = 1e6) {
  if (!(a > 0.0)) throw std::invalid_argument("norm_hardy: threshold must be positive");
  if (radii.empty()) radii = geometric_radii();
  HardyNormReport rep;
  rep.at_unit = rho_hardy(modulus, g, fam, radii, ceiling);
  auto holds = [&](double lambda) {
    PolarSampler scaled = [&modulus, lambda](double r, double t) {
      return modulus(r, t) / lambda;
    };
    RadialReport rr = rho_hardy(scaled, g, fam, radii, ceiling);
    return !rr.diverged && rr.value < a;
  };
  double lo = 1e-9, hi = 1e12;
  if (holds(lo)) {
    rep.value = 0.0;
    return rep;
  }
  if (!holds(hi)) {
    rep.infinite = true;
    rep.value = std::numeric_limits<double>::infinity();
    return rep;
  }
  for (int it = 0; it < 90 && hi / lo > 1.0 + 1e-9; ++it) {
    double mid = std::sqrt(lo * hi);
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  rep.value = hi;
  return rep;
}

// --- Smirnov mean convergence -------------------------------------------

struct SmirnovReport {
  double radial_value = 0.0;    // integral of log+ |f_r| at the deepest ladder radius
  double boundary_value = 0.0;  // same integral on the boundary circle
  double gap = 0.0;             // radial_value - boundary_value
  double last_delta = 0.0;
  bool conclusive = false;  // the radial means had settled before the ladder ended
  bool smirnov = false;     // conclusive and the gap is negligible
};

/// Compares the limit of the log+ means along radii with the boundary
/// log+ integral. Equality is the mean-convergence hallmark; a positive
/// gap is carried by a singular factor in the denominator.
inline SmirnovReport smirnov_test(const PolarSampler& modulus, const CircleGrid& g,
                                  std::vector<double> radii = {}, double tol = 0.05) {
  if (radii.empty()) radii = resolution_radii(g);
  auto log_plus_mean = [&](double r) {
    double acc = 0.0;
    for (int j = 0; j < g.n_cells(); ++j)
      acc += log_plus(modulus(r, g.midpoint(j))) * g.cell_measure(j);
    return acc;
  };
  SmirnovReport rep;
  double prev = 0.0;
  bool have_prev = false;
  for (double r : radii) {
    double v = log_plus_mean(r);
    if (have_prev) rep.last_delta = v - prev;
    prev = v;
    have_prev = true;
    rep.radial_value = v;
  }
  rep.boundary_value = log_plus_mean(1.0);
  rep.gap = rep.radial_value - rep.boundary_value;
  double scale = 1.0 + std::abs(rep.radial_value) + std::abs(rep.boundary_value);
  rep.conclusive = have_prev && std::abs(rep.last_delta) <= tol * scale;
  rep.smirnov = rep.conclusive && std::abs(rep.gap) <= tol * scale;
  return rep;
}

// --- equivalence report -------------------------------------------------

struct EquivalenceOptions {
  ConeSpec cone{};
  std::vector<double> radii{};  // default: geometric ladder up to cone.r_max
  double ceiling = 1e6;
  double bound = std::numeric_limits<double>::infinity();  // input bound on the boundary modular
};

struct EquivalenceReport {
  RadialReport hardy;          // sup_r of the modular along circles
  double rho_f_star = 0.0;     // modular of the nontangential maximum of |f|
  double rho_u_star = 0.0;     // of the real part
  double rho_v_star = 0.0;     // of the imaginary part (companion column)
  double rho_area = 0.0;       // of the area integral of Re f
  double rho_boundary = 0.0;   // modular of |f| on the boundary circle
  double boundary_sensitivity = 0.0;  // relative shift when sampled just inside
  bool f_star_finite = true;
  bool u_star_finite = true;
  bool v_star_finite = true;
  bool area_finite = true;
  bool boundary_finite = true;
  bool all_finite = true;  // the five principal functionals together
  bool input_within_bound = true;
};

/// The five modular functionals of one analytic function under one
/// modular family, computed from the closed-form evaluator: radial
/// supremum, nontangential maxima of |f| and Re f, area integral of
/// Re f (its gradient is |f'|), and the boundary modular.
inline EquivalenceReport equivalence_report(const DiskEvaluator& f, const CircleGrid& g,
                                            const ModularFamily& fam,
                                            const EquivalenceOptions& opt = {}) {
  std::vector<double> radii = opt.radii;
  if (radii.empty()) radii = geometric_radii(opt.cone.r_max);

  auto at = [&f](double r, double t) { return f.eval(std::polar(r, t)); };
  PolarSampler mod = [&at](double r, double t) { return std::abs(at(r, t)); };
  PolarSampler re = [&at](double r, double t) { return std::abs(at(r, t).real()); };
  PolarSampler im = [&at](double r, double t) { return std::abs(at(r, t).imag()); };
  PolarSampler grad = [&f](double r, double t) {
    return std::norm(f.derivative(std::polar(r, t)));
  };

  EquivalenceReport rep;
  rep.hardy = rho_hardy(mod, g, fam, radii, opt.ceiling);

  auto capped = [&](double v, bool& flag) {
    flag = std::isfinite(v) && v < opt.ceiling;
    return v;
  };
  rep.rho_f_star = capped(modular(fam, cone_max(g, opt.cone, mod)), rep.f_star_finite);
  rep.rho_u_star = capped(modular(fam, cone_max(g, opt.cone, re)), rep.u_star_finite);
  rep.rho_v_star = capped(modular(fam, cone_max(g, opt.cone, im)), rep.v_star_finite);
  rep.rho_area = capped(modular(fam, area_integral_sampled(g, opt.cone, grad)), rep.area_finite);

  std::vector<double> bdy(static_cast<std::size_t>(g.n_cells())),
      inner(static_cast<std::size_t>(g.n_cells()));
  for (int j = 0; j < g.n_cells(); ++j) {
    bdy[static_cast<std::size_t>(j)] = mod(1.0, g.midpoint(j));
    inner[static_cast<std::size_t>(j)] = mod(opt.cone.r_max, g.midpoint(j));
  }
  rep.rho_boundary = capped(modular(fam, BoundaryFunction(g, bdy)), rep.boundary_finite);
  double rho_inner = modular(fam, BoundaryFunction(g, inner));
  rep.boundary_sensitivity =
      std::abs(rho_inner - rep.rho_boundary) / (1.0 + std::abs(rep.rho_boundary));

  rep.all_finite = rep.hardy.finite && rep.f_star_finite && rep.u_star_finite &&
                   rep.area_finite && rep.boundary_finite;
  rep.input_within_bound = rep.rho_boundary <= opt.bound;
  return rep;
}

/// Largest relative disagreement between two families over grid points
/// and test arguments; used to certify that a composed family reproduces
/// the one it factors.
inline double max_rel_deviation(const ModularFamily& a, const ModularFamily& b,
                                const CircleGrid& g, const std::vector<double>& ts) {
  double worst = 0.0;
  for (int j = 0; j < g.n_cells(); ++j) {
    double x = g.midpoint(j);
    for (double t : ts) {
      double va = a(x, t), vb = b(x, t);
      double diff = std::abs(va - vb);
      if (diff == 0.0) continue;
      worst = std::max(worst, diff / std::max(std::abs(va), std::abs(vb)));
    }
  }
  return worst;
}

}  // namespace orlicz

#endif  // ORLICZ_HARDY_HPP

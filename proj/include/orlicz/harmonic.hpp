#ifndef ORLICZ_HARMONIC_HPP
#define ORLICZ_HARMONIC_HPP

// Disc-side operators on truncated Fourier/Taylor series: Poisson
// extension, harmonic conjugate, dilation, the Hardy-Littlewood maximal
// operator, cone-based maximal functionals (nontangential max, area
// integral, envelope maximal function), and the maximal-control report
// comparing composed modulars before and after a maximal operator.

#include <cmath>
#include <complex>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "orlicz/circle.hpp"
#include "orlicz/modular.hpp"

namespace orlicz {

// --- series on the disc -------------------------------------------------

/// u(re^{i t}) = sum over |k| <= M of c_k r^{|k|} e^{ikt}. Real harmonic
/// functions satisfy c_{-k} = conj(c_k); analytic ones have c_k = 0 for
/// k < 0. Gradients come from term-wise differentiation.
class DiskFunction {
 public:
  explicit DiskFunction(int modes) : m_(modes) {
    if (modes < 0) throw std::invalid_argument("DiskFunction: modes must be nonnegative");
    c_.resize(2 * static_cast<std::size_t>(modes) + 1);
  }

  int modes() const { return m_; }

  std::complex<double> coeff(int k) const {
    if (k < -m_ || k > m_) return {0.0, 0.0};
    return c_[static_cast<std::size_t>(k + m_)];
  }

  void set_coeff(int k, std::complex<double> v) {
    if (k < -m_ || k > m_) throw std::out_of_range("DiskFunction::set_coeff: |k| exceeds modes");
    c_[static_cast<std::size_t>(k + m_)] = v;
  }

  std::complex<double> eval(double r, double theta) const {
    std::complex<double> w = std::polar(1.0, theta);
    std::complex<double> z = r * w, zb = r * std::conj(w);
    std::complex<double> acc = coeff(0), zp = 1.0, zm = 1.0;
    for (int k = 1; k <= m_; ++k) {
      zp *= z;
      zm *= zb;
      acc += coeff(k) * zp + coeff(-k) * zm;
    }
    return acc;
  }

  /// |du/dr|^2 + |du/dtheta / r|^2 from the term-wise derivative series;
  /// finite at r = 0 (only the |k| = 1 terms survive there).
  double grad_sq(double r, double theta) const {
    std::complex<double> w = std::polar(1.0, theta);
    std::complex<double> wp = 1.0;
    std::complex<double> dr = 0.0, dt = 0.0;
    double rp = 1.0;  // r^{k-1}
    const std::complex<double> i(0.0, 1.0);
    for (int k = 1; k <= m_; ++k) {
      wp *= w;
      std::complex<double> plus = coeff(k) * wp, minus = coeff(-k) * std::conj(wp);
      dr += static_cast<double>(k) * rp * (plus + minus);
      dt += static_cast<double>(k) * rp * i * (plus - minus);
      rp *= r;
    }
    return std::norm(dr) + std::norm(dt);
  }

  bool real_valued(double tol = 1e-9) const {
    double scale = 0.0, worst = 0.0;
    for (int k = 0; k <= m_; ++k) {
      scale = std::max({scale, std::abs(coeff(k)), std::abs(coeff(-k))});
      worst = std::max(worst, std::abs(coeff(-k) - std::conj(coeff(k))));
    }
    return worst <= tol * (1.0 + scale);
  }

  bool analytic() const {
    for (int k = 1; k <= m_; ++k)
      if (coeff(-k) != std::complex<double>{0.0, 0.0}) return false;
    return true;
  }

 private:
  int m_;
  std::vector<std::complex<double>> c_;
};

/// Harmonic extension of a piecewise-constant boundary function; Fourier
/// coefficients of f are computed cell-exactly, so the only error is the
/// mode truncation.
inline DiskFunction poisson_extend(const BoundaryFunction& f, int modes = 512) {
  const CircleGrid& g = f.grid();
  int n = g.n_cells();
  DiskFunction u(modes);
  double c0 = 0.0;
  for (int j = 0; j < n; ++j) c0 += f.value(j) * g.cell_measure(j);
  u.set_coeff(0, c0 / two_pi);

  // running powers e^{-ik b_j} updated incrementally over k
  std::vector<std::complex<double>> lo(static_cast<std::size_t>(n)),
      hi(static_cast<std::size_t>(n)), lo_step(static_cast<std::size_t>(n)),
      hi_step(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    lo_step[static_cast<std::size_t>(j)] = std::polar(1.0, -g.boundary(j));
    hi_step[static_cast<std::size_t>(j)] = std::polar(1.0, -g.boundary(j + 1));
    lo[static_cast<std::size_t>(j)] = hi[static_cast<std::size_t>(j)] = 1.0;
  }
  for (int k = 1; k <= modes; ++k) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < n; ++j) {
      lo[static_cast<std::size_t>(j)] *= lo_step[static_cast<std::size_t>(j)];
      hi[static_cast<std::size_t>(j)] *= hi_step[static_cast<std::size_t>(j)];
      acc += f.value(j) * (lo[static_cast<std::size_t>(j)] - hi[static_cast<std::size_t>(j)]);
    }
    std::complex<double> ck = acc / (std::complex<double>(0.0, 1.0) * static_cast<double>(k)) /
                              two_pi;
    u.set_coeff(k, ck);
    u.set_coeff(-k, std::conj(ck));
  }
  return u;
}

/// Harmonic conjugate normalized to v(0) = 0; coefficient multiplier
/// -i sgn(k). Input must be real-valued.
inline DiskFunction conjugate(const DiskFunction& u) {
  if (!u.real_valued())
    throw std::invalid_argument("conjugate: input must be real-valued harmonic");
  DiskFunction v(u.modes());
  const std::complex<double> i(0.0, 1.0);
  for (int k = 1; k <= u.modes(); ++k) {
    v.set_coeff(k, -i * u.coeff(k));
    v.set_coeff(-k, i * u.coeff(-k));
  }
  return v;
}

inline DiskFunction dilate(const DiskFunction& u, double r) {
  if (!(r > 0.0) || !(r < 1.0)) throw std::invalid_argument("dilate: r must be in (0, 1)");
  DiskFunction out(u.modes());
  out.set_coeff(0, u.coeff(0));
  double rp = 1.0;
  for (int k = 1; k <= u.modes(); ++k) {
    rp *= r;
    out.set_coeff(k, u.coeff(k) * rp);
    out.set_coeff(-k, u.coeff(-k) * rp);
  }
  return out;
}

/// |u| on the circle of radius r, sampled at cell midpoints.
inline BoundaryFunction slice_modulus(const DiskFunction& u, const CircleGrid& g, double r) {
  if (!(r >= 0.0) || !(r <= 1.0))
    throw std::invalid_argument("slice_modulus: radius must be in [0, 1]");
  std::vector<double> v(static_cast<std::size_t>(g.n_cells()));
  for (int j = 0; j < g.n_cells(); ++j)
    v[static_cast<std::size_t>(j)] = std::abs(u.eval(r, g.midpoint(j)));
  return BoundaryFunction(g, v);
}

inline BoundaryFunction slice_real(const DiskFunction& u, const CircleGrid& g, double r) {
  if (!(r >= 0.0) || !(r <= 1.0))
    throw std::invalid_argument("slice_real: radius must be in [0, 1]");
  std::vector<double> v(static_cast<std::size_t>(g.n_cells()));
  for (int j = 0; j < g.n_cells(); ++j)
    v[static_cast<std::size_t>(j)] = u.eval(r, g.midpoint(j)).real();
  return BoundaryFunction(g, v);
}

// --- Hardy-Littlewood maximal operator ----------------------------------

/// Exact maximum of interval averages over every run of consecutive cells
/// (all lengths 1..N, circular). Sliding-window maxima keep the whole scan
/// at O(N^2). Uniform grids use unweighted prefix sums, so integer-valued
/// inputs reproduce a direct per-cell enumeration bit for bit.
inline BoundaryFunction hl_maximal(const BoundaryFunction& f) {
  const CircleGrid& g = f.grid();
  int n = g.n_cells();
  for (int j = 0; j < n; ++j)
    if (f.value(j) < 0.0) throw std::invalid_argument("hl_maximal: f must be nonnegative");

  bool uniform = g.uniform();
  int total = 3 * n;
  std::vector<double> pv(static_cast<std::size_t>(total) + 1, 0.0),
      pm(static_cast<std::size_t>(total) + 1, 0.0);
  for (int t = 0; t < total; ++t) {
    int j = t % n;
    pv[static_cast<std::size_t>(t) + 1] =
        pv[static_cast<std::size_t>(t)] + (uniform ? f.value(j) : f.value(j) * g.cell_measure(j));
    pm[static_cast<std::size_t>(t) + 1] = pm[static_cast<std::size_t>(t)] + g.cell_measure(j);
  }
  auto window_avg = [&](int a, int len) {
    double num = pv[static_cast<std::size_t>(a + len)] - pv[static_cast<std::size_t>(a)];
    if (uniform) return num / len;
    return num / (pm[static_cast<std::size_t>(a + len)] - pm[static_cast<std::size_t>(a)]);
  };

  // length-1 windows are the values themselves; seeding them here keeps
  // M >= f exact instead of up to an ulp off through the prefix sums
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = f.value(j);
  std::deque<std::pair<int, double>> dq;
  for (int len = 1; len <= n; ++len) {
    dq.clear();
    for (int a = n - len + 1; a <= 2 * n - 1; ++a) {
      double wa = window_avg(a, len);
      while (!dq.empty() && dq.back().second <= wa) dq.pop_back();
      dq.emplace_back(a, wa);
      if (a >= n) {
        int j = a - n;  // windows covering cell j start in [j+n-len+1, j+n]
        while (dq.front().first < j + n - len + 1) dq.pop_front();
        out[static_cast<std::size_t>(j)] = std::max(out[static_cast<std::size_t>(j)],
                                                    dq.front().second);
      }
    }
  }
  return BoundaryFunction(g, out);
}

// --- cone sampling ------------------------------------------------------

/// Cone at theta: {re^{it} : |t - theta| < aperture * (1 - r)}, sampled on
/// the geometric ladder r_j = 1 - delta0 * 2^{-j} up to r_max. Angular
/// samples sit at the center ray plus offsets of (k + 1/2)(1 - r)/per_width
/// on both sides; the count scales with the aperture, so cones with
/// apertures in dyadic ratio get nested sample sets.
struct ConeSpec {
  double aperture = 0.5;
  double delta0 = 1.0;
  double r_max = 1.0 - 1.0 / 4096.0;
  int per_width = 8;
  int radial_subdiv = 8;
};

inline std::vector<double> cone_radii(const ConeSpec& c) {
  if (!(c.aperture > 0.0)) throw std::invalid_argument("cone_radii: aperture must be positive");
  if (!(c.delta0 > 0.0) || !(c.delta0 <= 1.0))
    throw std::invalid_argument("cone_radii: delta0 must be in (0, 1]");
  if (!(c.r_max > 1.0 - c.delta0) || !(c.r_max < 1.0))
    throw std::invalid_argument("cone_radii: r_max must be in (1 - delta0, 1)");
  std::vector<double> out;
  for (int j = 0; j < 60; ++j) {
    double r = 1.0 - std::ldexp(c.delta0, -j);
    if (r > c.r_max + 1e-15) break;
    out.push_back(r);
  }
  return out;
}

inline void cone_offsets(const ConeSpec& c, double r, std::vector<double>& out) {
  out.clear();
  out.push_back(0.0);
  int wings = static_cast<int>(std::lround(c.per_width * c.aperture));
  double step = (1.0 - r) / c.per_width;
  for (int k = 0; k < wings; ++k) {
    double off = (k + 0.5) * step;
    if (off >= c.aperture * (1.0 - r)) break;
    out.push_back(off);
    out.push_back(-off);
  }
}

using PolarSampler = std::function<double(double r, double t)>;

inline double cone_max_at(const PolarSampler& s, double theta, const ConeSpec& c,
                          const std::vector<double>& radii) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> offs;
  for (double r : radii) {
    cone_offsets(c, r, offs);
    for (double off : offs) best = std::max(best, s(r, theta + off));
  }
  return best;
}

inline BoundaryFunction cone_max(const CircleGrid& g, const ConeSpec& c, const PolarSampler& s) {
  auto radii = cone_radii(c);
  std::vector<double> v(static_cast<std::size_t>(g.n_cells()));
  for (int j = 0; j < g.n_cells(); ++j)
    v[static_cast<std::size_t>(j)] = cone_max_at(s, g.midpoint(j), c, radii);
  return BoundaryFunction(g, v);
}

inline BoundaryFunction nt_max(const DiskFunction& u, const CircleGrid& g,
                               const ConeSpec& cone = {}) {
  return cone_max(g, cone, [&u](double r, double t) { return std::abs(u.eval(r, t)); });
}

// --- area integral ------------------------------------------------------

/// Square root of the integral of grad_sq over the sampled cone: geometric
/// radial bands, each split radial_subdiv times; per sub-band the angular
/// width matches the cone at the band's center radius and the radial
/// weight integral of r dr is exact.
inline double area_integral_at(const PolarSampler& grad_sq, double theta, const ConeSpec& c,
                               const std::vector<double>& radii) {
  double acc = 0.0;
  int nang = std::max(1, static_cast<int>(std::lround(2.0 * c.per_width * c.aperture)));
  for (std::size_t band = 0; band + 1 < radii.size(); ++band) {
    double width = radii[band + 1] - radii[band];
    for (int s = 0; s < c.radial_subdiv; ++s) {
      double r1 = radii[band] + width * s / c.radial_subdiv;
      double r2 = radii[band] + width * (s + 1) / c.radial_subdiv;
      double rm = 0.5 * (r1 + r2);
      double half = c.aperture * (1.0 - rm);
      double dt = 2.0 * half / nang;
      double radial_w = 0.5 * (r2 * r2 - r1 * r1);
      for (int a = 0; a < nang; ++a) {
        double t = theta - half + (a + 0.5) * dt;
        acc += grad_sq(rm, t) * dt * radial_w;
      }
    }
  }
  return std::sqrt(acc);
}

inline BoundaryFunction area_integral_sampled(const CircleGrid& g, const ConeSpec& c,
                                              const PolarSampler& grad_sq) {
  auto radii = cone_radii(c);
  std::vector<double> v(static_cast<std::size_t>(g.n_cells()));
  for (int j = 0; j < g.n_cells(); ++j)
    v[static_cast<std::size_t>(j)] = area_integral_at(grad_sq, g.midpoint(j), c, radii);
  return BoundaryFunction(g, v);
}

inline BoundaryFunction area_integral(const DiskFunction& u, const CircleGrid& g,
                                      const ConeSpec& cone = {}) {
  return area_integral_sampled(g, cone,
                               [&u](double r, double t) { return u.grad_sq(r, t); });
}

// --- envelope maximal function ------------------------------------------

/// Envelope maximal function: at each theta the max over cone samples of
/// the upper envelope on the window [theta - (1-r)/2, theta + (1-r)/2]
/// applied to the sampled modulus. The window width is fixed by the
/// definition, so the aperture is pinned to 1/2 regardless of the cone
/// passed in; the ladder and sampling density still come from the cone.
inline BoundaryFunction phi_max_sampled(const CircleGrid& g, const ModularFamily& fam,
                                        const PolarSampler& modulus, const ConeSpec& cone = {}) {
  ConeSpec c = cone;
  c.aperture = 0.5;
  auto radii = cone_radii(c);
  std::vector<double> out(static_cast<std::size_t>(g.n_cells()));
  std::vector<double> offs;
  for (int j = 0; j < g.n_cells(); ++j) {
    double theta = g.midpoint(j);
    double best = -std::numeric_limits<double>::infinity();
    for (double r : radii) {
      double start = std::fmod(theta - 0.5 * (1.0 - r) + two_pi, two_pi);
      ScalarFn env = fam.envelope_fn(Arc(start, 1.0 - r), Env::upper);
      cone_offsets(c, r, offs);
      for (double off : offs) best = std::max(best, env(modulus(r, theta + off)));
    }
    out[static_cast<std::size_t>(j)] = best;
  }
  return BoundaryFunction(g, out);
}

inline BoundaryFunction phi_max(const DiskFunction& u, const CircleGrid& g,
                                const ModularFamily& fam, const ConeSpec& cone = {}) {
  return phi_max_sampled(g, fam, [&u](double r, double t) { return std::abs(u.eval(r, t)); },
                         cone);
}

/// Radial companion of phi_max: lower envelope on the same windows,
/// evaluated along the center ray only.
inline BoundaryFunction phi_radial(const DiskFunction& u, const CircleGrid& g,
                                   const ModularFamily& fam, const ConeSpec& cone = {}) {
  ConeSpec c = cone;
  c.aperture = 0.5;
  auto radii = cone_radii(c);
  std::vector<double> out(static_cast<std::size_t>(g.n_cells()));
  for (int j = 0; j < g.n_cells(); ++j) {
    double theta = g.midpoint(j);
    double best = -std::numeric_limits<double>::infinity();
    for (double r : radii) {
      double start = std::fmod(theta - 0.5 * (1.0 - r) + two_pi, two_pi);
      double val = fam.envelope(Arc(start, 1.0 - r), std::abs(u.eval(r, theta)), Env::lower);
      best = std::max(best, val);
    }
    out[static_cast<std::size_t>(j)] = best;
  }
  return BoundaryFunction(g, out);
}

// --- maximal control ----------------------------------------------------

struct MaxControlReport {
  double input_modular = 0.0;   // composed modular of the base function
  double output_modular = 0.0;  // composed modular of the maximal function
  double bound = 0.0;           // the assumed bound A on the input
  bool precondition_ok = false;
  double b_hat = 0.0;  // realized output bound, equals output_modular
};

/// Composed-modular control: checks the input bound and reports the
/// realized bound on the maximal side. The caller picks the maximal
/// operator by supplying base and maxed (nontangential max, M_HL, ...).
inline MaxControlReport max_control_report(const ModularFamily& inner,
                                           const ModularFamily& outer,
                                           const BoundaryFunction& base,
                                           const BoundaryFunction& maxed, double A) {
  MaxControlReport rep;
  rep.bound = A;
  rep.input_modular = modular_composed(outer, inner, base);
  rep.output_modular = modular_composed(outer, inner, maxed);
  rep.precondition_ok = rep.input_modular <= A;
  rep.b_hat = rep.output_modular;
  return rep;
}

inline MaxControlReport check_max_control(const DiskFunction& u, const CircleGrid& g,
                                          const ConeSpec& cone, const ModularFamily& inner,
                                          const ModularFamily& outer, double A) {
  return max_control_report(inner, outer, slice_modulus(u, g, 1.0), nt_max(u, g, cone), A);
}

inline MaxControlReport check_hl_control(const BoundaryFunction& f, const ModularFamily& inner,
                                         const ModularFamily& outer, double A) {
  return max_control_report(inner, outer, f, hl_maximal(f), A);
}

}  // namespace orlicz

#endif  // ORLICZ_HARMONIC_HPP

#ifndef ORLICZ_CATALOG_HPP
#define ORLICZ_CATALOG_HPP

// Named catalogs: exponent functions, modular-family kernels, and the
// boundary/disc test functions the command-line tool exposes.

#include <cmath>
#include <stdexcept>
#include <string>

#include "orlicz/modular.hpp"

namespace orlicz {

// --- exponent functions -------------------------------------------------

inline ScalarFn exponent_constant(double p) {
  return [p](double) { return p; };
}

/// Smooth exponent oscillating between lo and hi; C^1, hence log-Holder.
inline ScalarFn exponent_smooth(double lo, double hi) {
  return [lo, hi](double x) { return lo + (hi - lo) * 0.5 * (1.0 + std::sin(x)); };
}

/// Jump from lo to hi at x = pi.
inline ScalarFn exponent_step(double lo, double hi) {
  return [lo, hi](double x) {
    double y = std::fmod(x, two_pi);
    if (y < 0) y += two_pi;
    return y < 3.14159265358979323846 ? lo : hi;
  };
}

/// Holder-continuous with exponent 1/s at x = 0; rougher than smooth but
/// still continuous.
inline ScalarFn exponent_holder(double lo, double hi, double s) {
  if (!(s >= 1)) throw std::invalid_argument("exponent_holder: s must be >= 1");
  return [lo, hi, s](double x) {
    return lo + (hi - lo) * std::pow(std::fabs(std::sin(0.5 * x)), 1.0 / s);
  };
}

// --- kernels ------------------------------------------------------------

inline Kernel kernel_power() {
  Kernel k;
  k.eval = [](double p, double t) { return std::pow(t, p); };
  k.name = "t^p";
  return k;
}

inline Kernel kernel_floored_power() {
  Kernel k;
  k.eval = [](double p, double t) { return std::max(1.0, std::pow(t, p)); };
  k.name = "max(1,t^p)";
  return k;
}

/// 1 for t <= 1, max(t^p, (1+log t)^s) beyond.
inline Kernel kernel_log_type(double s) {
  if (!(s > 0)) throw std::invalid_argument("kernel_log_type: s must be positive");
  Kernel k;
  k.eval = [s](double p, double t) {
    if (t <= 1.0) return 1.0;
    return std::max(std::pow(t, p), std::pow(1.0 + std::log(t), s));
  };
  k.name = "log-type(s=" + std::to_string(s) + ")";
  return k;
}

/// exp(t p c); the linear-in-t exponential used under log precomposition.
inline Kernel kernel_exp_linear(double c) {
  if (!(c > 0)) throw std::invalid_argument("kernel_exp_linear: factor must be positive");
  Kernel k;
  k.eval = [c](double p, double t) { return std::exp(t * p * c); };
  k.name = "exp(tpc)";
  return k;
}

/// max(exp(t p s / q), (1+t)^s).
inline Kernel kernel_exp_family(double s, double q) {
  if (!(s > 0) || !(q > 0))
    throw std::invalid_argument("kernel_exp_family: s and q must be positive");
  Kernel k;
  k.eval = [s, q](double p, double t) {
    return std::max(std::exp(t * p * s / q), std::pow(1.0 + t, s));
  };
  k.name = "exp-family";
  return k;
}

// --- scalar outer functions --------------------------------------------

inline ScalarFn psi_power(double e) {
  return [e](double t) { return std::pow(t, e); };
}

/// t below 1, t^e beyond: the convex piecewise power that stays superlinear
/// near 0.
inline ScalarFn psi_piecewise_power(double e) {
  return [e](double t) { return t <= 1.0 ? t : std::pow(t, e); };
}

// --- named families -----------------------------------------------------

struct FamilyParams {
  double p = 2.0;          // constant exponent
  double p_lo = 1.5;
  double p_hi = 2.5;
  double s = 2.0;
  double q = 1.0;
  int env_cells = 2048;
};

/// Families by catalog name. theta-composition builds max(1, t^p(x)) the
/// long way round, as psi(exp-kernel(log+ t)) with psi a pure power, so the
/// composed family can be compared against its closed form.
inline ModularFamily make_family(const std::string& name, const FamilyParams& par = {}) {
  if (!(par.p >= 0) || !(par.p_lo >= 0) || !(par.p_hi >= par.p_lo))
    throw std::invalid_argument("make_family: exponent parameters out of range");
  if (name == "const-exp")
    return ModularFamily(exponent_constant(par.p), kernel_power(), par.env_cells);
  if (name == "var-exp-smooth")
    return ModularFamily(exponent_smooth(par.p_lo, par.p_hi), kernel_power(), par.env_cells);
  if (name == "var-exp-step")
    return ModularFamily(exponent_step(par.p_lo, par.p_hi), kernel_power(), par.env_cells);
  if (name == "var-exp-floored")
    return ModularFamily(exponent_smooth(par.p_lo, par.p_hi), kernel_floored_power(),
                         par.env_cells);
  if (name == "log-type")
    return ModularFamily(exponent_smooth(par.p_lo, par.p_hi), kernel_log_type(par.s),
                         par.env_cells);
  if (name == "exp-family")
    return ModularFamily(exponent_smooth(par.p_lo, par.p_hi), kernel_exp_family(par.s, par.q),
                         par.env_cells);
  if (name == "theta-composition") {
    if (!(par.q > 0) || !(par.q < par.p_lo))
      throw std::invalid_argument("make_family: theta-composition needs 0 < q < p_lo");
    ModularFamily base(exponent_smooth(par.p_lo, par.p_hi), kernel_exp_linear(par.q / par.p_lo),
                       par.env_cells);
    return compose_outer(precompose_log_plus(base), psi_power(par.p_lo / par.q), "theta");
  }
  throw std::invalid_argument("make_family: unknown family '" + name + "'");
}

}  // namespace orlicz

#endif  // ORLICZ_CATALOG_HPP

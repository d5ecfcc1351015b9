#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "orlicz/catalog.hpp"
#include "orlicz/circle.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/harmonic.hpp"
#include "orlicz/modular.hpp"
#include "support.hpp"

using namespace orlicz;
using Catch::Approx;

namespace {

constexpr double pi = two_pi / 2.0;

void check_derivative(const DiskEvaluator& f, Cx z) {
  double h = 1e-6;
  Cx fd = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
  Cx an = f.derivative(z);
  REQUIRE(std::abs(fd - an) <= 1e-5 * (1.0 + std::abs(an)));
}

double poisson_kernel(double r, double t) {
  return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(t) + r * r);
}

BoundaryFunction signed_step(const CircleGrid& g, unsigned seed, double scale) {
  testsup::Rng rng(seed);
  BoundaryFunction f = testsup::random_step(g, rng, 10, 2.0 * scale);
  std::vector<double> v(f.values());
  for (auto& x : v) x -= scale;
  return BoundaryFunction(g, v);
}

}  // namespace

TEST_CASE("blaschke products are inner functions vanishing at their zeros") {
  std::vector<Cx> zeros{{0.5, 0.0}, {-0.3, 0.4}, {0.0, 0.0}};
  DiskEvaluator b = blaschke(zeros);
  CircleGrid g(16);
  for (int j = 0; j < g.n_cells(); ++j)
    REQUIRE(std::abs(b.eval(std::polar(1.0, g.midpoint(j)))) == Approx(1.0).margin(1e-12));
  for (double r : {0.2, 0.8}) {
    for (double t : {0.5, 2.0, 4.5}) REQUIRE(std::abs(b.eval(std::polar(r, t))) < 1.0);
  }
  REQUIRE(std::abs(b.eval({0.5, 0.0})) <= 1e-12);
  REQUIRE(std::abs(b.eval({0.0, 0.0})) <= 1e-12);
  check_derivative(b, {0.3, 0.2});
  REQUIRE_THROWS_AS(blaschke({{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("singular inner function matches the exponentiated kernel") {
  DiskEvaluator s = singular_inner({{0.0, 1.0}});
  DiskEvaluator inv = inverse_singular_inner({{0.0, 1.0}});
  for (double r : {0.3, 0.9}) {
    for (double t : {0.3, 1.4, 3.0, 5.2}) {
      Cx z = std::polar(r, t);
      REQUIRE(std::abs(inv.eval(z)) == Approx(std::exp(poisson_kernel(r, t))).epsilon(1e-12));
      REQUIRE(std::abs(s.eval(z)) <= 1.0);
      REQUIRE(std::abs(s.eval(z) * inv.eval(z) - 1.0) <= 1e-12);
    }
  }
  CircleGrid g(16);  // the atom sits on a cell boundary, midpoints avoid it
  for (int j = 0; j < g.n_cells(); ++j)
    REQUIRE(std::abs(s.eval(std::polar(1.0, g.midpoint(j)))) == Approx(1.0).margin(1e-12));
  check_derivative(s, {0.1, -0.4});
  check_derivative(inv, {0.1, -0.4});
  REQUIRE_THROWS_AS(singular_inner({{1.0, -0.5}}), std::invalid_argument);
}

TEST_CASE("outer function reproduces its boundary modulus") {
  CircleGrid g(64);
  BoundaryFunction l = signed_step(g, 101, 0.75);
  DiskEvaluator f = outer(l);

  double mean = integrate(l) / two_pi;
  REQUIRE(std::abs(f.eval({0.0, 0.0}) - std::exp(mean)) <= 1e-12 * std::exp(mean));
  for (int j = 0; j < g.n_cells(); ++j) {
    double got = std::abs(f.eval(std::polar(1.0, g.midpoint(j))));
    REQUIRE(got == Approx(std::exp(l.value(j))).epsilon(1e-9));
  }
  check_derivative(f, {0.4, 0.3});

  std::vector<double> ones(64, 1.0);
  DiskEvaluator e = outer(BoundaryFunction(g, ones));
  for (Cx z : {Cx{0.0, 0.0}, Cx{0.3, 0.4}, Cx{0.0, -0.7}})
    REQUIRE(std::abs(e.eval(z) - std::exp(1.0)) <= 1e-12 * std::exp(1.0));
}

TEST_CASE("outer parts multiply back together and bound each other") {
  CircleGrid g(64);
  BoundaryFunction l = signed_step(g, 102, 1.0);
  DiskEvaluator f = outer(l);
  DiskEvaluator fb = outer(l, OuterPart::positive);
  DiskEvaluator fs = outer(l, OuterPart::negative);
  for (Cx z : {Cx{0.0, 0.0}, Cx{0.5, 0.2}, Cx{-0.3, 0.6}, Cx{0.1, -0.8}}) {
    REQUIRE(std::abs(fb.eval(z) * fs.eval(z) - f.eval(z)) <= 1e-9 * (1.0 + std::abs(f.eval(z))));
    REQUIRE(std::abs(fs.eval(z)) <= 1.0 + 1e-12);
    REQUIRE(std::abs(fb.eval(z)) >= 1.0 - 1e-12);
  }

  // the log of the modulus-increasing part is the harmonic extension of
  // the clipped boundary data; cross-check against the series extension
  std::vector<double> clip(l.values());
  for (auto& x : clip) x = std::max(x, 0.0);
  DiskFunction u = poisson_extend(BoundaryFunction(g, clip));
  for (double t : {0.4, 1.7, 3.3, 5.9}) {
    double lhs = std::log(std::abs(fb.eval(std::polar(0.7, t))));
    REQUIRE(lhs == Approx(u.eval(0.7, t).real()).margin(1e-9));
  }
}

TEST_CASE("factorization multiplies its parts and keeps the boundary modulus") {
  CircleGrid g(32);
  FactorizationData data{{{0.4, 0.1}, {-0.2, -0.5}},
                         {{g.boundary(8), 0.6}},
                         signed_step(g, 103, 0.5)};
  DiskEvaluator f = factorized(data);
  DiskEvaluator b = blaschke(data.zeros);
  DiskEvaluator s = singular_inner(data.atoms);
  DiskEvaluator o = outer(data.log_modulus);
  for (Cx z : {Cx{0.2, 0.3}, Cx{-0.6, 0.1}, Cx{0.0, 0.0}}) {
    Cx manual = b.eval(z) * s.eval(z) * o.eval(z);
    REQUIRE(std::abs(f.eval(z) - manual) <= 1e-12 * (1.0 + std::abs(manual)));
  }
  // inner factors have unit boundary modulus, so |f| = e^l there
  for (int j = 0; j < g.n_cells(); ++j) {
    double got = std::abs(f.eval(std::polar(1.0, g.midpoint(j))));
    REQUIRE(got == Approx(std::exp(data.log_modulus.value(j))).epsilon(1e-9));
  }
  check_derivative(f, {0.25, -0.15});
}

TEST_CASE("pole power evaluator agrees with its power series") {
  DiskEvaluator f = pole_power(0.9, 0.25);
  Cx z = std::polar(0.5, 0.8);
  Cx series = 0.0, term = 1.0, zp = 1.0;
  for (int k = 0; k < 200; ++k) {
    series += term * zp;
    term *= 0.9 * (0.25 + k) / (k + 1);
    zp *= z;
  }
  REQUIRE(std::abs(f.eval(z) - series) <= 1e-10 * std::abs(series));
  check_derivative(f, z);
  REQUIRE_THROWS_AS(pole_power(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("radial modular scan peaks at the deepest radius for a bounded function") {
  CircleGrid g(64);
  ModularFamily fam = make_family("const-exp", {2.0, 1.5, 2.5, 2.0, 1.0, 64});
  DiskEvaluator f = pole_power(0.9, 0.25);
  PolarSampler mod = [&f](double r, double t) { return std::abs(f.eval(std::polar(r, t))); };
  RadialReport rep = rho_hardy(mod, g, fam);
  auto radii = geometric_radii();
  REQUIRE(rep.finite);
  REQUIRE(!rep.diverged);
  REQUIRE(rep.argmax_r == radii.back());
  REQUIRE(rep.last_delta >= 0.0);
  REQUIRE(rep.value >= two_pi);  // the value at the origin circle is 2 pi

  std::vector<double> bdy(64);
  for (int j = 0; j < 64; ++j) bdy[static_cast<std::size_t>(j)] = mod(1.0, g.midpoint(j));
  REQUIRE(rep.value <= modular(fam, BoundaryFunction(g, bdy)) * (1.0 + 1e-9));

  DiskEvaluator inv = inverse_singular_inner({{0.0, 1.0}});
  PolarSampler big = [&inv](double r, double t) { return std::abs(inv.eval(std::polar(r, t))); };
  RadialReport bad = rho_hardy(big, g, fam);
  REQUIRE(bad.diverged);
  REQUIRE(!bad.finite);
}

TEST_CASE("hardy norm equals one when the threshold is the achieved supremum") {
  CircleGrid g(64);
  ModularFamily fam = make_family("const-exp", {2.0, 1.5, 2.5, 2.0, 1.0, 64});
  DiskEvaluator f = pole_power(0.9, 0.25);
  PolarSampler mod = [&f](double r, double t) { return std::abs(f.eval(std::polar(r, t))); };
  auto radii = geometric_radii(1.0 - 1.0 / 256.0);
  RadialReport rho = rho_hardy(mod, g, fam, radii);
  REQUIRE(rho.finite);
  HardyNormReport nrm = norm_hardy(mod, g, fam, radii, rho.value);
  REQUIRE(!nrm.infinite);
  REQUIRE(nrm.value == Approx(1.0).epsilon(1e-6));

  PolarSampler zero = [](double, double) { return 0.0; };
  REQUIRE(norm_hardy(zero, g, fam, radii).value == 0.0);

  // at coarse resolution the sampled reciprocal singular function is
  // huge but finite, so the norm is too
  DiskEvaluator inv = inverse_singular_inner({{0.0, 1.0}});
  PolarSampler big = [&inv](double r, double t) { return std::abs(inv.eval(std::polar(r, t))); };
  HardyNormReport large = norm_hardy(big, g, fam);
  REQUIRE(large.at_unit.diverged);
  REQUIRE(!large.infinite);
  REQUIRE(large.value > 1e6);

  // fine enough sampling overflows the modular at every scale and the
  // infinite norm propagates
  CircleGrid gf(2048);
  HardyNormReport none = norm_hardy(big, gf, fam);
  REQUIRE(none.infinite);
  REQUIRE(none.at_unit.diverged);
}

TEST_CASE("mean convergence separates inner functions from their reciprocals") {
  CircleGrid g(256);
  auto sampler = [](const DiskEvaluator& f) {
    return PolarSampler(
        [f](double r, double t) { return std::abs(f.eval(std::polar(r, t))); });
  };
  SmirnovReport s_in = smirnov_test(sampler(singular_inner({{0.0, 1.0}})), g);
  REQUIRE(s_in.smirnov);
  REQUIRE(s_in.gap == Approx(0.0).margin(1e-12));

  SmirnovReport s_out = smirnov_test(sampler(inverse_singular_inner({{0.0, 1.0}})), g);
  REQUIRE(s_out.conclusive);
  REQUIRE(!s_out.smirnov);
  REQUIRE(s_out.gap > 5.0);
  REQUIRE(s_out.boundary_value == Approx(0.0).margin(1e-9));

  SmirnovReport s_b = smirnov_test(sampler(blaschke({{0.5, 0.0}, {-0.3, 0.4}})), g);
  REQUIRE(s_b.smirnov);

  SmirnovReport s_f = smirnov_test(sampler(outer(signed_step(g, 104, 1.0))), g);
  REQUIRE(s_f.smirnov);
}

TEST_CASE("finiteness of the radial scan matches the boundary across the classical range") {
  CircleGrid g(256);
  BoundaryFunction l = signed_step(g, 105, 1.0);
  struct Member {
    const char* name;
    DiskEvaluator f;
  };
  std::vector<Member> members;
  members.push_back({"blaschke", blaschke({{0.5, 0.0}, {-0.3, 0.4}})});
  members.push_back({"singular", singular_inner({{0.0, 0.7}})});
  members.push_back({"outer", outer(l)});
  members.push_back({"interior pole", pole_power(0.9, 0.25)});
  members.push_back({"boundary pole", pole_power(1.0, 12.0)});

  for (double p : {0.5, 1.0, 2.0}) {
    ModularFamily fam = make_family("const-exp", {p, 1.5, 2.5, 2.0, 1.0, 64});
    for (const Member& m : members) {
      INFO(m.name << " at p = " << p);
      PolarSampler mod = [&m](double r, double t) {
        return std::abs(m.f.eval(std::polar(r, t)));
      };
      RadialReport rep = rho_hardy(mod, g, fam);
      std::vector<double> bdy(256);
      for (int j = 0; j < 256; ++j) bdy[static_cast<std::size_t>(j)] = mod(1.0, g.midpoint(j));
      bool boundary_finite = modular(fam, BoundaryFunction(g, bdy)) < 1e6;
      REQUIRE(rep.finite == boundary_finite);
    }
  }

  // the reciprocal singular function is the counterexample: boundary
  // modulus stays trivial while the radial scan blows up
  ModularFamily fam = make_family("const-exp", {2.0, 1.5, 2.5, 2.0, 1.0, 64});
  DiskEvaluator inv = inverse_singular_inner({{0.0, 1.0}});
  PolarSampler mod = [&inv](double r, double t) { return std::abs(inv.eval(std::polar(r, t))); };
  RadialReport rep = rho_hardy(mod, g, fam);
  std::vector<double> bdy(256);
  for (int j = 0; j < 256; ++j) bdy[static_cast<std::size_t>(j)] = mod(1.0, g.midpoint(j));
  REQUIRE(!rep.finite);
  REQUIRE(modular(fam, BoundaryFunction(g, bdy)) == Approx(two_pi).epsilon(1e-9));
}

TEST_CASE("equivalence report is finite and ordered for a bounded analytic function") {
  CircleGrid g(128);
  ModularFamily theta = make_family("var-exp-floored", {2.0, 1.5, 2.5, 2.0, 1.0, 256});
  DiskEvaluator f = pole_power(0.9, 0.25);
  EquivalenceReport rep = equivalence_report(f, g, theta);
  REQUIRE(rep.all_finite);
  REQUIRE(rep.v_star_finite);
  REQUIRE(rep.hardy.value <= rep.rho_f_star * (1.0 + 1e-9));
  REQUIRE(rep.rho_u_star <= rep.rho_f_star * (1.0 + 1e-9));
  REQUIRE(rep.rho_v_star <= rep.rho_f_star * (1.0 + 1e-9));
  REQUIRE(rep.rho_boundary >= rep.hardy.value * (1.0 - 1e-9));
  REQUIRE(rep.boundary_sensitivity < 0.05);
  REQUIRE(rep.input_within_bound);

  EquivalenceOptions strict;
  strict.bound = rep.rho_boundary / 2.0;
  REQUIRE(!equivalence_report(f, g, theta, strict).input_within_bound);
}

TEST_CASE("composed theta family reproduces the floored power family") {
  FamilyParams par{2.0, 1.5, 2.5, 2.0, 1.0, 128};
  ModularFamily composed = make_family("theta-composition", par);
  ModularFamily direct = make_family("var-exp-floored", par);
  CircleGrid g(64);
  std::vector<double> ts{0.0, 0.3, 1.0, 2.0, 7.5, 120.0};
  REQUIRE(max_rel_deviation(composed, direct, g, ts) < 1e-9);
}

TEST_CASE("equivalence report is stable under grid refinement") {
  ModularFamily theta = make_family("var-exp-floored", {2.0, 1.5, 2.5, 2.0, 1.0, 256});
  DiskEvaluator f = pole_power(0.9, 0.25);
  EquivalenceReport a = equivalence_report(f, CircleGrid(256), theta);
  EquivalenceReport b = equivalence_report(f, CircleGrid(512), theta);
  auto close = [](double x, double y) { return std::abs(x - y) <= 0.2 * std::max(x, y); };
  REQUIRE(close(a.hardy.value, b.hardy.value));
  REQUIRE(close(a.rho_f_star, b.rho_f_star));
  REQUIRE(close(a.rho_u_star, b.rho_u_star));
  REQUIRE(close(a.rho_area, b.rho_area));
  REQUIRE(close(a.rho_boundary, b.rho_boundary));
}

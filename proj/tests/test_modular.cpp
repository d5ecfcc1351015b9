#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "orlicz/catalog.hpp"
#include "orlicz/circle.hpp"
#include "orlicz/modular.hpp"
#include "support.hpp"

using namespace orlicz;
using Catch::Approx;

TEST_CASE("generalized inverse") {
  ScalarFn sq = [](double t) { return t * t; };
  CHECK(generalized_inverse(sq, 9.0, 10.0) == Approx(3.0).epsilon(1e-10));
  ScalarFn cube = [](double t) { return t * t * t; };
  CHECK(generalized_inverse(cube, 1e-3, 10.0) == Approx(0.1).epsilon(1e-10));
  CHECK_THROWS(generalized_inverse(sq, 1000.0, 10.0));
  // target below the range: empty constraint set
  ScalarFn floored = [](double t) { return std::max(1.0, t); };
  CHECK(generalized_inverse(floored, 0.5, 10.0) == 0.0);
  CHECK(generalized_inverse(sq, 100.0, 10.0) == 10.0);
}

TEST_CASE("generalized inverse lands on the right edge of a flat") {
  auto k = kernel_log_type(2.0);
  ScalarFn phi = [&](double t) { return k.eval(0.0, t); };
  double inv = generalized_inverse(phi, 1.0, 10.0);
  CHECK(inv == Approx(1.0).epsilon(1e-9));
  // dense scan oracle for the same value
  double best = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    double t = 3.0 * i / 200000.0;
    if (phi(t) <= 1.0) best = t;
  }
  CHECK(inv == Approx(best).margin(1e-4));
}

TEST_CASE("pointwise family values") {
  ModularFamily p2(exponent_constant(2.0), kernel_power(), 64);
  CHECK(p2(0.3, 3.0) == Approx(9.0).epsilon(1e-14));
  ModularFamily lt(exponent_constant(0.0), kernel_log_type(2.0), 64);
  CHECK(lt(1.0, std::exp(1.0)) == Approx(4.0).epsilon(1e-12));
  CHECK(lt(1.0, 0.5) == 1.0);
}

TEST_CASE("theta composition collapses to its closed form") {
  FamilyParams par;
  par.p_lo = 1.5;
  par.p_hi = 2.5;
  par.q = 1.0;
  par.env_cells = 256;
  ModularFamily theta = make_family("theta-composition", par);
  auto p = exponent_smooth(par.p_lo, par.p_hi);
  for (double x : {0.0, 1.0, 2.5, 4.0, 6.0}) {
    for (double t : {0.0, 0.3, 1.0, 2.0, 50.0, 1e6}) {
      double expect = std::max(1.0, std::pow(t, p(x)));
      CHECK(theta(x, t) == Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("modular integrals") {
  CircleGrid g(128);
  ModularFamily p2(exponent_constant(2.0), kernel_power(), 128);
  CHECK(modular(p2, BoundaryFunction(g, 1.0)) == Approx(two_pi).epsilon(1e-13));
  ModularFamily smooth = make_family("var-exp-smooth", {.env_cells = 128});
  CHECK(modular(smooth, BoundaryFunction(g, 0.0)) == 0.0);
}

TEST_CASE("squared log modular concentrated on a small set") {
  // f = e^{n sqrt(A)} on a set of measure 1/n^2, with n = 10, A = 4: the
  // modular is A and the norm at bound 1 is e^{(sqrt(A)-1) n}
  int n = 10;
  double A = 4.0;
  auto g = CircleGrid::from_breakpoints({0.0, 1.0 / (n * n)});
  BoundaryFunction f(g, std::vector<double>{std::exp(n * std::sqrt(A)), 0.0});
  ModularFamily log_sq =
      precompose_log_plus(ModularFamily(exponent_constant(2.0), kernel_power(), 64));
  CHECK(modular(log_sq, f) == Approx(A).epsilon(1e-9));
  CHECK(luxemburg_norm(log_sq, f, 1.0) ==
        Approx(std::exp((std::sqrt(A) - 1.0) * n)).epsilon(1e-6));
}

TEST_CASE("luxemburg norm closed forms and markers") {
  CircleGrid g(64);
  ModularFamily p2(exponent_constant(2.0), kernel_power(), 64);
  double c = 1.7;
  BoundaryFunction fc(g, c);
  CHECK(luxemburg_norm(p2, fc, 1.0) == Approx(c * std::sqrt(two_pi)).epsilon(1e-9));
  CHECK(luxemburg_norm(p2, fc, two_pi) == Approx(c).epsilon(1e-9));
  CHECK(luxemburg_norm(p2, BoundaryFunction(g, 0.0), 1.0) == 0.0);

  ModularFamily floored = make_family("var-exp-floored", {.env_cells = 64});
  CHECK(std::isinf(luxemburg_norm(floored, fc, 1.0)));  // modular never below 2 pi
}

TEST_CASE("norm homogeneity and monotonicity in the bound") {
  CircleGrid g(64);
  testsup::Rng rng(21);
  auto f = testsup::random_step(g, rng, 8, 3.0);
  ModularFamily fam = make_family("var-exp-smooth", {.env_cells = 64});
  double base = luxemburg_norm(fam, f, 1.0);
  std::vector<double> scaled(f.values());
  for (auto& v : scaled) v *= 2.5;
  CHECK(luxemburg_norm(fam, BoundaryFunction(g, scaled), 1.0) ==
        Approx(2.5 * base).epsilon(1e-9));
  CHECK(luxemburg_norm(fam, f, 0.5) >= base * (1.0 - 1e-10));
  CHECK(luxemburg_norm(fam, f, 2.0) <= base * (1.0 + 1e-10));
}

TEST_CASE("finite modular gives finite norm for vanishing families") {
  // needs Phi(0) = 0, so the floored kernels are excluded here
  CircleGrid g(64);
  testsup::Rng rng(5);
  auto f = testsup::random_step(g, rng, 8, 4.0);
  for (auto name : {"const-exp", "var-exp-smooth"}) {
    ModularFamily fam = make_family(name, {.env_cells = 64});
    REQUIRE(std::isfinite(modular(fam, f)));
    for (double a : {0.25, 1.0, 4.0}) CHECK(std::isfinite(luxemburg_norm(fam, f, a)));
  }
}

TEST_CASE("norm bisection agrees with the scan oracle") {
  CircleGrid g(64);
  ModularFamily fam = make_family("var-exp-smooth", {.env_cells = 64});
  for (std::uint64_t seed : {11u, 12u}) {
    testsup::Rng rng(seed);
    auto f = testsup::random_step(g, rng, 10, 6.0);
    double norm = luxemburg_norm(fam, f, 1.0);
    double oracle = testsup::norm_scan_oracle(fam, f, 1.0);
    CHECK(norm == Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("scaling identity between modified norms") {
  CircleGrid g(64);
  testsup::Rng rng(31);
  auto f = testsup::random_step(g, rng, 8, 2.0);
  ModularFamily fam = make_family("log-type", {.env_cells = 64});
  for (double a : {0.5, 3.0}) {
    ModularFamily scaled = scale_family(fam, a);
    CHECK(luxemburg_norm(scaled, f, a) == Approx(luxemburg_norm(fam, f, 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("envelopes dominate sampled points and nest") {
  ModularFamily fam = make_family("var-exp-smooth", {.env_cells = 256});
  CircleGrid g(256);
  testsup::Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int a = rng.uniform_int(200);
    int len = 4 + rng.uniform_int(40);
    Arc J(g.boundary(a), g.boundary(a + len) - g.boundary(a));
    Arc I(g.boundary(a + 1), g.boundary(a + len - 1) - g.boundary(a + 1));
    auto [plo_i, phi_i] = fam.exponent_range(I);
    auto [plo_j, phi_j] = fam.exponent_range(J);
    CHECK(plo_j <= plo_i);
    CHECK(phi_i <= phi_j);
    for (double t : {0.2, 1.0, 3.7, 40.0}) {
      double lo_j = fam.envelope(J, t, Env::lower), hi_j = fam.envelope(J, t, Env::upper);
      double lo_i = fam.envelope(I, t, Env::lower), hi_i = fam.envelope(I, t, Env::upper);
      CHECK(lo_j <= lo_i * (1 + 1e-14));
      CHECK(lo_i <= hi_i * (1 + 1e-14));
      CHECK(hi_i <= hi_j * (1 + 1e-14));
      for (int j = a; j < a + len; ++j) {
        double px = fam(g.midpoint(j), t);
        CHECK(lo_j <= px * (1 + 1e-14) + 1e-300);
        CHECK(px <= hi_j * (1 + 1e-14) + 1e-300);
      }
    }
  }
  // constant exponent: both envelopes coincide with the pointwise value
  ModularFamily cf = make_family("const-exp", {.env_cells = 64});
  Arc I(0.5, 1.0);
  for (double t : {0.3, 2.0, 9.0})
    CHECK(cf.envelope(I, t, Env::lower) == cf.envelope(I, t, Env::upper));
}

TEST_CASE("doubling constant estimates") {
  ModularFamily p2(exponent_constant(2.0), kernel_power(), 64);
  auto rep = doubling_constant(p2);
  CHECK(rep.value == Approx(4.0).epsilon(1e-12));
  CHECK_FALSE(rep.divergent);

  ModularFamily wide(exponent_smooth(1.0, 3.0), kernel_power(), 2048);
  auto rep2 = doubling_constant(wide);
  CHECK(rep2.value == Approx(8.0).epsilon(1e-6));
  CHECK_FALSE(rep2.divergent);

  ModularFamily expo(exponent_constant(1.0), kernel_exp_linear(1.0), 64);
  CHECK(doubling_constant(expo).divergent);

  CHECK(doubling_beta_bound(4.0, 2.0) == Approx(16.0).epsilon(1e-12));
}

TEST_CASE("envelope stability profiles across dyadic scales") {
  FamilyParams par;
  par.env_cells = 1024;

  ModularFamily cf = make_family("const-exp", par);
  auto c = sci_constant(cf, two_pi);
  CHECK(c.value == 1.0);
  CHECK(c.stable);
  CHECK_FALSE(c.divergent);

  ModularFamily smooth = make_family("var-exp-smooth", par);
  auto s = sci_constant(smooth, two_pi);
  CHECK(s.stable);
  CHECK_FALSE(s.divergent);
  CHECK(std::isfinite(s.value));

  par.p_lo = 1.0;
  par.p_hi = 3.0;
  ModularFamily step = make_family("var-exp-step", par);
  auto st = sci_constant(step, two_pi);
  CHECK(st.divergent);
  CHECK(st.growth_last > 1.5);
}

TEST_CASE("outer composition cannot worsen the stability constant") {
  ModularFamily fam = make_family("var-exp-floored", {.env_cells = 512});
  auto base = sci_constant(fam, two_pi);
  auto composed = sci_constant(compose_outer(fam, psi_power(2.0), "sq"), two_pi);
  CHECK(composed.value <= base.value * (1 + 1e-6));
}

TEST_CASE("family validation") {
  CHECK_THROWS(make_family("no-such-family"));
  CHECK_THROWS(ModularFamily(exponent_constant(-1.0), kernel_power(), 32));
  CHECK_THROWS(power_family(make_family("const-exp", {.env_cells = 32}), 1.0));
  CHECK_THROWS(kernel_log_type(0.0));
  FamilyParams bad;
  bad.q = 5.0;  // needs q < p_lo
  CHECK_THROWS(make_family("theta-composition", bad));
}

#ifndef TESTS_SUPPORT_HPP
#define TESTS_SUPPORT_HPP

// Shared test helpers: a deterministic RNG (fixed engine + explicit
// bit-to-double mapping, so sequences are identical across platforms),
// random step functions, and the dense-scan norm oracle.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "orlicz/circle.hpp"
#include "orlicz/modular.hpp"

namespace testsup {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return std::ldexp(static_cast<double>(eng_() >> 11), -53); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 eng_;
};

/// Step function with a random number of constant blocks on a uniform grid.
inline orlicz::BoundaryFunction random_step(const orlicz::CircleGrid& grid, Rng& rng,
                                            int max_blocks = 16, double scale = 1.0) {
  int n = grid.n_cells();
  int blocks = 2 + rng.uniform_int(max_blocks - 1);
  std::vector<int> cuts{0};
  for (int b = 1; b < blocks; ++b) cuts.push_back(rng.uniform_int(n));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(n);
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    double v = rng.uniform() * scale;
    for (int j = cuts[b]; j < cuts[b + 1]; ++j) vals[static_cast<std::size_t>(j)] = v;
  }
  return orlicz::BoundaryFunction(grid, vals);
}

/// Norm by brute scan: passes of `points` log-spaced lambdas, each pass
/// narrowing to the bracket where the modular condition first flips, until
/// the bracket is tighter than 1e-10 relative.
inline double norm_scan_oracle(const orlicz::ModularFamily& fam,
                               const orlicz::BoundaryFunction& f, double a,
                               int points = 10000, double lo = 1e-12, double hi = 1e12) {
  for (int stage = 0; stage < 4; ++stage) {
    double step = (std::log(hi) - std::log(lo)) / (points - 1);
    int flip = -1;
    double lam_flip = hi;
    for (int i = 0; i < points; ++i) {
      double lam = std::exp(std::log(lo) + step * i);
      if (orlicz::modular_scaled(fam, f, 1.0 / lam) < a) {
        flip = i;
        lam_flip = lam;
        break;
      }
    }
    if (flip < 0) return std::numeric_limits<double>::infinity();
    if (flip == 0) return lam_flip;
    double new_lo = std::exp(std::log(lo) + step * (flip - 1));
    lo = new_lo;
    hi = lam_flip;
    if (hi / lo - 1.0 < 1e-10) break;
  }
  return hi;
}

}  // namespace testsup

#endif

#ifndef ORLICZ_CIRCLE_HPP
#define ORLICZ_CIRCLE_HPP

// Unit-circle geometry: arcs with wraparound, cell partitions of [0, 2pi),
// piecewise-constant boundary functions, cell-exact integration and
// level-set decomposition into maximal arcs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace orlicz {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Half-open arc [start, start+length) on the circle, angles in radians.
/// length == two_pi denotes the full circle.
struct Arc {
  double start = 0.0;
  double length = two_pi;

  Arc() = default;
  Arc(double s, double len) : start(s), length(len) {
    if (!(len > 0.0) || len > two_pi + 1e-12)
      throw std::invalid_argument("Arc: length must be in (0, 2pi]");
    if (length > two_pi) length = two_pi;
  }

  double end() const { return start + length; }  // may exceed 2pi
  bool full() const { return length >= two_pi; }

  /// Membership with wraparound: x is in [start, start+length) mod 2pi.
  bool contains(double x) const {
    if (full()) return true;
    double d = std::fmod(x - start, two_pi);
    if (d < 0) d += two_pi;
    return d < length;
  }

  /// Midpoint angle, reduced to [0, 2pi).
  double midpoint() const {
    double m = start + 0.5 * length;
    if (m >= two_pi) m -= two_pi;
    return m;
  }
};

inline double measure(const Arc& a) { return a.length; }

/// Partition of [0, 2pi) into cells. The common case is N uniform cells,
/// cell j = [2pi j/N, 2pi (j+1)/N); arbitrary breakpoint partitions are
/// supported so that functions like a characteristic of measure exactly
/// 1/n^2 stay cell-exact.
class CircleGrid {
 public:
  explicit CircleGrid(int n_cells) : uniform_(true) {
    if (n_cells <= 0) throw std::invalid_argument("CircleGrid: n_cells must be positive");
    bounds_.resize(static_cast<std::size_t>(n_cells) + 1);
    for (int j = 0; j <= n_cells; ++j)
      bounds_[static_cast<std::size_t>(j)] = two_pi * static_cast<double>(j) / n_cells;
  }

  /// Partition from sorted breakpoints; first must be 0, values < 2pi.
  static CircleGrid from_breakpoints(std::vector<double> pts) {
    if (pts.empty() || pts.front() != 0.0)
      throw std::invalid_argument("CircleGrid: breakpoints must start at 0");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (!(pts[i] < pts[i + 1]))
        throw std::invalid_argument("CircleGrid: breakpoints must be strictly increasing");
    if (pts.back() >= two_pi)
      throw std::invalid_argument("CircleGrid: breakpoints must lie in [0, 2pi)");
    CircleGrid g;
    g.uniform_ = false;
    g.bounds_ = std::move(pts);
    g.bounds_.push_back(two_pi);
    return g;
  }

  int n_cells() const { return static_cast<int>(bounds_.size()) - 1; }
  bool uniform() const { return uniform_; }

  double boundary(int j) const { return bounds_[static_cast<std::size_t>(j)]; }
  double cell_measure(int j) const { return boundary(j + 1) - boundary(j); }
  double midpoint(int j) const { return 0.5 * (boundary(j) + boundary(j + 1)); }
  Arc cell(int j) const { return Arc(boundary(j), cell_measure(j)); }

  /// Index of the cell containing angle x (reduced mod 2pi).
  int cell_index(double x) const {
    double y = std::fmod(x, two_pi);
    if (y < 0) y += two_pi;
    if (uniform_) {
      int n = n_cells();
      int j = static_cast<int>(y / two_pi * n);
      if (j >= n) j = n - 1;
      // guard against rounding at cell boundaries
      while (j > 0 && y < boundary(j)) --j;
      while (j + 1 < n && y >= boundary(j + 1)) ++j;
      return j;
    }
    auto it = std::upper_bound(bounds_.begin(), bounds_.end(), y);
    int j = static_cast<int>(it - bounds_.begin()) - 1;
    if (j < 0) j = 0;
    if (j >= n_cells()) j = n_cells() - 1;
    return j;
  }

  bool operator==(const CircleGrid& o) const { return bounds_ == o.bounds_; }

 private:
  CircleGrid() = default;
  bool uniform_ = true;
  std::vector<double> bounds_;  // size n_cells+1, bounds_[0]=0, back()=2pi
};

/// Real-valued function on the circle, piecewise constant on grid cells.
/// Values may be signed (log-moduli, harmonic boundary data); modulars
/// and level sets use them as given.
class BoundaryFunction {
 public:
  BoundaryFunction(CircleGrid grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n_cells())
      throw std::invalid_argument("BoundaryFunction: one value per cell required");
    for (double v : values_)
      if (!std::isfinite(v))
        throw std::invalid_argument("BoundaryFunction: values must be finite");
  }

  BoundaryFunction(CircleGrid grid, double constant)
      : BoundaryFunction(std::move(grid),
                         std::vector<double>(static_cast<std::size_t>(grid.n_cells()), constant)) {}

  const CircleGrid& grid() const { return grid_; }
  int n_cells() const { return grid_.n_cells(); }
  double value(int j) const { return values_[static_cast<std::size_t>(j)]; }
  double& value(int j) { return values_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& values() const { return values_; }

  double operator()(double x) const { return value(grid_.cell_index(x)); }

 private:
  CircleGrid grid_;
  std::vector<double> values_;
};

/// Cells whose midpoint lies in `within`, in circular scan order starting
/// from the first cell at or after within.start. For the full circle this
/// is 0..N-1.
inline std::vector<int> cells_in(const CircleGrid& g, const Arc& within) {
  int n = g.n_cells();
  std::vector<int> out;
  if (within.full()) {
    out.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = j;
    return out;
  }
  int j0 = g.cell_index(within.start);
  for (int k = 0; k < n; ++k) {
    int j = (j0 + k) % n;
    if (within.contains(g.midpoint(j))) out.push_back(j);
  }
  return out;
}

/// Maximal disjoint arcs of {x in within : f(x) > lambda}, as unions of
/// cells clipped to `within`, sorted by start angle. Empty level set gives
/// an empty list. For cell-aligned windows arc lengths are single boundary
/// differences, so measure additivity against the input arc is exact.
inline std::vector<Arc> level_set_arcs(const BoundaryFunction& f, double lambda,
                                       const Arc& within = Arc()) {
  const CircleGrid& g = f.grid();
  int n = g.n_cells();
  std::vector<int> cells = cells_in(g, within);

  // runs of qualifying cells, consecutive mod n, as (first, last) indices
  std::vector<std::pair<int, int>> runs;
  for (int j : cells) {
    if (!(f.value(j) > lambda)) continue;
    if (!runs.empty() && (runs.back().second + 1) % n == j)
      runs.back().second = j;
    else
      runs.emplace_back(j, j);
  }
  if (runs.empty()) return {};

  if (within.full() && runs.size() == 1 && runs[0].first == 0 && runs[0].second == n - 1)
    return {Arc(0.0, two_pi)};
  if (within.full() && runs.size() >= 2 &&
      (runs.back().second + 1) % n == runs.front().first) {
    runs.front().first = runs.back().first;
    runs.pop_back();
  }

  std::vector<Arc> out;
  out.reserve(runs.size());
  for (auto [a, b] : runs) {
    double s = g.boundary(a);
    double len = (a <= b) ? g.boundary(b + 1) - s : (two_pi - s) + g.boundary(b + 1);
    if (!within.full()) {
      // clip genuine straddles at the window ends; cell-aligned windows
      // are left untouched so lengths stay exact
      double d = std::fmod(s - within.start + two_pi + two_pi, two_pi);
      if (d > within.length) d -= two_pi;  // run begins just before the window
      if (d < 0) {
        len += d;
        s = std::fmod(within.start, two_pi);
        if (s < 0) s += two_pi;
        d = 0;
      }
      if (d + len > within.length + 1e-13) len = within.length - d;
    }
    if (len > 0) out.push_back(Arc(s, len));
  }
  std::sort(out.begin(), out.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
  return out;
}

/// Exact integral of the piecewise-constant interpretation over an arc.
/// Cells partially covered by `over` contribute proportionally.
inline double integrate(const BoundaryFunction& f, const Arc& over = Arc()) {
  const CircleGrid& g = f.grid();
  if (over.full()) {
    double s = 0.0;
    for (int j = 0; j < g.n_cells(); ++j) s += f.value(j) * g.cell_measure(j);
    return s;
  }
  // walk cells from the one containing over.start until over.end is passed
  double s = 0.0;
  double covered = 0.0;
  int j = g.cell_index(over.start);
  double pos = std::fmod(over.start, two_pi);
  if (pos < 0) pos += two_pi;
  // offset of pos within its cell
  double offset = pos - g.boundary(j);
  while (covered < over.length) {
    double cell_rest = g.cell_measure(j) - offset;
    double take = std::min(cell_rest, over.length - covered);
    s += f.value(j) * take;
    covered += take;
    offset = 0.0;
    j = (j + 1) % g.n_cells();
  }
  return s;
}

}  // namespace orlicz

#endif  // ORLICZ_CIRCLE_HPP

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "r0/rewards.hpp"

namespace r0 {

// Brute-force ground truth for low-dimensional reward landscapes. Budgeted:
// validate() rejects grids above max_points, and grid_argmax rejects more
// than 3 axes outright.
struct GridSpec {
  std::vector<std::pair<double, double>> bounds;  // per-axis [lo, hi]
  int resolution = 101;                           // points per axis
  std::size_t max_points = 10'000'000;

  int dims() const { return int(bounds.size()); }
  void validate() const;
};

struct LocalMax {
  std::vector<double> point;
  double value = 0.0;
};

struct ModeReport {
  std::vector<double> argmax;
  double max_value = 0.0;
  std::vector<double> per_term_values;  // weighted values at the argmax
  std::vector<LocalMax> local_maxima;   // axis-neighbor maxima, best first
};

// Exhaustive scan of sum_i w_i R_i over the grid. weights overrides the
// terms' own weights when non-empty (zero entries switch a term off, which
// the term structs themselves do not allow). Explicit terms only.
ModeReport grid_argmax(const std::vector<RewardTerm>& terms,
                       const std::vector<double>& weights, const GridSpec& grid);

// Central differences, one call per perturbed coordinate.
std::vector<double> finite_diff_gradient(const std::function<double(std::span<const double>)>& f,
                                         std::span<const double> x, double h);

struct CoverageReport {
  std::vector<double> per_mode_fraction;  // fraction of samples nearest to and
                                          // within radius of each mode
  double on_mode_fraction = 0.0;          // within radius of any mode
  double mean_min_distance = 0.0;
};

CoverageReport mode_coverage(const std::vector<std::vector<double>>& samples,
                             const std::vector<std::vector<double>>& modes,
                             double radius);

// Cosine between two diagnostic directions; 0 when either is a zero vector.
double diag_cosine(std::span<const double> a, std::span<const double> b);

}  // namespace r0

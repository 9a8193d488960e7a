#include "r0/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "r0/errors.hpp"
#include "r0/vec.hpp"

namespace r0 {

void GridSpec::validate() const {
  if (bounds.empty()) throw ConfigError("grid: no axes");
  if (resolution < 2) throw ConfigError("grid: resolution must be >= 2");
  for (const auto& [lo, hi] : bounds)
    if (!(hi > lo)) throw ConfigError("grid: each axis needs hi > lo");
  double total = 1.0;
  for (std::size_t i = 0; i < bounds.size(); ++i) total *= double(resolution);
  if (total > double(max_points))
    throw ConfigError("grid: " + std::to_string(std::size_t(total)) +
                      " points exceed the budget of " + std::to_string(max_points));
}

ModeReport grid_argmax(const std::vector<RewardTerm>& terms,
                       const std::vector<double>& weights, const GridSpec& grid) {
  grid.validate();
  int d = grid.dims();
  if (d > 3) throw ConfigError("grid_argmax: more than 3 axes");
  if (terms.empty()) throw std::invalid_argument("grid_argmax: no terms");
  if (!weights.empty() && weights.size() != terms.size())
    throw std::invalid_argument("grid_argmax: weights/terms count mismatch");
  for (const RewardTerm& t : terms)
    if (t.kind != RewardKind::Explicit)
      throw std::invalid_argument("grid_argmax: term '" + t.label +
                                  "' has no explicit value");

  int res = grid.resolution;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= std::size_t(res);

  auto coord = [&](int axis, int idx) {
    auto [lo, hi] = grid.bounds[std::size_t(axis)];
    return lo + (hi - lo) * double(idx) / double(res - 1);
  };
  auto weight_of = [&](std::size_t ti) {
    return weights.empty() ? terms[ti].weight : weights[ti];
  };
  auto value_at = [&](std::span<const double> x) {
    double v = 0.0;
    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
      double w = weight_of(ti);
      if (w != 0.0) v += w * eval_reward(terms[ti], x).value;
    }
    return v;
  };

  // One pass to fill the value table, then neighbor scans are index math.
  std::vector<double> values(total);
  std::vector<int> idx(std::size_t(d), 0);
  std::vector<double> x(std::size_t(d), 0.0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int i = 0; i < d; ++i) x[std::size_t(i)] = coord(i, idx[std::size_t(i)]);
    values[flat] = value_at(x);
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[std::size_t(i)] < res) break;
      idx[std::size_t(i)] = 0;
    }
  }

  std::size_t best = 0;
  for (std::size_t flat = 1; flat < total; ++flat)
    if (values[flat] > values[best]) best = flat;

  auto unflatten = [&](std::size_t flat) {
    std::vector<double> p(std::size_t(d), 0.0);
    for (int i = d - 1; i >= 0; --i) {
      p[std::size_t(i)] = coord(i, int(flat % std::size_t(res)));
      flat /= std::size_t(res);
    }
    return p;
  };

  // Strides for axis neighbors in the flat table, last axis fastest.
  std::vector<std::size_t> stride(std::size_t(d), 1);
  for (int i = d - 2; i >= 0; --i)
    stride[std::size_t(i)] = stride[std::size_t(i) + 1] * std::size_t(res);

  std::vector<LocalMax> maxima;
  std::fill(idx.begin(), idx.end(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    bool is_max = true;
    for (int i = 0; i < d && is_max; ++i) {
      int c = idx[std::size_t(i)];
      if (c > 0 && values[flat - stride[std::size_t(i)]] >= values[flat]) is_max = false;
      if (c < res - 1 && values[flat + stride[std::size_t(i)]] >= values[flat]) is_max = false;
    }
    if (is_max) maxima.push_back({unflatten(flat), values[flat]});
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[std::size_t(i)] < res) break;
      idx[std::size_t(i)] = 0;
    }
  }
  std::stable_sort(maxima.begin(), maxima.end(),
                   [](const LocalMax& a, const LocalMax& b) { return a.value > b.value; });
  if (maxima.size() > 16) maxima.resize(16);

  ModeReport report;
  report.argmax = unflatten(best);
  report.max_value = values[best];
  for (std::size_t ti = 0; ti < terms.size(); ++ti)
    report.per_term_values.push_back(
        weight_of(ti) == 0.0 ? 0.0
                             : weight_of(ti) * eval_reward(terms[ti], report.argmax).value);
  report.local_maxima = std::move(maxima);
  return report;
}

std::vector<double> finite_diff_gradient(const std::function<double(std::span<const double>)>& f,
                                         std::span<const double> x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff_gradient: h must be > 0");
  std::vector<double> p(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double keep = p[i];
    p[i] = keep + h;
    double up = f(p);
    p[i] = keep - h;
    double dn = f(p);
    p[i] = keep;
    g[i] = (up - dn) / (2.0 * h);
  }
  return g;
}

CoverageReport mode_coverage(const std::vector<std::vector<double>>& samples,
                             const std::vector<std::vector<double>>& modes,
                             double radius) {
  if (modes.empty()) throw std::invalid_argument("mode_coverage: no modes");
  if (!(radius > 0.0)) throw std::invalid_argument("mode_coverage: radius must be > 0");
  CoverageReport rep;
  rep.per_mode_fraction.assign(modes.size(), 0.0);
  if (samples.empty()) return rep;
  double dist_sum = 0.0;
  std::size_t on_mode = 0;
  for (const auto& s : samples) {
    std::size_t nearest = 0;
    double best = std::sqrt(sq_dist(s, modes[0]));
    for (std::size_t m = 1; m < modes.size(); ++m) {
      double dm = std::sqrt(sq_dist(s, modes[m]));
      if (dm < best) {
        best = dm;
        nearest = m;
      }
    }
    dist_sum += best;
    if (best <= radius) {
      ++on_mode;
      rep.per_mode_fraction[nearest] += 1.0;
    }
  }
  for (double& f : rep.per_mode_fraction) f /= double(samples.size());
  rep.on_mode_fraction = double(on_mode) / double(samples.size());
  rep.mean_min_distance = dist_sum / double(samples.size());
  return rep;
}

double diag_cosine(std::span<const double> a, std::span<const double> b) {
  double na = l2_norm(a), nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

}  // namespace r0

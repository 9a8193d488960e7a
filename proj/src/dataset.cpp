#include "r0/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "r0/errors.hpp"
#include "r0/vec.hpp"

namespace r0 {

int DatasetSpec::num_classes() const {
  return kind == DatasetKind::ClassGaussians ? int(centers.size()) : 0;
}

void DatasetSpec::validate() const {
  if (dim < 1) throw ConfigError("dataset: dim must be >= 1");
  auto check_vec = [&](const std::vector<double>& v, const char* what) {
    if (int(v.size()) != dim)
      throw ConfigError(std::string("dataset: ") + what + " has wrong dimension");
  };
  switch (kind) {
    case DatasetKind::Point:
      check_vec(point, "point");
      break;
    case DatasetKind::Gaussian:
      check_vec(mean, "mean");
      if (!(scale > 0.0)) throw ConfigError("dataset: scale must be > 0");
      break;
    case DatasetKind::Mixture:
    case DatasetKind::ClassGaussians:
      if (centers.empty()) throw ConfigError("dataset: centers missing");
      for (const auto& c : centers) check_vec(c, "center");
      if (!(component_sigma > 0.0))
        throw ConfigError("dataset: component_sigma must be > 0");
      if (!weights.empty()) {
        if (weights.size() != centers.size())
          throw ConfigError("dataset: weights/centers count mismatch");
        for (double w : weights)
          if (!(w > 0.0)) throw ConfigError("dataset: weights must be > 0");
      }
      break;
    case DatasetKind::UniformBox:
      check_vec(lo, "lo");
      check_vec(hi, "hi");
      for (int i = 0; i < dim; ++i)
        if (!(hi[std::size_t(i)] > lo[std::size_t(i)]))
          throw ConfigError("dataset: box must have hi > lo per axis");
      break;
  }
  if (smooth_sigma < 0.0) throw ConfigError("dataset: smooth_sigma must be >= 0");
}

DatasetKind dataset_kind_from_string(const std::string& name) {
  if (name == "point") return DatasetKind::Point;
  if (name == "gaussian") return DatasetKind::Gaussian;
  if (name == "gmix") return DatasetKind::Mixture;
  if (name == "uniform") return DatasetKind::UniformBox;
  if (name == "class_gaussians") return DatasetKind::ClassGaussians;
  throw ConfigError("unknown dataset kind '" + name + "'");
}

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Point: return "point";
    case DatasetKind::Gaussian: return "gaussian";
    case DatasetKind::Mixture: return "gmix";
    case DatasetKind::UniformBox: return "uniform";
    case DatasetKind::ClassGaussians: return "class_gaussians";
  }
  return "?";
}

namespace {

int pick_component(const DatasetSpec& spec, Rng& rng) {
  if (spec.weights.empty()) return rng.uniform_int(int(spec.centers.size()));
  double total = 0.0;
  for (double w : spec.weights) total += w;
  double u = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t j = 0; j < spec.weights.size(); ++j) {
    acc += spec.weights[j];
    if (u < acc) return int(j);
  }
  return int(spec.weights.size()) - 1;
}

}  // namespace

int sample_dataset(const DatasetSpec& spec, Rng& rng, std::vector<double>& x) {
  x.resize(std::size_t(spec.dim));
  int label = -1;
  switch (spec.kind) {
    case DatasetKind::Point:
      std::copy(spec.point.begin(), spec.point.end(), x.begin());
      break;
    case DatasetKind::Gaussian:
      for (int i = 0; i < spec.dim; ++i)
        x[std::size_t(i)] = spec.mean[std::size_t(i)] + spec.scale * rng.normal();
      break;
    case DatasetKind::Mixture:
    case DatasetKind::ClassGaussians: {
      int j = pick_component(spec, rng);
      const auto& c = spec.centers[std::size_t(j)];
      for (int i = 0; i < spec.dim; ++i)
        x[std::size_t(i)] = c[std::size_t(i)] + spec.component_sigma * rng.normal();
      if (spec.kind == DatasetKind::ClassGaussians) label = j;
      break;
    }
    case DatasetKind::UniformBox:
      for (int i = 0; i < spec.dim; ++i)
        x[std::size_t(i)] = rng.uniform(spec.lo[std::size_t(i)], spec.hi[std::size_t(i)]);
      break;
  }
  if (spec.smooth_sigma > 0.0)
    for (int i = 0; i < spec.dim; ++i) x[std::size_t(i)] += spec.smooth_sigma * rng.normal();
  return label;
}

double support_distance(const DatasetSpec& spec, std::span<const double> x) {
  if (int(x.size()) != spec.dim)
    throw std::invalid_argument("support_distance: dimension mismatch");
  double widen = 3.0 * spec.smooth_sigma;
  auto ball = [&](std::span<const double> c, double r) {
    return std::max(0.0, std::sqrt(sq_dist(x, c)) - (r + widen));
  };
  switch (spec.kind) {
    case DatasetKind::Point:
      return ball(spec.point, 0.0);
    case DatasetKind::Gaussian:
      return ball(spec.mean, 3.0 * spec.scale);
    case DatasetKind::Mixture:
    case DatasetKind::ClassGaussians: {
      double best = ball(spec.centers.front(), 3.0 * spec.component_sigma);
      for (std::size_t j = 1; j < spec.centers.size(); ++j)
        best = std::min(best, ball(spec.centers[j], 3.0 * spec.component_sigma));
      return best;
    }
    case DatasetKind::UniformBox: {
      double s = 0.0;
      for (int i = 0; i < spec.dim; ++i) {
        double lo = spec.lo[std::size_t(i)], hi = spec.hi[std::size_t(i)];
        double d = 0.0;
        if (x[std::size_t(i)] < lo) d = lo - x[std::size_t(i)];
        if (x[std::size_t(i)] > hi) d = x[std::size_t(i)] - hi;
        s += d * d;
      }
      return std::max(0.0, std::sqrt(s) - widen);
    }
  }
  return 0.0;
}

}  // namespace r0

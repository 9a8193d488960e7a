#pragma once

#include <span>
#include <string>
#include <vector>

#include "r0/rng.hpp"

namespace r0 {

enum class DatasetKind { Point, Gaussian, Mixture, UniformBox, ClassGaussians };

// Synthetic base distributions used for pretraining. smooth_sigma > 0 adds
// independent N(0, smooth_sigma^2 I) on top of every draw, which is how the
// "blurred" counterpart of a dataset is produced.
struct DatasetSpec {
  DatasetKind kind = DatasetKind::Point;
  int dim = 0;

  std::vector<double> point;                 // Point
  std::vector<double> mean;                  // Gaussian
  double scale = 1.0;                        // Gaussian stddev
  std::vector<std::vector<double>> centers;  // Mixture / ClassGaussians
  std::vector<double> weights;               // Mixture (empty = uniform)
  double component_sigma = 0.1;              // Mixture / ClassGaussians
  std::vector<double> lo, hi;                // UniformBox
  double smooth_sigma = 0.0;

  int num_classes() const;
  void validate() const;
};

DatasetKind dataset_kind_from_string(const std::string& name);
std::string to_string(DatasetKind kind);

// One draw. Returns the class label for ClassGaussians, -1 otherwise.
int sample_dataset(const DatasetSpec& spec, Rng& rng, std::vector<double>& x);

// Euclidean distance from x to the spec's effective support (3-sigma balls
// around Gaussian-like parts, exact box/point distance otherwise).
double support_distance(const DatasetSpec& spec, std::span<const double> x);

}  // namespace r0

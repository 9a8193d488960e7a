#pragma once

#include <cstdint>
#include <vector>

#include "r0/dataset.hpp"
#include "r0/net.hpp"

namespace r0 {

// Denoising regression: draw x0 (and maybe a label), sigma ~ U(0, 1],
// eps ~ N(0, I), and fit f(alpha x0 + sigma eps, sigma, c) to x0 with Adam
// on the batch-mean squared error. Labels are dropped to the null token
// with probability label_dropout so the same net serves conditional and
// unconditional queries.
struct PretrainConfig {
  DatasetSpec dataset;
  std::vector<int> hidden = {64, 64, 64};
  int steps = 20000;
  int batch = 128;
  double lr = 1e-3;
  double label_dropout = 0.1;

  void validate() const;
};

struct PretrainResult {
  Denoiser net;
  std::vector<double> loss_curve;  // batch loss per iteration
};

// warm_start, when given, must match the config's shape; training continues
// from its parameters instead of a fresh init.
PretrainResult pretrain_denoiser(const PretrainConfig& cfg, std::uint64_t seed,
                                 const Denoiser* warm_start = nullptr);

}  // namespace r0

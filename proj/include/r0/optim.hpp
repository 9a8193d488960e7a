#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace r0 {

// Plain Adam with bias correction; constant learning rate unless the caller
// changes cfg.lr between steps.
struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

class Adam {
 public:
  Adam(AdamConfig cfg, std::size_t n) : cfg_(cfg), m_(n, 0.0), v_(n, 0.0) {}

  AdamConfig cfg_;

  void step(std::vector<double>& params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size())
      throw std::invalid_argument("adam: size mismatch");
    ++t_;
    double c1 = 1.0 - std::pow(cfg_.beta1, double(t_));
    double c2 = 1.0 - std::pow(cfg_.beta2, double(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * grad[i];
      v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * grad[i] * grad[i];
      double mh = m_[i] / c1;
      double vh = v_[i] / c2;
      params[i] -= cfg_.lr * mh / (std::sqrt(vh) + cfg_.eps);
    }
  }

 private:
  long t_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace r0

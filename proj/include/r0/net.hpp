#pragma once

#include <optional>
#include <span>
#include <vector>

#include "r0/rng.hpp"

namespace r0 {

// Multilayer perceptron predicting the clean point x0 from a noised one.
// Input features are [x, sigma, sqrt(1 - sigma^2), one-hot(class)]; the
// null condition is the all-zero block, so an unconditional pass and a
// dropped-label pass are the same computation. Hidden layers are tanh, the
// output layer is linear. Parameters live in one flat vector (row-major W,
// then b, per layer) so optimizers and checkpoints treat the net as a
// single f64 block.
struct LayerShape {
  int in = 0, out = 0;
  std::size_t w_off = 0, b_off = 0;
};

struct Denoiser {
  int input_dim = 0;
  int cond_classes = 0;  // 0 = unconditional net
  std::vector<int> hidden;
  std::vector<LayerShape> layers;
  std::vector<double> params;

  int feature_dim() const { return input_dim + 2 + cond_classes; }
  std::size_t param_count() const { return params.size(); }
};

// Weights ~ U(-1, 1)/sqrt(fan_in), biases zero. Columns reading the
// condition block start at zero, so a fresh conditional net ignores its
// label until trained.
Denoiser make_denoiser(int input_dim, int cond_classes, std::span<const int> hidden,
                       Rng& rng);

// Returns x_star regardless of input: all weights zero, output bias x_star.
Denoiser make_constant_denoiser(std::span<const double> x_star);

void validate_denoiser(const Denoiser& net);

// Everything the backward pass needs from one forward evaluation.
struct ForwardStash {
  std::vector<double> features;
  std::vector<std::vector<double>> hidden_act;  // post-tanh, per hidden layer
  std::vector<double> output;
};

void denoise_fwd(const Denoiser& net, std::span<const double> x, double sigma,
                 std::optional<int> cond, ForwardStash& stash);

std::vector<double> denoise(const Denoiser& net, std::span<const double> x,
                            double sigma, std::optional<int> cond = {});

// Reverse-mode step for one stashed evaluation: accumulates dL/dparams into
// param_grad (size param_count, += semantics) and returns dL/dx. Gradients
// w.r.t. the sigma features and condition block are dropped since neither
// is ever a function of trained inputs here.
std::vector<double> denoise_vjp(const Denoiser& net, const ForwardStash& stash,
                                std::span<const double> d_out,
                                std::vector<double>& param_grad);

// eps consistent with x_t = alpha x0 + sigma eps. Requires sigma > 0.
std::vector<double> eps_from_x0(std::span<const double> x_t, double sigma,
                                std::span<const double> x0_hat);

// score(x_t) = -(x_t - alpha * x0_hat) / sigma^2
std::vector<double> score_from_x0(std::span<const double> x_t, double sigma,
                                  std::span<const double> x0_hat);

std::vector<double> score(const Denoiser& net, std::span<const double> x_t,
                          double sigma, std::optional<int> cond = {});

// grad_x log p(c | x_t) via Bayes rule: conditional minus unconditional
// score of the same net.
std::vector<double> cfg_gradient(const Denoiser& net, std::span<const double> x_t,
                                 double sigma, int cond);

// grad_x log (p_a / p_b)(x_t): score difference between two nets.
std::vector<double> density_ratio_gradient(const Denoiser& net_a,
                                           const Denoiser& net_b,
                                           std::span<const double> x_t,
                                           double sigma);

}  // namespace r0

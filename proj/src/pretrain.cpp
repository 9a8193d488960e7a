#include "r0/pretrain.hpp"

#include <cmath>

#include "r0/errors.hpp"
#include "r0/optim.hpp"
#include "r0/schedule.hpp"
#include "r0/vec.hpp"

namespace r0 {

void PretrainConfig::validate() const {
  dataset.validate();
  if (steps < 1) throw ConfigError("pretrain: steps must be >= 1");
  if (batch < 1) throw ConfigError("pretrain: batch must be >= 1");
  if (!(lr > 0.0)) throw ConfigError("pretrain: lr must be > 0");
  if (label_dropout < 0.0 || label_dropout > 1.0)
    throw ConfigError("pretrain: label_dropout must be in [0, 1]");
  if (hidden.empty()) throw ConfigError("pretrain: hidden layers missing");
}

PretrainResult pretrain_denoiser(const PretrainConfig& cfg, std::uint64_t seed,
                                 const Denoiser* warm_start) {
  cfg.validate();
  Rng rng(seed);
  int classes = cfg.dataset.num_classes();
  Denoiser net = make_denoiser(cfg.dataset.dim, classes, cfg.hidden, rng);
  if (warm_start) {
    validate_denoiser(*warm_start);
    if (warm_start->input_dim != net.input_dim ||
        warm_start->cond_classes != net.cond_classes ||
        warm_start->hidden != net.hidden)
      throw std::invalid_argument("pretrain: warm start shape mismatch");
    net.params = warm_start->params;
  }

  Adam opt({cfg.lr}, net.param_count());
  std::vector<double> grad(net.param_count());
  std::vector<double> x0, d_out(std::size_t(cfg.dataset.dim));
  ForwardStash stash;
  PretrainResult res;
  res.loss_curve.reserve(std::size_t(cfg.steps));

  for (int it = 0; it < cfg.steps; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (int b = 0; b < cfg.batch; ++b) {
      int label = sample_dataset(cfg.dataset, rng, x0);
      std::optional<int> cond;
      if (label >= 0 && rng.uniform() >= cfg.label_dropout) cond = label;
      double sigma = rng.uniform_pos();
      double a = alpha_for(sigma);
      std::vector<double> x_t(x0.size());
      for (std::size_t i = 0; i < x0.size(); ++i)
        x_t[i] = a * x0[i] + sigma * rng.normal();
      denoise_fwd(net, x_t, sigma, cond, stash);
      for (std::size_t i = 0; i < x0.size(); ++i) {
        double r = stash.output[i] - x0[i];
        loss += r * r;
        d_out[i] = 2.0 * r / double(cfg.batch);
      }
      denoise_vjp(net, stash, d_out, grad);
    }
    loss /= double(cfg.batch);
    if (!std::isfinite(loss) || !all_finite(grad))
      throw NumericError("pretrain: non-finite loss or gradient at iteration " +
                         std::to_string(it));
    opt.step(net.params, grad);
    res.loss_curve.push_back(loss);
  }
  res.net = std::move(net);
  return res;
}

}  // namespace r0

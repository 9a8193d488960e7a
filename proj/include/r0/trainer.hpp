#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "r0/generator.hpp"
#include "r0/optim.hpp"
#include "r0/rewards.hpp"

namespace r0 {

// FullChain backpropagates the reward through every generator step, so the
// peak number of simultaneously stashed denoiser evaluations grows with K.
// SingleEval picks a random step, runs the prefix without gradients, and
// differentiates through exactly one denoiser call regardless of K.
enum class TrainMode { FullChain, SingleEval };

struct TrainConfig {
  TrainMode mode = TrainMode::FullChain;
  NoiseSchedule schedule;
  EtaPolicy eta = EtaPolicy::random();
  std::vector<RewardTerm> terms;

  int iterations = 1000;
  int batch = 64;
  double lr = 1e-3;
  double omega_reg = 0.1;   // weight-space anchor strength
  double omega_cfg = 0.0;   // > 0 appends an implicit cfg term
  int cfg_class = 0;
  double cfg_sigma_lo = 0.2, cfg_sigma_hi = 0.8;
  double eps_floor = 1e-8;
  bool normalize = true;  // false: raw w_i * g_i contributions (ablation)
  std::uint64_t seed = 0;

  void validate() const;
};

// One row per iteration. wall_ms is excluded from the deterministic run log
// serialization and lands in a separate timing file.
struct RunRecord {
  int iter = 0;
  std::vector<double> term_raw_norms;      // batch-mean |g_i| before normalization
  std::vector<double> term_values;         // batch-mean explicit values
  std::vector<double> term_contrib_norms;  // batch-mean |w_i g_i / max(|g_i|, floor)|
  double reg_loss = 0.0;                   // |theta - phi|^2
  double reg_grad_norm = 0.0;
  double cos_reward_reg = 0.0;  // cosine between reward and regularizer descent
  double wall_ms = 0.0;
};

struct RunLog {
  std::vector<std::string> term_labels;
  std::vector<RunRecord> records;
};

// on_iteration fires after every parameter update; on_diverged fires with
// the last finite parameters right before TrainingDiverged is thrown.
struct TrainHooks {
  std::function<void(int, const Denoiser&, const RunLog&)> on_iteration;
  std::function<void(int, const Denoiser&, const RunLog&)> on_diverged;
};

struct TrainResult {
  Denoiser theta;
  RunLog log;
  int peak_diff_evals = 0;  // max stashed evaluations on the differentiable path
};

// |a - b|^2 over flat parameters; shapes must match.
double weight_reg(const Denoiser& a, const Denoiser& b);

// Reward-driven fine-tuning of a copy of phi. psi backs the cfg term (and
// defaults to phi's role only when omega_cfg is 0, i.e. it may be null
// then); ratio_b backs density-ratio terms with ratio_a defaulting to phi.
TrainResult train(const TrainConfig& cfg, const Denoiser& phi,
                  const Denoiser* psi = nullptr,
                  const Denoiser* ratio_a = nullptr,
                  const Denoiser* ratio_b = nullptr,
                  const TrainHooks& hooks = {});

}  // namespace r0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "r0/net.hpp"
#include "r0/schedule.hpp"

namespace r0 {

// Per-step blend between the predicted noise direction and fresh noise:
// eps_hat = eta * eps_theta + sqrt(1 - eta^2) * eps. eta = 1 is the
// deterministic sampler; PerStepRandom redraws eta ~ U[0, 1] at every step.
struct EtaPolicy {
  enum class Mode { Fixed, PerStepRandom };
  Mode mode = Mode::PerStepRandom;
  double value = 1.0;

  static EtaPolicy fixed(double eta);
  static EtaPolicy random() { return {Mode::PerStepRandom, 0.0}; }
  double draw(Rng& rng) const {
    return mode == Mode::Fixed ? value : rng.uniform();
  }
};

// One transition x_k -> x_{k-1} is linear in (x0_pred, x_k, eps):
//   x_prev = c_x0 * x0_pred + c_xk * x_k + c_eps * eps
// with c_x0 = alpha_prev - sigma_prev * eta * alpha_k / sigma_k,
//      c_xk = sigma_prev * eta / sigma_k,
//      c_eps = sigma_prev * sqrt(1 - eta^2).
// At sigma_prev = 0 this collapses to x_prev = x0_pred exactly.
struct StepLin {
  double c_x0 = 0.0, c_xk = 0.0, c_eps = 0.0;
};
StepLin step_lin(double sigma_k, double sigma_prev, double eta);

struct GenStep {
  std::vector<double> x_prev;
  std::vector<double> x0_pred;
};

GenStep gen_step(const Denoiser& net, std::span<const double> x_k, double sigma_k,
                 double sigma_prev, double eta, std::span<const double> eps,
                 std::optional<int> cond = {});

// states[0] = x_K (the latent z), states[i+1] the result of step i; step i
// runs sigma_{K-i} -> sigma_{K-i-1} using etas[i] and noises[i].
struct Trajectory {
  std::vector<std::vector<double>> states;
  std::vector<double> etas;
  std::vector<std::vector<double>> noises;
  std::vector<std::vector<double>> x0_preds;

  const std::vector<double>& x0() const { return states.back(); }
};

// Draw order per step: eta first (PerStepRandom only), then the step noise.
Trajectory generate(const Denoiser& net, std::span<const double> z,
                    const NoiseSchedule& sched, const EtaPolicy& eta,
                    std::optional<int> cond, std::uint64_t seed);

// The split view used by suffix training: run sigma_K .. sigma_{j+1}
// without gradients, evaluate the denoiser once at level j = min(k+1, K),
// and form the state one level below. For k = K there is no prefix and the
// output sits at sigma_{K-1}; for k < K it sits at sigma_k. k in [1, K].
struct IntermediateResult {
  std::vector<double> x_in;     // state entering the evaluated step (level j)
  std::vector<double> x0_pred;  // f(x_in, sigma_j, c)
  std::vector<double> x_out;    // state at sigma_{j-1}
  int eval_level = 0;           // j
  double eta = 1.0;             // eta used by the evaluated step
};

IntermediateResult generate_with_intermediate(const Denoiser& net,
                                              std::span<const double> z,
                                              const NoiseSchedule& sched, int k,
                                              const EtaPolicy& eta,
                                              std::optional<int> cond,
                                              std::uint64_t seed);

}  // namespace r0

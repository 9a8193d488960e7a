#include "r0/generator.hpp"

#include <cmath>

#include "r0/errors.hpp"

namespace r0 {

EtaPolicy EtaPolicy::fixed(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("eta policy: eta outside [0, 1]");
  return {Mode::Fixed, eta};
}

StepLin step_lin(double sigma_k, double sigma_prev, double eta) {
  if (!(sigma_k > 0.0 && sigma_k <= 1.0))
    throw std::invalid_argument("step_lin: sigma_k outside (0, 1]");
  if (!(sigma_prev >= 0.0 && sigma_prev < sigma_k))
    throw std::invalid_argument("step_lin: need 0 <= sigma_prev < sigma_k");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("step_lin: eta outside [0, 1]");
  double a_k = alpha_for(sigma_k);
  double a_prev = alpha_for(sigma_prev);
  StepLin lin;
  lin.c_xk = sigma_prev * eta / sigma_k;
  lin.c_x0 = a_prev - lin.c_xk * a_k;
  lin.c_eps = sigma_prev * std::sqrt(std::max(0.0, 1.0 - eta * eta));
  return lin;
}

GenStep gen_step(const Denoiser& net, std::span<const double> x_k, double sigma_k,
                 double sigma_prev, double eta, std::span<const double> eps,
                 std::optional<int> cond) {
  if (eps.size() != x_k.size())
    throw std::invalid_argument("gen_step: eps size mismatch");
  StepLin lin = step_lin(sigma_k, sigma_prev, eta);
  GenStep out;
  out.x0_pred = denoise(net, x_k, sigma_k, cond);
  out.x_prev.resize(x_k.size());
  for (std::size_t i = 0; i < x_k.size(); ++i)
    out.x_prev[i] = lin.c_x0 * out.x0_pred[i] + lin.c_xk * x_k[i] + lin.c_eps * eps[i];
  return out;
}

Trajectory generate(const Denoiser& net, std::span<const double> z,
                    const NoiseSchedule& sched, const EtaPolicy& eta,
                    std::optional<int> cond, std::uint64_t seed) {
  if (int(z.size()) != net.input_dim)
    throw std::invalid_argument("generate: z dimension mismatch");
  int K = sched.steps();
  Rng rng(seed);
  Trajectory traj;
  traj.states.reserve(std::size_t(K) + 1);
  traj.states.emplace_back(z.begin(), z.end());
  for (int k = K; k >= 1; --k) {
    double e = eta.draw(rng);
    std::vector<double> eps = rng.normal_vec(net.input_dim);
    GenStep step = gen_step(net, traj.states.back(), sched.sigma(k),
                            sched.sigma(k - 1), e, eps, cond);
    traj.etas.push_back(e);
    traj.noises.push_back(std::move(eps));
    traj.x0_preds.push_back(std::move(step.x0_pred));
    traj.states.push_back(std::move(step.x_prev));
  }
  return traj;
}

IntermediateResult generate_with_intermediate(const Denoiser& net,
                                              std::span<const double> z,
                                              const NoiseSchedule& sched, int k,
                                              const EtaPolicy& eta,
                                              std::optional<int> cond,
                                              std::uint64_t seed) {
  int K = sched.steps();
  if (k < 1 || k > K)
    throw std::invalid_argument("generate_with_intermediate: k outside [1, K]");
  if (int(z.size()) != net.input_dim)
    throw std::invalid_argument("generate_with_intermediate: z dimension mismatch");
  int j = std::min(k + 1, K);
  Rng rng(seed);
  IntermediateResult res;
  res.eval_level = j;
  std::vector<double> x(z.begin(), z.end());
  for (int m = K; m > j; --m) {
    double e = eta.draw(rng);
    std::vector<double> eps = rng.normal_vec(net.input_dim);
    x = gen_step(net, x, sched.sigma(m), sched.sigma(m - 1), e, eps, cond).x_prev;
  }
  res.eta = eta.draw(rng);
  std::vector<double> eps = rng.normal_vec(net.input_dim);
  GenStep step = gen_step(net, x, sched.sigma(j), sched.sigma(j - 1), res.eta,
                          eps, cond);
  res.x_in = std::move(x);
  res.x0_pred = std::move(step.x0_pred);
  res.x_out = std::move(step.x_prev);
  return res;
}

}  // namespace r0

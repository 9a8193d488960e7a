#pragma once

#include <span>
#include <string>
#include <vector>

#include "r0/net.hpp"

namespace r0 {

enum class RewardKind { Explicit, CfgImplicit, DensityRatio };

// A reward enters training only through an ascent direction on the sample,
// never through its value alone. Explicit terms carry an analytic gradient;
// implicit terms (classifier guidance, density ratio) only ever expose a
// gradient field pulled back from a noised copy of the sample.
struct RewardTerm {
  std::string name;   // registry id
  std::string label;  // unique log column label
  RewardKind kind = RewardKind::Explicit;
  double weight = 1.0;  // the per-term weight w_i, > 0

  // mode_proximity: R(x) = scale * sum_j exp(-|x - m_j|^2 / (2 tau^2))
  std::vector<std::vector<double>> centers;
  double tau = 1.0;
  double scale = 1.0;

  // halfspace: R(x) = scale * tanh(normal . x + offset)
  std::vector<double> normal;
  double offset = 0.0;

  // anti_saturation: R(x) = -lambda * |x|^2
  double lambda = 1.0;

  // cfg: class whose posterior is pushed up
  int cond = 0;

  void validate(int dim) const;
};

RewardTerm make_mode_proximity(std::vector<std::vector<double>> centers,
                               double tau, double weight, double scale = 1.0);
RewardTerm make_halfspace(std::vector<double> normal, double offset,
                          double weight, double scale = 1.0);
RewardTerm make_anti_saturation(double lambda, double weight);
RewardTerm make_cfg_term(int cond, double weight);
RewardTerm make_density_ratio(double weight);

struct RewardEval {
  double value = 0.0;
  std::vector<double> gradient;
};

// Value and analytic gradient of an Explicit term.
RewardEval eval_reward(const RewardTerm& term, std::span<const double> x);

// Ascent direction on x for the classifier-guidance reward: diffuse x to a
// random level sigma ~ U[sigma_lo, sigma_hi], take grad_{x_t} log p(c|x_t)
// there, and pull it back through x_t = alpha x + sigma eps treating the
// target point as a constant. The pullback is just the factor alpha.
std::vector<double> cfg_reward_pullback_at(const Denoiser& psi,
                                           std::span<const double> x, int cond,
                                           double sigma,
                                           std::span<const double> eps);
std::vector<double> cfg_reward_pullback(const Denoiser& psi,
                                        std::span<const double> x, int cond,
                                        double sigma_lo, double sigma_hi,
                                        Rng& rng);

// Same pullback with grad_{x_t} log (p_a / p_b)(x_t) in place of the
// classifier gradient.
std::vector<double> density_ratio_pullback_at(const Denoiser& net_a,
                                              const Denoiser& net_b,
                                              std::span<const double> x,
                                              double sigma,
                                              std::span<const double> eps);
std::vector<double> density_ratio_pullback(const Denoiser& net_a,
                                           const Denoiser& net_b,
                                           std::span<const double> x,
                                           double sigma_lo, double sigma_hi,
                                           Rng& rng);

// Frozen nets and the sigma-draw rule for implicit terms. rng must be set
// when any implicit term is present.
struct ImplicitAux {
  const Denoiser* cfg_net = nullptr;
  const Denoiser* ratio_net_a = nullptr;
  const Denoiser* ratio_net_b = nullptr;
  double sigma_lo = 0.2, sigma_hi = 0.8;
  Rng* rng = nullptr;
};

// Rescales g in place to the normalized contribution
// weight * g / max(|g|_2, eps_floor) and returns the raw norm. The shared
// primitive behind every normalized term, whichever point it was evaluated
// at.
double normalize_contribution(std::vector<double>& g, double weight,
                              double eps_floor);

struct CombinedGradient {
  std::vector<double> total;                  // sum of normalized contributions
  std::vector<std::vector<double>> per_term;  // w_i * g_i / max(|g_i|, floor)
  std::vector<double> raw_norms;              // |g_i| before normalization
  std::vector<double> values;                 // explicit terms only, else 0
};

// Per-term gradient normalization: each term contributes
// w_i * g_i / max(|g_i|_2, eps_floor), so no term can drown the others by
// sheer gradient scale. The norm in the denominator is a constant, not a
// function of x. Throws NumericError naming the term if any gradient is
// non-finite. normalize = false is the ablation: contributions become the
// raw w_i * g_i (raw_norms are still reported).
CombinedGradient combine_normalized(const std::vector<RewardTerm>& terms,
                                    std::span<const double> x,
                                    const ImplicitAux& aux, double eps_floor,
                                    bool normalize = true);

}  // namespace r0

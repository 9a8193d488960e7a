#include "r0/rewards.hpp"

#include <cmath>

#include "r0/errors.hpp"
#include "r0/schedule.hpp"
#include "r0/vec.hpp"

namespace r0 {

void RewardTerm::validate(int dim) const {
  if (!(weight > 0.0)) throw ConfigError("reward '" + label + "': weight must be > 0");
  if (kind == RewardKind::Explicit) {
    if (name == "mode_proximity") {
      if (centers.empty())
        throw ConfigError("reward '" + label + "': centers missing");
      for (const auto& c : centers)
        if (int(c.size()) != dim)
          throw ConfigError("reward '" + label + "': center dimension mismatch");
      if (!(tau > 0.0)) throw ConfigError("reward '" + label + "': tau must be > 0");
    } else if (name == "halfspace") {
      if (int(normal.size()) != dim)
        throw ConfigError("reward '" + label + "': normal dimension mismatch");
    } else if (name == "anti_saturation") {
      if (!(lambda > 0.0))
        throw ConfigError("reward '" + label + "': lambda must be > 0");
    } else {
      throw ConfigError("unknown reward '" + name + "'");
    }
  }
}

RewardTerm make_mode_proximity(std::vector<std::vector<double>> centers,
                               double tau, double weight, double scale) {
  RewardTerm t;
  t.name = t.label = "mode_proximity";
  t.centers = std::move(centers);
  t.tau = tau;
  t.weight = weight;
  t.scale = scale;
  return t;
}

RewardTerm make_halfspace(std::vector<double> normal, double offset,
                          double weight, double scale) {
  RewardTerm t;
  t.name = t.label = "halfspace";
  t.normal = std::move(normal);
  t.offset = offset;
  t.weight = weight;
  t.scale = scale;
  return t;
}

RewardTerm make_anti_saturation(double lambda, double weight) {
  RewardTerm t;
  t.name = t.label = "anti_saturation";
  t.lambda = lambda;
  t.weight = weight;
  return t;
}

RewardTerm make_cfg_term(int cond, double weight) {
  RewardTerm t;
  t.name = t.label = "cfg";
  t.kind = RewardKind::CfgImplicit;
  t.cond = cond;
  t.weight = weight;
  return t;
}

RewardTerm make_density_ratio(double weight) {
  RewardTerm t;
  t.name = t.label = "density_ratio";
  t.kind = RewardKind::DensityRatio;
  t.weight = weight;
  return t;
}

RewardEval eval_reward(const RewardTerm& term, std::span<const double> x) {
  if (term.kind != RewardKind::Explicit)
    throw std::invalid_argument("eval_reward: term '" + term.label +
                                "' has no explicit value");
  RewardEval ev;
  ev.gradient.assign(x.size(), 0.0);
  if (term.name == "mode_proximity") {
    for (const auto& c : term.centers) {
      double e = term.scale * std::exp(-sq_dist(x, c) / (2.0 * term.tau * term.tau));
      ev.value += e;
      for (std::size_t i = 0; i < x.size(); ++i)
        ev.gradient[i] += e * (c[i] - x[i]) / (term.tau * term.tau);
    }
  } else if (term.name == "halfspace") {
    double t = std::tanh(dot(term.normal, x) + term.offset);
    ev.value = term.scale * t;
    double d = term.scale * (1.0 - t * t);
    for (std::size_t i = 0; i < x.size(); ++i) ev.gradient[i] = d * term.normal[i];
  } else if (term.name == "anti_saturation") {
    double n2 = dot(x, x);
    ev.value = -term.lambda * n2;
    for (std::size_t i = 0; i < x.size(); ++i) ev.gradient[i] = -2.0 * term.lambda * x[i];
  } else {
    throw std::invalid_argument("eval_reward: unknown reward '" + term.name + "'");
  }
  return ev;
}

std::vector<double> cfg_reward_pullback_at(const Denoiser& psi,
                                           std::span<const double> x, int cond,
                                           double sigma,
                                           std::span<const double> eps) {
  std::vector<double> x_t = forward_diffuse(x, sigma, eps);
  std::vector<double> g = cfg_gradient(psi, x_t, sigma, cond);
  double a = alpha_for(sigma);
  for (double& v : g) v *= a;
  return g;
}

std::vector<double> cfg_reward_pullback(const Denoiser& psi,
                                        std::span<const double> x, int cond,
                                        double sigma_lo, double sigma_hi,
                                        Rng& rng) {
  double sigma = rng.uniform(sigma_lo, sigma_hi);
  std::vector<double> eps = rng.normal_vec(int(x.size()));
  return cfg_reward_pullback_at(psi, x, cond, sigma, eps);
}

std::vector<double> density_ratio_pullback_at(const Denoiser& net_a,
                                              const Denoiser& net_b,
                                              std::span<const double> x,
                                              double sigma,
                                              std::span<const double> eps) {
  std::vector<double> x_t = forward_diffuse(x, sigma, eps);
  std::vector<double> g = density_ratio_gradient(net_a, net_b, x_t, sigma);
  double a = alpha_for(sigma);
  for (double& v : g) v *= a;
  return g;
}

std::vector<double> density_ratio_pullback(const Denoiser& net_a,
                                           const Denoiser& net_b,
                                           std::span<const double> x,
                                           double sigma_lo, double sigma_hi,
                                           Rng& rng) {
  double sigma = rng.uniform(sigma_lo, sigma_hi);
  std::vector<double> eps = rng.normal_vec(int(x.size()));
  return density_ratio_pullback_at(net_a, net_b, x, sigma, eps);
}

double normalize_contribution(std::vector<double>& g, double weight,
                              double eps_floor) {
  if (!(eps_floor > 0.0))
    throw std::invalid_argument("normalize_contribution: eps_floor must be > 0");
  double n = l2_norm(g);
  double s = weight / std::max(n, eps_floor);
  for (double& v : g) v *= s;
  return n;
}

CombinedGradient combine_normalized(const std::vector<RewardTerm>& terms,
                                    std::span<const double> x,
                                    const ImplicitAux& aux, double eps_floor,
                                    bool normalize) {
  if (!(eps_floor > 0.0))
    throw std::invalid_argument("combine_normalized: eps_floor must be > 0");
  CombinedGradient out;
  out.total.assign(x.size(), 0.0);
  for (const RewardTerm& term : terms) {
    std::vector<double> g;
    double value = 0.0;
    switch (term.kind) {
      case RewardKind::Explicit: {
        RewardEval ev = eval_reward(term, x);
        g = std::move(ev.gradient);
        value = ev.value;
        break;
      }
      case RewardKind::CfgImplicit:
        if (!aux.cfg_net || !aux.rng)
          throw std::invalid_argument("combine_normalized: cfg term needs a net and rng");
        g = cfg_reward_pullback(*aux.cfg_net, x, term.cond, aux.sigma_lo,
                                aux.sigma_hi, *aux.rng);
        break;
      case RewardKind::DensityRatio:
        if (!aux.ratio_net_a || !aux.ratio_net_b || !aux.rng)
          throw std::invalid_argument(
              "combine_normalized: density ratio term needs two nets and rng");
        g = density_ratio_pullback(*aux.ratio_net_a, *aux.ratio_net_b, x,
                                   aux.sigma_lo, aux.sigma_hi, *aux.rng);
        break;
    }
    if (!all_finite(g) || !std::isfinite(value))
      throw NumericError("reward '" + term.label + "' produced a non-finite gradient");
    double n;
    if (normalize) {
      n = normalize_contribution(g, term.weight, eps_floor);
    } else {
      n = l2_norm(g);
      for (double& v : g) v *= term.weight;
    }
    add_scaled(out.total, 1.0, g);
    out.per_term.push_back(std::move(g));
    out.raw_norms.push_back(n);
    out.values.push_back(value);
  }
  return out;
}

}  // namespace r0

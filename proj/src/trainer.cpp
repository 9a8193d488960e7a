#include "r0/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "r0/errors.hpp"
#include "r0/oracle.hpp"
#include "r0/vec.hpp"

namespace r0 {

void TrainConfig::validate() const {
  validate_schedule(schedule);
  if (iterations < 1) throw ConfigError("train: iterations must be >= 1");
  if (batch < 1) throw ConfigError("train: batch must be >= 1");
  if (!(lr > 0.0)) throw ConfigError("train: lr must be > 0");
  if (omega_reg < 0.0) throw ConfigError("train: omega_reg must be >= 0");
  if (omega_cfg < 0.0) throw ConfigError("train: omega_cfg must be >= 0");
  if (!(eps_floor > 0.0)) throw ConfigError("train: eps_floor must be > 0");
  if (!(cfg_sigma_lo > 0.0 && cfg_sigma_lo <= cfg_sigma_hi && cfg_sigma_hi <= 1.0))
    throw ConfigError("train: need 0 < cfg_sigma_lo <= cfg_sigma_hi <= 1");
  if (terms.empty() && omega_cfg == 0.0)
    throw ConfigError("train: no reward terms and no cfg weight");
}

double weight_reg(const Denoiser& a, const Denoiser& b) {
  if (a.input_dim != b.input_dim || a.cond_classes != b.cond_classes ||
      a.hidden != b.hidden || a.param_count() != b.param_count())
    throw std::invalid_argument("weight_reg: net shapes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    double d = a.params[i] - b.params[i];
    s += d * d;
  }
  return s;
}

namespace {

struct TermStats {
  std::vector<double> raw_norms, values, contrib_norms;
  explicit TermStats(std::size_t n)
      : raw_norms(n, 0.0), values(n, 0.0), contrib_norms(n, 0.0) {}
  void add(std::size_t ti, double raw, double value, double contrib) {
    raw_norms[ti] += raw;
    values[ti] += value;
    contrib_norms[ti] += contrib;
  }
  void finish(double inv_batch) {
    for (double& v : raw_norms) v *= inv_batch;
    for (double& v : values) v *= inv_batch;
    for (double& v : contrib_norms) v *= inv_batch;
  }
};

}  // namespace

TrainResult train(const TrainConfig& cfg, const Denoiser& phi,
                  const Denoiser* psi, const Denoiser* ratio_a,
                  const Denoiser* ratio_b, const TrainHooks& hooks) {
  cfg.validate();
  validate_denoiser(phi);
  int d = phi.input_dim;
  int K = cfg.schedule.steps();

  std::vector<RewardTerm> terms = cfg.terms;
  if (cfg.omega_cfg > 0.0)
    terms.push_back(make_cfg_term(cfg.cfg_class, cfg.omega_cfg));
  for (const RewardTerm& t : terms) t.validate(d);
  std::set<std::string> labels;
  for (const RewardTerm& t : terms)
    if (!labels.insert(t.label).second)
      throw ConfigError("train: duplicate reward label '" + t.label + "'");

  bool has_cfg = false, has_ratio = false;
  for (const RewardTerm& t : terms) {
    has_cfg |= t.kind == RewardKind::CfgImplicit;
    has_ratio |= t.kind == RewardKind::DensityRatio;
  }
  if (has_cfg) {
    if (!psi) throw std::invalid_argument("train: cfg term needs a guidance net");
    validate_denoiser(*psi);
  }
  const Denoiser* ra = ratio_a ? ratio_a : &phi;
  if (has_ratio) {
    if (!ratio_b)
      throw std::invalid_argument("train: density ratio term needs a smoothed net");
    validate_denoiser(*ra);
    validate_denoiser(*ratio_b);
  }

  TrainResult res;
  res.theta = phi;  // start at the anchor
  Denoiser& theta = res.theta;
  res.log.term_labels.clear();
  for (const RewardTerm& t : terms) res.log.term_labels.push_back(t.label);

  Adam opt({cfg.lr}, theta.param_count());
  Rng rng(cfg.seed);
  // Step picks for SingleEval come from a side stream so both modes consume
  // identical main-stream draws per sample.
  Rng k_rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);

  std::vector<double> g_reward(theta.param_count());
  std::vector<double> g_total(theta.param_count());
  std::vector<double> etas(std::size_t(K) + 1, 1.0);
  std::vector<std::vector<double>> epses(std::size_t(K) + 1);
  double inv_batch = 1.0 / double(cfg.batch);

  for (int it = 0; it < cfg.iterations; ++it) {
    auto t_start = std::chrono::steady_clock::now();
    std::fill(g_reward.begin(), g_reward.end(), 0.0);
    TermStats stats(terms.size());
    ImplicitAux aux{psi, ra, ratio_b, cfg.cfg_sigma_lo, cfg.cfg_sigma_hi, &rng};

    try {
      for (int b = 0; b < cfg.batch; ++b) {
        // Fixed main-stream order per sample: z, all etas, all noises, then
        // whatever the implicit terms draw.
        std::vector<double> z = rng.normal_vec(d);
        for (int k = K; k >= 1; --k) etas[std::size_t(k)] = cfg.eta.draw(rng);
        for (int k = K; k >= 1; --k) epses[std::size_t(k)] = rng.normal_vec(d);

        if (cfg.mode == TrainMode::FullChain) {
          auto stash = std::vector<ForwardStash>(std::size_t(K));
          auto xs = std::vector<std::vector<double>>(std::size_t(K) + 1);
          auto lins = std::vector<StepLin>(std::size_t(K));
          xs[0] = std::move(z);
          for (int i = 0, k = K; k >= 1; --k, ++i) {
            lins[std::size_t(i)] = step_lin(cfg.schedule.sigma(k),
                                            cfg.schedule.sigma(k - 1),
                                            etas[std::size_t(k)]);
            denoise_fwd(theta, xs[std::size_t(i)], cfg.schedule.sigma(k),
                        std::nullopt, stash[std::size_t(i)]);
            const StepLin& lin = lins[std::size_t(i)];
            const std::vector<double>& u = stash[std::size_t(i)].output;
            const std::vector<double>& eps = epses[std::size_t(k)];
            xs[std::size_t(i) + 1].resize(std::size_t(d));
            for (int q = 0; q < d; ++q)
              xs[std::size_t(i) + 1][std::size_t(q)] =
                  lin.c_x0 * u[std::size_t(q)] +
                  lin.c_xk * xs[std::size_t(i)][std::size_t(q)] +
                  lin.c_eps * eps[std::size_t(q)];
          }
          res.peak_diff_evals = std::max(res.peak_diff_evals, int(stash.size()));

          CombinedGradient cg = combine_normalized(terms, xs[std::size_t(K)], aux,
                                                   cfg.eps_floor, cfg.normalize);
          for (std::size_t ti = 0; ti < terms.size(); ++ti)
            stats.add(ti, cg.raw_norms[ti], cg.values[ti],
                      l2_norm(cg.per_term[ti]));

          // Reward loss is minus the combined reward; seed the chain with
          // its x0 gradient scaled for the batch mean.
          std::vector<double> g(std::size_t(d), 0.0);
          for (int q = 0; q < d; ++q)
            g[std::size_t(q)] = -inv_batch * cg.total[std::size_t(q)];
          std::vector<double> du(std::size_t(d), 0.0);
          for (int i = K - 1; i >= 0; --i) {
            const StepLin& lin = lins[std::size_t(i)];
            for (int q = 0; q < d; ++q) du[std::size_t(q)] = lin.c_x0 * g[std::size_t(q)];
            std::vector<double> dxk =
                denoise_vjp(theta, stash[std::size_t(i)], du, g_reward);
            for (int q = 0; q < d; ++q)
              g[std::size_t(q)] = lin.c_xk * g[std::size_t(q)] + dxk[std::size_t(q)];
          }
        } else {
          int k = 1 + k_rng.uniform_int(K);
          int j = std::min(k + 1, K);
          std::vector<double> x = std::move(z);
          for (int m = K; m > j; --m) {
            StepLin lin = step_lin(cfg.schedule.sigma(m), cfg.schedule.sigma(m - 1),
                                   etas[std::size_t(m)]);
            std::vector<double> u = denoise(theta, x, cfg.schedule.sigma(m));
            const std::vector<double>& eps = epses[std::size_t(m)];
            for (int q = 0; q < d; ++q)
              x[std::size_t(q)] = lin.c_x0 * u[std::size_t(q)] +
                                  lin.c_xk * x[std::size_t(q)] +
                                  lin.c_eps * eps[std::size_t(q)];
          }
          // The one evaluation gradients flow through; the prefix state x is
          // a constant (its gradient is dropped after the vjp).
          ForwardStash stash;
          denoise_fwd(theta, x, cfg.schedule.sigma(j), std::nullopt, stash);
          res.peak_diff_evals = std::max(res.peak_diff_evals, 1);
          StepLin lin = step_lin(cfg.schedule.sigma(j), cfg.schedule.sigma(j - 1),
                                 etas[std::size_t(j)]);
          const std::vector<double>& u = stash.output;
          const std::vector<double>& eps = epses[std::size_t(j)];
          std::vector<double> x_out(std::size_t(d), 0.0);
          for (int q = 0; q < d; ++q)
            x_out[std::size_t(q)] = lin.c_x0 * u[std::size_t(q)] +
                                    lin.c_xk * x[std::size_t(q)] +
                                    lin.c_eps * eps[std::size_t(q)];

          // Explicit and ratio terms act on the denoiser prediction; the
          // cfg term anchors one level below and chains back through c_x0.
          std::vector<double> du_ascent(std::size_t(d), 0.0);
          for (std::size_t ti = 0; ti < terms.size(); ++ti) {
            const RewardTerm& term = terms[ti];
            std::vector<double> g;
            double value = 0.0;
            double chain = 1.0;
            switch (term.kind) {
              case RewardKind::Explicit: {
                RewardEval ev = eval_reward(term, u);
                g = std::move(ev.gradient);
                value = ev.value;
                break;
              }
              case RewardKind::DensityRatio:
                g = density_ratio_pullback(*ra, *ratio_b, u, cfg.cfg_sigma_lo,
                                           cfg.cfg_sigma_hi, rng);
                break;
              case RewardKind::CfgImplicit:
                g = cfg_reward_pullback(*psi, x_out, term.cond, cfg.cfg_sigma_lo,
                                        cfg.cfg_sigma_hi, rng);
                chain = lin.c_x0;
                break;
            }
            if (!all_finite(g) || !std::isfinite(value))
              throw NumericError("reward '" + term.label +
                                 "' produced a non-finite gradient");
            double raw;
            if (cfg.normalize) {
              raw = normalize_contribution(g, term.weight, cfg.eps_floor);
            } else {
              raw = l2_norm(g);
              for (double& v : g) v *= term.weight;
            }
            stats.add(ti, raw, value, l2_norm(g));
            add_scaled(du_ascent, chain, g);
          }
          std::vector<double> du(std::size_t(d), 0.0);
          for (int q = 0; q < d; ++q)
            du[std::size_t(q)] = -inv_batch * du_ascent[std::size_t(q)];
          denoise_vjp(theta, stash, du, g_reward);
        }
      }
    } catch (const NumericError& e) {
      if (hooks.on_diverged) hooks.on_diverged(it, theta, res.log);
      throw TrainingDiverged(it, e.what());
    }

    stats.finish(inv_batch);
    double reg_loss = weight_reg(theta, phi);
    std::vector<double> g_reg(theta.param_count());
    for (std::size_t i = 0; i < g_reg.size(); ++i)
      g_reg[i] = 2.0 * cfg.omega_reg * (theta.params[i] - phi.params[i]);
    for (std::size_t i = 0; i < g_total.size(); ++i)
      g_total[i] = g_reward[i] + g_reg[i];

    if (!std::isfinite(reg_loss) || !all_finite(g_total)) {
      if (hooks.on_diverged) hooks.on_diverged(it, theta, res.log);
      throw TrainingDiverged(it, "non-finite loss or gradient");
    }

    RunRecord rec;
    rec.iter = it;
    rec.term_raw_norms = std::move(stats.raw_norms);
    rec.term_values = std::move(stats.values);
    rec.term_contrib_norms = std::move(stats.contrib_norms);
    rec.reg_loss = reg_loss;
    rec.reg_grad_norm = l2_norm(g_reg);
    rec.cos_reward_reg = diag_cosine(g_reward, g_reg);
    opt.step(theta.params, g_total);
    if (!all_finite(theta.params)) {
      if (hooks.on_diverged) hooks.on_diverged(it, theta, res.log);
      throw TrainingDiverged(it, "non-finite parameters after update");
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
    res.log.records.push_back(std::move(rec));
    if (hooks.on_iteration) hooks.on_iteration(it, theta, res.log);
  }
  return res;
}

}  // namespace r0

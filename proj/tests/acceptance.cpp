// Acceptance suite: one self-contained check per criterion, each printing a
// single [PASS]/[FAIL] line plus the measured numbers behind the verdict.
// Run with no arguments for everything, or pass criterion ids (1..9) to run
// a subset. Exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "r0/checkpoint.hpp"
#include "r0/csv.hpp"
#include "r0/dataset.hpp"
#include "r0/generator.hpp"
#include "r0/net.hpp"
#include "r0/oracle.hpp"
#include "r0/pretrain.hpp"
#include "r0/rewards.hpp"
#include "r0/schedule.hpp"
#include "r0/trainer.hpp"
#include "r0/vec.hpp"
#include "support/analytic.hpp"

using namespace r0;
namespace fs = std::filesystem;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<std::vector<double>> draw_samples(const Denoiser& net,
                                              const NoiseSchedule& sched,
                                              const EtaPolicy& eta, int count,
                                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> out;
  out.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> z = rng.normal_vec(net.input_dim);
    out.push_back(generate(net, z, sched, eta, {}, rng.raw()).x0());
  }
  return out;
}

double mean_weighted_reward(const std::vector<RewardTerm>& terms,
                            const std::vector<std::vector<double>>& samples) {
  double s = 0.0;
  for (const auto& x : samples)
    for (const RewardTerm& t : terms) s += t.weight * eval_reward(t, x).value;
  return s / double(samples.size());
}

double mean_term_value(const RewardTerm& term,
                       const std::vector<std::vector<double>>& samples) {
  double s = 0.0;
  for (const auto& x : samples) s += eval_reward(term, x).value;
  return s / double(samples.size());
}

// --- shared pretrained fixtures, built lazily and cached per process ---

const Denoiser& phi_box() {
  static Denoiser net = [] {
    PretrainConfig pc;
    pc.dataset.kind = DatasetKind::UniformBox;
    pc.dataset.dim = 2;
    pc.dataset.lo = {-2.0, -2.0};
    pc.dataset.hi = {2.0, 2.0};
    pc.hidden = {48, 48};
    pc.steps = 6000;
    std::printf("  [fixture] pretraining box net (6000 steps)\n");
    std::fflush(stdout);
    return pretrain_denoiser(pc, 101).net;
  }();
  return net;
}

const Denoiser& phi_sharp() {
  static Denoiser net = [] {
    PretrainConfig pc;
    pc.dataset.kind = DatasetKind::Mixture;
    pc.dataset.dim = 2;
    pc.dataset.centers = {{-1.0, 0.0}, {1.0, 0.0}};
    pc.dataset.component_sigma = 0.1;
    pc.hidden = {48, 48};
    pc.steps = 8000;
    std::printf("  [fixture] pretraining sharp mixture net (8000 steps)\n");
    std::fflush(stdout);
    return pretrain_denoiser(pc, 301).net;
  }();
  return net;
}

const Denoiser& net_smooth() {
  static Denoiser net = [] {
    PretrainConfig pc;
    pc.dataset.kind = DatasetKind::Mixture;
    pc.dataset.dim = 2;
    pc.dataset.centers = {{-1.0, 0.0}, {1.0, 0.0}};
    pc.dataset.component_sigma = 0.1;
    // Total per-component spread 0.5, matching the sharp set blurred by an
    // independent Gaussian.
    pc.dataset.smooth_sigma = std::sqrt(0.5 * 0.5 - 0.1 * 0.1);
    pc.hidden = {48, 48};
    pc.steps = 8000;
    std::printf("  [fixture] pretraining smoothed mixture net (8000 steps)\n");
    std::fflush(stdout);
    return pretrain_denoiser(pc, 302).net;
  }();
  return net;
}

const Denoiser& phi_std() {
  static Denoiser net = [] {
    PretrainConfig pc;
    pc.dataset.kind = DatasetKind::Gaussian;
    pc.dataset.dim = 2;
    pc.dataset.mean = {0.0, 0.0};
    pc.dataset.scale = 1.0;
    pc.hidden = {48, 48, 48};
    std::printf("  [fixture] pretraining standard normal net (staged)\n");
    std::fflush(stdout);
    pc.steps = 9000;
    pc.lr = 2e-3;
    PretrainResult r = pretrain_denoiser(pc, 801);
    pc.lr = 5e-4;
    r = pretrain_denoiser(pc, 802, &r.net);
    pc.lr = 1e-4;
    r = pretrain_denoiser(pc, 803, &r.net);
    pc.steps = 6000;
    pc.lr = 2e-5;
    pc.batch = 256;
    r = pretrain_denoiser(pc, 804, &r.net);
    return r.net;
  }();
  return net;
}

// The two-bump / two-bump rewards sharing the mode at (1, 1).
std::vector<RewardTerm> common_mode_terms() {
  RewardTerm r1 = make_mode_proximity({{1.0, 1.0}, {-1.0, 1.0}}, 0.5, 1.0);
  r1.label = "r1";
  RewardTerm r2 = make_mode_proximity({{1.0, 1.0}, {1.0, -1.0}}, 0.5, 1.0);
  r2.label = "r2";
  return {r1, r2};
}

// ---------------------------------------------------------------- criteria

bool c1_deterministic_reduction() {
  std::vector<double> x_star = {0.7, -0.3};
  Denoiser net = make_constant_denoiser(x_star);
  NoiseSchedule sched = make_schedule(8, ScheduleKind::Linear);
  Rng zrng(42);
  std::vector<double> z = zrng.normal_vec(2);
  Trajectory a = generate(net, z, sched, EtaPolicy::fixed(1.0), {}, 1);
  Trajectory b = generate(net, z, sched, EtaPolicy::fixed(1.0), {}, 2);

  double err = 0.0;
  for (int i = 0; i < 2; ++i)
    err = std::max(err, std::abs(a.x0()[std::size_t(i)] - x_star[std::size_t(i)]));
  bool identical = a.states == b.states;
  std::printf("    final error %.3e (tol 1e-10), trajectories identical across "
              "noise seeds: %s\n",
              err, identical ? "yes" : "no");
  return err <= 1e-10 && identical;
}

bool c2_common_mode_recovery() {
  std::vector<RewardTerm> terms = common_mode_terms();
  GridSpec grid{{{-3.0, 3.0}, {-3.0, 3.0}}, 401, 10'000'000};
  ModeReport oracle = grid_argmax(terms, {}, grid);
  double off = std::max(std::abs(oracle.argmax[0] - 1.0),
                        std::abs(oracle.argmax[1] - 1.0));
  std::printf("    oracle argmax (%.4f, %.4f), value %.4f\n", oracle.argmax[0],
              oracle.argmax[1], oracle.max_value);
  if (off > 0.02) return false;

  NoiseSchedule sched = make_schedule(4, ScheduleKind::Linear);
  std::vector<double> fracs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TrainConfig tc;
    tc.schedule = sched;
    tc.terms = terms;
    tc.iterations = 3000;
    tc.batch = 64;
    tc.omega_reg = 0.1;
    tc.seed = seed;
    TrainResult tr = train(tc, phi_box());
    auto samples = draw_samples(tr.theta, sched, EtaPolicy::random(), 1000,
                                1000 + seed);
    CoverageReport cov = mode_coverage(samples, {{1.0, 1.0}}, 0.3);
    std::printf("    seed %llu: %.1f%% within 0.3 of (1,1)\n",
                (unsigned long long)seed, 100.0 * cov.on_mode_fraction);
    std::fflush(stdout);
    fracs.push_back(cov.on_mode_fraction);
  }
  double med = median(fracs);
  std::printf("    median coverage %.3f (need >= 0.90)\n", med);
  return med >= 0.90;
}

bool c3_regularization_necessity() {
  RewardTerm spurious = make_mode_proximity({{10.0, 10.0}}, 6.0, 1.0);
  spurious.label = "spurious";
  NoiseSchedule sched = make_schedule(4, ScheduleKind::Linear);

  auto escape_fraction = [&](double omega, std::uint64_t seed) {
    TrainConfig tc;
    tc.schedule = sched;
    tc.terms = {spurious};
    tc.iterations = 3000;
    tc.batch = 64;
    tc.omega_reg = omega;
    tc.seed = seed;
    TrainResult tr = train(tc, phi_box());
    auto samples = draw_samples(tr.theta, sched, EtaPolicy::random(), 1000,
                                2000 + seed);
    int escaped = 0;
    for (const auto& x : samples)
      if (l2_norm(x) > 4.0) ++escaped;
    return double(escaped) / double(samples.size());
  };

  std::vector<double> free_fracs, anchored_fracs;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    double f0 = escape_fraction(0.0, seed);
    double f1 = escape_fraction(1.0, seed);
    std::printf("    seed %llu: escape %.1f%% unregularized vs %.1f%% at "
                "omega_reg=1\n",
                (unsigned long long)seed, 100.0 * f0, 100.0 * f1);
    std::fflush(stdout);
    free_fracs.push_back(f0);
    anchored_fracs.push_back(f1);
  }
  double m0 = median(free_fracs), m1 = median(anchored_fracs);
  std::printf("    medians: %.3f (need >= 0.50) and %.3f (need <= 0.05)\n", m0,
              m1);
  return m0 >= 0.50 && m1 <= 0.05;
}

bool c4_gradient_normalization() {
  bool ok = true;

  // (a) exact arithmetic of the shared normalization primitive.
  {
    std::vector<double> g = {3.0, 4.0};
    double raw = normalize_contribution(g, 0.6, 1e-8);
    double s = 0.6 / 5.0;
    ok &= raw == 5.0 && g[0] == 3.0 * s && g[1] == 4.0 * s;

    std::vector<double> tiny = {1e-12, 0.0};
    double traw = normalize_contribution(tiny, 2.0, 1e-8);
    double ts = 2.0 / 1e-8;
    ok &= traw == 1e-12 && tiny[0] == 1e-12 * ts && tiny[1] == 0.0;
    std::printf("    exact arithmetic: %s\n", ok ? "ok" : "MISMATCH");
  }

  // (b) invariance of the normalized contribution to the term's scale.
  {
    std::vector<double> x = {0.4, 0.1};
    double worst = 0.0;
    for (double scale : {1e-9, 1e9}) {
      RewardTerm base =
          make_mode_proximity({{0.3, -0.2}, {1.1, 0.8}}, 0.7, 1.3, 1.0);
      RewardTerm scaled =
          make_mode_proximity({{0.3, -0.2}, {1.1, 0.8}}, 0.7, 1.3, scale);
      ImplicitAux aux;
      CombinedGradient a = combine_normalized({base}, x, aux, 1e-8);
      CombinedGradient b = combine_normalized({scaled}, x, aux, 1e-8);
      for (int i = 0; i < 2; ++i) {
        double denom = std::max(std::abs(a.total[std::size_t(i)]), 1e-300);
        worst = std::max(worst, std::abs(a.total[std::size_t(i)] -
                                         b.total[std::size_t(i)]) /
                                    denom);
      }
    }
    std::printf("    scale invariance: worst relative drift %.2e (tol 1e-12)\n",
                worst);
    ok &= worst <= 1e-12;
  }

  // (c) an orthogonal pair with raw gradients ~1000x apart: with
  // normalization both rewards reach their maxima, without it the weak one
  // never moves off the initial distribution.
  RewardTerm strong = make_halfspace({1.0, 0.0}, 0.0, 1.0, 1.0);
  strong.label = "strong";
  RewardTerm weak = make_halfspace({0.0, 1.0}, 0.0, 1.0, 1e-3);
  weak.label = "weak";
  GridSpec grid{{{-3.0, 3.0}, {-3.0, 3.0}}, 201, 10'000'000};
  double max_strong = grid_argmax({strong}, {}, grid).max_value;
  double max_weak = grid_argmax({weak}, {}, grid).max_value;

  NoiseSchedule sched = make_schedule(4, ScheduleKind::Linear);
  auto run = [&](bool normalize) {
    TrainConfig tc;
    tc.schedule = sched;
    tc.terms = {strong, weak};
    tc.iterations = 3000;
    tc.batch = 64;
    tc.omega_reg = 0.05;
    tc.normalize = normalize;
    tc.seed = 17;
    return train(tc, phi_box());
  };

  TrainResult with_norm = run(true);
  TrainResult without_norm = run(false);
  double ratio0 = with_norm.log.records.front().term_raw_norms[0] /
                  std::max(with_norm.log.records.front().term_raw_norms[1], 1e-300);
  auto s_with = draw_samples(with_norm.theta, sched, EtaPolicy::random(), 1000, 3001);
  auto s_without =
      draw_samples(without_norm.theta, sched, EtaPolicy::random(), 1000, 3001);
  double strong_with = mean_term_value(strong, s_with);
  double weak_with = mean_term_value(weak, s_with);
  double weak_without = mean_term_value(weak, s_without);
  std::printf("    raw norm imbalance at start: %.0fx\n", ratio0);
  std::printf("    normalized: strong %.4f/%.4f, weak %.6f/%.6f (need >= 0.8x "
              "of max)\n",
              strong_with, max_strong, weak_with, max_weak);
  std::printf("    unnormalized: weak %.6f (need < 0.5x of %.6f)\n",
              weak_without, max_weak);
  ok &= ratio0 >= 100.0;
  ok &= strong_with >= 0.8 * max_strong && weak_with >= 0.8 * max_weak;
  ok &= weak_without < 0.5 * max_weak;
  return ok;
}

bool c5_single_eval_convergence() {
  std::vector<RewardTerm> terms = common_mode_terms();
  GridSpec grid{{{-3.0, 3.0}, {-3.0, 3.0}}, 401, 10'000'000};
  double threshold = 0.9 * grid_argmax(terms, {}, grid).max_value;
  NoiseSchedule sched = make_schedule(4, ScheduleKind::Linear);
  const int iters = 3000;

  auto run = [&](TrainMode mode, std::uint64_t seed, int& first_cross) {
    TrainConfig tc;
    tc.schedule = sched;
    tc.mode = mode;
    tc.terms = terms;
    tc.iterations = iters;
    tc.batch = 64;
    tc.omega_reg = 0.1;
    tc.seed = seed;
    first_cross = iters + 1;
    TrainHooks hooks;
    hooks.on_iteration = [&](int it, const Denoiser& net, const RunLog&) {
      if (first_cross <= iters || (it + 1) % 10 != 0) return;
      auto probe = draw_samples(net, sched, EtaPolicy::random(), 128, 424242);
      if (mean_weighted_reward(terms, probe) >= threshold) first_cross = it + 1;
    };
    return train(tc, phi_box(), nullptr, nullptr, nullptr, hooks);
  };

  std::vector<double> it_full, it_single;
  bool depth_ok = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    int cross_full = 0, cross_single = 0;
    TrainResult full = run(TrainMode::FullChain, seed, cross_full);
    TrainResult single = run(TrainMode::SingleEval, seed, cross_single);
    depth_ok &= full.peak_diff_evals == sched.steps() && single.peak_diff_evals == 1;
    std::printf("    seed %llu: iterations to %.3f reward: %d full-chain vs %d "
                "single-eval\n",
                (unsigned long long)seed, threshold, cross_full, cross_single);
    std::fflush(stdout);
    it_full.push_back(double(cross_full));
    it_single.push_back(double(cross_single));
  }
  double med_full = median(it_full), med_single = median(it_single);
  std::printf("    medians: single-eval %.0f vs full-chain %.0f (need <=); "
              "differentiable depth 1 vs %d: %s\n",
              med_single, med_full, sched.steps(), depth_ok ? "ok" : "WRONG");
  return med_single <= med_full && med_single <= double(iters) && depth_ok;
}

bool c6_gradient_correctness() {
  const double h = 1e-4, tol = 1e-4;
  bool ok = true;

  // Explicit reward gradients against central differences.
  {
    RewardTerm bumps = make_mode_proximity({{0.5, -0.5}, {-1.0, 0.3}}, 0.7, 1.0, 1.3);
    RewardTerm half = make_halfspace({0.6, -0.8}, 0.2, 1.0, 2.0);
    RewardTerm sat = make_anti_saturation(0.8, 1.0);
    std::vector<std::vector<double>> points = {{0.2, 0.1}, {-0.7, 0.9}, {1.5, -1.2}};
    double worst = 0.0;
    for (const RewardTerm& term : {bumps, half, sat}) {
      for (const auto& x : points) {
        RewardEval ev = eval_reward(term, x);
        auto f = [&](std::span<const double> p) { return eval_reward(term, p).value; };
        std::vector<double> fd = finite_diff_gradient(f, x, h);
        std::vector<double> diff = fd;
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= ev.gradient[i];
        worst = std::max(worst, l2_norm(diff) / std::max(l2_norm(fd), 1e-12));
      }
    }
    std::printf("    explicit reward gradients: worst rel err %.2e\n", worst);
    ok &= worst < tol;
  }

  // Parameter gradient of the weight anchor.
  {
    Rng rng(11);
    std::vector<int> hidden = {8};
    Denoiser theta = make_denoiser(2, 0, hidden, rng);
    Denoiser phi = make_denoiser(2, 0, hidden, rng);
    std::vector<double> fd(theta.param_count());
    for (std::size_t j = 0; j < theta.param_count(); ++j) {
      Denoiser tp = theta, tm = theta;
      tp.params[j] += h;
      tm.params[j] -= h;
      fd[j] = (weight_reg(tp, phi) - weight_reg(tm, phi)) / (2.0 * h);
    }
    double worst = 0.0;
    std::vector<double> diff(fd);
    for (std::size_t j = 0; j < fd.size(); ++j)
      diff[j] -= 2.0 * (theta.params[j] - phi.params[j]);
    worst = l2_norm(diff) / std::max(l2_norm(fd), 1e-12);
    std::printf("    weight anchor gradient: rel err %.2e\n", worst);
    ok &= worst < tol;
  }

  // Classifier-guidance pullback against a hand-built class-constant net,
  // where the guided log-posterior has the closed form v . x_t.
  {
    Rng rng(12);
    std::vector<int> hidden = {4};
    Denoiser psi = make_denoiser(2, 2, hidden, rng);
    std::fill(psi.params.begin(), psi.params.end(), 0.0);
    const LayerShape& l1 = psi.layers[0];
    const LayerShape& l2 = psi.layers[1];
    // Hidden rows read only the one-hot block, so tanh is exact per class.
    psi.params[l1.w_off + 0 * std::size_t(l1.in) + 4] = 0.7;
    psi.params[l1.w_off + 1 * std::size_t(l1.in) + 5] = -0.4;
    double w2[2][4] = {{0.5, -0.3, 0.0, 0.0}, {0.2, 0.8, 0.0, 0.0}};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 4; ++c)
        psi.params[l2.w_off + std::size_t(r) * std::size_t(l2.in) + std::size_t(c)] =
            w2[r][c];
    psi.params[l2.b_off + 0] = 0.1;
    psi.params[l2.b_off + 1] = -0.2;

    double t = std::tanh(0.7);
    std::vector<double> m_diff = {0.5 * t, 0.2 * t};  // f(., class0) - f(., null)
    double sigma = 0.5;
    double a = alpha_for(sigma);
    std::vector<double> v = {a / (sigma * sigma) * m_diff[0],
                             a / (sigma * sigma) * m_diff[1]};
    std::vector<double> eps = {0.2, -0.1};
    std::vector<double> x = {0.3, -0.7};
    auto log_posterior = [&](std::span<const double> p) {
      std::vector<double> x_t = forward_diffuse(p, sigma, eps);
      return dot(v, x_t);
    };
    std::vector<double> fd = finite_diff_gradient(log_posterior, x, h);
    std::vector<double> g = cfg_reward_pullback_at(psi, x, 0, sigma, eps);
    std::vector<double> diff = fd;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= g[i];
    double rel = l2_norm(diff) / std::max(l2_norm(fd), 1e-12);
    std::printf("    guidance pullback: rel err %.2e\n", rel);
    ok &= rel < tol;
  }

  // Full reverse-mode parameter gradient of a 1-step generator loss.
  {
    Rng rng(13);
    std::vector<int> hidden = {6};
    Denoiser phi = make_denoiser(2, 0, hidden, rng);
    Denoiser theta = phi;
    for (double& p : theta.params) p += 0.01 * rng.normal();

    RewardTerm bumps = make_mode_proximity({{0.8, -0.2}}, 0.6, 1.5);
    RewardTerm half = make_halfspace({0.3, 0.9}, -0.1, 0.7);
    half.label = "halfspace2";
    std::vector<RewardTerm> terms = {bumps, half};
    const double omega = 0.2;
    std::vector<std::vector<double>> zs;
    for (int b = 0; b < 3; ++b) zs.push_back(rng.normal_vec(2));

    auto loss = [&](const Denoiser& net) {
      double l = 0.0;
      for (const auto& z : zs) {
        std::vector<double> u = denoise(net, z, 1.0);
        for (const RewardTerm& term : terms)
          l -= term.weight * eval_reward(term, u).value;
      }
      return l / double(zs.size()) + omega * weight_reg(net, phi);
    };

    std::vector<double> g(theta.param_count(), 0.0);
    for (const auto& z : zs) {
      ForwardStash stash;
      denoise_fwd(theta, z, 1.0, {}, stash);
      std::vector<double> du(2, 0.0);
      for (const RewardTerm& term : terms) {
        RewardEval ev = eval_reward(term, stash.output);
        add_scaled(du, -term.weight / double(zs.size()), ev.gradient);
      }
      denoise_vjp(theta, stash, du, g);
    }
    for (std::size_t j = 0; j < g.size(); ++j)
      g[j] += 2.0 * omega * (theta.params[j] - phi.params[j]);

    std::vector<double> fd(theta.param_count());
    for (std::size_t j = 0; j < theta.param_count(); ++j) {
      Denoiser tp = theta, tm = theta;
      tp.params[j] += h;
      tm.params[j] -= h;
      fd[j] = (loss(tp) - loss(tm)) / (2.0 * h);
    }
    std::vector<double> diff = fd;
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= g[j];
    double rel = l2_norm(diff) / std::max(l2_norm(fd), 1e-12);
    std::printf("    one-step generator parameter gradient: rel err %.2e\n", rel);
    ok &= rel < tol;
  }
  return ok;
}

bool c7_density_ratio_guidance() {
  const std::vector<std::vector<double>> centers = {{-1.0, 0.0}, {1.0, 0.0}};
  NoiseSchedule sched = make_schedule(4, ScheduleKind::Linear);

  RewardTerm base = make_mode_proximity(centers, 0.5, 1.0);
  base.label = "base";

  auto mean_logpdf = [&](const Denoiser& net, std::uint64_t seed) {
    auto samples = draw_samples(net, sched, EtaPolicy::random(), 1000, seed);
    double s = 0.0;
    for (const auto& x : samples)
      s += analytic::mixture_logpdf(x, centers, 0.1);
    return s / double(samples.size());
  };

  std::vector<double> gains;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    TrainConfig tc;
    tc.schedule = sched;
    tc.terms = {base};
    tc.iterations = 800;
    tc.batch = 64;
    tc.omega_reg = 0.1;
    tc.seed = seed;
    TrainResult plain = train(tc, phi_sharp());

    tc.terms.push_back(make_density_ratio(2.0));
    TrainResult guided = train(tc, phi_sharp(), nullptr, nullptr, &net_smooth());

    double lp_plain = mean_logpdf(plain.theta, 9000 + seed);
    double lp_guided = mean_logpdf(guided.theta, 9000 + seed);
    std::printf("    seed %llu: mean log-density %.3f unguided vs %.3f guided "
                "(gain %.3f)\n",
                (unsigned long long)seed, lp_plain, lp_guided,
                lp_guided - lp_plain);
    std::fflush(stdout);
    gains.push_back(lp_guided - lp_plain);
  }
  double med = median(gains);
  std::printf("    median gain %.3f nats (need >= 0.5)\n", med);
  return med >= 0.5;
}

bool c8_score_sanity() {
  const Denoiser& net = phi_std();
  bool ok = true;
  for (double sigma : {0.3, 0.6, 0.9}) {
    double se = 0.0;
    int count = 0;
    for (int i = 0; i < 21; ++i) {
      for (int j = 0; j < 21; ++j) {
        std::vector<double> x = {-2.0 + 4.0 * i / 20.0, -2.0 + 4.0 * j / 20.0};
        std::vector<double> s = score(net, x, sigma);
        for (int q = 0; q < 2; ++q) {
          double e = s[std::size_t(q)] - (-x[std::size_t(q)]);
          se += e * e;
          ++count;
        }
      }
    }
    double rms = std::sqrt(se / double(count));
    std::printf("    sigma %.1f: score RMS error %.4f (tol 0.1)\n", sigma, rms);
    ok &= rms <= 0.1;
  }
  return ok;
}

bool c9_reproducibility() {
  fs::path dir = fs::temp_directory_path() / "r0_acceptance";
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };

  // Identical pretraining runs produce bitwise-identical parameters.
  PretrainConfig pc;
  pc.dataset.kind = DatasetKind::Gaussian;
  pc.dataset.dim = 2;
  pc.dataset.mean = {0.0, 0.0};
  pc.hidden = {8, 8};
  pc.steps = 150;
  bool pretrain_same =
      pretrain_denoiser(pc, 7).net.params == pretrain_denoiser(pc, 7).net.params;

  NoiseSchedule sched = make_schedule(2, ScheduleKind::Linear);
  RewardTerm bump = make_mode_proximity({{0.5, 0.5}}, 1.0, 1.0);
  auto run = [&](const fs::path& log_path, const fs::path& ckpt_path) {
    TrainConfig tc;
    tc.schedule = sched;
    tc.terms = {bump};
    tc.iterations = 30;
    tc.batch = 8;
    tc.seed = 3;
    TrainResult tr = train(tc, phi_box());
    write_runlog_csv(log_path.string(), tr.log);
    Checkpoint ck;
    ck.meta["net"] = "theta";
    ck.schedule = sched;
    ck.net = tr.theta;
    save_checkpoint(ckpt_path.string(), ck);
  };
  run(dir / "log_a.csv", dir / "theta_a.ckpt");
  run(dir / "log_b.csv", dir / "theta_b.ckpt");
  bool logs_same = slurp(dir / "log_a.csv") == slurp(dir / "log_b.csv");
  bool ckpts_same = slurp(dir / "theta_a.ckpt") == slurp(dir / "theta_b.ckpt");

  Checkpoint loaded = load_checkpoint((dir / "theta_a.ckpt").string());
  save_checkpoint((dir / "theta_rt.ckpt").string(), loaded);
  bool roundtrip_same =
      slurp(dir / "theta_a.ckpt") == slurp(dir / "theta_rt.ckpt");

  std::printf("    pretrain repeat: %s, run log bytes: %s, checkpoint bytes: "
              "%s, round trip: %s\n",
              pretrain_same ? "identical" : "DIFFER",
              logs_same ? "identical" : "DIFFER",
              ckpts_same ? "identical" : "DIFFER",
              roundtrip_same ? "identical" : "DIFFER");
  return pretrain_same && logs_same && ckpts_same && roundtrip_same;
}

struct Criterion {
  int id;
  const char* name;
  bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "deterministic-sampler-reduction", c1_deterministic_reduction},
    {2, "common-mode-recovery", c2_common_mode_recovery},
    {3, "regularization-necessity", c3_regularization_necessity},
    {4, "gradient-normalization", c4_gradient_normalization},
    {5, "single-eval-convergence", c5_single_eval_convergence},
    {6, "gradient-correctness", c6_gradient_correctness},
    {7, "density-ratio-guidance", c7_density_ratio_guidance},
    {8, "score-learning-sanity", c8_score_sanity},
    {9, "reproducibility-and-persistence", c9_reproducibility},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));

  int failures = 0, ran = 0;
  auto suite_start = std::chrono::steady_clock::now();
  for (const Criterion& c : kCriteria) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end())
      continue;
    std::printf("--- criterion %d: %s\n", c.id, c.name);
    std::fflush(stdout);
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = c.fn();
    } catch (const std::exception& e) {
      std::printf("    exception: %s\n", e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    std::printf("[%s] criterion %d %s (%.1fs)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, secs);
    std::fflush(stdout);
    ++ran;
    if (!pass) ++failures;
  }
  double total = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - suite_start)
                     .count();
  std::printf("%d/%d criteria passed in %.1fs\n", ran - failures, ran, total);
  return failures;
}

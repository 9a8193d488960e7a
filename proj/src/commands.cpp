#include "r0/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "r0/checkpoint.hpp"
#include "r0/csv.hpp"
#include "r0/dataset.hpp"
#include "r0/errors.hpp"
#include "r0/oracle.hpp"
#include "r0/pretrain.hpp"
#include "r0/svg.hpp"
#include "r0/trainer.hpp"

namespace r0 {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
  return std::string(buf);
}

// Sorted key=value dump of the merged config; its hash goes in the manifest.
std::string canonical_config(const ConfigMap& cfg) {
  std::string s;
  for (const auto& [k, e] : cfg.entries) s += k + "=" + e.value + "\n";
  return s;
}

fs::path resolve_out_dir(ConfigReader& rd) {
  fs::path out = rd.get_string("out", "out");
  if (const char* root = std::getenv("R0_OUT_ROOT"); root && *root && out.is_relative())
    out = fs::path(root) / out;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw FileError("cannot create output directory '" + out.string() + "'");
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw FileError("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f.flush()) throw FileError("write failed for '" + path.string() + "'");
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const ConfigMap& cfg, std::uint64_t seed,
                    CmdResult& result) {
  std::vector<std::string> names;
  for (const std::string& a : result.artifacts)
    names.push_back(fs::path(a).filename().string());
  std::sort(names.begin(), names.end());
  ordered_json m;
  m["command"] = command;
  m["config_fnv1a"] = hex64(fnv1a(canonical_config(cfg)));
  m["seed"] = seed;
  m["artifacts"] = names;
  fs::path path = out_dir / (command + "_manifest.json");
  write_text(path, m.dump(2) + "\n");
  result.artifacts.push_back(path.string());
}

DatasetSpec parse_dataset(ConfigReader& rd, int dim) {
  DatasetSpec ds;
  ds.dim = dim;
  ds.kind = dataset_kind_from_string(rd.require_string("dataset.kind"));
  switch (ds.kind) {
    case DatasetKind::Point:
      ds.point = rd.require_vector("dataset.point", dim);
      break;
    case DatasetKind::Gaussian:
      ds.mean = rd.require_vector("dataset.mean", dim);
      ds.scale = rd.get_double("dataset.scale", 1.0, 1e-12, 1e12);
      break;
    case DatasetKind::Mixture:
    case DatasetKind::ClassGaussians:
      ds.centers = rd.require_points("dataset.centers", dim);
      if (rd.has("dataset.weights"))
        ds.weights = rd.get_vector("dataset.weights", int(ds.centers.size()));
      ds.component_sigma = rd.get_double("dataset.component_sigma", 0.1, 1e-12, 1e12);
      break;
    case DatasetKind::UniformBox:
      ds.lo = rd.require_vector("dataset.lo", dim);
      ds.hi = rd.require_vector("dataset.hi", dim);
      break;
  }
  ds.smooth_sigma = rd.get_double("dataset.smooth_sigma", 0.0, 0.0, 1e12);
  ds.validate();
  return ds;
}

std::vector<int> parse_hidden(ConfigReader& rd) {
  std::vector<double> widths = rd.get_vector("pretrain.hidden", 0);
  if (widths.empty()) return {64, 64, 64};
  std::vector<int> hidden;
  for (double w : widths) {
    if (w != double(int(w)) || w < 1)
      throw ConfigError("key 'pretrain.hidden': widths must be positive integers");
    hidden.push_back(int(w));
  }
  return hidden;
}

NoiseSchedule parse_schedule(ConfigReader& rd, const NoiseSchedule* fallback) {
  if (!rd.has("schedule.steps") && !rd.has("schedule.kind") && fallback)
    return *fallback;
  int steps = rd.get_int("schedule.steps", 4, 1, 10000);
  ScheduleKind kind = schedule_kind_from_string(rd.get_string("schedule.kind", "linear"));
  return make_schedule(steps, kind);
}

EtaPolicy parse_eta(ConfigReader& rd) {
  std::string mode = rd.get_string("eta.mode", "random");
  if (mode == "random") {
    if (rd.has("eta.value"))
      throw ConfigError("key 'eta.value': only valid with eta.mode=fixed");
    return EtaPolicy::random();
  }
  if (mode == "fixed")
    return EtaPolicy::fixed(rd.get_double("eta.value", 1.0, 0.0, 1.0));
  throw ConfigError("key 'eta.mode': expected random or fixed");
}

// reward.<i>.name blocks, consecutive from 0. Labels default to the name,
// with the index appended when a name repeats.
std::vector<RewardTerm> parse_reward_terms(ConfigReader& rd, int dim,
                                           bool explicit_only) {
  std::vector<RewardTerm> terms;
  for (int i = 0;; ++i) {
    std::string pre = "reward." + std::to_string(i) + ".";
    if (!rd.has(pre + "name")) break;
    std::string name = rd.require_string(pre + "name");
    RewardTerm t;
    if (name == "mode_proximity") {
      t = make_mode_proximity(rd.require_points(pre + "centers", dim),
                              rd.get_double(pre + "tau", 1.0, 1e-12, 1e12),
                              rd.get_double(pre + "weight", 1.0, 1e-12, 1e12),
                              rd.get_double(pre + "scale", 1.0, -1e12, 1e12));
    } else if (name == "halfspace") {
      t = make_halfspace(rd.require_vector(pre + "normal", dim),
                         rd.get_double(pre + "offset", 0.0, -1e12, 1e12),
                         rd.get_double(pre + "weight", 1.0, 1e-12, 1e12),
                         rd.get_double(pre + "scale", 1.0, -1e12, 1e12));
    } else if (name == "anti_saturation") {
      t = make_anti_saturation(rd.get_double(pre + "lambda", 1.0, 1e-12, 1e12),
                               rd.get_double(pre + "weight", 1.0, 1e-12, 1e12));
    } else if (name == "density_ratio" && !explicit_only) {
      t = make_density_ratio(rd.get_double(pre + "weight", 1.0, 1e-12, 1e12));
    } else {
      throw ConfigError("key '" + pre + "name': unknown reward '" + name + "'" +
                        (explicit_only ? " (implicit terms not allowed here)" : ""));
    }
    if (rd.has(pre + "label")) t.label = rd.require_string(pre + "label");
    t.validate(dim);
    terms.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].label != terms[i].name) continue;
    int dup = 0;
    for (const RewardTerm& o : terms) dup += o.name == terms[i].name;
    if (dup > 1) terms[i].label = terms[i].name + "_" + std::to_string(i);
  }
  return terms;
}

GridSpec parse_grid(ConfigReader& rd, int dim) {
  GridSpec grid;
  std::vector<std::vector<double>> bounds = rd.require_points("grid.bounds", 2);
  if (int(bounds.size()) != dim)
    throw ConfigError("key 'grid.bounds': expected one lo,hi pair per axis");
  for (const auto& b : bounds) grid.bounds.emplace_back(b[0], b[1]);
  grid.resolution = rd.get_int("grid.resolution", 101, 2, 100000);
  grid.max_points =
      std::size_t(rd.get_double("grid.max_points", 1e7, 1.0, 1e9));
  grid.validate();
  return grid;
}

Checkpoint load_ckpt(const std::string& path) { return load_checkpoint(path); }

std::string eta_comment(const EtaPolicy& eta) {
  return eta.mode == EtaPolicy::Mode::Fixed
             ? "eta fixed " + format_f64(eta.value)
             : std::string("eta random per step");
}

}  // namespace

CmdResult cmd_pretrain(const ConfigMap& cfg) {
  ConfigReader rd(cfg);
  fs::path out = resolve_out_dir(rd);
  std::uint64_t seed = rd.get_u64("seed", 0);
  int dim = rd.get_int("dim", 2, 1, 16);
  DatasetSpec ds = parse_dataset(rd, dim);
  NoiseSchedule sched = parse_schedule(rd, nullptr);

  PretrainConfig pc;
  pc.dataset = ds;
  pc.hidden = parse_hidden(rd);
  pc.steps = rd.get_int("pretrain.steps", 20000, 1, 10'000'000);
  pc.batch = rd.get_int("pretrain.batch", 128, 1, 65536);
  pc.lr = rd.get_double("pretrain.lr", 1e-3, 1e-12, 1.0);
  pc.label_dropout = rd.get_double("pretrain.label_dropout", 0.1, 0.0, 1.0);

  std::vector<std::string> nets;
  {
    std::string list = rd.get_string("nets", "phi");
    std::string cur;
    for (char c : list + ",") {
      if (c == ',') {
        if (!cur.empty()) nets.push_back(cur);
        cur.clear();
      } else if (c != ' ') {
        cur += c;
      }
    }
  }
  double ratio_smooth = rd.get_double("ratio_smooth_sigma", 0.0, 0.0, 1e12);
  rd.finish();

  for (const std::string& n : nets)
    if (n != "phi" && n != "psi" && n != "ratio_b")
      throw ConfigError("key 'nets': unknown net '" + n + "'");
  bool want_ratio = std::count(nets.begin(), nets.end(), "ratio_b") > 0;
  if (want_ratio && !(ratio_smooth > 0.0))
    throw ConfigError("key 'ratio_smooth_sigma': required (> 0) to pretrain ratio_b");
  if (std::count(nets.begin(), nets.end(), "psi") > 0 && ds.num_classes() == 0)
    throw ConfigError("key 'nets': psi needs a class-labelled dataset");

  CmdResult res;
  std::vector<SvgSeries> curves;
  const Denoiser* phi_ptr = nullptr;
  Denoiser phi_net;

  for (const std::string& n : nets) {
    PretrainConfig one = pc;
    std::uint64_t net_seed = seed;
    if (n == "phi" || n == "ratio_b") {
      // These two serve unconditional queries only.
      if (one.dataset.kind == DatasetKind::ClassGaussians)
        one.dataset.kind = DatasetKind::Mixture;
      one.label_dropout = 1.0;
    }
    if (n == "ratio_b") {
      one.dataset.smooth_sigma = std::sqrt(ds.smooth_sigma * ds.smooth_sigma +
                                           ratio_smooth * ratio_smooth);
      net_seed = seed ^ 0x5851f42d4c957f2dull;
    }
    // ratio_b starts from phi when both are trained in one run, mirroring
    // how the sharp net is the natural anchor for its smoothed twin.
    PretrainResult pr = pretrain_denoiser(one, net_seed,
                                          n == "ratio_b" ? phi_ptr : nullptr);
    if (n == "phi") {
      phi_net = pr.net;
      phi_ptr = &phi_net;
    }
    Checkpoint ck;
    ck.meta["command"] = "pretrain";
    ck.meta["net"] = n;
    ck.meta["seed"] = std::to_string(net_seed);
    ck.meta["dataset"] = to_string(one.dataset.kind);
    ck.schedule = sched;
    ck.net = std::move(pr.net);
    fs::path ck_path = out / (n + ".ckpt");
    save_checkpoint(ck_path.string(), ck);
    res.artifacts.push_back(ck_path.string());
    res.summary += "wrote " + ck_path.string() + " (final loss " +
                   format_f64(pr.loss_curve.back()) + ")\n";
    curves.push_back({n, std::move(pr.loss_curve)});
  }

  fs::path svg_path = out / "pretrain_loss.svg";
  write_line_chart(svg_path.string(), "denoising loss per iteration", curves);
  res.artifacts.push_back(svg_path.string());
  write_manifest(out, "pretrain", cfg, seed, res);
  return res;
}

CmdResult cmd_train(const ConfigMap& cfg) {
  ConfigReader rd(cfg);
  fs::path out = resolve_out_dir(rd);
  std::uint64_t seed = rd.get_u64("seed", 0);

  std::string init_path = rd.require_string("init");
  Checkpoint init = load_ckpt(init_path);
  int dim = init.net.input_dim;

  TrainConfig tc;
  tc.schedule = parse_schedule(rd, &init.schedule);
  tc.eta = parse_eta(rd);
  tc.terms = parse_reward_terms(rd, dim, false);
  std::string mode = rd.get_string("mode", "r0");
  if (mode == "r0")
    tc.mode = TrainMode::FullChain;
  else if (mode == "r0plus")
    tc.mode = TrainMode::SingleEval;
  else
    throw ConfigError("key 'mode': expected r0 or r0plus");
  tc.iterations = rd.get_int("train.iterations", 1000, 1, 10'000'000);
  tc.batch = rd.get_int("train.batch", 64, 1, 65536);
  tc.lr = rd.get_double("train.lr", 1e-3, 1e-12, 1.0);
  tc.omega_reg = rd.get_double("train.omega_reg", 0.1, 0.0, 1e12);
  tc.omega_cfg = rd.get_double("train.omega_cfg", 0.0, 0.0, 1e12);
  tc.cfg_class = rd.get_int("train.cfg_class", 0, 0, 1 << 20);
  tc.cfg_sigma_lo = rd.get_double("train.cfg_sigma_lo", 0.2, 1e-12, 1.0);
  tc.cfg_sigma_hi = rd.get_double("train.cfg_sigma_hi", 0.8, 1e-12, 1.0);
  tc.eps_floor = rd.get_double("train.eps_floor", 1e-8, 1e-300, 1.0);
  tc.normalize = rd.get_bool("train.normalize", true);
  tc.seed = seed;
  int ckpt_every = rd.get_int("checkpoint_every", 0, 0, 10'000'000);

  std::optional<Checkpoint> psi, ratio_a, ratio_b;
  if (rd.has("psi")) psi = load_ckpt(rd.require_string("psi"));
  if (rd.has("ratio_a")) ratio_a = load_ckpt(rd.require_string("ratio_a"));
  if (rd.has("ratio_b")) ratio_b = load_ckpt(rd.require_string("ratio_b"));
  rd.finish();

  if (tc.omega_cfg > 0.0) {
    if (!psi) throw ConfigError("key 'psi': required when train.omega_cfg > 0");
    if (tc.cfg_class >= psi->net.cond_classes)
      throw ConfigError("key 'train.cfg_class': out of range for the guidance net");
  }
  bool has_ratio = false;
  for (const RewardTerm& t : tc.terms)
    has_ratio |= t.kind == RewardKind::DensityRatio;
  if (has_ratio && !ratio_b)
    throw ConfigError("key 'ratio_b': required by a density_ratio reward");

  auto save_theta = [&](const fs::path& path, const Denoiser& net) {
    Checkpoint ck;
    ck.meta["command"] = "train";
    ck.meta["net"] = "theta";
    ck.meta["mode"] = mode;
    ck.meta["seed"] = std::to_string(seed);
    ck.meta["init_fnv1a"] = file_fnv1a_hex(init_path);
    ck.schedule = tc.schedule;
    ck.net = net;
    save_checkpoint(path.string(), ck);
  };

  CmdResult res;
  TrainHooks hooks;
  if (ckpt_every > 0)
    hooks.on_iteration = [&](int it, const Denoiser& net, const RunLog&) {
      if ((it + 1) % ckpt_every == 0) {
        fs::path p = out / ("theta_iter" + std::to_string(it + 1) + ".ckpt");
        save_theta(p, net);
        res.artifacts.push_back(p.string());
      }
    };
  hooks.on_diverged = [&](int, const Denoiser& net, const RunLog& log) {
    save_theta(out / "theta_diverged.ckpt", net);
    write_runlog_csv((out / "runlog_diverged.csv").string(), log);
  };

  TrainResult tr = train(tc, init.net, psi ? &psi->net : nullptr,
                         ratio_a ? &ratio_a->net : nullptr,
                         ratio_b ? &ratio_b->net : nullptr, hooks);

  fs::path theta_path = out / "theta.ckpt";
  save_theta(theta_path, tr.theta);
  res.artifacts.push_back(theta_path.string());

  fs::path log_path = out / "runlog.csv";
  write_runlog_csv(log_path.string(), tr.log);
  res.artifacts.push_back(log_path.string());
  fs::path timing_path = out / "timing.csv";
  write_timing_csv(timing_path.string(), tr.log);
  res.artifacts.push_back(timing_path.string());

  std::vector<SvgSeries> series;
  for (std::size_t ti = 0; ti < tr.log.term_labels.size(); ++ti) {
    SvgSeries s{tr.log.term_labels[ti] + "_value", {}};
    for (const RunRecord& r : tr.log.records) s.ys.push_back(r.term_values[ti]);
    series.push_back(std::move(s));
  }
  SvgSeries reg{"reg_loss", {}}, cosd{"cos(reward,reg)", {}};
  for (const RunRecord& r : tr.log.records) {
    reg.ys.push_back(r.reg_loss);
    cosd.ys.push_back(r.cos_reward_reg);
  }
  series.push_back(std::move(reg));
  series.push_back(std::move(cosd));
  fs::path svg_path = out / "runlog.svg";
  write_line_chart(svg_path.string(), "training diagnostics", series);
  res.artifacts.push_back(svg_path.string());

  res.summary += "wrote " + theta_path.string() + "\n";
  res.summary += "final reg_loss " + format_f64(tr.log.records.back().reg_loss) +
                 ", peak differentiable evals " +
                 std::to_string(tr.peak_diff_evals) + "\n";
  write_manifest(out, "train", cfg, seed, res);
  return res;
}

CmdResult cmd_sample(const ConfigMap& cfg) {
  ConfigReader rd(cfg);
  fs::path out = resolve_out_dir(rd);
  std::uint64_t seed = rd.get_u64("seed", 0);
  std::string ckpt_path = rd.require_string("checkpoint");
  Checkpoint ck = load_ckpt(ckpt_path);
  NoiseSchedule sched = parse_schedule(rd, &ck.schedule);
  EtaPolicy eta = parse_eta(rd);
  int count = rd.get_int("count", 1000, 0, 10'000'000);
  int cond = rd.get_int("cond", -1, -1, 1 << 20);
  rd.finish();

  if (cond >= 0 && cond >= ck.net.cond_classes)
    throw ConfigError("key 'cond': out of range for this checkpoint");
  std::optional<int> cond_opt;
  if (cond >= 0) cond_opt = cond;

  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  rows.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> z = rng.normal_vec(ck.net.input_dim);
    Trajectory traj = generate(ck.net, z, sched, eta, cond_opt, rng.raw());
    rows.push_back(traj.x0());
  }

  std::vector<std::string> comments = {
      "checkpoint " + fs::path(ckpt_path).filename().string() + " fnv1a " +
          file_fnv1a_hex(ckpt_path),
      "seed " + std::to_string(seed), eta_comment(eta),
      "steps " + std::to_string(sched.steps())};
  fs::path csv_path = out / "samples.csv";
  write_samples_csv(csv_path.string(), comments, ck.net.input_dim, rows);

  CmdResult res;
  res.artifacts.push_back(csv_path.string());
  res.summary = "wrote " + csv_path.string() + " (" + std::to_string(count) +
                " samples)\n";
  write_manifest(out, "sample", cfg, seed, res);
  return res;
}

CmdResult cmd_eval(const ConfigMap& cfg) {
  ConfigReader rd(cfg);
  fs::path out = resolve_out_dir(rd);
  std::uint64_t seed = rd.get_u64("seed", 0);
  std::string samples_path = rd.require_string("samples");
  std::vector<std::vector<double>> rows = read_samples_csv(samples_path);
  int dim = rd.get_int("dim", rows.empty() ? 2 : int(rows[0].size()), 1, 16);
  if (!rows.empty() && int(rows[0].size()) != dim)
    throw FormatError("'" + samples_path + "': samples have dimension " +
                      std::to_string(rows[0].size()) + ", expected " +
                      std::to_string(dim));
  std::vector<RewardTerm> terms = parse_reward_terms(rd, dim, true);
  std::vector<std::vector<double>> modes;
  double radius = 0.0;
  if (rd.has("modes")) {
    modes = rd.require_points("modes", dim);
    radius = rd.get_double("radius", 0.3, 1e-12, 1e12);
  }
  rd.finish();

  ordered_json rep;
  rep["count"] = rows.size();
  if (!terms.empty()) {
    double mean = 0.0, mn = 0.0, mx = 0.0;
    std::vector<double> term_means(terms.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double v = 0.0;
      for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        double tv = terms[ti].weight * eval_reward(terms[ti], rows[i]).value;
        term_means[ti] += tv;
        v += tv;
      }
      mean += v;
      mn = i == 0 ? v : std::min(mn, v);
      mx = i == 0 ? v : std::max(mx, v);
    }
    if (!rows.empty()) {
      mean /= double(rows.size());
      for (double& t : term_means) t /= double(rows.size());
    }
    rep["reward_mean"] = mean;
    rep["reward_min"] = mn;
    rep["reward_max"] = mx;
    ordered_json per;
    for (std::size_t ti = 0; ti < terms.size(); ++ti)
      per[terms[ti].label] = term_means[ti];
    rep["per_term_mean"] = per;
  }
  if (!modes.empty()) {
    CoverageReport cov = mode_coverage(rows, modes, radius);
    ordered_json c;
    c["radius"] = radius;
    c["on_mode_fraction"] = cov.on_mode_fraction;
    c["per_mode_fraction"] = cov.per_mode_fraction;
    c["mean_min_distance"] = cov.mean_min_distance;
    rep["coverage"] = c;
  }

  fs::path rep_path = out / "eval.json";
  write_text(rep_path, rep.dump(2) + "\n");
  CmdResult res;
  res.artifacts.push_back(rep_path.string());
  res.summary = "wrote " + rep_path.string() + "\n";
  write_manifest(out, "eval", cfg, seed, res);
  return res;
}

CmdResult cmd_oracle(const ConfigMap& cfg) {
  ConfigReader rd(cfg);
  fs::path out = resolve_out_dir(rd);
  std::uint64_t seed = rd.get_u64("seed", 0);
  int dim = rd.get_int("dim", 2, 1, 3);
  std::vector<RewardTerm> terms = parse_reward_terms(rd, dim, true);
  if (terms.empty()) throw ConfigError("oracle: no reward terms");
  GridSpec grid = parse_grid(rd, dim);
  std::vector<double> weights = rd.get_vector("weights", 0);
  if (!weights.empty() && weights.size() != terms.size())
    throw ConfigError("key 'weights': expected one weight per reward term");
  rd.finish();

  ModeReport report = grid_argmax(terms, weights, grid);
  ordered_json rep;
  rep["argmax"] = report.argmax;
  rep["max_value"] = report.max_value;
  ordered_json per;
  for (std::size_t ti = 0; ti < terms.size(); ++ti)
    per[terms[ti].label] = report.per_term_values[ti];
  rep["per_term_values"] = per;
  ordered_json maxima = ordered_json::array();
  for (const LocalMax& m : report.local_maxima) {
    ordered_json e;
    e["point"] = m.point;
    e["value"] = m.value;
    maxima.push_back(e);
  }
  rep["local_maxima"] = maxima;

  fs::path rep_path = out / "oracle.json";
  write_text(rep_path, rep.dump(2) + "\n");
  CmdResult res;
  res.artifacts.push_back(rep_path.string());
  res.summary = "argmax at (";
  for (std::size_t i = 0; i < report.argmax.size(); ++i)
    res.summary += (i ? ", " : "") + format_f64(report.argmax[i]);
  res.summary += "), value " + format_f64(report.max_value) + "\n";
  res.summary += "wrote " + rep_path.string() + "\n";
  write_manifest(out, "oracle", cfg, seed, res);
  return res;
}

CmdResult run_command(const std::string& name, const std::string& config_path,
                      const std::vector<std::string>& overrides) {
  ConfigMap cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);
  apply_overrides(cfg, overrides);
  if (name == "pretrain") return cmd_pretrain(cfg);
  if (name == "train") return cmd_train(cfg);
  if (name == "sample") return cmd_sample(cfg);
  if (name == "eval") return cmd_eval(cfg);
  if (name == "oracle") return cmd_oracle(cfg);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace r0

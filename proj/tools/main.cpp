// Command-line front end. Talks to the core exclusively through the C API,
// so it doubles as a usage example for the shared library.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "r0.h"

namespace {

struct CommonArgs {
  std::string config;
  std::vector<std::string> sets;
  std::string seed, out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config, "key=value config file");
  cmd->add_option("-D,--set", args.sets, "override: key=value (repeatable)");
  cmd->add_option("--seed", args.seed, "override the seed");
  cmd->add_option("--out", args.out, "override the output directory");
}

int run(const char* name, const CommonArgs& args,
        const std::vector<std::string>& extra) {
  std::vector<std::string> overrides = args.sets;
  if (!args.seed.empty()) overrides.push_back("seed=" + args.seed);
  if (!args.out.empty()) overrides.push_back("out=" + args.out);
  overrides.insert(overrides.end(), extra.begin(), extra.end());

  std::vector<const char*> ptrs;
  for (const std::string& s : overrides) ptrs.push_back(s.c_str());
  char* summary = nullptr;
  r0_status status =
      r0_run_command(name, args.config.empty() ? nullptr : args.config.c_str(),
                     ptrs.data(), ptrs.size(), &summary);
  if (status != R0_OK) {
    std::fprintf(stderr, "error: %s\n", r0_last_error());
    return int(status);
  }
  if (summary) {
    std::fputs(summary, stdout);
    r0_string_free(summary);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"few-step generator training by reward maximization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(r0_version()));

  CommonArgs pretrain_args, train_args, sample_args, eval_args, oracle_args;

  CLI::App* pretrain = app.add_subcommand("pretrain", "fit denoisers to a dataset");
  add_common(pretrain, pretrain_args);

  CLI::App* train = app.add_subcommand("train", "reward-tune a pretrained net");
  add_common(train, train_args);
  std::string init;
  train->add_option("--init", init, "pretrained checkpoint to start from");

  CLI::App* sample = app.add_subcommand("sample", "draw samples from a checkpoint");
  add_common(sample, sample_args);
  std::string ckpt, count, eta;
  sample->add_option("--checkpoint", ckpt, "checkpoint to sample");
  sample->add_option("--count", count, "number of samples");
  sample->add_option("--eta", eta, "fixed eta in [0,1] (omit for per-step random)");

  CLI::App* eval = app.add_subcommand("eval", "score a sample file against rewards");
  add_common(eval, eval_args);
  std::string samples;
  eval->add_option("--samples", samples, "samples CSV to evaluate");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force the reward landscape");
  add_common(oracle, oracle_args);

  CLI11_PARSE(app, argc, argv);

  if (pretrain->parsed()) return run("pretrain", pretrain_args, {});
  if (train->parsed()) {
    std::vector<std::string> extra;
    if (!init.empty()) extra.push_back("init=" + init);
    return run("train", train_args, extra);
  }
  if (sample->parsed()) {
    std::vector<std::string> extra;
    if (!ckpt.empty()) extra.push_back("checkpoint=" + ckpt);
    if (!count.empty()) extra.push_back("count=" + count);
    if (!eta.empty()) extra.push_back("eta.mode=fixed"), extra.push_back("eta.value=" + eta);
    return run("sample", sample_args, extra);
  }
  if (eval->parsed()) {
    std::vector<std::string> extra;
    if (!samples.empty()) extra.push_back("samples=" + samples);
    return run("eval", eval_args, extra);
  }
  if (oracle->parsed()) return run("oracle", oracle_args, {});
  return 0;
}

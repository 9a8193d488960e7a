#pragma once

#include <string>
#include <vector>

#include "r0/config.hpp"

namespace r0 {

// One subcommand run. artifacts lists the files written (absolute paths);
// summary is a short human-readable report for stdout.
struct CmdResult {
  std::vector<std::string> artifacts;
  std::string summary;
};

// name: pretrain | train | sample | eval | oracle. Loads the config file,
// applies "key=value" overrides, resolves the output root (the R0_OUT_ROOT
// environment variable prefixes any relative out= directory) and
// dispatches. Every command writes a <name>_manifest.json recording the
// effective config hash, the seed, and the artifact names; identical
// config and seed produce byte-identical manifests.
CmdResult run_command(const std::string& name, const std::string& config_path,
                      const std::vector<std::string>& overrides);

// The individual commands, taking an already-merged config.
CmdResult cmd_pretrain(const ConfigMap& cfg);
CmdResult cmd_train(const ConfigMap& cfg);
CmdResult cmd_sample(const ConfigMap& cfg);
CmdResult cmd_eval(const ConfigMap& cfg);
CmdResult cmd_oracle(const ConfigMap& cfg);

}  // namespace r0

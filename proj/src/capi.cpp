#include "r0.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "r0/checkpoint.hpp"
#include "r0/commands.hpp"
#include "r0/errors.hpp"
#include "r0/generator.hpp"

namespace {

thread_local std::string g_last_error = "no error";

r0_status fail(r0_status code, const char* msg) {
  g_last_error = msg;
  return code;
}

// Every entry point funnels its exceptions through here so the error family
// -> status code mapping lives in exactly one place.
template <typename Fn>
r0_status guarded(Fn&& fn) {
  try {
    fn();
    return R0_OK;
  } catch (const r0::TrainingDiverged& e) {
    return fail(R0_ERR_DIVERGED, e.what());
  } catch (const r0::NumericError& e) {
    return fail(R0_ERR_NUMERIC, e.what());
  } catch (const r0::FormatError& e) {
    return fail(R0_ERR_FORMAT, e.what());
  } catch (const r0::FileError& e) {
    return fail(R0_ERR_FILE, e.what());
  } catch (const r0::ConfigError& e) {
    return fail(R0_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(R0_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(R0_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(R0_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

struct r0_checkpoint {
  r0::Checkpoint ckpt;
};

extern "C" {

const char* r0_version(void) { return "0.1.0"; }

const char* r0_last_error(void) { return g_last_error.c_str(); }

r0_status r0_run_command(const char* command, const char* config_path,
                         const char* const* overrides, size_t n_overrides,
                         char** summary_out) {
  if (!command) return fail(R0_ERR_INVALID_ARGUMENT, "command is null");
  if (n_overrides > 0 && !overrides)
    return fail(R0_ERR_INVALID_ARGUMENT, "overrides array is null");
  return guarded([&] {
    std::vector<std::string> ov;
    for (size_t i = 0; i < n_overrides; ++i) {
      if (!overrides[i]) throw std::invalid_argument("override entry is null");
      ov.emplace_back(overrides[i]);
    }
    r0::CmdResult res =
        r0::run_command(command, config_path ? config_path : "", ov);
    if (summary_out) *summary_out = dup_string(res.summary);
  });
}

void r0_string_free(char* s) { std::free(s); }

r0_status r0_checkpoint_open(const char* path, r0_checkpoint** out) {
  if (!path || !out) return fail(R0_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto handle = new r0_checkpoint{r0::load_checkpoint(path)};
    *out = handle;
  });
}

void r0_checkpoint_close(r0_checkpoint* ckpt) { delete ckpt; }

int r0_checkpoint_dim(const r0_checkpoint* ckpt) {
  return ckpt ? ckpt->ckpt.net.input_dim : 0;
}

int r0_checkpoint_cond_classes(const r0_checkpoint* ckpt) {
  return ckpt ? ckpt->ckpt.net.cond_classes : 0;
}

int r0_checkpoint_steps(const r0_checkpoint* ckpt) {
  return ckpt ? ckpt->ckpt.schedule.steps() : 0;
}

int r0_checkpoint_sigmas(const r0_checkpoint* ckpt, double* sigmas, size_t len) {
  if (!ckpt || !sigmas) return 0;
  size_t n = std::min(len, ckpt->ckpt.schedule.sigmas.size());
  for (size_t i = 0; i < n; ++i) sigmas[i] = ckpt->ckpt.schedule.sigmas[i];
  return int(n);
}

const char* r0_checkpoint_meta(const r0_checkpoint* ckpt, const char* key) {
  if (!ckpt || !key) return nullptr;
  auto it = ckpt->ckpt.meta.find(key);
  return it == ckpt->ckpt.meta.end() ? nullptr : it->second.c_str();
}

r0_status r0_denoise(const r0_checkpoint* ckpt, const double* x, double sigma,
                     int cond, double* out) {
  if (!ckpt || !x || !out) return fail(R0_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const r0::Denoiser& net = ckpt->ckpt.net;
    std::optional<int> c;
    if (cond >= 0) c = cond;
    std::vector<double> in(x, x + net.input_dim);
    std::vector<double> res = r0::denoise(net, in, sigma, c);
    std::copy(res.begin(), res.end(), out);
  });
}

r0_status r0_score(const r0_checkpoint* ckpt, const double* x, double sigma,
                   int cond, double* out) {
  if (!ckpt || !x || !out) return fail(R0_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const r0::Denoiser& net = ckpt->ckpt.net;
    std::optional<int> c;
    if (cond >= 0) c = cond;
    std::vector<double> in(x, x + net.input_dim);
    std::vector<double> res = r0::score(net, in, sigma, c);
    std::copy(res.begin(), res.end(), out);
  });
}

r0_status r0_generate(const r0_checkpoint* ckpt, size_t count, uint64_t seed,
                      double eta, int cond, double* out) {
  if (!ckpt || (!out && count > 0))
    return fail(R0_ERR_INVALID_ARGUMENT, "null argument");
  if (eta > 1.0) return fail(R0_ERR_INVALID_ARGUMENT, "eta above 1");
  return guarded([&] {
    const r0::Denoiser& net = ckpt->ckpt.net;
    std::optional<int> c;
    if (cond >= 0) c = cond;
    r0::EtaPolicy policy =
        eta < 0.0 ? r0::EtaPolicy::random() : r0::EtaPolicy::fixed(eta);
    r0::Rng rng(seed);
    for (size_t i = 0; i < count; ++i) {
      std::vector<double> z = rng.normal_vec(net.input_dim);
      r0::Trajectory traj =
          r0::generate(net, z, ckpt->ckpt.schedule, policy, c, rng.raw());
      std::copy(traj.x0().begin(), traj.x0().end(),
                out + i * size_t(net.input_dim));
    }
  });
}

}  // extern "C"

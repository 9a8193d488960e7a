#ifndef R0_H
#define R0_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every entry point. The CLI exits with the same
 * numbers, so scripting against either surface behaves identically. */
typedef enum r0_status {
  R0_OK = 0,
  R0_ERR_INVALID_ARGUMENT = 1, /* caller bug: bad handle, size, null pointer */
  R0_ERR_CONFIG = 2,           /* bad key, value out of range, unknown key */
  R0_ERR_FILE = 3,             /* missing or unwritable file */
  R0_ERR_FORMAT = 4,           /* unparseable checkpoint, CSV, or config */
  R0_ERR_NUMERIC = 5,          /* non-finite values outside training */
  R0_ERR_DIVERGED = 6,         /* training produced non-finite state */
  R0_ERR_INTERNAL = 7
} r0_status;

const char* r0_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* r0_last_error(void);

/* Run one subcommand: "pretrain", "train", "sample", "eval", or "oracle".
 * config_path may be NULL when overrides carry the whole config; overrides
 * is an array of "key=value" strings. On success *summary_out (if non-NULL)
 * receives a malloc'd report listing the artifacts written; release it with
 * r0_string_free. */
r0_status r0_run_command(const char* command, const char* config_path,
                         const char* const* overrides, size_t n_overrides,
                         char** summary_out);

void r0_string_free(char* s);

/* Opaque handle over a loaded checkpoint (denoiser + schedule + metadata). */
typedef struct r0_checkpoint r0_checkpoint;

r0_status r0_checkpoint_open(const char* path, r0_checkpoint** out);
void r0_checkpoint_close(r0_checkpoint* ckpt);

int r0_checkpoint_dim(const r0_checkpoint* ckpt);
int r0_checkpoint_cond_classes(const r0_checkpoint* ckpt);
int r0_checkpoint_steps(const r0_checkpoint* ckpt);
/* Copies min(len, steps+1) noise levels into sigmas and returns the number
 * copied. */
int r0_checkpoint_sigmas(const r0_checkpoint* ckpt, double* sigmas, size_t len);
/* Metadata value for key, or NULL when absent. The pointer stays valid
 * until the checkpoint is closed. */
const char* r0_checkpoint_meta(const r0_checkpoint* ckpt, const char* key);

/* Single denoiser evaluation x0_hat = f(x, sigma, cond); cond < 0 means
 * unconditional. x and out hold dim doubles (out may alias x). */
r0_status r0_denoise(const r0_checkpoint* ckpt, const double* x, double sigma,
                     int cond, double* out);

/* Score of the smoothed model at level sigma (requires sigma > 0). */
r0_status r0_score(const r0_checkpoint* ckpt, const double* x, double sigma,
                   int cond, double* out);

/* Draw count samples with the checkpoint's schedule. eta >= 0 fixes the
 * noise blend (1 = deterministic sampler); eta < 0 redraws it uniformly per
 * step. out holds count * dim doubles, row-major. */
r0_status r0_generate(const r0_checkpoint* ckpt, size_t count, uint64_t seed,
                      double eta, int cond, double* out);

#ifdef __cplusplus
}
#endif

#endif /* R0_H */

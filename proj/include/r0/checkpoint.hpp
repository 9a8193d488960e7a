#pragma once

#include <map>
#include <string>

#include "r0/net.hpp"
#include "r0/schedule.hpp"

namespace r0 {

// Single-file binary checkpoint, explicitly little-endian:
//
//   magic "R0CKPT" | u32 version | u32 n_meta | n_meta * (str key, str val)
//   | u32 n_sigmas | n_sigmas * f64 | str schedule_kind
//   | u32 input_dim | u32 cond_classes
//   | u32 n_blocks | n_blocks * (str name, u32 ndim, ndim * u64, f64 data...)
//
// where str = u32 length + bytes. Blocks are "layer<i>.weight" with dims
// [out, in] (row-major) and "layer<i>.bias" with dims [out], in layer
// order. Metadata is sorted by key and contains nothing time-dependent, so
// writing the same state twice yields identical bytes.
struct Checkpoint {
  std::map<std::string, std::string> meta;
  NoiseSchedule schedule;
  Denoiser net;
};

// Writes to a temp file and renames into place.
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);

// Throws FileError when unreadable, FormatError on any structural problem:
// bad magic or version, truncation, inconsistent shapes, non-finite values.
Checkpoint load_checkpoint(const std::string& path);

// FNV-1a over the file bytes, as 16 hex digits. Used to stamp derived
// artifacts with the checkpoint they came from.
std::string file_fnv1a_hex(const std::string& path);

}  // namespace r0

#include "r0/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <vector>

#include "r0/errors.hpp"

namespace r0 {

namespace {

constexpr char kMagic[6] = {'R', '0', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

struct Writer {
  std::ofstream out;
  explicit Writer(const std::string& path)
      : out(path, std::ios::binary | std::ios::trunc) {
    if (!out) throw FileError("cannot open '" + path + "' for writing");
  }
  void bytes(const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), std::streamsize(n));
  }
  void u32(std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (unsigned char)(v >> (8 * i));
    bytes(b, 4);
  }
  void u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (unsigned char)(v >> (8 * i));
    bytes(b, 8);
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(std::uint32_t(s.size()));
    bytes(s.data(), s.size());
  }
};

struct Reader {
  std::ifstream in;
  std::string path;
  explicit Reader(const std::string& p) : in(p, std::ios::binary), path(p) {
    if (!in) throw FileError("cannot open '" + p + "'");
  }
  void bytes(void* p, std::size_t n) {
    in.read(static_cast<char*>(p), std::streamsize(n));
    if (std::size_t(in.gcount()) != n)
      throw FormatError("'" + path + "': truncated checkpoint");
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    std::uint32_t n = u32();
    if (n > (1u << 20)) throw FormatError("'" + path + "': absurd string length");
    std::string s(n, '\0');
    if (n) bytes(s.data(), n);
    return s;
  }
};

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  validate_denoiser(ckpt.net);
  validate_schedule(ckpt.schedule);
  std::string tmp = path + ".tmp";
  {
    Writer w(tmp);
    w.bytes(kMagic, sizeof kMagic);
    w.u32(kVersion);
    w.u32(std::uint32_t(ckpt.meta.size()));
    for (const auto& [k, v] : ckpt.meta) {
      w.str(k);
      w.str(v);
    }
    w.u32(std::uint32_t(ckpt.schedule.sigmas.size()));
    for (double s : ckpt.schedule.sigmas) w.f64(s);
    w.str(to_string(ckpt.schedule.kind));
    w.u32(std::uint32_t(ckpt.net.input_dim));
    w.u32(std::uint32_t(ckpt.net.cond_classes));
    w.u32(std::uint32_t(2 * ckpt.net.layers.size()));
    for (std::size_t li = 0; li < ckpt.net.layers.size(); ++li) {
      const LayerShape& l = ckpt.net.layers[li];
      w.str("layer" + std::to_string(li) + ".weight");
      w.u32(2);
      w.u64(std::uint64_t(l.out));
      w.u64(std::uint64_t(l.in));
      for (std::size_t i = 0; i < std::size_t(l.in) * std::size_t(l.out); ++i)
        w.f64(ckpt.net.params[l.w_off + i]);
      w.str("layer" + std::to_string(li) + ".bias");
      w.u32(1);
      w.u64(std::uint64_t(l.out));
      for (std::size_t i = 0; i < std::size_t(l.out); ++i)
        w.f64(ckpt.net.params[l.b_off + i]);
    }
    w.out.flush();
    if (!w.out) throw FileError("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw FileError("cannot move '" + tmp + "' to '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
  Reader r(path);
  char magic[6];
  r.bytes(magic, sizeof magic);
  if (!std::equal(magic, magic + 6, kMagic))
    throw FormatError("'" + path + "': not a checkpoint (bad magic)");
  std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError("'" + path + "': unsupported checkpoint version " +
                      std::to_string(version));
  Checkpoint ckpt;
  std::uint32_t n_meta = r.u32();
  for (std::uint32_t i = 0; i < n_meta; ++i) {
    std::string k = r.str();
    ckpt.meta[k] = r.str();
  }
  std::uint32_t n_sig = r.u32();
  ckpt.schedule.sigmas.resize(n_sig);
  for (std::uint32_t i = 0; i < n_sig; ++i) ckpt.schedule.sigmas[i] = r.f64();
  std::string kind = r.str();
  try {
    ckpt.schedule.kind = schedule_kind_from_string(kind);
  } catch (const ConfigError&) {
    throw FormatError("'" + path + "': unknown schedule kind '" + kind + "'");
  }
  validate_schedule(ckpt.schedule);

  Denoiser& net = ckpt.net;
  net.input_dim = int(r.u32());
  net.cond_classes = int(r.u32());
  std::uint32_t n_blocks = r.u32();
  if (n_blocks == 0 || n_blocks % 2 != 0)
    throw FormatError("'" + path + "': expected weight/bias block pairs");

  std::size_t n_layers = n_blocks / 2;
  std::vector<std::vector<double>> weights(n_layers), biases(n_layers);
  std::vector<std::pair<int, int>> shapes(n_layers);
  for (std::size_t li = 0; li < n_layers; ++li) {
    std::string wname = r.str();
    if (wname != "layer" + std::to_string(li) + ".weight")
      throw FormatError("'" + path + "': unexpected block '" + wname + "'");
    if (r.u32() != 2) throw FormatError("'" + path + "': weight block must be 2-d");
    std::uint64_t out = r.u64(), in = r.u64();
    if (out == 0 || in == 0 || out > (1u << 20) || in > (1u << 20))
      throw FormatError("'" + path + "': absurd layer shape");
    shapes[li] = {int(in), int(out)};
    weights[li].resize(std::size_t(in * out));
    for (double& v : weights[li]) v = r.f64();
    std::string bname = r.str();
    if (bname != "layer" + std::to_string(li) + ".bias")
      throw FormatError("'" + path + "': unexpected block '" + bname + "'");
    if (r.u32() != 1) throw FormatError("'" + path + "': bias block must be 1-d");
    if (r.u64() != out) throw FormatError("'" + path + "': bias/weight shape mismatch");
    biases[li].resize(std::size_t(out));
    for (double& v : biases[li]) v = r.f64();
  }

  net.hidden.clear();
  for (std::size_t li = 0; li + 1 < n_layers; ++li)
    net.hidden.push_back(shapes[li].second);
  std::size_t total = 0;
  for (std::size_t li = 0; li < n_layers; ++li) {
    LayerShape l;
    l.in = shapes[li].first;
    l.out = shapes[li].second;
    l.w_off = total;
    total += std::size_t(l.in) * std::size_t(l.out);
    l.b_off = total;
    total += std::size_t(l.out);
    net.layers.push_back(l);
  }
  net.params.resize(total);
  for (std::size_t li = 0; li < n_layers; ++li) {
    const LayerShape& l = net.layers[li];
    std::copy(weights[li].begin(), weights[li].end(),
              net.params.begin() + std::ptrdiff_t(l.w_off));
    std::copy(biases[li].begin(), biases[li].end(),
              net.params.begin() + std::ptrdiff_t(l.b_off));
  }
  try {
    validate_denoiser(net);
  } catch (const FormatError& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
  return ckpt;
}

std::string file_fnv1a_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::uint64_t h = 14695981039346656037ull;
  char buf[4096];
  while (in) {
    in.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= std::uint64_t(static_cast<unsigned char>(buf[i]));
      h *= 1099511628211ull;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)h);
  return std::string(hex);
}

}  // namespace r0

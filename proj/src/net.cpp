#include "r0/net.hpp"

#include <cmath>

#include "r0/errors.hpp"
#include "r0/schedule.hpp"
#include "r0/vec.hpp"

namespace r0 {

namespace {

std::vector<LayerShape> layout(int feature_dim, std::span<const int> hidden,
                               int out_dim, std::size_t& total) {
  std::vector<LayerShape> layers;
  int in = feature_dim;
  total = 0;
  auto push = [&](int out) {
    LayerShape l;
    l.in = in;
    l.out = out;
    l.w_off = total;
    total += std::size_t(in) * std::size_t(out);
    l.b_off = total;
    total += std::size_t(out);
    layers.push_back(l);
    in = out;
  };
  for (int h : hidden) push(h);
  push(out_dim);
  return layers;
}

// y = W x + b, W row-major [out, in]
void affine(const double* p, const LayerShape& l, const double* x, double* y) {
  const double* w = p + l.w_off;
  const double* b = p + l.b_off;
  for (int r = 0; r < l.out; ++r) {
    double s = b[r];
    const double* row = w + std::size_t(r) * std::size_t(l.in);
    for (int c = 0; c < l.in; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

void build_features(const Denoiser& net, std::span<const double> x, double sigma,
                    std::optional<int> cond, std::vector<double>& f) {
  if (int(x.size()) != net.input_dim)
    throw std::invalid_argument("denoise: input dimension mismatch");
  if (cond) {
    if (net.cond_classes == 0)
      throw std::invalid_argument("denoise: condition given to unconditional net");
    if (*cond < 0 || *cond >= net.cond_classes)
      throw std::invalid_argument("denoise: condition out of range");
  }
  f.assign(std::size_t(net.feature_dim()), 0.0);
  std::copy(x.begin(), x.end(), f.begin());
  f[std::size_t(net.input_dim)] = sigma;
  f[std::size_t(net.input_dim) + 1] = alpha_for(sigma);
  if (cond) f[std::size_t(net.input_dim) + 2 + std::size_t(*cond)] = 1.0;
}

}  // namespace

Denoiser make_denoiser(int input_dim, int cond_classes, std::span<const int> hidden,
                       Rng& rng) {
  if (input_dim < 1) throw std::invalid_argument("make_denoiser: input_dim < 1");
  if (cond_classes < 0)
    throw std::invalid_argument("make_denoiser: cond_classes < 0");
  for (int h : hidden)
    if (h < 1) throw std::invalid_argument("make_denoiser: empty hidden layer");
  Denoiser net;
  net.input_dim = input_dim;
  net.cond_classes = cond_classes;
  net.hidden.assign(hidden.begin(), hidden.end());
  std::size_t total = 0;
  net.layers = layout(net.feature_dim(), hidden, input_dim, total);
  net.params.assign(total, 0.0);
  int cond_lo = input_dim + 2;
  for (std::size_t li = 0; li < net.layers.size(); ++li) {
    const LayerShape& l = net.layers[li];
    double s = 1.0 / std::sqrt(double(l.in));
    for (int r = 0; r < l.out; ++r)
      for (int c = 0; c < l.in; ++c) {
        double w = rng.uniform(-s, s);
        if (li == 0 && c >= cond_lo) w = 0.0;
        net.params[l.w_off + std::size_t(r) * std::size_t(l.in) + std::size_t(c)] = w;
      }
  }
  return net;
}

Denoiser make_constant_denoiser(std::span<const double> x_star) {
  Denoiser net;
  net.input_dim = int(x_star.size());
  net.cond_classes = 0;
  net.hidden = {1};
  std::size_t total = 0;
  net.layers = layout(net.feature_dim(), net.hidden, net.input_dim, total);
  net.params.assign(total, 0.0);
  const LayerShape& out = net.layers.back();
  for (int r = 0; r < out.out; ++r)
    net.params[out.b_off + std::size_t(r)] = x_star[std::size_t(r)];
  return net;
}

void validate_denoiser(const Denoiser& net) {
  if (net.input_dim < 1) throw FormatError("denoiser: input_dim < 1");
  if (net.cond_classes < 0) throw FormatError("denoiser: cond_classes < 0");
  if (net.layers.empty()) throw FormatError("denoiser: no layers");
  std::size_t total = 0;
  int in = net.feature_dim();
  for (const LayerShape& l : net.layers) {
    if (l.in != in) throw FormatError("denoiser: layer input width mismatch");
    if (l.w_off != total) throw FormatError("denoiser: layer offset mismatch");
    total += std::size_t(l.in) * std::size_t(l.out) + std::size_t(l.out);
    in = l.out;
  }
  if (in != net.input_dim) throw FormatError("denoiser: output width mismatch");
  if (total != net.params.size()) throw FormatError("denoiser: parameter count mismatch");
  if (!all_finite(net.params)) throw FormatError("denoiser: non-finite parameter");
}

void denoise_fwd(const Denoiser& net, std::span<const double> x, double sigma,
                 std::optional<int> cond, ForwardStash& stash) {
  build_features(net, x, sigma, cond, stash.features);
  std::size_t n_hidden = net.layers.size() - 1;
  stash.hidden_act.resize(n_hidden);
  const double* cur = stash.features.data();
  for (std::size_t li = 0; li < n_hidden; ++li) {
    const LayerShape& l = net.layers[li];
    stash.hidden_act[li].resize(std::size_t(l.out));
    affine(net.params.data(), l, cur, stash.hidden_act[li].data());
    for (double& v : stash.hidden_act[li]) v = std::tanh(v);
    cur = stash.hidden_act[li].data();
  }
  const LayerShape& out = net.layers.back();
  stash.output.resize(std::size_t(out.out));
  affine(net.params.data(), out, cur, stash.output.data());
}

std::vector<double> denoise(const Denoiser& net, std::span<const double> x,
                            double sigma, std::optional<int> cond) {
  ForwardStash stash;
  denoise_fwd(net, x, sigma, cond, stash);
  return stash.output;
}

std::vector<double> denoise_vjp(const Denoiser& net, const ForwardStash& stash,
                                std::span<const double> d_out,
                                std::vector<double>& param_grad) {
  const LayerShape& out = net.layers.back();
  if (int(d_out.size()) != out.out)
    throw std::invalid_argument("denoise_vjp: d_out size mismatch");
  if (param_grad.size() != net.params.size())
    throw std::invalid_argument("denoise_vjp: param_grad size mismatch");

  std::vector<double> dy(d_out.begin(), d_out.end());
  // Walk layers top-down; dy holds dL/d(pre-activation) of the current layer.
  for (std::size_t li = net.layers.size(); li-- > 0;) {
    const LayerShape& l = net.layers[li];
    const double* in_act =
        li == 0 ? stash.features.data() : stash.hidden_act[li - 1].data();
    double* gw = param_grad.data() + l.w_off;
    double* gb = param_grad.data() + l.b_off;
    for (int r = 0; r < l.out; ++r) {
      gb[r] += dy[std::size_t(r)];
      double* grow = gw + std::size_t(r) * std::size_t(l.in);
      for (int c = 0; c < l.in; ++c) grow[c] += dy[std::size_t(r)] * in_act[c];
    }
    std::vector<double> dx(std::size_t(l.in), 0.0);
    const double* w = net.params.data() + l.w_off;
    for (int r = 0; r < l.out; ++r) {
      const double* row = w + std::size_t(r) * std::size_t(l.in);
      for (int c = 0; c < l.in; ++c) dx[std::size_t(c)] += dy[std::size_t(r)] * row[c];
    }
    if (li > 0) {
      // Through the tanh of the layer below: act is already tanh(z).
      const std::vector<double>& act = stash.hidden_act[li - 1];
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] *= 1.0 - act[i] * act[i];
    }
    dy = std::move(dx);
  }
  // dy is now dL/d(features); only the x block flows back.
  return std::vector<double>(dy.begin(), dy.begin() + net.input_dim);
}

std::vector<double> eps_from_x0(std::span<const double> x_t, double sigma,
                                std::span<const double> x0_hat) {
  if (x_t.size() != x0_hat.size())
    throw std::invalid_argument("eps_from_x0: size mismatch");
  if (!(sigma > 0.0 && sigma <= 1.0))
    throw std::invalid_argument("eps_from_x0: sigma outside (0, 1]");
  double a = alpha_for(sigma);
  std::vector<double> eps(x_t.size());
  for (std::size_t i = 0; i < x_t.size(); ++i)
    eps[i] = (x_t[i] - a * x0_hat[i]) / sigma;
  return eps;
}

std::vector<double> score_from_x0(std::span<const double> x_t, double sigma,
                                  std::span<const double> x0_hat) {
  if (x_t.size() != x0_hat.size())
    throw std::invalid_argument("score_from_x0: size mismatch");
  if (!(sigma > 0.0 && sigma <= 1.0))
    throw std::invalid_argument("score_from_x0: sigma outside (0, 1]");
  double a = alpha_for(sigma);
  std::vector<double> s(x_t.size());
  for (std::size_t i = 0; i < x_t.size(); ++i)
    s[i] = -(x_t[i] - a * x0_hat[i]) / (sigma * sigma);
  return s;
}

std::vector<double> score(const Denoiser& net, std::span<const double> x_t,
                          double sigma, std::optional<int> cond) {
  return score_from_x0(x_t, sigma, denoise(net, x_t, sigma, cond));
}

std::vector<double> cfg_gradient(const Denoiser& net, std::span<const double> x_t,
                                 double sigma, int cond) {
  std::vector<double> sc = score(net, x_t, sigma, cond);
  std::vector<double> su = score(net, x_t, sigma, std::nullopt);
  for (std::size_t i = 0; i < sc.size(); ++i) sc[i] -= su[i];
  return sc;
}

std::vector<double> density_ratio_gradient(const Denoiser& net_a,
                                           const Denoiser& net_b,
                                           std::span<const double> x_t,
                                           double sigma) {
  if (net_a.input_dim != net_b.input_dim)
    throw std::invalid_argument("density_ratio_gradient: net dims differ");
  std::vector<double> sa = score(net_a, x_t, sigma);
  std::vector<double> sb = score(net_b, x_t, sigma);
  for (std::size_t i = 0; i < sa.size(); ++i) sa[i] -= sb[i];
  return sa;
}

}  // namespace r0

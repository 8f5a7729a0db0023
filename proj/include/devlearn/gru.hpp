#pragma once

#include "devlearn/rng.hpp"
#include "devlearn/types.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace devlearn {

struct NetworkConfig {
  int input_width = 0;
  int output_width = 0;
  int hidden_layers = 4;
  int hidden_width = 0;  // 0 selects max(input_width, output_width) + 1
  std::uint64_t seed = 0;

  int resolved_hidden_width() const {
    return hidden_width > 0 ? hidden_width
                            : std::max(input_width, output_width) + 1;
  }

  void validate() const {
    if (input_width < 1 || output_width < 1)
      throw ConfigError("network config: widths must be positive");
    if (hidden_layers < 1)
      throw ConfigError("network config: need at least one hidden layer");
    if (hidden_width < 0)
      throw ConfigError("network config: hidden_width must be >= 0");
  }

  bool operator==(const NetworkConfig&) const = default;
};

// One recurrent layer: update gate z, reset gate r, candidate state.
//   z = sigma(w_z x + u_z h + b_z)
//   r = sigma(w_r x + u_r h + b_r)
//   c = tanh(w_h x + u_h (r . h) + b_h)
//   h' = (1 - z) . h + z . c
template <typename S>
struct GruLayer {
  Mat<S> w_z, w_r, w_h;  // hidden x input
  Mat<S> u_z, u_r, u_h;  // hidden x hidden
  Vec<S> b_z, b_r, b_h;
};

// Stacked GRU layers plus a logistic readout, so every output lands in (0,1)
// like the encoded targets. Also reused as the gradient container: backward
// passes return one of these with the same shapes.
template <typename S>
struct GruNetwork {
  NetworkConfig config;
  std::vector<GruLayer<S>> layers;
  Mat<S> w_out;  // output x hidden
  Vec<S> b_out;
  std::uint64_t version = 0;  // bumped on in-place updates; traces latch it
};

template <typename S>
struct BlockRef {
  std::string name;
  S* data;
  Eigen::Index size;
};

// Every parameter block in fixed order:
//   per layer: w_z w_r w_h u_z u_r u_h b_z b_r b_h, then readout w, b.
// This order (column-major within a block) is the checkpoint payload order
// and the optimizer state order.
template <typename S>
std::vector<BlockRef<S>> parameter_blocks(GruNetwork<S>& net) {
  std::vector<BlockRef<S>> blocks;
  for (size_t l = 0; l < net.layers.size(); ++l) {
    GruLayer<S>& L = net.layers[l];
    const std::string p = "layer" + std::to_string(l) + ".";
    blocks.push_back({p + "w_z", L.w_z.data(), L.w_z.size()});
    blocks.push_back({p + "w_r", L.w_r.data(), L.w_r.size()});
    blocks.push_back({p + "w_h", L.w_h.data(), L.w_h.size()});
    blocks.push_back({p + "u_z", L.u_z.data(), L.u_z.size()});
    blocks.push_back({p + "u_r", L.u_r.data(), L.u_r.size()});
    blocks.push_back({p + "u_h", L.u_h.data(), L.u_h.size()});
    blocks.push_back({p + "b_z", L.b_z.data(), L.b_z.size()});
    blocks.push_back({p + "b_r", L.b_r.data(), L.b_r.size()});
    blocks.push_back({p + "b_h", L.b_h.data(), L.b_h.size()});
  }
  blocks.push_back({"readout.w", net.w_out.data(), net.w_out.size()});
  blocks.push_back({"readout.b", net.b_out.data(), net.b_out.size()});
  return blocks;
}

inline long parameter_count(const NetworkConfig& config) {
  config.validate();
  const long h = config.resolved_hidden_width();
  long count = 0;
  long in = config.input_width;
  for (int l = 0; l < config.hidden_layers; ++l) {
    count += 3 * h * in + 3 * h * h + 3 * h;
    in = h;
  }
  count += config.output_width * h + config.output_width;
  return count;
}

template <typename S>
GruNetwork<S> zero_network(const NetworkConfig& config) {
  config.validate();
  const int h = config.resolved_hidden_width();

  GruNetwork<S> net;
  net.config = config;
  net.layers.resize(config.hidden_layers);
  int in = config.input_width;
  for (GruLayer<S>& L : net.layers) {
    L.w_z = Mat<S>::Zero(h, in);
    L.w_r = Mat<S>::Zero(h, in);
    L.w_h = Mat<S>::Zero(h, in);
    L.u_z = Mat<S>::Zero(h, h);
    L.u_r = Mat<S>::Zero(h, h);
    L.u_h = Mat<S>::Zero(h, h);
    L.b_z = Vec<S>::Zero(h);
    L.b_r = Vec<S>::Zero(h);
    L.b_h = Vec<S>::Zero(h);
    in = h;
  }
  net.w_out = Mat<S>::Zero(config.output_width, h);
  net.b_out = Vec<S>::Zero(config.output_width);
  return net;
}

// Weights are uniform in [-limit, limit] with limit = sqrt(6/(fan_in +
// fan_out)); biases start at zero. Draw order is the block order above, in
// each block's storage order, from Rng(config.seed).
template <typename S>
GruNetwork<S> init_network(const NetworkConfig& config) {
  GruNetwork<S> net = zero_network<S>(config);
  Rng rng(config.seed);
  auto fill = [&rng](Mat<S>& m, Eigen::Index fan_in, Eigen::Index fan_out) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (Eigen::Index i = 0; i < m.size(); ++i)
      m.data()[i] = static_cast<S>(rng.symmetric(limit));
  };
  for (GruLayer<S>& L : net.layers) {
    const Eigen::Index in = L.w_z.cols(), h = L.w_z.rows();
    fill(L.w_z, in, h);
    fill(L.w_r, in, h);
    fill(L.w_h, in, h);
    fill(L.u_z, h, h);
    fill(L.u_r, h, h);
    fill(L.u_h, h, h);
  }
  fill(net.w_out, net.w_out.cols(), net.w_out.rows());
  return net;
}

namespace detail {

template <typename S>
void logistic_inplace(Mat<S>& a) {
  a = (S(1) / (S(1) + (-a.array()).exp())).matrix();
}

}  // namespace detail

// Single-vector step through one layer.
template <typename S>
Vec<S> gru_step(const GruLayer<S>& layer, const Vec<S>& x, const Vec<S>& h_prev) {
  if (x.size() != layer.w_z.cols() || h_prev.size() != layer.u_z.cols())
    throw ShapeError("gru_step: input or state width mismatch");

  auto sigma = [](Vec<S> a) {
    return ((S(1) / (S(1) + (-a.array()).exp())).matrix()).eval();
  };
  const Vec<S> z = sigma(layer.w_z * x + layer.u_z * h_prev + layer.b_z);
  const Vec<S> r = sigma(layer.w_r * x + layer.u_r * h_prev + layer.b_r);
  const Vec<S> c =
      (layer.w_h * x + layer.u_h * (r.cwiseProduct(h_prev)) + layer.b_h)
          .array()
          .tanh()
          .matrix();
  return h_prev + z.cwiseProduct(c - h_prev);
}

// Activations recorded by a forward pass, enough to run exact BPTT.
// Shapes: x[t] is input x batch-columns; per layer and step, gate and state
// blocks are hidden x batch; yhat[t] is output x batch.
template <typename S>
struct ForwardTrace {
  const void* net_id = nullptr;
  std::uint64_t net_version = 0;
  int steps = 0;
  int batch = 0;
  std::vector<Mat<S>> x;
  std::vector<std::vector<Mat<S>>> z, r, c, h;  // [layer][t]
  std::vector<Mat<S>> yhat;
};

// Batched forward pass. tr.x must already hold the per-step input blocks
// (input_width x batch, tr.steps of them); everything else is (re)computed
// in place so a trace can be reused across batches without reallocating.
template <typename S>
void forward_batch(const GruNetwork<S>& net, ForwardTrace<S>& tr) {
  const int layers = static_cast<int>(net.layers.size());
  const int hidden = static_cast<int>(net.w_out.cols());
  const int T = static_cast<int>(tr.x.size());
  if (T == 0) throw ShapeError("forward_batch: empty input");
  const int B = static_cast<int>(tr.x.front().cols());
  for (const Mat<S>& xt : tr.x)
    if (xt.rows() != net.config.input_width || xt.cols() != B)
      throw ShapeError("forward_batch: input width mismatch");

  tr.net_id = &net;
  tr.net_version = net.version;
  tr.steps = T;
  tr.batch = B;

  auto shape = [&](std::vector<std::vector<Mat<S>>>& v) {
    v.resize(layers);
    for (auto& per_layer : v) {
      per_layer.resize(T);
      for (auto& m : per_layer) m.resize(hidden, B);
    }
  };
  shape(tr.z);
  shape(tr.r);
  shape(tr.c);
  shape(tr.h);
  tr.yhat.resize(T);
  for (auto& m : tr.yhat) m.resize(net.config.output_width, B);

  for (int t = 0; t < T; ++t) {
    const Mat<S>* in = &tr.x[t];
    for (int l = 0; l < layers; ++l) {
      const GruLayer<S>& L = net.layers[l];
      Mat<S>& Z = tr.z[l][t];
      Mat<S>& R = tr.r[l][t];
      Mat<S>& C = tr.c[l][t];
      Mat<S>& H = tr.h[l][t];

      Z.noalias() = L.w_z * (*in);
      R.noalias() = L.w_r * (*in);
      C.noalias() = L.w_h * (*in);
      if (t > 0) {
        const Mat<S>& hp = tr.h[l][t - 1];
        Z.noalias() += L.u_z * hp;
        R.noalias() += L.u_r * hp;
      }
      Z.colwise() += L.b_z;
      R.colwise() += L.b_r;
      detail::logistic_inplace(Z);
      detail::logistic_inplace(R);
      if (t > 0) {
        const Mat<S>& hp = tr.h[l][t - 1];
        C.noalias() += L.u_h * (R.cwiseProduct(hp));
      }
      C.colwise() += L.b_h;
      C = C.array().tanh().matrix();

      if (t > 0) {
        const Mat<S>& hp = tr.h[l][t - 1];
        H = hp + Z.cwiseProduct(C - hp);
      } else {
        H = Z.cwiseProduct(C);  // h starts at zero
      }
      in = &H;
    }
    Mat<S>& Y = tr.yhat[t];
    Y.noalias() = net.w_out * (*in);
    Y.colwise() += net.b_out;
    detail::logistic_inplace(Y);
  }
}

// Sequence convenience wrapper: inputs one row per step, outputs likewise.
template <typename S, typename Derived>
Mat<S> forward_sequence(const GruNetwork<S>& net,
                        const Eigen::MatrixBase<Derived>& inputs,
                        ForwardTrace<S>* trace = nullptr) {
  ForwardTrace<S> local;
  ForwardTrace<S>& tr = trace ? *trace : local;
  const int T = static_cast<int>(inputs.rows());
  tr.x.resize(T);
  for (int t = 0; t < T; ++t)
    tr.x[t] = inputs.row(t).transpose().template cast<S>();
  forward_batch(net, tr);

  Mat<S> outputs(T, net.config.output_width);
  for (int t = 0; t < T; ++t) outputs.row(t) = tr.yhat[t].col(0).transpose();
  return outputs;
}

// Mean over all elements of (ln(1+y) - ln(1+p))^2; predictions are clamped
// below at zero before the logarithm.
template <typename DerivedP, typename DerivedT>
double msle_loss(const Eigen::MatrixBase<DerivedP>& predicted,
                 const Eigen::MatrixBase<DerivedT>& target) {
  if (predicted.rows() != target.rows() || predicted.cols() != target.cols())
    throw ShapeError("msle_loss: shape mismatch");
  if (predicted.size() == 0) return 0.0;
  const auto p = predicted.derived().array().template cast<double>().max(0.0);
  const auto y = target.derived().array().template cast<double>();
  return ((y.log1p() - p.log1p()).square()).mean();
}

// Exact backpropagation through time for msle over the traced forward pass.
// targets[t] is output x batch. The mean runs over steps*batch*output
// elements. bptt_window > 0 cuts the backward recurrence at every multiple
// of the window; 0 means full BPTT.
template <typename S>
GruNetwork<S> backward_batch(const GruNetwork<S>& net, const ForwardTrace<S>& tr,
                             const std::vector<Mat<S>>& targets,
                             int bptt_window = 0) {
  if (tr.net_id != &net || tr.net_version != net.version)
    throw StaleTraceError("backward_batch: trace does not match current parameters");
  const int T = tr.steps;
  const int B = tr.batch;
  const int layers = static_cast<int>(net.layers.size());
  const int hidden = static_cast<int>(net.w_out.cols());
  if (static_cast<int>(targets.size()) != T)
    throw ShapeError("backward_batch: target step count mismatch");
  for (const Mat<S>& y : targets)
    if (y.rows() != net.config.output_width || y.cols() != B)
      throw ShapeError("backward_batch: target width mismatch");

  GruNetwork<S> grad = zero_network<S>(net.config);
  const double n_elements =
      static_cast<double>(T) * B * net.config.output_width;
  const S scale = static_cast<S>(2.0 / n_elements);

  std::vector<Mat<S>> dh_next(layers, Mat<S>::Zero(hidden, B));
  const Mat<S> h0 = Mat<S>::Zero(hidden, B);

  Mat<S> da_out, dh, dx, dz, dc, da_h, drh, dr, da_r, da_z;
  for (int t = T - 1; t >= 0; --t) {
    const Mat<S>& yhat = tr.yhat[t];
    // d msle / d yhat, then through the logistic readout
    da_out = (((yhat.array().template cast<double>().log1p() -
                targets[t].array().template cast<double>().log1p())
                   .template cast<S>() /
               (S(1) + yhat.array())) *
              (yhat.array() * (S(1) - yhat.array())) * scale)
                 .matrix();

    const Mat<S>& h_top = tr.h[layers - 1][t];
    grad.w_out.noalias() += da_out * h_top.transpose();
    grad.b_out += da_out.rowwise().sum();

    dx.noalias() = net.w_out.transpose() * da_out;
    for (int l = layers - 1; l >= 0; --l) {
      const GruLayer<S>& L = net.layers[l];
      GruLayer<S>& G = grad.layers[l];
      const Mat<S>& Z = tr.z[l][t];
      const Mat<S>& R = tr.r[l][t];
      const Mat<S>& C = tr.c[l][t];
      const Mat<S>& hp = t > 0 ? tr.h[l][t - 1] : h0;
      const Mat<S>& x = l > 0 ? tr.h[l - 1][t] : tr.x[t];

      dh = dh_next[l] + dx;

      dz = dh.cwiseProduct(C - hp);
      dc = dh.cwiseProduct(Z);
      da_h = (dc.array() * (S(1) - C.array().square())).matrix();
      drh.noalias() = L.u_h.transpose() * da_h;
      dr = drh.cwiseProduct(hp);
      da_r = (dr.array() * R.array() * (S(1) - R.array())).matrix();
      da_z = (dz.array() * Z.array() * (S(1) - Z.array())).matrix();

      G.w_h.noalias() += da_h * x.transpose();
      G.u_h.noalias() += da_h * (R.cwiseProduct(hp)).transpose();
      G.b_h += da_h.rowwise().sum();
      G.w_r.noalias() += da_r * x.transpose();
      G.u_r.noalias() += da_r * hp.transpose();
      G.b_r += da_r.rowwise().sum();
      G.w_z.noalias() += da_z * x.transpose();
      G.u_z.noalias() += da_z * hp.transpose();
      G.b_z += da_z.rowwise().sum();

      dh_next[l] = (dh.array() * (S(1) - Z.array()) + drh.array() * R.array())
                       .matrix();
      dh_next[l].noalias() += L.u_r.transpose() * da_r;
      dh_next[l].noalias() += L.u_z.transpose() * da_z;

      if (l > 0) {
        dx.noalias() = L.w_z.transpose() * da_z;
        dx.noalias() += L.w_r.transpose() * da_r;
        dx.noalias() += L.w_h.transpose() * da_h;
      }
    }

    if (bptt_window > 0 && t % bptt_window == 0)
      for (Mat<S>& m : dh_next) m.setZero();
  }
  return grad;
}

// Sequence wrapper matching forward_sequence: targets one row per step.
template <typename S, typename Derived>
GruNetwork<S> backward_sequence(const GruNetwork<S>& net,
                                const ForwardTrace<S>& tr,
                                const Eigen::MatrixBase<Derived>& targets,
                                int bptt_window = 0) {
  std::vector<Mat<S>> cols(targets.rows());
  for (int t = 0; t < targets.rows(); ++t)
    cols[t] = targets.row(t).transpose().template cast<S>();
  return backward_batch(net, tr, cols, bptt_window);
}

// Checkpoint format, version 1: one text header line
//   devlearn-checkpoint v1 input_width=.. output_width=.. hidden_layers=..
//     hidden_width=.. seed=.. step=..
// followed by every parameter block in block order, column-major float32,
// little-endian. Round-trips bit-exactly.
void save_checkpoint(const GruNetwork<float>& net, std::uint64_t step,
                     const std::string& path);

struct Checkpoint {
  GruNetwork<float> net;
  std::uint64_t step = 0;
};

Checkpoint load_checkpoint(const std::string& path);

}  // namespace devlearn

#pragma once

#include "devlearn/gru.hpp"
#include "devlearn/types.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace devlearn {

struct NadamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Nadam: Adam moments with Nesterov lookahead in the first-moment term.
// With step index t starting at 1,
//   m <- b1 m + (1-b1) g          v <- b2 v + (1-b2) g^2
//   m^ = m / (1 - b1^t)           v^ = v / (1 - b2^t)
//   p <- p - lr (b1 m^ + (1-b1)/(1-b1^t) g) / (sqrt(v^) + eps)
template <typename S>
class Nadam {
 public:
  explicit Nadam(NadamConfig config = {}) : config_(config) {}

  const NadamConfig& config() const { return config_; }
  long steps() const { return t_; }

  void step(GruNetwork<S>& params, GruNetwork<S>& gradients) {
    auto pb = parameter_blocks(params);
    auto gb = parameter_blocks(gradients);
    if (pb.size() != gb.size())
      throw ShapeError("nadam: parameter/gradient block mismatch");

    if (m_.empty()) {
      m_.resize(pb.size());
      v_.resize(pb.size());
      for (size_t i = 0; i < pb.size(); ++i) {
        m_[i] = Vec<S>::Zero(pb[i].size);
        v_[i] = Vec<S>::Zero(pb[i].size);
      }
    }

    ++t_;
    const S bc1 = static_cast<S>(1.0 - std::pow(config_.beta1, t_));
    const S bc2 = static_cast<S>(1.0 - std::pow(config_.beta2, t_));
    const S b1 = static_cast<S>(config_.beta1);
    const S b2 = static_cast<S>(config_.beta2);
    const S lr = static_cast<S>(config_.learning_rate);
    const S eps = static_cast<S>(config_.epsilon);

    for (size_t i = 0; i < pb.size(); ++i) {
      if (pb[i].size != gb[i].size)
        throw ShapeError("nadam: gradient block size mismatch at " + pb[i].name);
      Eigen::Map<Vec<S>> p(pb[i].data, pb[i].size);
      Eigen::Map<const Vec<S>> g(gb[i].data, gb[i].size);
      if (!g.allFinite())
        throw NonFiniteError("nadam: non-finite gradient in block " + pb[i].name +
                             " at step " + std::to_string(t_));
      auto m = m_[i].array();
      auto v = v_[i].array();
      m = b1 * m + (S(1) - b1) * g.array();
      v = b2 * v + (S(1) - b2) * g.array().square();
      p.array() -= lr * (b1 * (m / bc1) + ((S(1) - b1) / bc1) * g.array()) /
                   ((v / bc2).sqrt() + eps);
    }
    ++params.version;
  }

 private:
  NadamConfig config_;
  long t_ = 0;
  std::vector<Vec<S>> m_, v_;
};

// Scales gradients so their global l2 norm is at most max_norm; 0 disables.
template <typename S>
void clip_gradients(GruNetwork<S>& gradients, double max_norm) {
  if (max_norm <= 0) return;
  double sq = 0.0;
  auto blocks = parameter_blocks(gradients);
  for (const auto& b : blocks) {
    Eigen::Map<const Vec<S>> g(b.data, b.size);
    sq += g.template cast<double>().squaredNorm();
  }
  const double norm = std::sqrt(sq);
  if (norm <= max_norm || norm == 0.0) return;
  const S factor = static_cast<S>(max_norm / norm);
  for (auto& b : blocks) Eigen::Map<Vec<S>>(b.data, b.size) *= factor;
}

}  // namespace devlearn

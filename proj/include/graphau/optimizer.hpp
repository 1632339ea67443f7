#pragma once

#include <cstdint>
#include <stdexcept>

#include "graphau/loss.hpp"
#include "graphau/model.hpp"

namespace graphau {

struct AdamConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Classic L2: added to the gradient before the moment update.
  double weight_decay = 0.0;
};

// Adam moments for both embedding tables and a single global step counter
// used for bias correction.
struct AdamState {
  AdamConfig config;
  Matrix m_user, v_user;
  Matrix m_item, v_item;
  std::uint64_t step = 0;

  static AdamState for_model(const EmbeddingModel& model, const AdamConfig& config);
};

class NonFiniteGradient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One Adam update. Rows whose gradient is exactly zero are skipped: neither
// the parameters nor the moments of those rows change. Throws
// NonFiniteGradient naming the first offending row.
void adam_step(EmbeddingModel& model, const Gradients& grads, AdamState& state);

}  // namespace graphau

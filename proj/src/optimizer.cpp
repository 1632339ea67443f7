#include "graphau/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace graphau {

AdamState AdamState::for_model(const EmbeddingModel& model, const AdamConfig& config) {
  AdamState s;
  s.config = config;
  s.m_user = Matrix(model.n_users(), model.dim());
  s.v_user = Matrix(model.n_users(), model.dim());
  s.m_item = Matrix(model.n_items(), model.dim());
  s.v_item = Matrix(model.n_items(), model.dim());
  return s;
}

namespace {

void check_finite(const Matrix& g, const char* table) {
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (double x : g.row(r)) {
      if (!std::isfinite(x)) {
        throw NonFiniteGradient(std::string("non-finite gradient in ") + table + " row " +
                                std::to_string(r));
      }
    }
  }
}

void update_table(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v, const AdamConfig& c,
                  double bias1, double bias2) {
  const std::size_t d = param.cols();
  for (std::size_t r = 0; r < param.rows(); ++r) {
    const auto g = grad.row(r);
    if (std::all_of(g.begin(), g.end(), [](double x) { return x == 0.0; })) continue;
    auto p = param.row(r);
    auto mr = m.row(r);
    auto vr = v.row(r);
    for (std::size_t k = 0; k < d; ++k) {
      const double gk = g[k] + c.weight_decay * p[k];
      mr[k] = c.beta1 * mr[k] + (1.0 - c.beta1) * gk;
      vr[k] = c.beta2 * vr[k] + (1.0 - c.beta2) * gk * gk;
      const double m_hat = mr[k] / bias1;
      const double v_hat = vr[k] / bias2;
      p[k] -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
    }
  }
}

}  // namespace

void adam_step(EmbeddingModel& model, const Gradients& grads, AdamState& state) {
  if (!grads.user.same_shape(model.user_emb0) || !grads.item.same_shape(model.item_emb0) ||
      !state.m_user.same_shape(model.user_emb0) || !state.m_item.same_shape(model.item_emb0)) {
    throw std::invalid_argument("adam_step: gradient/state shapes do not match the model");
  }
  check_finite(grads.user, "user");
  check_finite(grads.item, "item");
  ++state.step;
  const auto& c = state.config;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(c.beta1, t);
  const double bias2 = 1.0 - std::pow(c.beta2, t);
  update_table(model.user_emb0, grads.user, state.m_user, state.v_user, c, bias1, bias2);
  update_table(model.item_emb0, grads.item, state.m_item, state.v_item, c, bias1, bias2);
}

}  // namespace graphau

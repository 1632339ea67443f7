#include "graphau/loss.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "graphau/parallel.hpp"

namespace graphau {

Batch Batch::from_edges(std::vector<Edge> edges) {
  Batch b;
  b.edges = std::move(edges);
  b.users.reserve(b.edges.size());
  b.items.reserve(b.edges.size());
  for (const Edge& e : b.edges) {
    b.users.push_back(e.user);
    b.items.push_back(e.item);
  }
  for (auto* v : {&b.users, &b.items}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return b;
}

UniformityMetric parse_uniformity_metric(const std::string& name) {
  if (name == "sq") return UniformityMetric::squared;
  if (name == "l2") return UniformityMetric::euclidean;
  throw std::invalid_argument("unknown uniformity metric '" + name + "' (expected sq or l2)");
}

std::string to_string(UniformityMetric metric) {
  return metric == UniformityMetric::squared ? "sq" : "l2";
}

void LossConfig::validate() const {
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be a finite non-negative number");
  if (!(gamma >= 0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be a finite non-negative number");
  if (uniformity_order > layers) {
    throw std::invalid_argument("uniformity_order must lie in [0, layers]");
  }
}

std::vector<std::string> LossConfig::range_warnings() const {
  std::vector<std::string> out;
  if (alpha > 2.0) out.push_back("alpha " + std::to_string(alpha) + " is outside the usual range [0, 2]");
  if (gamma > 1.0) out.push_back("gamma " + std::to_string(gamma) + " is outside the usual range [0, 1]");
  return out;
}

double LossConfig::layer_weight(std::size_t l) const {
  double w = 1.0;
  for (std::size_t k = 0; k < l; ++k) w *= alpha;
  return w;
}

std::string LossReport::to_json_line() const {
  nlohmann::json j;
  j["align"] = align_per_layer;
  j["uniform_user"] = uniform_user;
  j["uniform_item"] = uniform_item;
  j["total"] = total;
  j["skipped"] = skipped_terms;
  return j.dump();
}

namespace {

// Writes x/|x| into out and returns |x|.
double normalize_into(std::span<const double> x, std::span<double> out) {
  const double n = std::sqrt(squared_norm(x));
  if (n > 0) {
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] / n;
  }
  return n;
}

struct UniformTerm {
  double value = 0.0;
  Matrix grad;  // d value / d rows, only filled when requested
};

// Uniformity over the rows of `v` and, optionally, its gradient with respect
// to those rows. The self pairs pin the largest exponent at 0, so summing the
// kernel directly is the stable log-sum-exp.
UniformTerm uniformity_term(const Matrix& v, UniformityMetric metric, bool want_grad) {
  const std::size_t m = v.rows();
  const std::size_t d = v.cols();
  UniformTerm out;
  if (m == 0) {
    if (want_grad) out.grad = Matrix(0, d);
    return out;
  }
  std::vector<double> sqn(m);
  Matrix vt(d, m);
  for (std::size_t a = 0; a < m; ++a) {
    sqn[a] = squared_norm(v.row(a));
    for (std::size_t k = 0; k < d; ++k) vt(k, a) = v(a, k);
  }
  std::vector<double> row_sum(m, 0.0);
  if (want_grad) out.grad = Matrix(m, d);

  parallel_for(m, [&](std::size_t begin, std::size_t end) {
    std::vector<double> gram(m), coef(m);
    for (std::size_t a = begin; a < end; ++a) {
      std::fill(gram.begin(), gram.end(), 0.0);
      const auto va = v.row(a);
      for (std::size_t k = 0; k < d; ++k) {
        const double x = va[k];
        const double* col = &vt(k, 0);
        for (std::size_t b = 0; b < m; ++b) gram[b] += x * col[b];
      }
      double s = 0.0;
      double csum = 0.0;
      for (std::size_t b = 0; b < m; ++b) {
        const double d2 = b == a ? 0.0 : std::max(0.0, sqn[a] + sqn[b] - 2.0 * gram[b]);
        double kernel = 0.0;
        double c = 0.0;
        if (metric == UniformityMetric::squared) {
          kernel = std::exp(-2.0 * d2);
          c = -8.0 * kernel;
        } else {
          const double dist = std::sqrt(d2);
          kernel = std::exp(-2.0 * dist);
          c = dist > 0 ? -4.0 * kernel / dist : 0.0;
        }
        s += kernel;
        coef[b] = c;
        csum += c;
      }
      row_sum[a] = s;
      if (want_grad) {
        // sum_b c_ab (v_a - v_b), scaled by 1/S once S is known
        auto g = out.grad.row(a);
        for (std::size_t k = 0; k < d; ++k) g[k] = csum * va[k];
        for (std::size_t b = 0; b < m; ++b) {
          const double c = coef[b];
          const auto vb = v.row(b);
          for (std::size_t k = 0; k < d; ++k) g[k] -= c * vb[k];
        }
      }
    }
  }, 16);

  double total = 0.0;
  for (double s : row_sum) total += s;
  out.value = std::log(total) - 2.0 * std::log(static_cast<double>(m));
  if (want_grad) {
    for (double& g : out.grad.data()) g /= total;
  }
  return out;
}

class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(const LayerStack& stack, const Batch& batch, const LossConfig& cfg,
                     bool want_grad)
      : stack_(stack), batch_(batch), cfg_(cfg), want_grad_(want_grad) {
    cfg.validate();
    if (batch.edges.empty()) throw std::invalid_argument("empty batch");
    if (stack.layers() != cfg.layers) {
      throw std::invalid_argument("layer stack depth does not match the loss configuration");
    }
    d_ = stack.user_layers[0].cols();
    unit_a_.resize(d_);
    unit_b_.resize(d_);
    if (want_grad_) {
      for (std::size_t l = 0; l <= cfg.layers; ++l) {
        unit_grad_user_.emplace_back(stack.user_layers[l].rows(), d_);
        unit_grad_item_.emplace_back(stack.item_layers[l].rows(), d_);
      }
    }
  }

  LossReport run() {
    LossReport report;
    report.align_per_layer.assign(cfg_.layers + 1, 0.0);
    const double inv_b = 1.0 / static_cast<double>(batch_.edges.size());
    const auto& U = stack_.user_layers;
    const auto& I = stack_.item_layers;

    for (const Edge& e : batch_.edges) {
      report.align_per_layer[0] +=
          inv_b * term(U[0].row(e.user), I[0].row(e.item), inv_b, 0, e.user, true, 0, e.item, false,
                       report.skipped_terms);
      for (std::size_t l = 1; l <= cfg_.layers; ++l) {
        const double w = 0.5 * inv_b * cfg_.layer_weight(l);
        const double a = term(U[0].row(e.user), I[l].row(e.item), w, 0, e.user, true, l, e.item,
                              false, report.skipped_terms);
        const double b = term(I[0].row(e.item), U[l].row(e.user), w, 0, e.item, false, l, e.user,
                              true, report.skipped_terms);
        report.align_per_layer[l] += 0.5 * inv_b * (a + b);
      }
    }

    const double half_gamma = 0.5 * cfg_.gamma;
    report.uniform_user = uniform(U[cfg_.uniformity_order], batch_.users, half_gamma,
                                  want_grad_ ? &unit_grad_user_[cfg_.uniformity_order] : nullptr);
    report.uniform_item = uniform(I[cfg_.uniformity_order], batch_.items, half_gamma,
                                  want_grad_ ? &unit_grad_item_[cfg_.uniformity_order] : nullptr);

    report.total = half_gamma * (report.uniform_user + report.uniform_item);
    for (std::size_t l = 0; l <= cfg_.layers; ++l) {
      report.total += cfg_.layer_weight(l) * report.align_per_layer[l];
    }
    return report;
  }

  Gradients gradients(const BipartiteGraph& graph) {
    const std::size_t L = cfg_.layers;
    std::vector<Matrix> gu(L + 1), gi(L + 1);
    for (std::size_t l = 0; l <= L; ++l) {
      gu[l] = through_normalization(stack_.user_layers[l], unit_grad_user_[l]);
      gi[l] = through_normalization(stack_.item_layers[l], unit_grad_item_[l]);
    }
    // user layer l came from item layer l-1 and vice versa; the aggregation
    // operator is symmetric, so its transpose is the opposite-side aggregate.
    for (std::size_t l = L; l >= 1; --l) {
      add_into(gi[l - 1], aggregate_items_from_users(graph, gu[l]));
      add_into(gu[l - 1], aggregate_users_from_items(graph, gi[l]));
    }
    return {std::move(gu[0]), std::move(gi[0])};
  }

 private:
  // Alignment between x (a base row) and y; accumulates the weighted gradient
  // in unit-vector space. Returns the unweighted value.
  double term(std::span<const double> x, std::span<const double> y, double weight,
              std::size_t x_layer, Index x_row, bool x_is_user, std::size_t y_layer, Index y_row,
              bool y_is_user, std::size_t& skipped) {
    const double nx = normalize_into(x, unit_a_);
    const double ny = normalize_into(y, unit_b_);
    if (nx == 0 || ny == 0) {
      ++skipped;
      return 0.0;
    }
    double value = 0.0;
    for (std::size_t k = 0; k < d_; ++k) {
      const double diff = unit_a_[k] - unit_b_[k];
      value += diff * diff;
    }
    if (want_grad_ && weight != 0) {
      auto gx = (x_is_user ? unit_grad_user_ : unit_grad_item_)[x_layer].row(x_row);
      auto gy = (y_is_user ? unit_grad_user_ : unit_grad_item_)[y_layer].row(y_row);
      for (std::size_t k = 0; k < d_; ++k) {
        const double g = 2.0 * weight * (unit_a_[k] - unit_b_[k]);
        gx[k] += g;
        gy[k] -= g;
      }
    }
    return value;
  }

  double uniform(const Matrix& layer, const std::vector<Index>& rows, double weight,
                 Matrix* unit_grad) {
    std::vector<Index> kept;
    kept.reserve(rows.size());
    Matrix unit(rows.size(), d_);
    for (Index r : rows) {
      if (normalize_into(layer.row(r), unit.row(kept.size())) > 0) kept.push_back(r);
    }
    Matrix packed(kept.size(), d_);
    std::copy_n(unit.data().begin(), kept.size() * d_, packed.data().begin());
    const bool grad = unit_grad != nullptr && weight != 0;
    UniformTerm t = uniformity_term(packed, cfg_.metric, grad);
    if (grad) {
      for (std::size_t a = 0; a < kept.size(); ++a) {
        auto dst = unit_grad->row(kept[a]);
        const auto src = t.grad.row(a);
        for (std::size_t k = 0; k < d_; ++k) dst[k] += weight * src[k];
      }
    }
    return t.value;
  }

  // Chain rule through x -> x/|x|: (g - (g.u)u)/|x|.
  Matrix through_normalization(const Matrix& raw, const Matrix& unit_grad) const {
    Matrix out(raw.rows(), d_);
    std::vector<double> u(d_);
    for (std::size_t r = 0; r < raw.rows(); ++r) {
      const auto g = unit_grad.row(r);
      if (std::all_of(g.begin(), g.end(), [](double x) { return x == 0.0; })) continue;
      const double n = normalize_into(raw.row(r), u);
      const double gu = dot(g, u);
      auto dst = out.row(r);
      for (std::size_t k = 0; k < d_; ++k) dst[k] = (g[k] - gu * u[k]) / n;
    }
    return out;
  }

  static void add_into(Matrix& dst, const Matrix& src) {
    auto& a = dst.data();
    const auto& b = src.data();
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  }

  const LayerStack& stack_;
  const Batch& batch_;
  const LossConfig& cfg_;
  bool want_grad_;
  std::size_t d_ = 0;
  std::vector<double> unit_a_, unit_b_;
  std::vector<Matrix> unit_grad_user_, unit_grad_item_;
};

}  // namespace

double align_pair(std::span<const double> x, std::span<const double> y, std::size_t* skipped) {
  if (x.size() != y.size()) throw std::invalid_argument("align_pair: dimension mismatch");
  const double nx = std::sqrt(squared_norm(x));
  const double ny = std::sqrt(squared_norm(y));
  if (nx == 0 || ny == 0) {
    if (skipped) ++*skipped;
    return 0.0;
  }
  double value = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = x[k] / nx - y[k] / ny;
    value += diff * diff;
  }
  return value;
}

std::vector<double> alignment_losses(const LayerStack& stack, const Batch& batch,
                                     std::size_t* skipped) {
  if (batch.edges.empty()) throw std::invalid_argument("empty batch");
  const std::size_t L = stack.layers();
  std::vector<double> out(L + 1, 0.0);
  const double inv_b = 1.0 / static_cast<double>(batch.edges.size());
  const auto& U = stack.user_layers;
  const auto& I = stack.item_layers;
  for (const Edge& e : batch.edges) {
    out[0] += inv_b * align_pair(U[0].row(e.user), I[0].row(e.item), skipped);
    for (std::size_t l = 1; l <= L; ++l) {
      out[l] += 0.5 * inv_b *
                (align_pair(U[0].row(e.user), I[l].row(e.item), skipped) +
                 align_pair(I[0].row(e.item), U[l].row(e.user), skipped));
    }
  }
  return out;
}

double uniformity(const Matrix& vectors, UniformityMetric metric) {
  if (vectors.rows() == 0) throw std::invalid_argument("uniformity needs at least one vector");
  return uniformity_term(vectors, metric, false).value;
}

LossReport total_loss(const LayerStack& stack, const Batch& batch, const LossConfig& cfg) {
  return ObjectiveEvaluator(stack, batch, cfg, false).run();
}

Gradients backward(const LayerStack& stack, const Batch& batch, const LossConfig& cfg,
                   const BipartiteGraph& graph) {
  return loss_and_gradient(stack, batch, cfg, graph).grad;
}

LossAndGradient loss_and_gradient(const LayerStack& stack, const Batch& batch,
                                  const LossConfig& cfg, const BipartiteGraph& graph) {
  ObjectiveEvaluator eval(stack, batch, cfg, true);
  LossReport report = eval.run();
  return {std::move(report), eval.gradients(graph)};
}

}  // namespace graphau

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "graphau/dataset.hpp"
#include "graphau/graph.hpp"
#include "graphau/matrix.hpp"
#include "graphau/model.hpp"

namespace graphau {

// A mini-batch of training edges plus the deduplicated (ascending) users and
// items it touches.
struct Batch {
  std::vector<Edge> edges;
  std::vector<Index> users;
  std::vector<Index> items;

  static Batch from_edges(std::vector<Edge> edges);
};

// Distance inside the uniformity kernel exp(-2 * dist).
enum class UniformityMetric { squared, euclidean };

UniformityMetric parse_uniformity_metric(const std::string& name);
std::string to_string(UniformityMetric metric);

struct LossConfig {
  double alpha = 1.0;
  double gamma = 0.5;
  std::size_t layers = 0;
  // Which layer's embeddings feed the uniformity terms; 0 is the default.
  std::size_t uniformity_order = 0;
  UniformityMetric metric = UniformityMetric::squared;

  // Throws std::invalid_argument on negative alpha/gamma or an order > layers.
  void validate() const;
  // Human-readable notes for values outside the usual tuning ranges
  // (alpha in [0, 2], gamma in [0, 1]).
  std::vector<std::string> range_warnings() const;

  // alpha^l with alpha^0 == 1, including alpha == 0.
  double layer_weight(std::size_t l) const;
};

struct LossReport {
  std::vector<double> align_per_layer;
  double uniform_user = 0.0;
  double uniform_item = 0.0;
  double total = 0.0;
  // Alignment half-terms dropped because one side was the zero vector.
  std::size_t skipped_terms = 0;

  std::string to_json_line() const;
};

struct Gradients {
  Matrix user;
  Matrix item;
};

// ||x/|x| - y/|y|||^2 = 2 - 2 cos(x, y), in [0, 4]. Returns 0 when either
// side is the zero vector and bumps *skipped if given.
double align_pair(std::span<const double> x, std::span<const double> y,
                  std::size_t* skipped = nullptr);

// Entry 0: batch mean of align_pair(u^(0), i^(0)). Entry l >= 1: batch mean of
// (align_pair(u^(0), i^(l)) + align_pair(i^(0), u^(l))) / 2.
std::vector<double> alignment_losses(const LayerStack& stack, const Batch& batch,
                                     std::size_t* skipped = nullptr);

// log of the mean of exp(-2 * dist(a, b)) over all ordered pairs (self pairs
// included) of the rows of `vectors`. Rows are expected to be unit length.
double uniformity(const Matrix& vectors, UniformityMetric metric = UniformityMetric::squared);

LossReport total_loss(const LayerStack& stack, const Batch& batch, const LossConfig& cfg);

// Exact gradient of total_loss with respect to the base tables.
Gradients backward(const LayerStack& stack, const Batch& batch, const LossConfig& cfg,
                   const BipartiteGraph& graph);

struct LossAndGradient {
  LossReport report;
  Gradients grad;
};

// total_loss and backward in a single pass.
LossAndGradient loss_and_gradient(const LayerStack& stack, const Batch& batch,
                                  const LossConfig& cfg, const BipartiteGraph& graph);

}  // namespace graphau

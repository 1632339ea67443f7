#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphau/dataset.hpp"
#include "graphau/evaluator.hpp"
#include "graphau/graph.hpp"
#include "graphau/loss.hpp"
#include "graphau/model.hpp"
#include "graphau/optimizer.hpp"

namespace graphau {

enum class Objective { graphau, bpr };

Objective parse_objective(const std::string& name);
std::string to_string(Objective objective);

struct TrainConfig {
  std::size_t epochs_max = 300;
  std::size_t batch_size = 1024;
  // Counted in evaluations, not epochs.
  std::size_t early_stop_patience = 10;
  std::size_t eval_every = 1;
  std::size_t eval_k = 20;
  std::uint64_t seed = 42;
  Objective objective = Objective::graphau;
  std::size_t dim = 32;
  double init_scale = 0.1;
  LossConfig loss;
  AdamConfig adam;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;
  // Batch-averaged loss fields (BPR runs only fill `total`).
  LossReport loss;
  std::optional<RankingMetrics> valid;
  double train_seconds = 0.0;

  std::string to_json_line() const;
};

struct TrainLog {
  std::vector<EpochRecord> epochs;
  // Epoch whose parameters were returned; 0 means the initial parameters.
  std::size_t best_epoch = 0;
  std::optional<double> best_valid_ndcg;
};

struct TrainResult {
  EmbeddingModel model;
  TrainLog log;
};

class NonFiniteLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trains until epochs_max or until validation NDCG@eval_k has not improved
// for early_stop_patience consecutive evaluations, and returns the
// parameters of the best validation epoch. `on_epoch` sees every record as
// soon as it is complete.
TrainResult train(const InteractionDataset& dataset, const TrainConfig& config,
                  const std::function<void(const EpochRecord&)>& on_epoch = {});

// One shuffled pass over `edges` with the GraphAU objective. The layer stack
// is recomputed from the current base tables for every batch. Returns the
// batch-averaged report.
LossReport run_graphau_epoch(EmbeddingModel& model, const BipartiteGraph& graph,
                             std::vector<Edge>& edges, const LossConfig& loss,
                             std::size_t batch_size, AdamState& state, std::mt19937_64& rng);

struct BprLossAndGradient {
  double loss = 0.0;
  Gradients grad;
};

// Mean over the batch of -log sigmoid(u.i - u.j), j = negatives[n] paired
// with edges[n].
BprLossAndGradient bpr_loss_and_gradient(const EmbeddingModel& model, std::span<const Edge> edges,
                                         std::span<const Index> negatives);

// One Adam step on the BPR objective; returns the batch loss.
double bpr_step(EmbeddingModel& model, std::span<const Edge> edges,
                std::span<const Index> negatives, AdamState& state);

// One uniform negative per edge, resampled (bounded retries) while it is a
// known positive of the user. `positives[u]` must be sorted.
std::vector<Index> sample_negatives(std::span<const Edge> edges,
                                    const std::vector<std::vector<Index>>& positives,
                                    std::size_t n_items, std::mt19937_64& rng);

}  // namespace graphau

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graphau/dataset.hpp"
#include "graphau/model.hpp"

namespace graphau {

struct RankingMetrics {
  double recall = 0.0;
  double hit_ratio = 0.0;
  double ndcg = 0.0;
  std::size_t k = 0;
  std::size_t n_users_evaluated = 0;
};

enum class EvalSplit { valid, test };

EvalSplit parse_eval_split(const std::string& name);
std::string to_string(EvalSplit split);

// Full ranking by base-table dot product. Train interactions are always
// masked; validation interactions are masked too when scoring the test split.
// Only users with at least one ground-truth item in `split` are counted.
RankingMetrics evaluate(const EmbeddingModel& model, const InteractionDataset& dataset,
                        EvalSplit split, std::size_t k);

// Lower-level form: scores are users.row(u) . items.row(i); every edge in
// `masked` is excluded from ranking. Ties break by ascending item index.
RankingMetrics evaluate_ranking(const Matrix& users, const Matrix& items,
                                std::span<const Edge> ground_truth,
                                const std::vector<std::span<const Edge>>& masked, std::size_t k);

// Top-k item indices for one user, best first, skipping `masked_items`
// (sorted ascending).
std::vector<Index> rank_items(std::span<const double> user, const Matrix& items,
                              std::span<const Index> masked_items, std::size_t k);

nlohmann::json to_json(const RankingMetrics& m);

// Fixed-width "R@k  HR@k  N@k" table, one row per labelled result.
std::string format_metrics_table(
    const std::vector<std::pair<std::string, RankingMetrics>>& rows);

}  // namespace graphau

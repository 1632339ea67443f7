#include "graphau/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "graphau/parallel.hpp"

namespace graphau {

EvalSplit parse_eval_split(const std::string& name) {
  if (name == "valid") return EvalSplit::valid;
  if (name == "test") return EvalSplit::test;
  throw std::invalid_argument("unknown split '" + name + "' (expected valid or test)");
}

std::string to_string(EvalSplit split) { return split == EvalSplit::valid ? "valid" : "test"; }

std::vector<Index> rank_items(std::span<const double> user, const Matrix& items,
                              std::span<const Index> masked_items, std::size_t k) {
  std::vector<double> scores(items.rows());
  std::vector<Index> candidates;
  candidates.reserve(items.rows());
  auto mask = masked_items.begin();
  for (Index i = 0; i < items.rows(); ++i) {
    while (mask != masked_items.end() && *mask < i) ++mask;
    if (mask != masked_items.end() && *mask == i) continue;
    scores[i] = dot(user, items.row(i));
    candidates.push_back(i);
  }
  const std::size_t top = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(top),
                    candidates.end(), [&scores](Index a, Index b) {
                      return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
                    });
  candidates.resize(top);
  return candidates;
}

RankingMetrics evaluate_ranking(const Matrix& users, const Matrix& items,
                                std::span<const Edge> ground_truth,
                                const std::vector<std::span<const Edge>>& masked, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  if (users.cols() != items.cols()) throw std::invalid_argument("user/item dimension mismatch");
  const std::size_t n_users = users.rows();
  std::vector<std::vector<Index>> truth(n_users), mask(n_users);
  for (const Edge& e : ground_truth) {
    if (e.user >= n_users || e.item >= items.rows()) throw std::invalid_argument("edge out of range");
    truth[e.user].push_back(e.item);
  }
  for (const auto& list : masked) {
    for (const Edge& e : list) {
      if (e.user >= n_users || e.item >= items.rows()) throw std::invalid_argument("edge out of range");
      mask[e.user].push_back(e.item);
    }
  }
  std::vector<Index> evaluated;
  for (Index u = 0; u < n_users; ++u) {
    if (truth[u].empty()) continue;
    std::sort(truth[u].begin(), truth[u].end());
    truth[u].erase(std::unique(truth[u].begin(), truth[u].end()), truth[u].end());
    std::sort(mask[u].begin(), mask[u].end());
    evaluated.push_back(u);
  }
  if (evaluated.empty()) throw std::invalid_argument("no users with ground truth in the evaluated split");

  std::vector<double> discount(k + 1, 0.0);
  for (std::size_t r = 1; r <= k; ++r) discount[r] = 1.0 / std::log2(static_cast<double>(r) + 1.0);

  std::vector<double> recall(evaluated.size()), hit(evaluated.size()), ndcg(evaluated.size());
  parallel_for(evaluated.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      const Index u = evaluated[n];
      const auto& gt = truth[u];
      const auto top = rank_items(users.row(u), items, mask[u], k);
      std::size_t hits = 0;
      double dcg = 0.0;
      for (std::size_t r = 0; r < top.size(); ++r) {
        if (std::binary_search(gt.begin(), gt.end(), top[r])) {
          ++hits;
          dcg += discount[r + 1];
        }
      }
      double idcg = 0.0;
      for (std::size_t r = 1; r <= std::min(k, gt.size()); ++r) idcg += discount[r];
      recall[n] = static_cast<double>(hits) / static_cast<double>(gt.size());
      hit[n] = hits > 0 ? 1.0 : 0.0;
      ndcg[n] = dcg / idcg;
    }
  }, 8);

  RankingMetrics m;
  m.k = k;
  m.n_users_evaluated = evaluated.size();
  const double count = static_cast<double>(evaluated.size());
  for (std::size_t n = 0; n < evaluated.size(); ++n) {
    m.recall += recall[n];
    m.hit_ratio += hit[n];
    m.ndcg += ndcg[n];
  }
  m.recall /= count;
  m.hit_ratio /= count;
  m.ndcg /= count;
  return m;
}

RankingMetrics evaluate(const EmbeddingModel& model, const InteractionDataset& dataset,
                        EvalSplit split, std::size_t k) {
  if (model.n_users() != dataset.n_users || model.n_items() != dataset.n_items) {
    throw std::invalid_argument("model was not built for this dataset's vocabularies");
  }
  std::vector<std::span<const Edge>> masked{dataset.train_edges};
  if (split == EvalSplit::test) masked.emplace_back(dataset.valid_edges);
  const auto& truth = split == EvalSplit::valid ? dataset.valid_edges : dataset.test_edges;
  return evaluate_ranking(model.user_emb0, model.item_emb0, truth, masked, k);
}

nlohmann::json to_json(const RankingMetrics& m) {
  const std::string k = std::to_string(m.k);
  return {{"k", m.k},
          {"recall@" + k, m.recall},
          {"hr@" + k, m.hit_ratio},
          {"ndcg@" + k, m.ndcg},
          {"n_users_evaluated", m.n_users_evaluated}};
}

std::string format_metrics_table(
    const std::vector<std::pair<std::string, RankingMetrics>>& rows) {
  std::size_t label_width = 6;
  for (const auto& [label, _] : rows) label_width = std::max(label_width, label.size());
  const std::size_t k = rows.empty() ? 20 : rows.front().second.k;
  char buf[256];
  std::string out;
  const std::string r = "R@" + std::to_string(k), hr = "HR@" + std::to_string(k),
                    n = "N@" + std::to_string(k);
  std::snprintf(buf, sizeof(buf), "%-*s  %8s  %8s  %8s\n", static_cast<int>(label_width), "Method",
                r.c_str(), hr.c_str(), n.c_str());
  out += buf;
  for (const auto& [label, m] : rows) {
    std::snprintf(buf, sizeof(buf), "%-*s  %8.4f  %8.4f  %8.4f\n", static_cast<int>(label_width),
                  label.c_str(), m.recall, m.hit_ratio, m.ndcg);
    out += buf;
  }
  return out;
}

}  // namespace graphau

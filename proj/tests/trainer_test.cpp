#include "graphau/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "graphau/synthetic.hpp"
#include "oracles.hpp"

namespace graphau {
namespace {

InteractionDataset from_edges(std::size_t nu, std::size_t ni, std::vector<Edge> train,
                              std::vector<Edge> valid = {}, std::vector<Edge> test = {}) {
  InteractionDataset ds;
  ds.n_users = nu;
  ds.n_items = ni;
  ds.train_edges = std::move(train);
  ds.valid_edges = std::move(valid);
  ds.test_edges = std::move(test);
  for (std::size_t u = 0; u < nu; ++u) ds.user_vocab.intern("u" + std::to_string(u));
  for (std::size_t i = 0; i < ni; ++i) ds.item_vocab.intern("i" + std::to_string(i));
  ds.validate();
  return ds;
}

InteractionDataset small_community_dataset(std::uint64_t seed) {
  CommunityConfig c;
  c.n_users = 120;
  c.n_items = 100;
  c.n_interactions = 1500;
  c.clusters_per_community = 3;
  c.seed = seed;
  SplitOptions s;
  s.seed = seed;
  return split_dataset(community_interactions(c), s);
}

double mean_alignment(const EmbeddingModel& m, const std::vector<Edge>& edges) {
  double s = 0;
  for (const Edge& e : edges) s += align_pair(m.user_emb0.row(e.user), m.item_emb0.row(e.item));
  return s / static_cast<double>(edges.size());
}

double cosine(std::span<const double> a, std::span<const double> b) {
  return dot(a, b) / std::sqrt(squared_norm(a) * squared_norm(b));
}

TEST(Train, ZeroEpochsReturnsInitialModel) {
  const auto ds = from_edges(3, 3, {{0, 0}, {1, 1}, {2, 2}});
  TrainConfig cfg;
  cfg.epochs_max = 0;
  cfg.dim = 4;
  const auto r = train(ds, cfg);
  EXPECT_EQ(r.model, init_model(3, 3, 4, 0, cfg.seed));
  EXPECT_TRUE(r.log.epochs.empty());
}

TEST(Train, DescendsOnTinyDataset) {
  std::mt19937_64 rng(1);
  std::vector<Edge> edges;
  for (Index n = 0; n < 20; ++n) edges.push_back({n % 8, (n * 7 + n / 8) % 10});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const auto ds = from_edges(8, 10, edges);
  TrainConfig cfg;
  cfg.epochs_max = 200;
  cfg.dim = 8;
  cfg.loss.gamma = 0;
  const double before = mean_alignment(init_model(8, 10, 8, 0, cfg.seed), edges);
  const auto r = train(ds, cfg);
  EXPECT_LT(mean_alignment(r.model, edges), before);
  EXPECT_EQ(r.log.epochs.size(), 200u);
  for (std::size_t n = 0; n < r.log.epochs.size(); ++n) {
    EXPECT_EQ(r.log.epochs[n].epoch, n + 1);
    EXPECT_GT(r.log.epochs[n].train_seconds, 0.0);
  }
}

TEST(Train, SeparatesTwoDisjointCommunities) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<Index> pick(0, 49);
  std::vector<Edge> edges;
  while (edges.size() < 500) {
    const Index block = static_cast<Index>(edges.size() % 2) * 50;
    const Edge e{block + pick(rng), block + pick(rng)};
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  }
  const auto ds = from_edges(100, 100, edges);
  TrainConfig cfg;
  cfg.epochs_max = 40;
  cfg.batch_size = 128;
  cfg.dim = 16;
  cfg.loss.layers = 1;
  cfg.loss.gamma = 0.5;
  const auto r = train(ds, cfg);
  double intra = 0, inter = 0;
  for (Index u = 0; u < 100; ++u) {
    for (Index i = 0; i < 100; ++i) {
      const double c = cosine(r.model.user_emb0.row(u), r.model.item_emb0.row(i));
      ((u < 50) == (i < 50) ? intra : inter) += c / 5000.0;
    }
  }
  EXPECT_GT(intra, inter + 0.1);
}

TEST(Train, EarlyStopReturnsBestValidationModel) {
  const auto ds = small_community_dataset(3);
  TrainConfig cfg;
  cfg.epochs_max = 60;
  cfg.early_stop_patience = 3;
  cfg.batch_size = 256;
  cfg.dim = 8;
  cfg.loss.layers = 1;
  cfg.adam.lr = 0.05;
  const auto r = train(ds, cfg);
  ASSERT_TRUE(r.log.best_valid_ndcg.has_value());
  double best = -1;
  for (const auto& e : r.log.epochs) best = std::max(best, e.valid->ndcg);
  EXPECT_EQ(*r.log.best_valid_ndcg, best);
  EXPECT_EQ(evaluate(r.model, ds, EvalSplit::valid, 20).ndcg, best);
  EXPECT_EQ(r.log.epochs[r.log.best_epoch - 1].valid->ndcg, best);
  if (r.log.epochs.size() < cfg.epochs_max) {
    EXPECT_EQ(r.log.epochs.size(), r.log.best_epoch + cfg.early_stop_patience);
  }
}

TEST(Train, EvalEveryCountsPatienceInEvaluations) {
  const auto ds = small_community_dataset(4);
  TrainConfig cfg;
  cfg.epochs_max = 7;
  cfg.eval_every = 3;
  cfg.dim = 4;
  const auto r = train(ds, cfg);
  std::vector<std::size_t> evaluated;
  for (const auto& e : r.log.epochs)
    if (e.valid) evaluated.push_back(e.epoch);
  EXPECT_EQ(evaluated, (std::vector<std::size_t>{3, 6, 7}));
}

TEST(Train, DeterministicForFixedSeed) {
  const auto ds = small_community_dataset(5);
  for (Objective obj : {Objective::graphau, Objective::bpr}) {
    TrainConfig cfg;
    cfg.objective = obj;
    cfg.epochs_max = 5;
    cfg.dim = 8;
    cfg.loss.layers = obj == Objective::graphau ? 2 : 0;
    const auto a = train(ds, cfg), b = train(ds, cfg);
    EXPECT_EQ(a.model, b.model);
    ASSERT_EQ(a.log.epochs.size(), b.log.epochs.size());
    for (std::size_t n = 0; n < a.log.epochs.size(); ++n) {
      EXPECT_EQ(a.log.epochs[n].loss.total, b.log.epochs[n].loss.total);
      EXPECT_EQ(a.log.epochs[n].valid->ndcg, b.log.epochs[n].valid->ndcg);
    }
  }
}

TEST(Train, RejectsBadConfig) {
  const auto ds = from_edges(1, 1, {{0, 0}});
  TrainConfig cfg;
  cfg.batch_size = 0;
  EXPECT_THROW(train(ds, cfg), std::invalid_argument);
  cfg = {};
  cfg.loss.uniformity_order = 1;
  EXPECT_THROW(train(ds, cfg), std::invalid_argument);
}

TEST(Train, EpochRecordSerializesOnOneLine) {
  EpochRecord rec;
  rec.epoch = 3;
  rec.loss.align_per_layer = {1.0};
  rec.valid = RankingMetrics{0.1, 0.2, 0.3, 20, 5};
  const auto line = rec.to_json_line();
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_NE(line.find("\"epoch\":3"), std::string::npos);
  EXPECT_NE(line.find("\"ndcg@20\":0.3"), std::string::npos);
}

TEST(Bpr, ReferenceLosses) {
  EmbeddingModel m{Matrix(1, 1, 1.0), Matrix(2, 1), 0};
  m.item_emb0(0, 0) = 50;
  m.item_emb0(1, 0) = -50;
  const std::vector<Edge> e{{0, 0}};
  const std::vector<Index> neg{1};
  EXPECT_NEAR(bpr_loss_and_gradient(m, e, neg).loss, 0.0, 1e-40);
  m.item_emb0(1, 0) = 50;
  EXPECT_DOUBLE_EQ(bpr_loss_and_gradient(m, e, neg).loss, std::log(2.0));
  m.item_emb0(0, 0) = -800;  // stays finite far into the tail
  EXPECT_NEAR(bpr_loss_and_gradient(m, e, neg).loss, 850.0, 1e-9);
}

TEST(Bpr, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(6);
  EmbeddingModel m{oracle::random_matrix(1, 3, rng), oracle::random_matrix(2, 3, rng), 0};
  const std::vector<Edge> e{{0, 0}};
  const std::vector<Index> neg{1};
  const auto g = bpr_loss_and_gradient(m, e, neg).grad;
  const double h = 1e-6;
  for (int side = 0; side < 2; ++side) {
    Matrix& t = side == 0 ? m.user_emb0 : m.item_emb0;
    const Matrix& gt = side == 0 ? g.user : g.item;
    for (std::size_t n = 0; n < t.size(); ++n) {
      const double saved = t.data()[n];
      t.data()[n] = saved + h;
      const double plus = bpr_loss_and_gradient(m, e, neg).loss;
      t.data()[n] = saved - h;
      const double minus = bpr_loss_and_gradient(m, e, neg).loss;
      t.data()[n] = saved;
      EXPECT_NEAR(gt.data()[n], (plus - minus) / (2 * h), 1e-7);
    }
  }
}

TEST(Bpr, NegativesAvoidPositives) {
  std::mt19937_64 rng(7);
  std::vector<std::vector<Index>> positives(3);
  positives[0] = {0, 1, 2, 3, 4, 5, 6, 7};
  positives[1] = {2};
  std::vector<Edge> edges(200, Edge{0, 0});
  for (std::size_t n = 100; n < 200; ++n) edges[n] = {1, 2};
  const auto neg = sample_negatives(edges, positives, 10, rng);
  for (std::size_t n = 0; n < edges.size(); ++n) {
    const auto& p = positives[edges[n].user];
    EXPECT_FALSE(std::binary_search(p.begin(), p.end(), neg[n]));
    EXPECT_LT(neg[n], 10u);
  }
}

TEST(GraphauEpoch, TimeGrowsAtMostLinearlyInLayers) {
  const BipartiteGraph g(1500, 1500, power_law_bipartite(1500, 1500, 8000, 2.2, 1));
  auto median_epoch = [&](std::size_t layers) {
    std::vector<double> times;
    for (int t = 0; t < 3; ++t) {
      auto m = init_model(1500, 1500, 16, layers, 1);
      auto state = AdamState::for_model(m, {});
      std::mt19937_64 rng(1);
      auto edges = g.edges();
      LossConfig cfg;
      cfg.layers = layers;
      const auto t0 = std::chrono::steady_clock::now();
      run_graphau_epoch(m, g, edges, cfg, 1024, state, rng);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[1];
  };
  const double t1 = median_epoch(1), t4 = median_epoch(4);
  EXPECT_LE(t4, 6.0 * t1) << "L=1 " << t1 << "s, L=4 " << t4 << "s";
}

}  // namespace
}  // namespace graphau

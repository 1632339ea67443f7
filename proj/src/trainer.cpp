#include "graphau/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <json.hpp>
#include <spdlog/spdlog.h>

namespace graphau {

Objective parse_objective(const std::string& name) {
  if (name == "graphau") return Objective::graphau;
  if (name == "bpr") return Objective::bpr;
  throw std::invalid_argument("unknown objective '" + name + "' (expected graphau or bpr)");
}

std::string to_string(Objective objective) {
  return objective == Objective::graphau ? "graphau" : "bpr";
}

void TrainConfig::validate() const {
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
  if (eval_every == 0) throw std::invalid_argument("eval_every must be >= 1");
  if (eval_k == 0) throw std::invalid_argument("eval_k must be >= 1");
  if (dim == 0) throw std::invalid_argument("dim must be >= 1");
  if (!(adam.lr >= 0)) throw std::invalid_argument("lr must be non-negative");
  if (!(adam.weight_decay >= 0)) throw std::invalid_argument("weight_decay must be non-negative");
  loss.validate();
}

std::string EpochRecord::to_json_line() const {
  nlohmann::json j;
  j["epoch"] = epoch;
  j["loss"] = nlohmann::json::parse(loss.to_json_line());
  j["train_seconds"] = train_seconds;
  if (valid) j["valid"] = to_json(*valid);
  return j.dump();
}

namespace {

void accumulate(LossReport& sum, const LossReport& r) {
  if (sum.align_per_layer.size() < r.align_per_layer.size()) {
    sum.align_per_layer.resize(r.align_per_layer.size(), 0.0);
  }
  for (std::size_t l = 0; l < r.align_per_layer.size(); ++l) sum.align_per_layer[l] += r.align_per_layer[l];
  sum.uniform_user += r.uniform_user;
  sum.uniform_item += r.uniform_item;
  sum.total += r.total;
  sum.skipped_terms += r.skipped_terms;
}

void scale(LossReport& r, double s) {
  for (double& a : r.align_per_layer) a *= s;
  r.uniform_user *= s;
  r.uniform_item *= s;
  r.total *= s;
}

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

LossReport run_graphau_epoch(EmbeddingModel& model, const BipartiteGraph& graph,
                             std::vector<Edge>& edges, const LossConfig& loss,
                             std::size_t batch_size, AdamState& state, std::mt19937_64& rng) {
  std::shuffle(edges.begin(), edges.end(), rng);
  LossReport sum;
  std::size_t batches = 0;
  for (std::size_t begin = 0; begin < edges.size(); begin += batch_size) {
    const std::size_t end = std::min(edges.size(), begin + batch_size);
    const Batch batch = Batch::from_edges({edges.begin() + static_cast<std::ptrdiff_t>(begin),
                                           edges.begin() + static_cast<std::ptrdiff_t>(end)});
    const LayerStack stack = forward(model, graph);
    auto [report, grad] = loss_and_gradient(stack, batch, loss, graph);
    if (!std::isfinite(report.total)) {
      throw NonFiniteLoss("non-finite loss at batch " + std::to_string(batches) + ": " +
                          report.to_json_line());
    }
    adam_step(model, grad, state);
    accumulate(sum, report);
    ++batches;
  }
  if (batches > 0) scale(sum, 1.0 / static_cast<double>(batches));
  return sum;
}

BprLossAndGradient bpr_loss_and_gradient(const EmbeddingModel& model, std::span<const Edge> edges,
                                         std::span<const Index> negatives) {
  if (edges.empty()) throw std::invalid_argument("empty batch");
  if (edges.size() != negatives.size()) throw std::invalid_argument("one negative per edge required");
  BprLossAndGradient out{0.0, {Matrix(model.n_users(), model.dim()), Matrix(model.n_items(), model.dim())}};
  const double inv_b = 1.0 / static_cast<double>(edges.size());
  const std::size_t d = model.dim();
  for (std::size_t n = 0; n < edges.size(); ++n) {
    const auto u = model.user_emb0.row(edges[n].user);
    const auto pos = model.item_emb0.row(edges[n].item);
    const auto neg = model.item_emb0.row(negatives[n]);
    const double x = dot(u, pos) - dot(u, neg);
    out.loss += inv_b * softplus(-x);
    // d/dx of -log sigmoid(x) = -sigmoid(-x)
    const double c = -inv_b * sigmoid(-x);
    auto gu = out.grad.user.row(edges[n].user);
    auto gp = out.grad.item.row(edges[n].item);
    auto gn = out.grad.item.row(negatives[n]);
    for (std::size_t k = 0; k < d; ++k) {
      gu[k] += c * (pos[k] - neg[k]);
      gp[k] += c * u[k];
      gn[k] -= c * u[k];
    }
  }
  return out;
}

double bpr_step(EmbeddingModel& model, std::span<const Edge> edges,
                std::span<const Index> negatives, AdamState& state) {
  auto [loss, grad] = bpr_loss_and_gradient(model, edges, negatives);
  adam_step(model, grad, state);
  return loss;
}

std::vector<Index> sample_negatives(std::span<const Edge> edges,
                                    const std::vector<std::vector<Index>>& positives,
                                    std::size_t n_items, std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(n_items - 1));
  std::vector<Index> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) {
    const auto& pos = positives[e.user];
    Index j = pick(rng);
    for (int tries = 0; tries < 100 && std::binary_search(pos.begin(), pos.end(), j); ++tries) {
      j = pick(rng);
    }
    out.push_back(j);
  }
  return out;
}

TrainResult train(const InteractionDataset& dataset, const TrainConfig& config,
                  const std::function<void(const EpochRecord&)>& on_epoch) {
  config.validate();
  for (const auto& w : config.loss.range_warnings()) spdlog::warn("{}", w);

  TrainResult result{init_model(dataset.n_users, dataset.n_items, config.dim, config.loss.layers,
                                config.seed, config.init_scale),
                     {}};
  if (config.epochs_max == 0) return result;

  const BipartiteGraph graph = build_graph(dataset);
  AdamState state = AdamState::for_model(result.model, config.adam);
  // Separate stream from the initializer so both stay stable if one changes.
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<Edge> edges = dataset.train_edges;

  std::vector<std::vector<Index>> positives;
  if (config.objective == Objective::bpr) {
    positives.resize(dataset.n_users);
    for (const Edge& e : dataset.train_edges) positives[e.user].push_back(e.item);
    for (auto& p : positives) std::sort(p.begin(), p.end());
  }

  const bool can_validate = !dataset.valid_edges.empty();
  EmbeddingModel best = result.model;
  std::optional<double> best_ndcg;
  std::size_t stale_evals = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs_max; ++epoch) {
    EpochRecord rec;
    rec.epoch = epoch;
    const auto t0 = std::chrono::steady_clock::now();
    if (config.objective == Objective::graphau) {
      rec.loss = run_graphau_epoch(result.model, graph, edges, config.loss, config.batch_size,
                                   state, rng);
    } else {
      std::shuffle(edges.begin(), edges.end(), rng);
      double total = 0.0;
      std::size_t batches = 0;
      for (std::size_t begin = 0; begin < edges.size(); begin += config.batch_size) {
        const std::span<const Edge> batch(edges.data() + begin,
                                          std::min(config.batch_size, edges.size() - begin));
        const auto negatives = sample_negatives(batch, positives, dataset.n_items, rng);
        const double loss = bpr_step(result.model, batch, negatives, state);
        if (!std::isfinite(loss)) {
          throw NonFiniteLoss("non-finite BPR loss at epoch " + std::to_string(epoch));
        }
        total += loss;
        ++batches;
      }
      rec.loss.total = batches > 0 ? total / static_cast<double>(batches) : 0.0;
    }
    rec.train_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (rec.loss.skipped_terms > 0) {
      spdlog::debug("epoch {}: {} alignment terms skipped on zero vectors", epoch,
                    rec.loss.skipped_terms);
    }

    bool stop = false;
    if (can_validate && (epoch % config.eval_every == 0 || epoch == config.epochs_max)) {
      rec.valid = evaluate(result.model, dataset, EvalSplit::valid, config.eval_k);
      if (!best_ndcg || rec.valid->ndcg > *best_ndcg) {
        best_ndcg = rec.valid->ndcg;
        best = result.model;
        result.log.best_epoch = epoch;
        stale_evals = 0;
      } else if (++stale_evals >= config.early_stop_patience) {
        stop = true;
      }
    }
    result.log.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);
    if (stop) break;
  }

  if (can_validate) {
    result.model = std::move(best);
    result.log.best_valid_ndcg = best_ndcg;
  } else {
    result.log.best_epoch = result.log.epochs.size();
  }
  return result;
}

}  // namespace graphau

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// hard criterion fails. Criterion 7 is advisory and only warns.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <spdlog/spdlog.h>

#include "graphau/bench.hpp"
#include "graphau/evaluator.hpp"
#include "graphau/parallel.hpp"
#include "graphau/synthetic.hpp"
#include "graphau/trainer.hpp"
#include "oracles.hpp"

using namespace graphau;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  enum Kind { pass, fail, warn } kind = fail;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// 1. backward against central differences on small random instances.
Outcome gradient_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::size_t instances = 0, coords = 0, failures = 0;
  double worst = -1e300;
  for (std::size_t layers = 0; layers <= 3; ++layers) {
    for (double alpha : {0.0, 0.7, 1.3}) {
      for (double gamma : {0.0, 0.3}) {
        const std::size_t nu = 6 + rng() % 9, ni = 6 + rng() % 9;  // <= 28 nodes
        const std::size_t dim = 2 + rng() % 7;                     // <= 8
        auto edges = oracle::random_edges(nu, ni, 0.3, rng);
        const BipartiteGraph graph(nu, ni, edges);
        const auto model = init_model(nu, ni, dim, layers, rng(), 1.0);
        std::shuffle(edges.begin(), edges.end(), rng);
        edges.resize(std::max<std::size_t>(1, edges.size() * 2 / 3));
        const auto batch = Batch::from_edges(edges);
        LossConfig cfg;
        cfg.layers = layers;
        cfg.alpha = alpha;
        cfg.gamma = gamma;
        const auto grad = backward(forward(model, graph), batch, cfg, graph);
        const auto fd = oracle::finite_difference_check(model, graph, batch, cfg, grad, 1e-5, 1e-4, 1e-8);
        worst = std::max(worst, fd.worst_excess);
        coords += fd.coords;
        failures += fd.worst_excess > 0;
        ++instances;
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = failures == 0 && instances >= 20 && secs < 60;
  return {ok ? Outcome::pass : Outcome::fail,
          fmt("%zu instances, %zu coordinates, %zu failing, worst excess over tolerance %.2e, %.1fs",
              instances, coords, failures, worst, secs)};
}

// 2. L=0 objective against the independent direct implementation.
Outcome direct_reduction() {
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int t = 0; t < 25; ++t) {
    const std::size_t nu = 10 + rng() % 40, ni = 10 + rng() % 40, dim = 2 + rng() % 15;
    auto edges = oracle::random_edges(nu, ni, 0.1, rng);
    const BipartiteGraph graph(nu, ni, edges);
    const auto model = init_model(nu, ni, dim, 0, rng(), 1.0);
    std::shuffle(edges.begin(), edges.end(), rng);
    edges.resize(std::max<std::size_t>(1, edges.size() / 2));
    LossConfig cfg;
    cfg.gamma = 0.05 * static_cast<double>(t % 21);
    const auto batch = Batch::from_edges(edges);
    const auto got = loss_and_gradient(forward(model, graph), batch, cfg, graph);
    const auto ref = oracle::direct_au(model.user_emb0, model.item_emb0, batch.edges, cfg.gamma);
    worst = std::max(worst, std::abs(got.report.total - ref.loss));
    for (std::size_t n = 0; n < ref.grad_user.size(); ++n)
      worst = std::max(worst, std::abs(got.grad.user.data()[n] - ref.grad_user.data()[n]));
    for (std::size_t n = 0; n < ref.grad_item.size(); ++n)
      worst = std::max(worst, std::abs(got.grad.item.data()[n] - ref.grad_item.data()[n]));
  }
  return {worst <= 1e-10 ? Outcome::pass : Outcome::fail,
          fmt("25 random batches, max |difference| in loss and gradient %.2e (tolerance 1e-10)", worst)};
}

// 3. forward against dense normalized-adjacency powers. Error is relative to
// the largest magnitude in each layer block.
Outcome aggregator_oracle() {
  std::mt19937_64 rng(11);
  double worst = 0;
  for (int t = 0; t < 30; ++t) {
    const std::size_t nu = 2 + rng() % 24, ni = 2 + rng() % 24;  // <= 50 nodes
    const auto edges = oracle::random_edges(nu, ni, 0.05 + 0.4 * (t % 5) / 4.0, rng);
    const BipartiteGraph graph(nu, ni, edges);
    const auto model = init_model(nu, ni, 6, 4, rng(), 1.0);
    const auto stack = forward(model, graph);
    const auto a = oracle::normalized_adjacency(nu, ni, edges);
    for (std::size_t l = 0; l <= 4; ++l) {
      const auto [ou, oi] = oracle::dense_power_layer(a, model.user_emb0, model.item_emb0, l);
      for (const auto& [got, ref] : {std::pair{&stack.user_layers[l], &ou}, std::pair{&stack.item_layers[l], &oi}}) {
        double scale = 0, diff = 0;
        for (std::size_t n = 0; n < ref->size(); ++n) {
          scale = std::max(scale, std::abs(ref->data()[n]));
          diff = std::max(diff, std::abs(got->data()[n] - ref->data()[n]));
        }
        if (scale > 0) worst = std::max(worst, diff / scale);
      }
    }
  }
  return {worst <= 1e-10 ? Outcome::pass : Outcome::fail,
          fmt("30 graphs up to 50 nodes, layers 0..4, max relative error %.2e (tolerance 1e-10)", worst)};
}

// 4. evaluate against the brute-force reranker, with valid masking for test
// and integer scores so ties are common.
Outcome metric_oracle() {
  std::mt19937_64 rng(13);
  std::size_t mismatches = 0, cases = 0;
  for (int t = 0; t < 30; ++t) {
    InteractionDataset ds;
    ds.n_users = 30;
    ds.n_items = 40 + rng() % 40;
    std::uniform_real_distribution<double> u01(0, 1);
    for (Index u = 0; u < ds.n_users; ++u) {
      for (Index i = 0; i < ds.n_items; ++i) {
        const double r = u01(rng);
        if (r < 0.15) ds.train_edges.push_back({u, i});
        else if (r < 0.20) ds.valid_edges.push_back({u, i});
        else if (r < 0.27) ds.test_edges.push_back({u, i});
      }
    }
    EmbeddingModel m{Matrix(ds.n_users, 3), Matrix(ds.n_items, 3), 0};
    std::uniform_int_distribution<int> coord(-2, 2);
    for (double& x : m.user_emb0.data()) x = coord(rng);
    for (double& x : m.item_emb0.data()) x = coord(rng);
    for (EvalSplit split : {EvalSplit::valid, EvalSplit::test}) {
      std::vector<Edge> masked = ds.train_edges;
      if (split == EvalSplit::test) masked.insert(masked.end(), ds.valid_edges.begin(), ds.valid_edges.end());
      const auto& truth = split == EvalSplit::valid ? ds.valid_edges : ds.test_edges;
      for (std::size_t k : {5u, 20u}) {
        const auto got = evaluate(m, ds, split, k);
        const auto ref = oracle::brute_force_metrics(m.user_emb0, m.item_emb0, truth, masked, k);
        mismatches += !(got.recall == ref.recall && got.hit_ratio == ref.hit &&
                        got.ndcg == ref.ndcg && got.n_users_evaluated == ref.users);
        ++cases;
      }
    }
  }
  return {mismatches == 0 ? Outcome::pass : Outcome::fail,
          fmt("%zu (instance, split, k) cases, %zu not bitwise equal", cases, mismatches)};
}

// 5. Scalability on the CLI's default synthetic power-law bench graph.
Outcome scalability() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t nu = 2500, ni = 2500;
  const BipartiteGraph graph(nu, ni, power_law_bipartite(nu, ni, 6000, 2.2, 42));
  BenchConfig cfg;
  cfg.max_layers = 3;
  cfg.trials = 3;
  const auto rows = bench_scalability(graph, cfg);
  const double secs = seconds_since(t0);
  std::printf("%s", format_bench_table(rows).c_str());
  if (!rows[0].pairs_cumulative || !rows[2].pairs_cumulative || !rows[0].direct_seconds ||
      !rows[2].direct_seconds) {
    return {Outcome::fail, "pair enumeration hit the visit cap"};
  }
  const double pair_ratio = static_cast<double>(*rows[2].pairs_cumulative) / static_cast<double>(*rows[0].pairs_cumulative);
  const double graphau_ratio = rows[2].graphau_seconds / rows[0].graphau_seconds;
  const double direct_ratio = *rows[2].direct_seconds / *rows[0].direct_seconds;
  const bool ok = pair_ratio >= 10 && graphau_ratio <= 4 && direct_ratio >= pair_ratio && secs < 600;
  return {ok ? Outcome::pass : Outcome::fail,
          fmt("5000-node graph: pairs x%.1f (need >= 10), GraphAU time x%.2f (need <= 4), direct time x%.1f "
              "(need >= pair ratio), %.0fs",
              pair_ratio, graphau_ratio, direct_ratio, secs)};
}

// Shared by 6 and 7: one dataset per seed, runs selected by mean validation
// NDCG@20 over the seeds, compared on mean test Recall@20.
struct RunSummary {
  double valid_ndcg = 0;
  double test_recall = 0;
};

constexpr std::uint64_t kSeeds[] = {1, 2, 3};

const InteractionDataset& community_dataset(std::uint64_t seed) {
  static std::map<std::uint64_t, InteractionDataset> cache;
  auto it = cache.find(seed);
  if (it == cache.end()) {
    CommunityConfig c;
    c.seed = seed;
    SplitOptions s;
    s.seed = seed;
    it = cache.emplace(seed, split_dataset(community_interactions(c), s)).first;
  }
  return it->second;
}

RunSummary mean_over_seeds(std::size_t layers, double alpha, double gamma, std::size_t order = 0) {
  RunSummary out;
  for (std::uint64_t seed : kSeeds) {
    TrainConfig cfg;
    cfg.seed = seed;
    cfg.batch_size = 256;
    cfg.epochs_max = 100;
    cfg.early_stop_patience = 5;
    cfg.loss.layers = layers;
    cfg.loss.alpha = alpha;
    cfg.loss.gamma = gamma;
    cfg.loss.uniformity_order = order;
    const auto& ds = community_dataset(seed);
    const auto r = train(ds, cfg);
    out.valid_ndcg += *r.log.best_valid_ndcg / 3.0;
    out.test_recall += evaluate(r.model, ds, EvalSplit::test, 20).recall / 3.0;
  }
  std::printf("  L=%zu alpha=%.1f gamma=%.1f order=%zu: valid N@20 %.4f, test R@20 %.4f\n", layers,
              alpha, gamma, order, out.valid_ndcg, out.test_recall);
  std::fflush(stdout);
  return out;
}

struct Best {
  RunSummary summary;
  std::size_t layers = 0;
  double alpha = 0, gamma = 0;
};

Best graphau_best;
// Best L=2 configuration, so the ablation can try both orders 1 and 2.
Best graphau_best_deep;

Outcome relative_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  const double gammas[] = {0.2, 0.5, 1.0};
  Best direct{{-1, 0}};
  graphau_best = {{-1, 0}};
  graphau_best_deep = {{-1, 0}};
  for (double g : gammas) {
    const auto s = mean_over_seeds(0, 1.0, g);
    if (s.valid_ndcg > direct.summary.valid_ndcg) direct = {s, 0, 1.0, g};
  }
  for (std::size_t L : {1u, 2u}) {
    for (double a : {0.5, 1.0, 1.5}) {
      for (double g : gammas) {
        const auto s = mean_over_seeds(L, a, g);
        if (s.valid_ndcg > graphau_best.summary.valid_ndcg) graphau_best = {s, L, a, g};
        if (L == 2 && s.valid_ndcg > graphau_best_deep.summary.valid_ndcg) graphau_best_deep = {s, L, a, g};
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = graphau_best.summary.test_recall >= direct.summary.test_recall && secs < 1800;
  return {ok ? Outcome::pass : Outcome::fail,
          fmt("best GraphAU (L=%zu alpha=%.1f gamma=%.1f) test R@20 %.4f vs best DirectAU (gamma=%.1f) %.4f, "
              "mean of 3 seeds, %.0fs",
              graphau_best.layers, graphau_best.alpha, graphau_best.gamma, graphau_best.summary.test_recall,
              direct.gamma, direct.summary.test_recall, secs)};
}

// 7. Advisory: high-order uniformity on the best two-layer configuration.
Outcome uniformity_order_ablation() {
  const auto& b = graphau_best_deep;
  if (b.summary.valid_ndcg < 0) return {Outcome::warn, "skipped: criterion 6 did not run"};
  // noise band: one standard error-ish slack on a 3-seed mean
  const double slack = 0.005;
  std::string detail = fmt("L=2 alpha=%.1f gamma=%.1f, order 0: R@20 %.4f", b.alpha, b.gamma, b.summary.test_recall);
  bool improved = false;
  for (std::size_t order = 1; order <= 2; ++order) {
    const auto s = mean_over_seeds(b.layers, b.alpha, b.gamma, order);
    detail += fmt(", order %zu: %.4f", order, s.test_recall);
    improved |= s.test_recall > b.summary.test_recall + slack;
  }
  if (improved) spdlog::warn("high-order uniformity improved over order 0 on this dataset");
  return {improved ? Outcome::warn : Outcome::pass, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8. Two single-threaded CLI train runs give identical bytes.
Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "graphau_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  CommunityConfig c;
  c.n_users = 300;
  c.n_items = 300;
  c.n_interactions = 3000;
  {
    std::ofstream out(dir / "data.tsv");
    for (const auto& r : community_interactions(c)) out << r.user_id << '\t' << r.item_id << '\n';
  }
  std::string files[2][2];
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / ("run" + std::to_string(run));
    const std::string cmd = "GRAPHAU_THREADS=1 " + std::string(GRAPHAU_BIN) + " train --input " +
                            (dir / "data.tsv").string() + " --epochs 8 --layers 2 --batch-size 256 --seed 5 -q --out-dir " +
                            out.string() + " > /dev/null";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {Outcome::fail, "train run exited non-zero"};
    files[run][0] = slurp(out / "checkpoint.bin");
    files[run][1] = slurp(out / "metrics.json");
  }
  fs::remove_all(dir);
  const bool ok = !files[0][0].empty() && files[0][0] == files[1][0] && files[0][1] == files[1][1];
  return {ok ? Outcome::pass : Outcome::fail,
          fmt("checkpoint.bin (%zu bytes) %s, metrics.json %s", files[0][0].size(),
              files[0][0] == files[1][0] ? "identical" : "differs",
              files[0][1] == files[1][1] ? "identical" : "differs")};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 gradient exactness", gradient_exactness},
      {"2 direct reduction", direct_reduction},
      {"3 aggregator oracle", aggregator_oracle},
      {"4 metric oracle", metric_oracle},
      {"5 scalability", scalability},
      {"6 relative ordering", relative_ordering},
      {"7 uniformity-order ablation (advisory)", uniformity_order_ablation},
      {"8 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {Outcome::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.kind == Outcome::pass ? "PASS" : o.kind == Outcome::warn ? "WARN" : "FAIL";
    std::printf("[%s] criterion %s: %s\n", tag, name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.kind == Outcome::fail;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

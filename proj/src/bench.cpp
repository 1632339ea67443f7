#include "graphau/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include <spdlog/spdlog.h>

#include "graphau/model.hpp"
#include "graphau/trainer.hpp"

namespace graphau {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double direct_alignment_epoch(EmbeddingModel& model, std::vector<Edge>& pairs,
                              std::size_t batch_size, AdamState& state, std::mt19937_64& rng) {
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
  std::shuffle(pairs.begin(), pairs.end(), rng);
  const std::size_t d = model.dim();
  std::vector<double> ux(d), uy(d);
  double total = 0.0;
  std::size_t batches = 0;
  for (std::size_t begin = 0; begin < pairs.size(); begin += batch_size) {
    const std::size_t end = std::min(pairs.size(), begin + batch_size);
    const double w = 1.0 / static_cast<double>(end - begin);
    Gradients grad{Matrix(model.n_users(), d), Matrix(model.n_items(), d)};
    double loss = 0.0;
    for (std::size_t n = begin; n < end; ++n) {
      const auto x = model.user_emb0.row(pairs[n].user);
      const auto y = model.item_emb0.row(pairs[n].item);
      const double nx = std::sqrt(squared_norm(x)), ny = std::sqrt(squared_norm(y));
      if (nx == 0 || ny == 0) continue;
      double gx_u = 0, gy_u = 0;
      for (std::size_t k = 0; k < d; ++k) {
        ux[k] = x[k] / nx;
        uy[k] = y[k] / ny;
      }
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = ux[k] - uy[k];
        loss += w * diff * diff;
        gx_u += diff * ux[k];
        gy_u -= diff * uy[k];
      }
      auto gx = grad.user.row(pairs[n].user);
      auto gy = grad.item.row(pairs[n].item);
      for (std::size_t k = 0; k < d; ++k) {
        const double g = 2.0 * w * (ux[k] - uy[k]);
        gx[k] += (g - 2.0 * w * gx_u * ux[k]) / nx;
        gy[k] += (-g - 2.0 * w * gy_u * uy[k]) / ny;
      }
    }
    adam_step(model, grad, state);
    total += loss;
    ++batches;
  }
  return batches > 0 ? total / static_cast<double>(batches) : 0.0;
}

std::vector<BenchRow> bench_scalability(const BipartiteGraph& graph, const BenchConfig& config) {
  if (config.max_layers == 0) throw std::invalid_argument("bench needs max_layers >= 1");
  if (config.trials == 0) throw std::invalid_argument("bench needs trials >= 1");
  std::vector<BenchRow> rows;
  std::optional<std::vector<std::uint64_t>> counts;
  try {
    counts = khop_edge_count(graph, config.max_layers, config.visit_cap);
  } catch (const FrontierLimitExceeded& e) {
    spdlog::warn("{}", e.what());
  }

  for (std::size_t L = 1; L <= config.max_layers; ++L) {
    BenchRow row;
    row.layers = L;
    if (!counts) {
      try {
        const auto partial = khop_edge_count(graph, L, config.visit_cap);
        row.pairs_at_hop = partial.back();
        std::uint64_t s = 0;
        for (auto c : partial) s += c;
        row.pairs_cumulative = s;
      } catch (const FrontierLimitExceeded&) {
      }
    } else {
      row.pairs_at_hop = (*counts)[L - 1];
      std::uint64_t s = 0;
      for (std::size_t l = 0; l < L; ++l) s += (*counts)[l];
      row.pairs_cumulative = s;
    }

    LossConfig loss{config.alpha, config.gamma, L, 0, UniformityMetric::squared};
    EmbeddingModel model = init_model(graph.n_users(), graph.n_items(), config.dim, L, config.seed);
    AdamState state = AdamState::for_model(model, config.adam);
    std::mt19937_64 rng(config.seed);
    std::vector<Edge> edges = graph.edges();
    std::vector<double> times;
    for (std::size_t t = 0; t < config.trials; ++t) {
      const auto t0 = std::chrono::steady_clock::now();
      run_graphau_epoch(model, graph, edges, loss, config.batch_size, state, rng);
      times.push_back(seconds_since(t0));
    }
    row.graphau_seconds = median(times);

    if (row.pairs_cumulative) {
      EmbeddingModel dmodel = init_model(graph.n_users(), graph.n_items(), config.dim, 0, config.seed);
      AdamState dstate = AdamState::for_model(dmodel, config.adam);
      times.clear();
      try {
        for (std::size_t t = 0; t < config.trials; ++t) {
          const auto t0 = std::chrono::steady_clock::now();
          std::vector<Edge> pairs = khop_pairs(graph, L, config.visit_cap);
          direct_alignment_epoch(dmodel, pairs, config.batch_size, dstate, rng);
          times.push_back(seconds_since(t0));
        }
        row.direct_seconds = median(times);
      } catch (const FrontierLimitExceeded& e) {
        spdlog::warn("direct alignment at L={} infeasible: {}", L, e.what());
      }
    }
    spdlog::info("bench L={}: pairs={} graphau={:.4f}s direct={}", L,
                 row.pairs_cumulative ? std::to_string(*row.pairs_cumulative) : "n/a",
                 row.graphau_seconds,
                 row.direct_seconds ? std::to_string(*row.direct_seconds) + "s" : "infeasible");
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  // pair counts use exact shortest-path distance 2l-1 as the notion of an
  // l-hop (high-order) edge
  out << "layers,pairs_at_hop,pairs_cumulative,graphau_epoch_seconds,direct_epoch_seconds,direct_status\n";
  for (const auto& r : rows) {
    out << r.layers << ',' << (r.pairs_at_hop ? std::to_string(*r.pairs_at_hop) : "") << ','
        << (r.pairs_cumulative ? std::to_string(*r.pairs_cumulative) : "") << ','
        << r.graphau_seconds << ',' << (r.direct_seconds ? std::to_string(*r.direct_seconds) : "")
        << ',' << (r.direct_seconds ? "ok" : "infeasible") << '\n';
  }
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::string out = "   L     hop pairs   cum. pairs   GraphAU s/epoch   direct s/epoch\n";
  char buf[160];
  for (const auto& r : rows) {
    const std::string direct = r.direct_seconds ? std::to_string(*r.direct_seconds) : "infeasible";
    std::snprintf(buf, sizeof(buf), "%4zu  %12s  %11s  %16.4f  %15s\n", r.layers,
                  r.pairs_at_hop ? std::to_string(*r.pairs_at_hop).c_str() : "n/a",
                  r.pairs_cumulative ? std::to_string(*r.pairs_cumulative).c_str() : "n/a",
                  r.graphau_seconds, direct.c_str());
    out += buf;
  }
  return out;
}

}  // namespace graphau

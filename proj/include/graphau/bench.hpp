#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "graphau/graph.hpp"
#include "graphau/loss.hpp"
#include "graphau/model.hpp"
#include "graphau/optimizer.hpp"

namespace graphau {

struct BenchConfig {
  std::size_t max_layers = 3;
  std::size_t trials = 3;
  std::size_t batch_size = 1024;
  std::size_t dim = 32;
  double alpha = 1.0;
  double gamma = 0.5;
  AdamConfig adam;
  std::uint64_t seed = 42;
  std::uint64_t visit_cap = 200'000'000;
};

// One row per layer count L. "High-order pairs" are user-item pairs whose
// shortest path has length 2l-1 for some l <= L.
struct BenchRow {
  std::size_t layers = 0;
  std::optional<std::uint64_t> pairs_at_hop;
  std::optional<std::uint64_t> pairs_cumulative;
  double graphau_seconds = 0.0;
  // Unset when enumerating the pairs hit the visit cap.
  std::optional<double> direct_seconds;
};

// One shuffled pass of Adam on the mean align_pair over `pairs`, batched.
// Returns the batch-averaged loss.
double direct_alignment_epoch(EmbeddingModel& model, std::vector<Edge>& pairs,
                              std::size_t batch_size, AdamState& state, std::mt19937_64& rng);

// Median epoch times of GraphAU at L layers versus a direct-alignment
// reference that enumerates every pair within 2L-1 hops each epoch and
// runs direct_alignment_epoch on them.
std::vector<BenchRow> bench_scalability(const BipartiteGraph& graph, const BenchConfig& config);

void write_bench_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path);
std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace graphau

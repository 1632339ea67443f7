#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "graphau/graph.hpp"
#include "graphau/matrix.hpp"

namespace graphau {

// Base embedding tables (layer 0). Scoring uses these directly.
struct EmbeddingModel {
  Matrix user_emb0;
  Matrix item_emb0;
  std::size_t layers = 0;

  std::size_t dim() const { return user_emb0.cols(); }
  std::size_t n_users() const { return user_emb0.rows(); }
  std::size_t n_items() const { return item_emb0.rows(); }

  friend bool operator==(const EmbeddingModel&, const EmbeddingModel&) = default;
};

// Index l holds the pure l-hop aggregates; index 0 aliases the base tables.
struct LayerStack {
  std::vector<Matrix> user_layers;
  std::vector<Matrix> item_layers;

  std::size_t layers() const { return user_layers.empty() ? 0 : user_layers.size() - 1; }
};

// Entries i.i.d. normal(0, init_scale), deterministic in `seed`.
EmbeddingModel init_model(std::size_t n_users, std::size_t n_items, std::size_t dim,
                          std::size_t layers, std::uint64_t seed, double init_scale = 0.1);

// user_layers[l] = A * item_layers[l-1] and item_layers[l] = A^T * user_layers[l-1],
// with A the normalized adjacency. No normalization happens here.
LayerStack forward(const EmbeddingModel& model, const BipartiteGraph& graph);

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary layout, little-endian:
//   char[8]  magic "GRAPHAU\0"
//   u32      version (1)
//   u64      n_users, n_items, dim, layers, vocab_hash
//   f64      user table, row-major (n_users * dim)
//   f64      item table, row-major (n_items * dim)
void save_checkpoint(const EmbeddingModel& model, std::uint64_t vocab_hash,
                     const std::filesystem::path& path);

// Rejects files whose vocab hash differs from `expected_vocab_hash`.
EmbeddingModel load_checkpoint(const std::filesystem::path& path, std::uint64_t expected_vocab_hash);

}  // namespace graphau

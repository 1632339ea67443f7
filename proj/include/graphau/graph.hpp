#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphau/dataset.hpp"
#include "graphau/matrix.hpp"

namespace graphau {

struct Neighbor {
  Index node = 0;
  double weight = 0.0;
};

// User-item bipartite graph over the training split, with light-graph-
// convolution weights 1/sqrt(deg(u) * deg(i)) on every edge. Immutable once
// built. Adjacency rows are stored CSR-style and sorted by neighbor index.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t n_users, std::size_t n_items, std::vector<Edge> edges);

  std::size_t n_users() const { return n_users_; }
  std::size_t n_items() const { return n_items_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Neighbor> user_neighbors(Index u) const {
    return {user_adj_.data() + user_ptr_[u], user_ptr_[u + 1] - user_ptr_[u]};
  }
  std::span<const Neighbor> item_neighbors(Index i) const {
    return {item_adj_.data() + item_ptr_[i], item_ptr_[i + 1] - item_ptr_[i]};
  }
  std::size_t user_degree(Index u) const { return user_ptr_[u + 1] - user_ptr_[u]; }
  std::size_t item_degree(Index i) const { return item_ptr_[i + 1] - item_ptr_[i]; }

  // Weight of (u, i), or 0 when the edge is absent.
  double weight(Index u, Index i) const;

 private:
  std::size_t n_users_ = 0;
  std::size_t n_items_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> user_ptr_{0};
  std::vector<Neighbor> user_adj_;
  std::vector<std::size_t> item_ptr_{0};
  std::vector<Neighbor> item_adj_;
};

BipartiteGraph build_graph(const InteractionDataset& dataset);

// Row u = sum over i in N(u) of weight(u, i) * item_vectors[i]. Neighbors are
// summed in ascending index order, so the output is bitwise independent of
// the worker count. Zero-degree users get the zero vector.
Matrix aggregate_users_from_items(const BipartiteGraph& graph, const Matrix& item_vectors);
Matrix aggregate_items_from_users(const BipartiteGraph& graph, const Matrix& user_vectors);

class FrontierLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// For l = 1..hops, the number of distinct (user, item) pairs whose shortest
// path has exactly 2l-1 edges. Computed by one BFS per user; throws
// FrontierLimitExceeded once the total number of visited (source, node)
// states passes `visit_cap`.
std::vector<std::uint64_t> khop_edge_count(const BipartiteGraph& graph, std::size_t hops,
                                           std::uint64_t visit_cap = 200'000'000);

// All (user, item) pairs within shortest distance 2*hops-1, users ascending,
// items ascending within a user. Same cap semantics as khop_edge_count.
std::vector<Edge> khop_pairs(const BipartiteGraph& graph, std::size_t hops,
                             std::uint64_t visit_cap = 200'000'000);

}  // namespace graphau

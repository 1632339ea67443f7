#include "graphau/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphau/parallel.hpp"

namespace graphau {

BipartiteGraph::BipartiteGraph(std::size_t n_users, std::size_t n_items, std::vector<Edge> edges)
    : n_users_(n_users), n_items_(n_items), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<std::size_t> user_deg(n_users_, 0), item_deg(n_items_, 0);
  for (const Edge& e : edges_) {
    if (e.user >= n_users_ || e.item >= n_items_) {
      throw std::invalid_argument("graph edge index out of range");
    }
    ++user_deg[e.user];
    ++item_deg[e.item];
  }
  user_ptr_.assign(n_users_ + 1, 0);
  item_ptr_.assign(n_items_ + 1, 0);
  for (std::size_t u = 0; u < n_users_; ++u) user_ptr_[u + 1] = user_ptr_[u] + user_deg[u];
  for (std::size_t i = 0; i < n_items_; ++i) item_ptr_[i + 1] = item_ptr_[i] + item_deg[i];

  user_adj_.resize(edges_.size());
  item_adj_.resize(edges_.size());
  std::vector<std::size_t> user_fill(user_ptr_.begin(), user_ptr_.end() - 1);
  std::vector<std::size_t> item_fill(item_ptr_.begin(), item_ptr_.end() - 1);
  // edges_ is sorted by (user, item): user rows come out sorted directly and
  // item rows receive users in ascending order as well.
  for (const Edge& e : edges_) {
    const double w = 1.0 / std::sqrt(static_cast<double>(user_deg[e.user]) *
                                     static_cast<double>(item_deg[e.item]));
    user_adj_[user_fill[e.user]++] = {e.item, w};
    item_adj_[item_fill[e.item]++] = {e.user, w};
  }
}

double BipartiteGraph::weight(Index u, Index i) const {
  const auto row = user_neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), i,
                             [](const Neighbor& n, Index target) { return n.node < target; });
  return (it != row.end() && it->node == i) ? it->weight : 0.0;
}

BipartiteGraph build_graph(const InteractionDataset& dataset) {
  return BipartiteGraph(dataset.n_users, dataset.n_items, dataset.train_edges);
}

namespace {

template <typename RowFn>
Matrix aggregate(std::size_t out_rows, const Matrix& in, RowFn neighbors) {
  Matrix out(out_rows, in.cols());
  const std::size_t d = in.cols();
  parallel_for(out_rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      auto dst = out.row(r);
      for (const Neighbor& n : neighbors(static_cast<Index>(r))) {
        const auto src = in.row(n.node);
        for (std::size_t k = 0; k < d; ++k) dst[k] += n.weight * src[k];
      }
    }
  });
  return out;
}

}  // namespace

Matrix aggregate_users_from_items(const BipartiteGraph& graph, const Matrix& item_vectors) {
  if (item_vectors.rows() != graph.n_items()) {
    throw std::invalid_argument("aggregate_users_from_items: expected " +
                                std::to_string(graph.n_items()) + " item rows, got " +
                                std::to_string(item_vectors.rows()));
  }
  return aggregate(graph.n_users(), item_vectors,
                   [&graph](Index u) { return graph.user_neighbors(u); });
}

Matrix aggregate_items_from_users(const BipartiteGraph& graph, const Matrix& user_vectors) {
  if (user_vectors.rows() != graph.n_users()) {
    throw std::invalid_argument("aggregate_items_from_users: expected " +
                                std::to_string(graph.n_users()) + " user rows, got " +
                                std::to_string(user_vectors.rows()));
  }
  return aggregate(graph.n_items(), user_vectors,
                   [&graph](Index i) { return graph.item_neighbors(i); });
}

namespace {

// BFS from each user up to depth 2*hops-1. visit(user, item, hop) is called
// once for every item first reached at distance 2*hop-1.
template <typename Visit>
void bfs_from_users(const BipartiteGraph& graph, std::size_t hops, std::uint64_t visit_cap,
                    Visit&& visit) {
  if (hops == 0) throw std::invalid_argument("khop: hops must be >= 1");
  std::vector<std::uint32_t> user_mark(graph.n_users(), UINT32_MAX);
  std::vector<std::uint32_t> item_mark(graph.n_items(), UINT32_MAX);
  std::vector<Index> user_frontier, item_frontier;
  std::uint64_t visited = 0;
  const auto charge = [&](std::size_t n) {
    visited += n;
    if (visited > visit_cap) {
      throw FrontierLimitExceeded("k-hop expansion to " + std::to_string(hops) +
                                  " hops exceeded the cap of " + std::to_string(visit_cap) +
                                  " visited states");
    }
  };

  for (Index src = 0; src < graph.n_users(); ++src) {
    const auto stamp = static_cast<std::uint32_t>(src);
    user_frontier.assign(1, src);
    user_mark[src] = stamp;
    for (std::size_t hop = 1; hop <= hops && !user_frontier.empty(); ++hop) {
      item_frontier.clear();
      for (Index u : user_frontier) {
        for (const Neighbor& n : graph.user_neighbors(u)) {
          if (item_mark[n.node] != stamp) {
            item_mark[n.node] = stamp;
            item_frontier.push_back(n.node);
          }
        }
      }
      charge(item_frontier.size());
      std::sort(item_frontier.begin(), item_frontier.end());
      for (Index i : item_frontier) visit(src, i, hop);
      if (hop == hops) break;
      user_frontier.clear();
      for (Index i : item_frontier) {
        for (const Neighbor& n : graph.item_neighbors(i)) {
          if (user_mark[n.node] != stamp) {
            user_mark[n.node] = stamp;
            user_frontier.push_back(n.node);
          }
        }
      }
      charge(user_frontier.size());
    }
  }
}

}  // namespace

std::vector<std::uint64_t> khop_edge_count(const BipartiteGraph& graph, std::size_t hops,
                                           std::uint64_t visit_cap) {
  std::vector<std::uint64_t> counts(hops, 0);
  bfs_from_users(graph, hops, visit_cap,
                 [&counts](Index, Index, std::size_t hop) { ++counts[hop - 1]; });
  return counts;
}

std::vector<Edge> khop_pairs(const BipartiteGraph& graph, std::size_t hops,
                             std::uint64_t visit_cap) {
  std::vector<Edge> pairs;
  bfs_from_users(graph, hops, visit_cap, [&pairs](Index u, Index i, std::size_t) {
    pairs.push_back({u, i});
  });
  // Items of one user arrive hop by hop; restore ascending item order.
  auto begin = pairs.begin();
  while (begin != pairs.end()) {
    auto end = std::find_if(begin, pairs.end(), [u = begin->user](const Edge& e) { return e.user != u; });
    std::sort(begin, end);
    begin = end;
  }
  return pairs;
}

}  // namespace graphau
